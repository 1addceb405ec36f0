"""Packing density of generated disk arrangements in square windows.

No window should beat the hexagonal density pi/sqrt(12) by more than
boundary effects allow.
"""

import numpy as np

from fraenkel import GeneratorSpec, Region, packing_density, packing_disks
from fraenkel.certificate import BLIND_DENSITY


def main():
    rng = np.random.default_rng(3)
    print(f"hexagonal density: {BLIND_DENSITY:.6f}")
    for ratio in (1.0, 0.9, 0.8):
        kind = "disk_pack" if ratio == 1.0 else "two_scale"
        disks = packing_disks(GeneratorSpec(kind, 1500, params={"ratio": ratio}))
        R = max(d.radius for d in disks)
        dens = []
        for side in (10, 20, 30):
            x, y = rng.uniform(0.05, 0.2, 2)
            w = Region.from_polygon([(x, y), (x + side * R, y), (x + side * R, y + side * R), (x, y + side * R)])
            dens.append(packing_density(disks, w))
        print(f"{kind:9s} ratio {ratio:.2f}: {len(disks):5d} disks (gap cells excluded), window densities " + ", ".join(f"{d:.4f}" for d in dens))


if __name__ == "__main__":
    main()
