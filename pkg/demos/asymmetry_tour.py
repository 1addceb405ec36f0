"""How far common shapes are from a disk of the same area.

Prints the Fraenkel asymmetry of regular polygons, a few rectangles and a
two-component region, next to a 200x200 grid scan of disk centers.
"""

from fraenkel import Region, fraenkel_asymmetry, grid_scan_asymmetry, regular_polygon


def main():
    shapes = {f"regular {n}-gon": Region((regular_polygon(n),)) for n in (3, 4, 6, 12, 64)}
    for aspect in (1.5, 2.0, 4.0):
        shapes[f"rectangle 1x{aspect:g}"] = Region.from_polygon([(0, 0), (aspect, 0), (aspect, 1), (0, 1)])
    two = Region.from_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    shapes["two unit squares"] = Region(two.components + Region.from_polygon([(3, 0), (4, 0), (4, 1), (3, 1)]).components)

    print(f"{'shape':24s} {'optimizer':>10s} {'grid scan':>10s}")
    for name, r in shapes.items():
        a = fraenkel_asymmetry(r).value
        g = grid_scan_asymmetry(r, 200)[0]
        print(f"{name:24s} {a:10.6f} {g:10.6f}")
    print(f"\nhexagon reference value: {fraenkel_asymmetry(shapes['regular 6-gon']).value:.9f}")


if __name__ == "__main__":
    main()
