"""The partition functional on generated tilings.

Hexagonal tilings sit near the hexagon's asymmetry, disk packings sit near
zero asymmetry but pay through the area deviation term.
"""

from fraenkel import GeneratorSpec, evaluate_functional, generate


def main():
    specs = [
        GeneratorSpec("hex", 300),
        GeneratorSpec("square", 300),
        GeneratorSpec("disk_pack", 300),
        GeneratorSpec("two_scale", 300, params={"ratio": 0.8}),
        GeneratorSpec("voronoi", 300, seed=7),
    ]
    print(f"{'kind':10s} {'cells':>6s} {'a_sum':>9s} {'d_sum':>9s} {'functional':>11s}")
    for spec in specs:
        p = generate(spec)
        s = evaluate_functional(p).stats
        print(f"{spec.kind:10s} {len(p):6d} {s.a_sum:9.5f} {s.d_sum:9.5f} {s.functional:11.5f}")

    hexes = evaluate_functional(generate(GeneratorSpec("hex", 700)), interior_only=True).stats
    print(f"\ninterior hexagons only: {hexes.n_cells} cells, functional {hexes.functional:.6f}")


if __name__ == "__main__":
    main()
