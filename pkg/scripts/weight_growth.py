"""Print Verma weight-space counts as the coordinate bound K grows.

    python3 scripts/weight_growth.py --gamma -1,0 --D 2 --K 10
"""

import argparse

from hvir.verma import weight_growth


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--gamma", default="-1,0", help="weight, comma separated")
    p.add_argument("--D", type=int, default=2, help="maximal PBW degree")
    p.add_argument("--K", type=int, default=10, help="largest coordinate bound")
    p.add_argument("--mirror", action="store_true")
    args = p.parse_args()
    gamma = tuple(int(t) for t in args.gamma.split(","))
    counts = weight_growth(gamma, args.D, range(1, args.K + 1), args.mirror)
    print(f"gamma={gamma} D={args.D}")
    for K, c in enumerate(counts, start=1):
        print(f"  K={K:<3} {c}")
    steps = [q - p for p, q in zip(counts, counts[1:])]
    print("strictly increasing" if all(s > 0 for s in steps) else "not strictly increasing")


if __name__ == "__main__":
    main()
