"""Check the three generator cocycles and the Lie axioms on a window.

    python3 scripts/check_cocycles.py --n 2 --B 3
"""

import argparse
import time

from hvir.algebra import antisymmetry_scan, jacobi_scan
from hvir.cocycles import check_cocycle, generator_cocycle


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--B", type=int, default=2)
    p.add_argument("--skip-jacobi", action="store_true", help="cocycles only")
    args = p.parse_args()

    def report(label, res):
        witness = getattr(res, "counterexample", None) or getattr(res, "witness", None)
        status = "ok" if res.ok else f"FAILED at {witness}"
        print(f"{label:<28} {res.checked:>9} checked  {status}  ({time.perf_counter() - t0:.1f}s)")

    t0 = time.perf_counter()
    if not args.skip_jacobi:
        report("antisymmetry", antisymmetry_scan(args.n, args.B))
        t0 = time.perf_counter()
        report("jacobi", jacobi_scan(args.n, args.B))
    for i in (1, 2, 3):
        t0 = time.perf_counter()
        report(f"cocycle C{i}", check_cocycle(generator_cocycle(i), args.n, args.B))


if __name__ == "__main__":
    main()
