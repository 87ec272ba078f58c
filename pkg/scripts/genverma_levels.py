"""Level counts and checks for a generalized Verma module over T(a,b,F).

    python3 scripts/genverma_levels.py --n 2 --levels 0,1,2 --B 1,2
"""

import argparse

from hvir.repmod import TModuleSpec
from hvir.scalars import Scalar
from hvir.verma import genverma_level_check


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=2, help="rank of the induced module (>= 2)")
    p.add_argument("--levels", default="0,1,2")
    p.add_argument("--B", default="1,2")
    p.add_argument("--samples", type=int, default=60)
    args = p.parse_args()
    spec = TModuleSpec(args.n - 1, Scalar.var("a"), Scalar.var("b"), Scalar.var("F"))
    for B in (int(t) for t in args.B.split(",")):
        for level in (int(t) for t in args.levels.split(",")):
            rep = genverma_level_check(spec, level, B, samples=args.samples)
            print(
                f"B={B} level={level}: {rep.level_count} states, eigenvalue {rep.eigenvalue}, "
                f"{'ok' if rep.ok else 'FAILED'}"
            )


if __name__ == "__main__":
    main()
