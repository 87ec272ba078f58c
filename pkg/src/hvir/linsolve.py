"""Sparse Gaussian elimination over the Scalar field."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from .scalars import Scalar, ZERO


class InconsistentSystem(ArithmeticError):
    def __init__(self, row_label):
        super().__init__(f"equation {row_label!r} cannot be satisfied")
        self.row_label = row_label


@dataclass
class Equation:
    coeffs: dict  # unknown -> Scalar (nonzero)
    rhs: Scalar
    label: Hashable = None


def _size(s: Scalar) -> int:
    return len(s.num.terms) + len(s.den.terms)


def solve(equations: Sequence[Equation], unknowns: Sequence[Hashable]) -> dict:
    """Solve a sparse linear system exactly.

    Pivots prefer short rows and small pivot entries, which keeps fill-in and
    expression swell down on the very sparse systems built from brackets.
    Free unknowns are set to zero.  Raises :class:`InconsistentSystem` with
    the label of an equation reduced to ``0 = nonzero``.
    """
    order = {k: i for i, k in enumerate(unknowns)}
    rows = [Equation({k: v for k, v in e.coeffs.items() if not v.is_zero()}, e.rhs, e.label) for e in equations]
    pivots: list[tuple[Hashable, Equation]] = []
    active = rows
    while active:
        for r in active:
            if not r.coeffs and not r.rhs.is_zero():
                raise InconsistentSystem(r.label)
        active = [r for r in active if r.coeffs]
        if not active:
            break
        row = min(active, key=lambda r: (len(r.coeffs), min(_size(v) for v in r.coeffs.values())))
        var = min(row.coeffs, key=lambda k: (_size(row.coeffs[k]), order.get(k, -1)))
        p = row.coeffs[var]
        norm = Equation({k: v / p for k, v in row.coeffs.items()}, row.rhs / p, row.label)
        pivots.append((var, norm))
        rest = []
        for r in active:
            if r is row:
                continue
            f = r.coeffs.get(var)
            if f is None:
                rest.append(r)
                continue
            coeffs = dict(r.coeffs)
            del coeffs[var]
            for k, v in norm.coeffs.items():
                if k == var:
                    continue
                nv = coeffs.get(k, ZERO) - f * v
                if nv.is_zero():
                    coeffs.pop(k, None)
                else:
                    coeffs[k] = nv
            rest.append(Equation(coeffs, r.rhs - f * norm.rhs, r.label))
        active = rest

    solution = {k: ZERO for k in unknowns}
    for var, eq in reversed(pivots):
        val = eq.rhs
        for k, v in eq.coeffs.items():
            if k != var:
                val = val - v * solution[k]
        solution[var] = val
    return solution
