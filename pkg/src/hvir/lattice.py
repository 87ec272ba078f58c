"""The index lattice Z^n, its lexicographic group order, and alpha -> mu.alpha.

Lattice vectors are plain tuples of ints.  Python compares tuples
lexicographically, which is exactly the group order used for the triangular
decomposition.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .scalars import Poly, Scalar, ZERO

LatticeVector = tuple  # tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


class NonGenericSpecialization(ArithmeticError):
    """A rational specialization of mu sends mu.alpha to 0 for some alpha != 0."""

    def __init__(self, alpha: LatticeVector):
        super().__init__(f"mu.{list(alpha)} vanishes under the chosen specialization")
        self.alpha = alpha


class SignClass(Enum):
    POSITIVE = 1
    ZERO = 0
    NEGATIVE = -1


def _same_dim(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"{list(a)} and {list(b)} have different lengths")


def lex_cmp(a: LatticeVector, b: LatticeVector) -> int:
    """-1, 0, 1 as a is lex-less, equal, or greater than b."""
    _same_dim(a, b)
    return (a > b) - (a < b)


def sign_class(a: LatticeVector) -> SignClass:
    for c in a:
        if c > 0:
            return SignClass.POSITIVE
        if c < 0:
            return SignClass.NEGATIVE
    return SignClass.ZERO


def is_positive(a: LatticeVector) -> bool:
    return sign_class(a) is SignClass.POSITIVE


def is_negative(a: LatticeVector) -> bool:
    return sign_class(a) is SignClass.NEGATIVE


def vadd(a: LatticeVector, b: LatticeVector) -> LatticeVector:
    _same_dim(a, b)
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: LatticeVector, b: LatticeVector) -> LatticeVector:
    _same_dim(a, b)
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: LatticeVector) -> LatticeVector:
    return tuple(-x for x in a)


def zero(n: int) -> LatticeVector:
    return (0,) * n


def vsum(vectors, n: int) -> LatticeVector:
    out = [0] * n
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch(f"{list(v)} is not in Z^{n}")
        for i, c in enumerate(v):
            out[i] += c
    return tuple(out)


def in_window(a: LatticeVector, B: int) -> bool:
    return all(-B <= c <= B for c in a)


def window(n: int, B: int) -> list[LatticeVector]:
    """All vectors with |a_i| <= B, in lex order."""
    return list(product(range(-B, B + 1), repeat=n))


# ---------------------------------------------------------------------------
# genericity guard for rational specializations of mu

_specialization: contextvars.ContextVar = contextvars.ContextVar("mu_specialization", default=None)


@contextmanager
def specialization(mu_values: Sequence[Fraction] | None) -> Iterator[None]:
    """Within the block, every lattice index touched must stay generic."""
    token = _specialization.set(None if mu_values is None else tuple(Fraction(v) for v in mu_values))
    try:
        yield
    finally:
        _specialization.reset(token)


def current_specialization():
    return _specialization.get()


def guard_index(alpha: LatticeVector) -> None:
    values = _specialization.get()
    if values is None or not any(alpha):
        return
    if len(values) != len(alpha):
        raise DimensionMismatch(f"{list(alpha)} does not match the {len(values)} specialized mu values")
    if sum(v * a for v, a in zip(values, alpha)) == 0:
        raise NonGenericSpecialization(alpha)


@lru_cache(maxsize=None)
def _mu_form_poly(alpha: LatticeVector) -> Poly:
    p = Poly()
    for i, a in enumerate(alpha):
        if a:
            p = p + Poly.var(f"m{i + 1}").scale(a)
    return p


def mu_form(alpha: LatticeVector) -> Scalar:
    """mu.alpha = sum_i alpha_i m_i as a linear polynomial."""
    guard_index(alpha)
    p = _mu_form_poly(tuple(alpha))
    return Scalar(p) if p.terms else ZERO
