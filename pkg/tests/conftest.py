import os

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hvir.scalars import Scalar

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

VARS = ("m1", "m2", "a")
SYM = {name: sympy.Symbol(name) for name in ("m1", "m2", "m3", "a", "b", "F", "lam", "c0", "c1", "c2", "c3", "x", "y")}


def to_sympy(s: Scalar):
    """Independent reading of a Scalar through its printed form."""
    return sympy.sympify(str(s).replace("^", "**"), locals=SYM)


@st.composite
def scalar_pairs(draw, depth: int = 3):
    """(Scalar, sympy expr) built by the same random expression tree."""
    if depth == 0 or draw(st.booleans()):
        if draw(st.booleans()):
            k = draw(st.integers(-4, 4))
            return Scalar.of(k), sympy.Integer(k)
        name = draw(st.sampled_from(VARS))
        return Scalar.var(name), SYM[name]
    op = draw(st.sampled_from("+-*/"))
    ls, le = draw(scalar_pairs(depth - 1))
    rs, re_ = draw(scalar_pairs(depth - 1))
    if op == "+":
        return ls + rs, le + re_
    if op == "-":
        return ls - rs, le - re_
    if op == "*":
        return ls * rs, le * re_
    if rs.is_zero():
        return ls, le
    return ls / rs, le / re_


def scalars(depth: int = 3):
    return scalar_pairs(depth).map(lambda p: p[0])


def lattice_vectors(n: int, bound: int = 3):
    return st.tuples(*[st.integers(-bound, bound)] * n)
