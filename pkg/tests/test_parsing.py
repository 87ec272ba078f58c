import pytest
from conftest import scalars
from hypothesis import given
from hypothesis import strategies as st

from hvir.algebra import C1, C2, E, Element, H, format_element
from hvir.lattice import DimensionMismatch, NonGenericSpecialization, specialization
from hvir.parsing import ExprSyntaxError, parse_element, parse_lattice, parse_scalar
from hvir.scalars import Context, Scalar, UnknownIndeterminate, mu

CTX = Context(2)


def test_scalar_examples():
    m1, m2 = mu(1), mu(2)
    assert parse_scalar("(m1^3 - m1)/12", CTX) == (m1**3 - m1) / 12
    assert parse_scalar("-2*m1", CTX) == -2 * m1
    assert parse_scalar("a + m2 + b*m1", CTX) == Scalar.var("a") + m2 + Scalar.var("b") * m1
    assert parse_scalar("-7/2", CTX) == Scalar.of(-7) / 2


def test_element_examples():
    assert parse_element("E[1,0]", CTX) == Element.basis(E(1, 0))
    x = parse_element("(m1^2-m1)*C2 - 2*H[0,0]", CTX)
    assert x == Element([(C2, mu(1) ** 2 - mu(1)), (H(0, 0), -2)])
    y = parse_element("(m1^2-1)/12 * E[1,0] + 2*H[0,0] - C1", CTX)
    assert len(y) == 3 and y.coeff(C1) == Scalar.of(-1)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        parse_element("E[1]", CTX)
    with pytest.raises(DimensionMismatch):
        parse_lattice("[1,2,3]", 2)


def test_unknown_name():
    with pytest.raises(UnknownIndeterminate):
        parse_scalar("m3 + 1", CTX)
    with pytest.raises(UnknownIndeterminate):
        parse_scalar("zeta", CTX)


@pytest.mark.parametrize(
    "text,offset",
    [
        ("m1 +", 4),
        ("m1 ** 2", 4),
        ("(m1", 3),
        ("m1 $ 2", 3),
        ("m1\u00a0+ $", 6),  # offsets count bytes: the no-break space takes two
    ],
)
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse_scalar(text, CTX)
    assert info.value.pos == offset


def test_type_errors():
    for bad in ("E[1,0] * H[0,1]", "1 + E[1,0]", "m1 / E[1,0]", "E[1,0]^2"):
        with pytest.raises(ExprSyntaxError):
            parse_element(bad, CTX)
    with pytest.raises(ExprSyntaxError):
        parse_scalar("E[1,0]", CTX)
    with pytest.raises(ExprSyntaxError):
        parse_element("m1", CTX)


def test_guard_in_parser():
    with specialization([2, 1]):
        with pytest.raises(NonGenericSpecialization):
            parse_element("E[1,-2]", CTX)
        with pytest.raises(NonGenericSpecialization):
            parse_lattice("[2,-4]", 2)


symbols = st.sampled_from([E(1, 0), E(-1, 2), E(0, 0), H(0, -1), H(2, 2), C1, C2])


@given(st.lists(st.tuples(symbols, scalars()), max_size=4))
def test_element_round_trip(terms):
    x = Element(terms)
    text = format_element(x)
    y = parse_element(text, CTX)
    assert y == x
    assert format_element(y) == text


@given(scalars())
def test_scalar_round_trip(s):
    text = str(s)
    t = parse_scalar(text, CTX)
    assert t == s
    assert str(t) == text
