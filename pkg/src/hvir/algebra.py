"""Basis, elements and brackets of W(n)_mu, WA(n)_mu and HVir(n)_mu.

Basis symbols are ``E(alpha)`` (the field t^alpha d_mu), ``H(alpha)`` (the
function t^alpha) and the central symbols ``C1``, ``C2``, ``C3``.  The HVir
bracket on basis symbols is::

    [E(a), E(b)] = mu.(b - a) E(a + b) + [a = -b] ((mu.a)^3 - mu.a)/12 C1
    [E(a), H(b)] = (mu.b) H(a + b)     + [a = -b] ((mu.a)^2 - mu.a)   C2
    [H(a), H(b)] =                       [a = -b] (mu.a)/3            C3

and central symbols bracket to zero.  The Kronecker delta is decided on
lattice indices, never on scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, NamedTuple

from .lattice import (
    DimensionMismatch,
    LatticeVector,
    current_specialization,
    guard_index,
    mu_form,
    vadd,
    vsub,
    window,
)
from .scalars import ONE, Scalar, ZERO, _mono_mul


class VariantMismatch(ValueError):
    pass


class Variant(Enum):
    SOLWITT = "SolWitt"
    WA = "WA"
    HVIR = "HVir"

    def admits(self, sym: "Basis") -> bool:
        if self is Variant.HVIR:
            return True
        if self is Variant.WA:
            return sym.kind in ("E", "H")
        return sym.kind == "E"


class Basis(NamedTuple):
    """A basis symbol.  ``alpha`` is empty for the central symbols."""

    kind: str
    alpha: LatticeVector = ()

    @property
    def is_central(self) -> bool:
        return self.kind[0] == "C"

    def __str__(self):
        if self.is_central:
            return self.kind
        return f"{self.kind}[{','.join(map(str, self.alpha))}]"

    def __repr__(self):
        return str(self)


def E(*alpha) -> Basis:
    if len(alpha) == 1 and isinstance(alpha[0], (tuple, list)):
        alpha = alpha[0]
    return Basis("E", tuple(alpha))


def H(*alpha) -> Basis:
    if len(alpha) == 1 and isinstance(alpha[0], (tuple, list)):
        alpha = alpha[0]
    return Basis("H", tuple(alpha))


C1 = Basis("C1")
C2 = Basis("C2")
C3 = Basis("C3")
CENTRALS = (C1, C2, C3)

_KIND_RANK = {"E": 0, "H": 1, "C1": 2, "C2": 3, "C3": 4}


def symbol_key(sym: Basis):
    """Display/iteration order: E by lex index, then H, then C1, C2, C3."""
    return (_KIND_RANK[sym.kind], sym.alpha)


def basis_window(n: int, B: int, variant: Variant = Variant.HVIR) -> list[Basis]:
    """All basis symbols of ``variant`` with |alpha_i| <= B."""
    vecs = window(n, B)
    out = [E(a) for a in vecs]
    if variant is not Variant.SOLWITT:
        out += [H(a) for a in vecs]
    if variant is Variant.HVIR:
        out += list(CENTRALS)
    return out


class Element:
    """Finite linear combination of basis symbols with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Basis, Scalar] | Iterable[tuple[Basis, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t: dict[Basis, Scalar] = {}
        for sym, c in items:
            c = Scalar.of(c)
            if sym in t:
                c = t[sym] + c
            if c.is_zero():
                t.pop(sym, None)
            else:
                t[sym] = c
        self.terms = t

    @classmethod
    def basis(cls, sym: Basis, coeff=ONE) -> "Element":
        return cls({sym: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, sym: Basis) -> Scalar:
        return self.terms.get(sym, ZERO)

    def symbols(self) -> list[Basis]:
        return sorted(self.terms, key=symbol_key)

    def items(self):
        return [(s, self.terms[s]) for s in self.symbols()]

    def __iter__(self) -> Iterator[tuple[Basis, Scalar]]:
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "Element") -> "Element":
        return Element(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "Element":
        return Element({s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, c) -> "Element":
        c = Scalar.of(c)
        return Element({s: v * c for s, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Element":
        return self * (ONE / Scalar.of(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[s] for s, c in self.terms.items())

    __hash__ = None

    def map_coeffs(self, f) -> "Element":
        return Element({s: f(c) for s, c in self.terms.items()})

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({self})"


def _coeff_string(c: Scalar) -> str:
    s = str(c)
    simple = all(ch not in s for ch in " +/") and "-" not in s[1:]
    return s if simple else f"({s})"


def format_element(x: Element) -> str:
    """Render in the element literal grammar, e.g. ``-2*m1*E[0,0] + ((m1^3-m1)/12)*C1``."""
    if x.is_zero():
        return "0"
    parts = []
    for k, (sym, c) in enumerate(x.items()):
        neg = False
        if c == ONE:
            body = str(sym)
        elif c == -ONE:
            body, neg = str(sym), True
        else:
            cs = _coeff_string(c)
            if cs.startswith("-"):
                neg, cs = True, cs[1:]
            body = f"{cs}*{sym}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# structure constants


@lru_cache(maxsize=None)
def _hvir_basis_bracket(x: Basis, y: Basis) -> tuple[tuple[Basis, Scalar], ...]:
    kx, ky = x.kind, y.kind
    if kx[0] == "C" or ky[0] == "C":
        return ()
    a, b = x.alpha, y.alpha
    if len(a) != len(b):
        raise DimensionMismatch(f"{x} and {y} live in different lattices")
    opposite = vadd(a, b) == (0,) * len(a)
    out = []
    if kx == "E" and ky == "E":
        c = mu_form(vsub(b, a))
        if c:
            out.append((E(vadd(a, b)), c))
        if opposite:
            t = mu_form(a)
            cc = (t * t * t - t) / 12
            if cc:
                out.append((C1, cc))
    elif kx == "E" and ky == "H":
        c = mu_form(b)
        if c:
            out.append((H(vadd(a, b)), c))
        if opposite:
            t = mu_form(a)
            cc = t * t - t
            if cc:
                out.append((C2, cc))
    elif kx == "H" and ky == "E":
        return tuple((s, -c) for s, c in _hvir_basis_bracket(y, x))
    else:
        if opposite:
            cc = mu_form(a) / 3
            if cc:
                out.append((C3, cc))
    return tuple(out)


def basis_bracket(x: Basis, y: Basis, variant: Variant = Variant.HVIR) -> tuple[tuple[Basis, Scalar], ...]:
    """[x, y] for basis symbols as ((symbol, coeff), ...)."""
    for s in (x, y):
        if not variant.admits(s):
            raise VariantMismatch(f"{s} is not a basis symbol of {variant.value}")
    if current_specialization() is not None:
        # the table is cached, so re-run the genericity guard on every lookup
        for v in (x.alpha, y.alpha):
            guard_index(v)
        if x.alpha and y.alpha:
            guard_index(vadd(x.alpha, y.alpha))
            guard_index(vsub(y.alpha, x.alpha))
    terms = _hvir_basis_bracket(x, y)
    if variant is Variant.HVIR:
        return terms
    return tuple((s, c) for s, c in terms if not s.is_central)


def _check_variant(variant: Variant, x: Element) -> None:
    for s in x.terms:
        if not variant.admits(s):
            raise VariantMismatch(f"{s} is not a basis symbol of {variant.value}")


def bracket(variant: Variant, x: Element, y: Element) -> Element:
    """Bilinear extension of the basis brackets of ``variant``."""
    _check_variant(variant, x)
    _check_variant(variant, y)
    acc: dict[Basis, Scalar] = {}
    for sx, cx in x.terms.items():
        for sy, cy in y.terms.items():
            terms = basis_bracket(sx, sy, variant)
            if not terms:
                continue
            cxy = cx * cy
            for s, c in terms:
                v = cxy * c
                acc[s] = acc[s] + v if s in acc else v
    return Element(acc)


def jacobi_defect(variant: Variant, x: Element, y: Element, z: Element) -> Element:
    """[[x,y],z] + [[y,z],x] + [[z,x],y]."""
    return (
        bracket(variant, bracket(variant, x, y), z)
        + bracket(variant, bracket(variant, y, z), x)
        + bracket(variant, bracket(variant, z, x), y)
    )


def basis_jacobi_defect(x: Basis, y: Basis, z: Basis, variant: Variant = Variant.HVIR) -> dict[Basis, Scalar]:
    """Jacobi defect on three basis symbols, computed straight from the cached table.

    Same value as :func:`jacobi_defect` on basis elements; avoids building
    intermediate :class:`Element` objects in exhaustive scans.
    """
    for s in (x, y, z):
        if not variant.admits(s):
            raise VariantMismatch(f"{s} is not a basis symbol of {variant.value}")
    if variant is Variant.HVIR and current_specialization() is None:
        table = _hvir_basis_bracket
    else:

        def table(p, q):
            return basis_bracket(p, q, variant)

    acc: dict[Basis, Scalar] = {}
    for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
        for s, c in table(p, q):
            for s2, c2 in table(s, r):
                v = c * c2
                if s2 in acc:
                    acc[s2] = acc[s2] + v
                else:
                    acc[s2] = v
    return {s: c for s, c in acc.items() if not c.is_zero()}


class NonHomogeneous:
    """Marker returned by :func:`degree_of` for mixed-degree elements."""

    def __repr__(self):
        return "NonHomogeneous"


NON_HOMOGENEOUS = NonHomogeneous()


def symbol_degree(sym: Basis, n: int) -> LatticeVector:
    # central symbols sit in degree 0
    return (0,) * n if sym.is_central else sym.alpha


def degree_of(x: Element, n: int):
    """Common lattice degree of the terms of x, or NON_HOMOGENEOUS.

    Returns None for the zero element, which has every degree.
    """
    degs = {symbol_degree(s, n) for s in x.terms}
    if not degs:
        return None
    if len(degs) > 1:
        return NON_HOMOGENEOUS
    return degs.pop()


@dataclass(frozen=True)
class SubalgebraReport:
    closed: bool
    counterexample: tuple[Basis, Basis, Basis] | None = None


def _family_order(sym: Basis):
    # small indices first, positive before negative: finds the simplest witness
    return (sum(abs(c) for c in sym.alpha), tuple(-c for c in sym.alpha), _KIND_RANK[sym.kind])


def subalgebra_check(variant: Variant, kinds: Iterable[str], n: int, B: int) -> SubalgebraReport:
    """Check that brackets of windowed generators stay in the span of a symbol family.

    ``kinds`` names the family by symbol shape, e.g. ``{"H", "C3"}`` means
    every H(alpha) (any alpha) together with C3.  Membership ignores the
    window, so results near the window edge never count as escapes.
    """
    kinds = frozenset(kinds)
    gens = [s for s in basis_window(n, B, variant) if s.kind in kinds]
    gens.sort(key=_family_order)
    for x, y in product(gens, repeat=2):
        for s, _ in basis_bracket(x, y, variant):
            if s.kind not in kinds:
                return SubalgebraReport(False, (x, y, s))
    return SubalgebraReport(True)


# ---------------------------------------------------------------------------
# exhaustive scans

_raw_table: dict = {}


def _raw_bracket(p: Basis, q: Basis):
    r = _raw_table.get((p, q))
    if r is None:
        r = _raw_table[(p, q)] = tuple((s, c.num.terms) for s, c in _hvir_basis_bracket(p, q))
    return r


def _raw_jacobi_nonzero(x: Basis, y: Basis, z: Basis) -> bool:
    # every HVir structure constant is a polynomial, so num.terms is the whole value
    acc: dict = {}
    for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
        for s, c in _raw_bracket(p, q):
            for s2, c2 in _raw_bracket(s, r):
                a = acc.get(s2)
                if a is None:
                    a = acc[s2] = {}
                for m1, v1 in c.items():
                    for m2, v2 in c2.items():
                        m = _mono_mul(m1, m2)
                        a[m] = a.get(m, 0) + v1 * v2
    return any(v for a in acc.values() for v in a.values())


@dataclass
class ScanResult:
    checked: int
    counterexample: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def antisymmetry_scan(n: int, B: int, variant: Variant = Variant.HVIR) -> ScanResult:
    """[x,y] + [y,x] == 0 for every ordered pair of windowed basis symbols."""
    syms = basis_window(n, B, variant)
    count = 0
    for x, y in product(syms, repeat=2):
        count += 1
        d = Element(basis_bracket(x, y, variant)) + Element(basis_bracket(y, x, variant))
        if not d.is_zero():
            return ScanResult(count, (x, y, d))
    return ScanResult(count)


def jacobi_scan(n: int, B: int, variant: Variant = Variant.HVIR) -> ScanResult:
    """Jacobi defect on every windowed triple of basis symbols.

    The defect is trilinear and, once antisymmetry holds, totally
    antisymmetric; a triple with a repeated entry has zero defect by
    antisymmetry alone.  So the scan covers each unordered triple of distinct
    symbols once, which accounts for all ordered triples.  Pair with
    :func:`antisymmetry_scan`.
    """
    syms = basis_window(n, B, variant)
    fast = variant is Variant.HVIR and current_specialization() is None
    count = 0
    for x, y, z in combinations(syms, 3):
        count += 1
        if fast:
            bad = _raw_jacobi_nonzero(x, y, z)
        else:
            bad = bool(basis_jacobi_defect(x, y, z, variant))
        if bad:
            return ScanResult(count, (x, y, z, Element(basis_jacobi_defect(x, y, z, variant))))
    return ScanResult(count)
