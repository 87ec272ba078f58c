"""2-cochains on WA(n)_mu: generating cocycles, defects, coboundaries, decomposition.

A cochain here is anything callable as ``C(x, y) -> Scalar`` on WA basis
symbols.  :class:`Cochain2` is the finite, windowed kind: its values are
stored for every ordered pair of symbols with indices in ``|alpha_i| <= B``
and asking for a pair outside the window raises :class:`OutsideWindow`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable, Mapping

from .algebra import Basis, Variant, basis_bracket, basis_window, symbol_key
from .lattice import in_window, mu_form, vadd, zero
from .linsolve import Equation, InconsistentSystem, solve
from .scalars import Scalar, ZERO

Evaluator = Callable[[Basis, Basis], Scalar]


class OutsideWindow(KeyError):
    pass


class NotAntisymmetric(ValueError):
    def __init__(self, x: Basis, y: Basis):
        super().__init__(f"C({x},{y}) != -C({y},{x})")
        self.pair = (x, y)


class InconsistentCocycle(ValueError):
    """The input is not a cocycle on the window, or not in the span found."""

    def __init__(self, witness: tuple, message: str = ""):
        super().__init__(message or f"cocycle condition fails at {witness}")
        self.witness = witness


class UnderdeterminedWindow(ValueError):
    pass


# ---------------------------------------------------------------------------
# the three generators


def theta(which: int, t: Scalar) -> Scalar:
    """theta_1(t) = (t^3 - t)/12, theta_2(t) = t^2 - t, theta_3(t) = t/3."""
    if which == 1:
        return (t * t * t - t) / 12
    if which == 2:
        return t * t - t
    if which == 3:
        return t / 3
    raise ValueError(f"no generating cocycle {which}")


_GEN_KINDS = {1: ("E", "E"), 2: ("E", "H"), 3: ("H", "H")}


def generator_cocycle(which: int) -> Evaluator:
    """The generating cocycle C_{mu,which} as an evaluator on all basis pairs.

    C_{mu,2} is given on (E, H); the (H, E) orientation follows by antisymmetry.
    """
    if which not in _GEN_KINDS:
        raise ValueError(f"no generating cocycle {which}")
    k1, k2 = _GEN_KINDS[which]

    def C(x: Basis, y: Basis) -> Scalar:
        if x.is_central or y.is_central:
            return ZERO
        if vadd(x.alpha, y.alpha) != zero(len(x.alpha)):
            return ZERO
        if (x.kind, y.kind) == (k1, k2):
            return theta(which, mu_form(x.alpha))
        if (y.kind, x.kind) == (k1, k2):
            return -theta(which, mu_form(y.alpha))
        return ZERO

    C.__name__ = f"C_mu_{which}"
    return C


def combination(coeffs: Iterable[Scalar], *extra: Evaluator) -> Evaluator:
    """a1*C1 + a2*C2 + a3*C3 (+ any further evaluators, added as is)."""
    coeffs = [Scalar.of(c) for c in coeffs]
    gens = [generator_cocycle(i) for i in (1, 2, 3)]

    def C(x: Basis, y: Basis) -> Scalar:
        v = ZERO
        for a, g in zip(coeffs, gens):
            if a:
                v = v + a * g(x, y)
        for f in extra:
            v = v + f(x, y)
        return v

    return C


# ---------------------------------------------------------------------------
# windowed cochains


@dataclass(frozen=True)
class Cochain1:
    """Linear form on WA basis symbols; zero outside its stored support."""

    n: int
    window: int
    values: Mapping[Basis, Scalar] = field(default_factory=dict)

    def __call__(self, sym: Basis) -> Scalar:
        return self.values.get(sym, ZERO)

    def apply(self, terms: Iterable[tuple[Basis, Scalar]]) -> Scalar:
        v = ZERO
        for s, c in terms:
            b = self.values.get(s)
            if b is not None:
                v = v + c * b
        return v

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())


def wa_symbols(n: int, B: int) -> list[Basis]:
    return basis_window(n, B, Variant.WA)


@dataclass(frozen=True)
class Cochain2:
    """Antisymmetric bilinear form on windowed WA basis symbols."""

    n: int
    window: int
    values: Mapping[tuple[Basis, Basis], Scalar]

    def in_window(self, sym: Basis) -> bool:
        return not sym.is_central and len(sym.alpha) == self.n and in_window(sym.alpha, self.window)

    def __call__(self, x: Basis, y: Basis) -> Scalar:
        if not (self.in_window(x) and self.in_window(y)):
            raise OutsideWindow((x, y))
        return self.values.get((x, y), ZERO)

    @classmethod
    def from_function(cls, f: Evaluator, n: int, B: int) -> "Cochain2":
        """Tabulate ``f`` on the window, rejecting it unless antisymmetric."""
        syms = wa_symbols(n, B)
        values = {}
        for x, y in combinations_with_replacement(syms, 2):
            vxy, vyx = f(x, y), f(y, x)
            if not (vxy + vyx).is_zero():
                raise NotAntisymmetric(x, y)
            if not vxy.is_zero():
                values[(x, y)] = vxy
                values[(y, x)] = -vxy
        return cls(n, B, values)

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[Basis, Basis, Scalar]], n: int, B: int) -> "Cochain2":
        """Build from listed values; a missing orientation is filled in by antisymmetry."""
        values: dict = {}
        for x, y, v in entries:
            for s in (x, y):
                if s.is_central or len(s.alpha) != n or not in_window(s.alpha, B):
                    raise OutsideWindow((x, y))
            if (x, y) in values and values[(x, y)] != v:
                raise NotAntisymmetric(x, y)
            if x == y and not v.is_zero():
                raise NotAntisymmetric(x, y)
            values[(x, y)] = v
            if (y, x) in values and not (values[(y, x)] + v).is_zero():
                raise NotAntisymmetric(x, y)
            values[(y, x)] = -v
        return cls(n, B, {k: v for k, v in values.items() if not v.is_zero()})

    def entries(self) -> list[tuple[Basis, Basis, Scalar]]:
        """One entry per unordered pair (first symbol earlier in display order)."""
        out = []
        for (x, y), v in self.values.items():
            if symbol_key(x) < symbol_key(y):
                out.append((x, y, v))
        out.sort(key=lambda e: (symbol_key(e[0]), symbol_key(e[1])))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain2):
            return NotImplemented
        if (self.n, self.window) != (other.n, other.window):
            return False
        keys = set(self.values) | set(other.values)
        return all(self.values.get(k, ZERO) == other.values.get(k, ZERO) for k in keys)

    __hash__ = None


def wa_bracket(x: Basis, y: Basis):
    return basis_bracket(x, y, Variant.WA)


def coboundary_function(b: Cochain1) -> Evaluator:
    """(x, y) -> b([x, y]) on all WA basis pairs."""

    def db(x: Basis, y: Basis) -> Scalar:
        return b.apply(wa_bracket(x, y))

    return db


def coboundary(b: Cochain1) -> Cochain2:
    """delta b on b's window; values of b outside its support count as zero."""
    return Cochain2.from_function(coboundary_function(b), b.n, b.window)


# ---------------------------------------------------------------------------
# the cocycle condition


def cocycle_defect(C: Evaluator, x: Basis, y: Basis, z: Basis) -> Scalar:
    """C([x,y],z) + C([y,z],x) + C([z,x],y) with C extended bilinearly."""
    total = ZERO
    for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
        for s, c in wa_bracket(p, q):
            v = C(s, r)
            if v:
                total = total + c * v
    return total


def _bracket_in_window(x: Basis, y: Basis, B: int) -> bool:
    return in_window(vadd(x.alpha, y.alpha), B)


def closed_triples(n: int, B: int):
    """Windowed triples (unordered, repeats allowed) whose pairwise brackets stay in the window."""
    syms = wa_symbols(n, B)
    for x, y, z in combinations_with_replacement(syms, 3):
        if _bracket_in_window(x, y, B) and _bracket_in_window(y, z, B) and _bracket_in_window(z, x, B):
            yield x, y, z


def all_triples(n: int, B: int):
    """Every unordered triple (repeats allowed) of windowed WA symbols.

    The defect is totally antisymmetric whenever C and the bracket are, so
    one ordering per multiset covers all ordered triples.
    """
    return combinations_with_replacement(wa_symbols(n, B), 3)


@dataclass
class DefectReport:
    checked: int
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.witness is None


def check_cocycle(C: Evaluator, n: int, B: int, closed_only: bool = False) -> DefectReport:
    """Cocycle defect on windowed triples; ``closed_only`` for windowed cochains."""
    triples = closed_triples(n, B) if closed_only else all_triples(n, B)
    count = 0
    for x, y, z in triples:
        count += 1
        d = cocycle_defect(C, x, y, z)
        if not d.is_zero():
            return DefectReport(count, (x, y, z, d))
    return DefectReport(count)


# ---------------------------------------------------------------------------
# decomposition C = a1 C1 + a2 C2 + a3 C3 + delta b on a window


@dataclass
class Decomposition:
    coeffs: tuple[Scalar, Scalar, Scalar]
    cob: Cochain1

    def reconstruct(self) -> Cochain2:
        f = combination(self.coeffs, coboundary_function(self.cob))
        return Cochain2.from_function(f, self.cob.n, self.cob.window)


_A = ("a", 1), ("a", 2), ("a", 3)


def decompose_cocycle(C: Cochain2, window: int | None = None) -> Decomposition:
    """Write a windowed cocycle as a combination of the generators plus a coboundary.

    Equations come from every unordered in-window pair whose bracket also
    lies in the window.  The a_i are separated from the coboundary
    directions by probes alpha and 2*alpha, hence the need for B >= 2.
    Free values of b (the kernel of delta on the window) are set to zero.
    """
    B = C.window if window is None else window
    if B > C.window:
        raise OutsideWindow(f"window {B} exceeds the cochain's window {C.window}")
    if B < 2:
        raise UnderdeterminedWindow("probe pairs (alpha, -alpha), (2 alpha, -2 alpha) need B >= 2")
    n = C.n
    report = check_cocycle(C, n, B, closed_only=True)
    if not report.ok:
        raise InconsistentCocycle(report.witness)

    syms = wa_symbols(n, B)
    gens = [generator_cocycle(i) for i in (1, 2, 3)]
    unknowns = list(_A) + [("b", s) for s in syms]
    equations = []
    for i, x in enumerate(syms):
        for y in syms[i + 1 :]:
            if not _bracket_in_window(x, y, B):
                continue
            coeffs = {}
            for k, g in zip(_A, gens):
                v = g(x, y)
                if v:
                    coeffs[k] = v
            for s, c in wa_bracket(x, y):
                coeffs[("b", s)] = coeffs.get(("b", s), ZERO) + c
            equations.append(Equation(coeffs, C(x, y), (x, y)))
    try:
        sol = solve(equations, unknowns)
    except InconsistentSystem as exc:
        raise InconsistentCocycle(exc.row_label, f"no decomposition matches the pair {exc.row_label}") from None
    b = Cochain1(n, B, {s: sol[("b", s)] for s in syms if not sol[("b", s)].is_zero()})
    return Decomposition((sol[_A[0]], sol[_A[1]], sol[_A[2]]), b)


def in_window_pairs(n: int, B: int):
    syms = wa_symbols(n, B)
    for x, y in product(syms, repeat=2):
        if _bracket_in_window(x, y, B):
            yield x, y


def agrees_on_window(C: Evaluator, D: Evaluator, n: int, B: int):
    """First in-window pair (bracket in window too) where C and D differ, or None."""
    for x, y in in_window_pairs(n, B):
        if C(x, y) != D(x, y):
            return (x, y)
    return None


# ---------------------------------------------------------------------------
# functional-equation oracles for the theta functions


def theta_defect(which: int, th: Scalar) -> Scalar:
    """LHS - RHS of the functional equation satisfied by theta_which, in x and y.

    which=1: 2x t(x) - 2y t(y) = (x - y) t(x + y) + (x + y) t(x - y)
    which=2: (y - x) t(x + y) = (y + x)(t(y) - t(x))
    which=3: y t(x + y) = (y + x) t(y)
    """
    x, y = Scalar.var("x"), Scalar.var("y")
    extra = th.variables() - {"x"}
    if extra:
        raise ValueError(f"theta may only involve x, found {sorted(extra)}")

    def at(arg: Scalar) -> Scalar:
        return th.subs({"x": arg})

    if which == 1:
        return (2 * x * at(x) - 2 * y * at(y)) - ((x - y) * at(x + y) + (x + y) * at(x - y))
    if which == 2:
        return (y - x) * at(x + y) - (y + x) * (at(y) - at(x))
    if which == 3:
        return y * at(x + y) - (y + x) * at(y)
    raise ValueError(f"no functional equation {which}")


__all__ = [
    "Cochain1",
    "Cochain2",
    "Decomposition",
    "DefectReport",
    "InconsistentCocycle",
    "NotAntisymmetric",
    "OutsideWindow",
    "UnderdeterminedWindow",
    "agrees_on_window",
    "check_cocycle",
    "coboundary",
    "coboundary_function",
    "cocycle_defect",
    "combination",
    "decompose_cocycle",
    "generator_cocycle",
    "theta",
    "theta_defect",
]
