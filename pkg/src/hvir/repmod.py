"""Intermediate-series modules T_mu(a, b, F).

Basis vectors v_kappa are indexed by kappa in Z^n (the weight of v_kappa is
a + mu.kappa).  The action is::

    E(alpha) v_kappa = (a + mu.kappa + b mu.alpha) v_{kappa + alpha}
    H(alpha) v_kappa = F v_{kappa + alpha}
    C_i      v_kappa = 0

With ``quotient_v0`` set (only for a = b = F = 0) the module is the quotient
T(0,0,0)/C v_0: the kappa = 0 component is dropped everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .algebra import Basis, Element, Variant, bracket
from .lattice import DimensionMismatch, LatticeVector, in_window, mu_form, vadd, window, zero
from .scalars import ONE, Scalar, ZERO


@dataclass(frozen=True, eq=False)
class TModuleSpec:
    n: int
    a: Scalar = field(default_factory=lambda: ZERO)
    b: Scalar = field(default_factory=lambda: ZERO)
    F: Scalar = field(default_factory=lambda: ZERO)
    quotient_v0: bool = False

    def __post_init__(self):
        for name in ("a", "b", "F"):
            object.__setattr__(self, name, Scalar.of(getattr(self, name)))
        if self.quotient_v0 and not (self.a.is_zero() and self.b.is_zero() and self.F.is_zero()):
            raise ValueError("the v_0 quotient is only defined for T(0,0,0)")

    def weight(self, kappa: LatticeVector) -> Scalar:
        """d_mu-eigenvalue of v_kappa."""
        return self.a + mu_form(kappa)


class TVector:
    """Finite combination of basis vectors v_kappa."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[LatticeVector, Scalar] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t: dict = {}
        for k, c in items:
            c = Scalar.of(c)
            k = tuple(k)
            if k in t:
                c = t[k] + c
            if c.is_zero():
                t.pop(k, None)
            else:
                t[k] = c
        self.terms = t

    @classmethod
    def basis(cls, kappa, coeff=ONE) -> "TVector":
        return cls({tuple(kappa): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, kappa) -> Scalar:
        return self.terms.get(tuple(kappa), ZERO)

    def items(self):
        return sorted(self.terms.items())

    def __add__(self, other: "TVector") -> "TVector":
        return TVector(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return TVector({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Scalar.of(c)
        return TVector({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TVector):
            return NotImplemented
        return self.terms.keys() == other.terms.keys() and all(
            c == other.terms[k] for k, c in self.terms.items()
        )

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})*v{list(k)}" for k, c in self.items()) or "0"
        return f"TVector({body})"


def _project(spec: TModuleSpec, v: TVector) -> TVector:
    if spec.quotient_v0 and zero(spec.n) in v.terms:
        return TVector({k: c for k, c in v.terms.items() if any(k)})
    return v


def basis_action(spec: TModuleSpec, sym: Basis, kappa: LatticeVector) -> list[tuple[LatticeVector, Scalar]]:
    """sym . v_kappa as [(kappa', coeff)]; empty when the result is zero."""
    if len(kappa) != spec.n:
        raise DimensionMismatch(f"v{list(kappa)} is not indexed by Z^{spec.n}")
    if sym.is_central:
        return []
    if len(sym.alpha) != spec.n:
        raise DimensionMismatch(f"{sym} does not act on a rank-{spec.n} module")
    target = vadd(kappa, sym.alpha)
    if spec.quotient_v0 and not any(target):
        return []
    if sym.kind == "E":
        c = spec.a + mu_form(kappa) + spec.b * mu_form(sym.alpha)
    else:
        c = spec.F
    return [(target, c)] if c else []


def t_act(spec: TModuleSpec, x: Element, v: TVector) -> TVector:
    """Action of an HVir element on a vector of T_mu(a, b, F)."""
    v = _project(spec, v)
    out: dict = {}
    for sym, cx in x.terms.items():
        for kappa, cv in v.terms.items():
            for target, c in basis_action(spec, sym, kappa):
                val = cx * cv * c
                out[target] = out[target] + val if target in out else val
    return TVector(out)


def t_axiom_defect(spec: TModuleSpec, x: Basis, y: Basis, kappa: LatticeVector) -> TVector:
    """[x,y].v_kappa - (x.(y.v_kappa) - y.(x.v_kappa)); zero in a module."""
    X, Y = Element.basis(x), Element.basis(y)
    v = _project(spec, TVector.basis(kappa))
    lhs = t_act(spec, bracket(Variant.HVIR, X, Y), v)
    rhs = t_act(spec, X, t_act(spec, Y, v)) - t_act(spec, Y, t_act(spec, X, v))
    return lhs - rhs


@dataclass
class SubmoduleReport:
    """Invariant subspaces found inside the window.

    ``subspaces`` lists the proper, nonzero cyclic submodules (each as its
    sorted basis of indices kappa), smallest first.  ``edge_effects`` counts
    nonzero action coefficients that leave the window; they are bookkeeping,
    not failures.
    """

    window: int
    indices: list
    subspaces: list
    edge_effects: int


def t_submodule_window(spec: TModuleSpec, B: int) -> SubmoduleReport:
    """Search the window span{v_kappa : |kappa_i| <= B} for invariant subspaces.

    Distinct kappa carry distinct weights, so every submodule is spanned by
    basis vectors.  Build the graph kappa -> kappa + alpha over generators
    with |alpha_i| <= B whose coefficient is a nonzero Scalar; the invariant
    subspaces are the sets closed under reachability, and each is a union of
    the closures of single vectors, which are what gets reported.
    """
    n = spec.n
    idx = [k for k in window(n, B) if not (spec.quotient_v0 and not any(k))]
    gens = [Basis(kind, a) for a in window(n, B) for kind in ("E", "H")]
    edges: dict = {k: set() for k in idx}
    edge_effects = 0
    for k in idx:
        for g in gens:
            for target, _ in basis_action(spec, g, k):
                if target in edges:
                    edges[k].add(target)
                elif not in_window(target, B):
                    edge_effects += 1
    closures = []
    for k in idx:
        seen = {k}
        stack = [k]
        while stack:
            u = stack.pop()
            for w in edges[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        closures.append(frozenset(seen))
    full = frozenset(idx)
    proper = sorted({c for c in closures if c != full}, key=lambda c: (len(c), sorted(c)))
    return SubmoduleReport(B, idx, [sorted(c) for c in proper], edge_effects)
