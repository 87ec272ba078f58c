"""Verma modules, their lowest-weight mirrors and generalized Verma modules.

All three are induced modules ``U(g) (x)_{U(p)} W``.  As a vector space this
is ``U(n) (x) W``, where ``n`` is the complementary "creation" subalgebra, so a
vector is a combination of pairs (PBW monomial over ``n``, basis key of
``W``).  A PBW monomial is a tuple of basis symbols sorted by a fixed key.

The action is computed by straightening::

    x . (y1 y2 ... yk (x) w) = y1 . (x . (y2 ... yk (x) w)) + [x, y1] . (y2 ... yk (x) w)

until ``x`` is either a creation generator that may be prepended, or meets
``w`` directly, where the inducing module ``W`` acts (the "wall").
"""

from __future__ import annotations

import random
from itertools import combinations
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .algebra import Basis, Element, Variant, bracket, basis_bracket, basis_window
from .lattice import (
    LatticeVector,
    in_window,
    is_negative,
    is_positive,
    lex_cmp,
    mu_form,
    vadd,
    vsum,
    window,
    zero,
)
from .repmod import TModuleSpec, TVector, t_act
from .scalars import ONE, Scalar, ZERO, mu

PBWMonomial = tuple  # tuple[Basis, ...], sorted
State = tuple  # (PBWMonomial, base key)


class DimensionTooSmall(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HighestWeight:
    """Eigenvalues on the highest-weight vector: E(0), H(0), C1, C2, C3."""

    lam: Scalar = field(default_factory=lambda: Scalar.var("lam"))
    c0: Scalar = field(default_factory=lambda: Scalar.var("c0"))
    c1: Scalar = field(default_factory=lambda: Scalar.var("c1"))
    c2: Scalar = field(default_factory=lambda: Scalar.var("c2"))
    c3: Scalar = field(default_factory=lambda: Scalar.var("c3"))

    def __post_init__(self):
        for name in ("lam", "c0", "c1", "c2", "c3"):
            object.__setattr__(self, name, Scalar.of(getattr(self, name)))


class ModuleVector:
    """Finite combination of states (PBW monomial, base key) with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        t: dict = {}
        for k, c in items:
            c = Scalar.of(c)
            if k in t:
                c = t[k] + c
            if c.is_zero():
                t.pop(k, None)
            else:
                t[k] = c
        self.terms = t

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, state) -> Scalar:
        return self.terms.get(state, ZERO)

    def __add__(self, other):
        return ModuleVector(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return ModuleVector({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Scalar.of(c)
        return ModuleVector({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.terms.keys() == other.terms.keys() and all(
            c == other.terms[k] for k, c in self.terms.items()
        )

    __hash__ = None

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _state_sort_key(kv[0]))

    def __repr__(self):
        body = " + ".join(f"({c})*{_fmt_state(s)}" for s, c in self.items()) or "0"
        return f"ModuleVector({body})"


def _state_sort_key(state):
    mono, base = state
    return (len(mono), [(s.alpha, s.kind) for s in mono], base if base is not None else ())


def _fmt_state(state) -> str:
    mono, base = state
    head = "".join(f"{s}*" for s in mono)
    tail = "v" if base is None else f"v{list(base)}"
    return head + tail


def weight_of(m: PBWMonomial, n: int) -> LatticeVector:
    """Sum of the factor indices (the weight offset of the monomial)."""
    return vsum([s.alpha for s in m], n)


class InducedModule:
    """Straightening engine shared by all induced modules.

    Subclasses define ``is_creation`` (membership in the creation
    subalgebra), ``factor_key`` (the PBW order) and ``wall`` (the action of a
    non-creation basis symbol on a base key, as ``[(base key, coeff)]``).
    """

    n: int

    def is_creation(self, sym: Basis) -> bool:
        raise NotImplementedError

    def factor_key(self, sym: Basis):
        raise NotImplementedError

    def wall(self, sym: Basis, base: Hashable) -> list:
        raise NotImplementedError

    def _bracket(self, x: Basis, y: Basis):
        return basis_bracket(x, y)

    # action -------------------------------------------------------------

    def act_basis(self, x: Basis, state: State) -> dict:
        """x . state as a dict state -> Scalar (memoized per module)."""
        cache = self.__dict__.setdefault("_cache", {})
        key = (x, state)
        hit = cache.get(key)
        if hit is None:
            hit = self._act_basis(x, state)
            cache[key] = hit
        return hit

    def _act_basis(self, x: Basis, state: State) -> dict:
        mono, base = state
        if not mono:
            if self.is_creation(x):
                return {((x,), base): ONE}
            return {((), b): c for b, c in self.wall(x, base)}
        y1 = mono[0]
        if self.is_creation(x) and self.factor_key(x) <= self.factor_key(y1):
            return {((x,) + mono, base): ONE}
        rest = (mono[1:], base)
        out: dict = {}
        for s, c in self.act_basis(x, rest).items():
            for s2, c2 in self.act_basis(y1, s).items():
                _accumulate(out, s2, c * c2)
        for z, cz in self._bracket(x, y1):
            for s, c in self.act_basis(z, rest).items():
                _accumulate(out, s, cz * c)
        return {k: v for k, v in out.items() if not v.is_zero()}

    def act(self, x: Element, v: ModuleVector) -> ModuleVector:
        out: dict = {}
        for sym, cx in x.terms.items():
            for state, cv in v.terms.items():
                for s, c in self.act_basis(sym, state).items():
                    _accumulate(out, s, cx * cv * c)
        return ModuleVector(out)

    def vector(self, mono: Sequence[Basis] = (), base: Hashable = None, coeff=ONE) -> ModuleVector:
        """The state ``mono (x) base``; ``mono`` is sorted into PBW order."""
        mono = tuple(sorted(mono, key=self.factor_key))
        for s in mono:
            if not self.is_creation(s):
                raise ValueError(f"{s} is not a creation generator")
        return ModuleVector({(mono, base): coeff})

    def representation_defect(self, x: Basis, y: Basis, v: ModuleVector) -> ModuleVector:
        """[x,y].v - (x.(y.v) - y.(x.v)); zero in a module."""
        X, Y = Element.basis(x), Element.basis(y)
        lhs = self.act(bracket(Variant.HVIR, X, Y), v)
        return lhs - (self.act(X, self.act(Y, v)) - self.act(Y, self.act(X, v)))

    def state_defect_is_zero(self, x: Basis, y: Basis, state: State) -> bool:
        """Fast path of :meth:`representation_defect` on a single state."""
        acc: dict = {}
        for z, cz in self._bracket(x, y):
            for s, c in self.act_basis(z, state).items():
                _accumulate(acc, s, cz * c)
        for p, q, sign in ((x, y, -1), (y, x, 1)):
            for s, c in self.act_basis(q, state).items():
                for s2, c2 in self.act_basis(p, s).items():
                    _accumulate(acc, s2, c * c2 if sign > 0 else -(c * c2))
        return all(v.is_zero() for v in acc.values())

    # independent word-rewriting path -----------------------------------

    def straighten(self, word: Sequence[Basis], base: Hashable = None, strategy: str = "leftmost") -> ModuleVector:
        """Normal form of ``word[0] word[1] ... (x) base`` by local rewriting.

        Redexes are adjacent pairs (x, y) with y a creation generator and
        either x not one or x after y in PBW order (rewritten to
        y x + [x,y]), and a non-creation letter next to the base (rewritten by
        the wall).  ``strategy`` picks the leftmost or rightmost redex; both
        must give the same result.
        """
        if strategy not in ("leftmost", "rightmost"):
            raise ValueError(f"unknown strategy {strategy!r}")
        pending: dict = {(tuple(word), base): ONE}
        done: dict = {}
        while pending:
            (w, b), c = pending.popitem()
            pos = self._redex(w, strategy)
            if pos is None:
                _accumulate(done, (w, b), c)
                continue
            if pos == len(w) - 1 and not self.is_creation(w[pos]):
                for b2, c2 in self.wall(w[pos], b):
                    _accumulate(pending, (w[:-1], b2), c * c2)
                continue
            x, y = w[pos], w[pos + 1]
            _accumulate(pending, (w[:pos] + (y, x) + w[pos + 2:], b), c)
            for z, cz in self._bracket(x, y):
                _accumulate(pending, (w[:pos] + (z,) + w[pos + 2:], b), c * cz)
        return ModuleVector(done)

    def _redex(self, w: tuple, strategy: str):
        found = []
        for i in range(len(w)):
            x = w[i]
            if i == len(w) - 1:
                if not self.is_creation(x):
                    found.append(i)
                continue
            y = w[i + 1]
            if self.is_creation(y) and (not self.is_creation(x) or self.factor_key(x) > self.factor_key(y)):
                found.append(i)
        if not found:
            return None
        return found[0] if strategy == "leftmost" else found[-1]


def _accumulate(d: dict, key, value: Scalar) -> None:
    if key in d:
        d[key] = d[key] + value
    else:
        d[key] = value


class VermaModule(InducedModule):
    """M(lambda) induced from the one-dimensional module of the non-negative part.

    Creation generators are E(alpha), H(alpha) with alpha lex-negative, in PBW
    order lex on alpha ascending with E before H.  The positive part kills
    the highest-weight vector.  With ``mirror`` the roles of the lex-positive
    and lex-negative halves are exchanged (lowest-weight modules); the PBW
    order is then lex on -alpha ascending.
    """

    def __init__(self, hw: HighestWeight, n: int, mirror: bool = False):
        self.hw = hw
        self.n = n
        self.mirror = mirror
        self._central = {"C1": hw.c1, "C2": hw.c2, "C3": hw.c3}

    def mirrored(self) -> "VermaModule":
        return VermaModule(self.hw, self.n, not self.mirror)

    def is_creation(self, sym: Basis) -> bool:
        if sym.is_central:
            return False
        return is_positive(sym.alpha) if self.mirror else is_negative(sym.alpha)

    def factor_key(self, sym: Basis):
        a = tuple(-c for c in sym.alpha) if self.mirror else sym.alpha
        return (a, sym.kind)

    def wall(self, sym: Basis, base) -> list:
        if sym.is_central:
            return [(base, self._central[sym.kind])]
        if any(sym.alpha):
            return []
        return [(base, self.hw.lam if sym.kind == "E" else self.hw.c0)]

    def highest(self) -> ModuleVector:
        return self.vector()

    def monomial(self, mono: Sequence[Basis]) -> ModuleVector:
        return self.vector(mono)


def verma_act(hw: HighestWeight, x: Element, v: ModuleVector, n: int, mirror: bool = False) -> ModuleVector:
    """Action of ``x`` on a vector of M(lambda) (or its mirror)."""
    return _verma(hw, n, mirror).act(x, v)


_MODULES: dict = {}


def _verma(hw: HighestWeight, n: int, mirror: bool) -> VermaModule:
    key = (id(hw), n, mirror)
    mod = _MODULES.get(key)
    if mod is None or mod.hw is not hw:
        mod = VermaModule(hw, n, mirror)
        _MODULES[key] = mod
    return mod


# weight spaces ----------------------------------------------------------


def creation_generators(n: int, K: int, mirror: bool = False) -> list[Basis]:
    """E and H factors with |alpha_i| <= K in the creation half, in PBW order."""
    sign = 1 if mirror else -1
    vecs = [a for a in window(n, K) if lex_cmp(a, zero(n)) == sign]
    if mirror:
        vecs.sort(key=lambda a: tuple(-c for c in a))
    return [Basis(kind, a) for a in vecs for kind in ("E", "H")]


def weight_basis(gamma: LatticeVector, D: int, K: int, mirror: bool = False) -> list[PBWMonomial]:
    """PBW monomials with at most D factors from the K-window summing to gamma.

    Output order is by degree, then by the factor sequence in PBW order.
    """
    if D < 1 or K < 1:
        raise ValueError("D and K must be positive")
    gamma = tuple(gamma)
    n = len(gamma)
    gens = creation_generators(n, K, mirror)
    pos = {g: i for i, g in enumerate(gens)}
    out: list = [()] if not any(gamma) else []

    def rec(start: int, left: int, target: LatticeVector, prefix: tuple):
        # the last factor is looked up rather than searched
        for kind in ("E", "H"):
            g = Basis(kind, target)
            i = pos.get(g)
            if i is not None and i >= start:
                found[len(prefix) + 1].append(prefix + (g,))
        if left == 1:
            return
        for i in range(start, len(gens)):
            g = gens[i]
            rec(i, left - 1, tuple(t - c for t, c in zip(target, g.alpha)), prefix + (g,))

    found: dict = {d: [] for d in range(1, D + 1)}
    rec(0, D, gamma, ())
    for d in range(1, D + 1):
        out.extend(sorted(found[d], key=lambda m: [pos[g] for g in m]))
    return out


def weight_growth(gamma: LatticeVector, D: int, K_range: Iterable[int], mirror: bool = False) -> list[int]:
    return [len(weight_basis(gamma, D, K, mirror)) for K in K_range]


# generalized Verma modules ----------------------------------------------


def first_degree(sym: Basis) -> int:
    """Degree in the Z-grading by the first coordinate (centrals: 0)."""
    return 0 if sym.is_central else sym.alpha[0]


class GeneralizedVermaModule(InducedModule):
    """Module induced from T_{mu'}(a,b,F) over the non-negative first-coordinate part.

    ``spec`` lives in rank n-1 with its own m1..m(n-1); it is lifted by
    m_i -> m_(i+1) and embedded as kappa' -> (0, kappa').  Base keys are the
    lifted indices kappa in Z^n with kappa_1 = 0.  Creation generators have
    alpha_1 < 0; those with alpha_1 > 0 kill the base.
    """

    def __init__(self, spec: TModuleSpec, n: int):
        if n < 2:
            raise DimensionTooSmall("the first-coordinate grading needs n >= 2")
        if spec.n != n - 1:
            raise ValueError(f"expected a rank-{n - 1} module, got rank {spec.n}")
        self.spec = spec
        self.n = n
        shift = lift_map(n - 1)
        self.a = spec.a.subs(shift)
        self.b = spec.b.subs(shift)
        self.F = spec.F.subs(shift)
        self.quotient_v0 = spec.quotient_v0

    def is_creation(self, sym: Basis) -> bool:
        return not sym.is_central and sym.alpha[0] < 0

    def factor_key(self, sym: Basis):
        return (sym.alpha, sym.kind)

    def wall(self, sym: Basis, kappa) -> list:
        if sym.is_central or sym.alpha[0] > 0:
            return []
        target = vadd(kappa, sym.alpha)
        if self.quotient_v0 and not any(target):
            return []
        if sym.kind == "E":
            c = self.a + mu_form(kappa) + self.b * mu_form(sym.alpha)
        else:
            c = self.F
        return [(target, c)] if c else []

    def base_vector(self, kappa_prime: Sequence[int], coeff=ONE) -> ModuleVector:
        return ModuleVector({((), (0,) + tuple(kappa_prime)): coeff})

    def level(self, state: State) -> int:
        mono, _ = state
        return -sum(s.alpha[0] for s in mono)

    def level_basis(self, i: int, kappa_prime: Sequence[int], B: int) -> list[State]:
        """States of level i and total index (-i, kappa'): factors with
        alpha_1 < 0 and |alpha'_j| <= B, tensored with v at the remaining index."""
        if i < 0:
            return []
        total = (-i,) + tuple(kappa_prime)
        tails = window(self.n - 1, B)
        gens = [Basis(kind, (f,) + t) for f in range(-i, 0) for t in tails for kind in ("E", "H")]
        gens.sort(key=self.factor_key)
        out = []

        def rec(start: int, need: int, acc: tuple):
            if need == 0:
                base = tuple(t - s for t, s in zip(total, vsum([g.alpha for g in acc], self.n)))
                if not (self.quotient_v0 and not any(base)):
                    out.append((acc, base))
                return
            for j in range(start, len(gens)):
                g = gens[j]
                if -g.alpha[0] <= need:
                    rec(j, need + g.alpha[0], acc + (g,))

        rec(0, i, ())
        return out


def lift_map(rank: int) -> dict:
    """m_i -> m_(i+1) for i = 1..rank (the embedding Gamma_{mu'} -> Gamma_mu)."""
    return {f"m{i}": mu(i + 1) for i in range(rank, 0, -1)}


def embed(sym: Basis) -> Basis:
    """E(alpha') -> E(0, alpha'), H(alpha') -> H(0, alpha'); centrals fixed."""
    if sym.is_central:
        return sym
    return Basis(sym.kind, (0,) + sym.alpha)


@dataclass
class GenVermaReport:
    n: int
    level: int
    window: int
    grading_checked: int = 0
    grading_failures: list = field(default_factory=list)
    axiom_checked: int = 0
    axiom_failures: list = field(default_factory=list)
    level0_checked: int = 0
    level0_failures: list = field(default_factory=list)
    level_count: int = 0
    expected_level1_count: int | None = None
    eigenvalue: Scalar | None = None
    eigenvalue_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.grading_failures
            or self.axiom_failures
            or self.level0_failures
            or self.eigenvalue_failures
            or (self.expected_level1_count is not None and self.level_count != self.expected_level1_count)
        )


def genverma_level_check(
    spec: TModuleSpec,
    level: int,
    B: int,
    samples: int | None = 60,
    seed: int = 0,
    kappa_prime: Sequence[int] | None = None,
) -> GenVermaReport:
    """Check the generalized Verma module built on ``spec`` (rank n-1) at one level.

    (a) grading: every windowed generator of first degree j maps level-i
        states to level i-j (and to zero below level 0);
    (b) module axiom on ``samples`` seeded (x, y, state) draws, or on every
        unordered generator pair and state when ``samples`` is None;
    (c) level 0: embedded generators act as ``t_act`` after m_i -> m_(i+1);
    plus the level basis count (2(2B+1)^(n-1) at level 1) and the shared
    E(0)-eigenvalue a - i*m1 + mu.(0, kappa').
    """
    n = spec.n + 1
    mod = GeneralizedVermaModule(spec, n)
    kp = tuple(kappa_prime) if kappa_prime is not None else (0,) * (n - 1)
    rep = GenVermaReport(n, level, B)
    states = mod.level_basis(level, kp, B)
    rep.level_count = len(states)
    if level == 1:
        rep.expected_level1_count = 2 * (2 * B + 1) ** (n - 1)
        if spec.quotient_v0 and in_window(kp, B):
            # the factor with alpha' = kappa' would land on the removed v_0
            rep.expected_level1_count -= 2

    expected = mod.a - Scalar.of(level) * mu(1) + mu_form((0,) + kp)
    rep.eigenvalue = expected
    e0 = Element.basis(Basis("E", zero(n)))
    for st in states:
        v = ModuleVector({st: ONE})
        if mod.act(e0, v) != v * expected:
            rep.eigenvalue_failures.append(st)

    gens = basis_window(n, B)
    for x in gens:
        j = first_degree(x)
        for st in states:
            rep.grading_checked += 1
            image = mod.act_basis(x, st)
            bad = [s for s in image if mod.level(s) != level - j]
            if bad or (level - j < 0 and image):
                rep.grading_failures.append((x, st))

    if samples is None:
        triples = [(x, y, st) for x, y in combinations(gens, 2) for st in states]
    else:
        rng = random.Random(seed)
        triples = [(rng.choice(gens), rng.choice(gens), rng.choice(states)) for _ in range(samples if states else 0)]
    for x, y, st in triples:
        rep.axiom_checked += 1
        if not mod.state_defect_is_zero(x, y, st):
            rep.axiom_failures.append((x, y, st))

    if level == 0:
        shift = lift_map(n - 1)
        small = basis_window(n - 1, B)
        for x in small:
            for kappa in window(n - 1, B):
                if spec.quotient_v0 and not any(kappa):
                    continue
                rep.level0_checked += 1
                ours = mod.act(Element.basis(embed(x)), mod.base_vector(kappa))
                ref = t_act(spec, Element.basis(x), TVector.basis(kappa))
                lifted = ModuleVector({((), (0,) + k): c.subs(shift) for k, c in ref.terms.items()})
                if ours != lifted:
                    rep.level0_failures.append((x, kappa))
    return rep
