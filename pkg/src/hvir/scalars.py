"""Exact arithmetic in Q(m1, ..., mn, params).

Polynomials are sparse dicts from exponent tuples to rational coefficients.
Exponent tuples are indexed by a process-wide variable registry and carry no
trailing zeros, so each monomial has exactly one representation.  A
:class:`Scalar` is a fraction ``num/den`` of polynomials; equality is decided
by cross-multiplication, never by gcd reduction.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

DEFAULT_PARAMS = ("a", "b", "F", "lam", "c0", "c1", "c2", "c3", "x", "y")
RESERVED_NAMES = frozenset({"E", "H", "C1", "C2", "C3"})


class DivisionByZeroScalar(ZeroDivisionError):
    pass


class MissingAssignment(KeyError):
    pass


class DenominatorVanishes(ZeroDivisionError):
    """Raised when a specialization sends a denominator to zero."""


class UnknownIndeterminate(ValueError):
    pass


# ---------------------------------------------------------------------------
# variable registry

_registry_lock = threading.Lock()
_var_index: dict[str, int] = {}
_var_names: list[str] = []


def var_id(name: str) -> int:
    i = _var_index.get(name)
    if i is None:
        with _registry_lock:
            i = _var_index.get(name)
            if i is None:
                i = len(_var_names)
                _var_names.append(name)
                _var_index[name] = i
    return i


def var_name(i: int) -> str:
    return _var_names[i]


def _name_key(name: str):
    # m1 < m2 < ... < m10 < other names (case-insensitive alphabetical)
    if name[0] == "m" and name[1:].isdigit():
        return (0, int(name[1:]), name)
    return (1, name.lower(), name)


# ---------------------------------------------------------------------------
# polynomials

Monomial = tuple  # exponents by registry index, no trailing zeros


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


_mono_cache: dict = {}


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    key = (a, b)
    r = _mono_cache.get(key)
    if r is None:
        r = _mono_cache[key] = _mono_mul_raw(a, b)
    return r


def _mono_mul_raw(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    r = list(a)
    for i, e in enumerate(b):
        r[i] += e
    return tuple(r)


def _mono_div(a: Monomial, b: Monomial):
    """a / b if b divides a, else None."""
    if len(b) > len(a):
        return None
    r = list(a)
    for i, e in enumerate(b):
        r[i] -= e
        if r[i] < 0:
            return None
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


def _order_key(m: Monomial):
    # graded lex on registry indices; a monomial order, used for division
    return (sum(m), m)


class Poly:
    """Sparse multivariate polynomial with rational coefficients.

    Treated as immutable: every operation returns a new instance.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        self.terms = {} if terms is None else terms

    @classmethod
    def const(cls, c: Number) -> "Poly":
        c = _norm(c)
        return cls({(): c}) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        i = var_id(name)
        if power == 0:
            return cls({(): 1})
        return cls({(0,) * i + (power,): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self):
        """The coefficient if the polynomial is constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def variables(self) -> set[str]:
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(_var_names[i])
        return out

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = _norm(s + c)
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly(t)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: Number) -> "Poly":
        c = _norm(c)
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly({m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(a) == 1 and () in a:
            return other.scale(a[()])
        if len(b) == 1 and () in b:
            return self.scale(b[()])
        t: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                s = t.get(m)
                t[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly({m: _norm(c) for m, c in t.items() if c})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def leading(self):
        m = max(self.terms, key=_order_key)
        return m, self.terms[m]

    def divexact(self, other: "Poly"):
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        if other.is_zero():
            raise DivisionByZeroScalar("division by the zero polynomial")
        lm, lc = other.leading()
        rem = self
        q: dict = {}
        while rem.terms:
            m, c = rem.leading()
            qm = _mono_div(m, lm)
            if qm is None:
                return None
            qc = _norm(Fraction(c) / lc)
            q[qm] = qc
            rem = rem - Poly({qm: qc}) * other
        return Poly(q)

    def evaluate(self, values: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = Fraction(c)
            for i, e in enumerate(m):
                if e:
                    v *= values[i] ** e
            total += v
        return total

    def content_denominator(self) -> int:
        return lcm(*(Fraction(c).denominator for c in self.terms.values())) if self.terms else 1

    def integer_content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c))
        return g

    def display_terms(self) -> list:
        """Terms in graded-lex order (highest first) on display variable order."""

        def key(item):
            m = item[0]
            named = sorted(((_name_key(_var_names[i]), e) for i, e in enumerate(m) if e))
            # higher total degree first, then earlier variables with larger exponents
            return (-sum(m), [(k, -e) for k, e in named])

        return sorted(self.terms.items(), key=key)

    def __repr__(self):
        return f"Poly({_format_poly(self)})"


def _format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in sorted(((i, e) for i, e in enumerate(m) if e), key=lambda p: _name_key(_var_names[p[0]])):
        name = _var_names[i]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(p.display_terms()):
        neg = c < 0
        c = -c if neg else c
        ms = _format_monomial(m)
        if not ms:
            body = str(c)
        elif c == 1:
            body = ms
        else:
            body = f"{c}*{ms}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


ZERO_POLY = Poly()
ONE_POLY = Poly({(): 1})


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """Element of the fraction field of Q[m1, ..., mn, params]."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = ONE_POLY):
        if den.is_zero():
            raise DivisionByZeroScalar("zero denominator")
        if num.is_zero():
            den = ONE_POLY
        elif den is not ONE_POLY:
            c = den.constant_value()
            if c is not None:
                num = num.scale(Fraction(1) / c) if c != 1 else num
                den = ONE_POLY
            else:
                q = num.divexact(den)
                if q is not None:
                    num, den = q, ONE_POLY
        self.num = num
        self.den = den

    # construction -------------------------------------------------------

    @classmethod
    def of(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Poly.const(value))
        if isinstance(value, Poly):
            return cls(value)
        raise TypeError(f"cannot make a Scalar from {type(value).__name__}")

    @classmethod
    def var(cls, name: str) -> "Scalar":
        return cls(Poly.var(name))

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den is ONE_POLY

    def constant_value(self):
        """Rational value if the scalar involves no indeterminates, else None."""
        n = self.num.constant_value()
        d = self.den.constant_value()
        if n is None or d is None:
            return None
        return Fraction(n) / d

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    # arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.of(other)
        if self.den is ONE_POLY and other.den is ONE_POLY:
            return Scalar(self.num + other.num)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den)

    def __sub__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.of(other)
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return Scalar.of(other) - self

    def __mul__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar(self.num.scale(other), self.den)
            return NotImplemented
        if self.den is ONE_POLY and other.den is ONE_POLY:
            return Scalar(self.num * other.num)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        other = Scalar.of(other) if not isinstance(other, Scalar) else other
        if other.is_zero():
            raise DivisionByZeroScalar("division by the zero scalar")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.of(other) / self

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return Scalar(self.den ** (-k), self.num ** (-k))
        return Scalar(self.num**k, self.den**k)

    # equality -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.of(other)
            else:
                return NotImplemented
        if self.den is ONE_POLY and other.den is ONE_POLY:
            return self.num.terms == other.num.terms
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None  # equal scalars may have different representations

    # evaluation ---------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        """Exact rational value under a full assignment of the indeterminates."""
        values = {}
        for name in self.variables():
            if name not in assignment:
                raise MissingAssignment(name)
            values[var_id(name)] = Fraction(assignment[name])
        d = self.den.evaluate(values)
        if d == 0:
            raise DenominatorVanishes(f"denominator {_format_poly(self.den)} vanishes")
        return self.num.evaluate(values) / d

    def subs(self, mapping: Mapping[str, "Scalar | Number"]) -> "Scalar":
        """Substitute scalars for some indeterminates (polynomial composition)."""
        repl = {var_id(k): Scalar.of(v) for k, v in mapping.items()}
        return _compose(self.num, repl) / _compose(self.den, repl)

    # printing -----------------------------------------------------------

    def normalized(self) -> tuple[Poly, Poly]:
        """(num, den) with integer coefficients, unit content, den leading coefficient positive."""
        ln = self.num.content_denominator()
        ld = self.den.content_denominator()
        n = self.num.scale(ln * ld)
        d = self.den.scale(ln * ld)
        # now both are integral
        g = gcd(n.integer_content(), d.integer_content()) or 1
        n, d = n.scale(Fraction(1, g)), d.scale(Fraction(1, g))
        if d.display_terms()[0][1] < 0:
            n, d = -n, -d
        return n, d

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        n, d = self.normalized()
        ns = _format_poly(n)
        dc = d.constant_value()
        if dc == 1:
            return ns
        if len(n.terms) > 1:
            ns = f"({ns})"
        if dc is not None:
            return f"{ns}/{dc}"
        ds = _format_poly(d)
        simple_den = len(d.terms) == 1 and next(iter(d.terms.values())) == 1 and "*" not in ds
        return f"{ns}/{ds}" if simple_den else f"{ns}/({ds})"

    def __repr__(self):
        return f"Scalar({self})"


def _compose(p: Poly, repl: Mapping[int, Scalar]) -> Scalar:
    total = Scalar(ZERO_POLY)
    for m, c in p.terms.items():
        factor = Scalar.of(c)
        keep: list[int] = []
        for i, e in enumerate(m):
            if e and i in repl:
                factor = factor * repl[i] ** e
                keep.append(0)
            else:
                keep.append(e)
        while keep and keep[-1] == 0:
            keep.pop()
        term = Poly({tuple(keep): 1})
        total = total + factor * Scalar(term)
    return total


ZERO = Scalar(ZERO_POLY)
ONE = Scalar(ONE_POLY)


def scalar_arith(op: str, lhs: Scalar, rhs: Scalar | None = None) -> Scalar:
    """Dispatch form of the field operations: op in add, sub, mul, div, neg."""
    if op == "neg":
        return -lhs
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown operation {op!r}")


def scalar_eq(lhs: Scalar, rhs: Scalar) -> bool:
    return lhs == rhs


def scalar_eval(s: Scalar, assignment: Mapping[str, Number]) -> Fraction:
    return s.evaluate(assignment)


def mu(i: int) -> Scalar:
    """The indeterminate m_i (1-based)."""
    return Scalar.var(f"m{i}")


@dataclass(frozen=True)
class Context:
    """Declared indeterminates of a session: m1..mn plus named parameters."""

    n: int
    params: tuple[str, ...] = DEFAULT_PARAMS
    _names: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        bad = RESERVED_NAMES.intersection(self.params)
        if bad:
            raise ValueError(f"reserved names cannot be parameters: {sorted(bad)}")
        mus = [f"m{i}" for i in range(1, self.n + 1)]
        object.__setattr__(self, "_names", frozenset(mus) | frozenset(self.params))

    @property
    def names(self) -> frozenset:
        return self._names

    def __contains__(self, name: str) -> bool:
        return name in self._names

    def mu_names(self) -> list[str]:
        return [f"m{i}" for i in range(1, self.n + 1)]


def check_names(s: Scalar, ctx: Context) -> None:
    unknown = s.variables() - ctx.names
    if unknown:
        raise UnknownIndeterminate(", ".join(sorted(unknown)))


def total(values: Iterable[Scalar]) -> Scalar:
    out = ZERO
    for v in values:
        out = out + v
    return out
