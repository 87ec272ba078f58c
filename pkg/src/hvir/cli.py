"""Command-line interface: ``hvir <command> [options]``.

Every command prints one JSON report ``{command, status, payload,
counterexamples}`` on stdout.  Exit codes: 0 ok, 1 fail or inconsistent
(including a non-generic mu specialization), 2 usage or parse error.

Session options (``--n``, ``--params``, ``--B``, ``--D``, ``--K``, ``--mu``,
``--seed``) may appear before or after the command name.  Their defaults
come from a JSON config file given by ``--config`` or the ``HVIR_CONFIG``
environment variable; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from itertools import combinations
from typing import Any, Sequence

from .algebra import (
    Basis,
    Element,
    Variant,
    VariantMismatch,
    antisymmetry_scan,
    basis_window,
    bracket,
    format_element,
    jacobi_defect,
    jacobi_scan,
    _raw_jacobi_nonzero,
)
from .cocycles import (
    Cochain2,
    InconsistentCocycle,
    NotAntisymmetric,
    OutsideWindow,
    UnderdeterminedWindow,
    agrees_on_window,
    check_cocycle,
    coboundary_function,
    combination,
    decompose_cocycle,
    generator_cocycle,
    theta_defect,
)
from .lattice import DimensionMismatch, NonGenericSpecialization, guard_index, specialization, window
from .parsing import ExprSyntaxError, parse_element, parse_lattice, parse_scalar
from .repmod import TModuleSpec, TVector, t_act, t_axiom_defect, t_submodule_window
from .scalars import DEFAULT_PARAMS, Context, Scalar, UnknownIndeterminate
from .verma import (
    DimensionTooSmall,
    HighestWeight,
    VermaModule,
    genverma_level_check,
    weight_basis,
    weight_growth,
)

CONFIG_ENV = "HVIR_CONFIG"


class UsageError(Exception):
    pass


@dataclass
class SessionConfig:
    n: int = 2
    params: tuple = DEFAULT_PARAMS
    window_B: int = 2
    degree_D: int = 2
    coord_K: int = 2
    mu_values: tuple | None = None
    seed: int = 0

    def __post_init__(self):
        self.params = tuple(self.params)
        for name in ("n", "window_B", "degree_D", "coord_K"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise UsageError(f"{name} must be a positive integer, got {v!r}")
        if self.mu_values is not None:
            self.mu_values = tuple(Fraction(v) for v in self.mu_values)
            if len(self.mu_values) != self.n:
                raise UsageError(f"--mu needs {self.n} values, got {len(self.mu_values)}")
        try:
            self.context
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    @property
    def context(self) -> Context:
        return Context(self.n, self.params)

    def specialize(self, s: Scalar) -> Scalar:
        if self.mu_values is None:
            return s
        return s.subs({f"m{i + 1}": v for i, v in enumerate(self.mu_values)})


def read_element(text: str, cfg: SessionConfig) -> Element:
    """Parse an element in the session context, guarding indices when mu is specialized."""
    if cfg.mu_values is None:
        return parse_element(text, cfg.context)
    with specialization(cfg.mu_values):
        return parse_element(text, cfg.context)


# ---------------------------------------------------------------------------
# serialization


class Serializer:
    """Converts results to JSON values, specializing mu when requested."""

    def __init__(self, cfg: SessionConfig):
        self.cfg = cfg

    def scalar(self, s: Scalar) -> str:
        return str(self.cfg.specialize(s))

    def element(self, x: Element) -> str:
        if self.cfg.mu_values is None:
            return format_element(x)
        return format_element(x.map_coeffs(self.cfg.specialize))

    @staticmethod
    def symbol(s: Basis) -> str:
        return str(s)

    def tvector(self, v: TVector) -> list:
        return [{"kappa": list(k), "coeff": self.scalar(c)} for k, c in v.items()]

    @staticmethod
    def pbw(m) -> list:
        return [{"kind": s.kind, "alpha": list(s.alpha)} for s in m]

    def module_vector(self, v) -> list:
        out = []
        for (mono, base), c in v.items():
            item = {"monomial": self.pbw(mono), "coeff": self.scalar(c)}
            if base is not None:
                item["kappa"] = list(base)
            out.append(item)
        return out

    def cochain2(self, C: Cochain2) -> list:
        return [{"pair": [str(x), str(y)], "value": self.scalar(v)} for x, y, v in C.entries()]


def _report(command: str, status: str, payload: dict, counterexamples: list | None = None) -> dict:
    return {"command": command, "status": status, "payload": payload, "counterexamples": counterexamples or []}


# ---------------------------------------------------------------------------
# input helpers


def _read_json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprSyntaxError(f"bad JSON: {exc.msg}", exc.pos, text) from None


def _symbol(text: str, cfg: SessionConfig) -> Basis:
    x = parse_element(text, cfg.context)
    if len(x.terms) != 1 or next(iter(x.terms.values())) != Scalar.of(1):
        raise UsageError(f"expected a single basis symbol, got {text!r}")
    return next(iter(x.terms))


def _monomial(data, n: int) -> list[Basis]:
    if not isinstance(data, list):
        raise UsageError("a PBW monomial is a JSON list of {kind, alpha}")
    out = []
    for f in data:
        if not isinstance(f, dict) or f.get("kind") not in ("E", "H") or not isinstance(f.get("alpha"), list):
            raise UsageError(f"bad PBW factor {f!r}")
        alpha = parse_lattice(json.dumps(f["alpha"]), n)
        out.append(Basis(f["kind"], alpha))
    return out


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        data = _read_json_arg(text)
    else:
        data = [t for t in text.split(",") if t.strip()]
    try:
        return [int(t) for t in data]
    except (TypeError, ValueError):
        raise UsageError(f"expected a list of integers, got {text!r}") from None


def _tmod_spec(args, cfg: SessionConfig, n: int | None = None) -> TModuleSpec:
    ctx = cfg.context
    a, b, F = (parse_scalar(getattr(args, k), ctx) for k in ("a", "b", "F"))
    try:
        return TModuleSpec(cfg.n if n is None else n, a, b, F, quotient_v0=args.quotient)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _highest_weight(args, cfg: SessionConfig) -> HighestWeight:
    ctx = cfg.context
    return HighestWeight(*(parse_scalar(getattr(args, k), ctx) for k in ("lam", "c0", "c1", "c2", "c3")))


# ---------------------------------------------------------------------------
# commands


def cmd_bracket(args, cfg: SessionConfig, out: Serializer) -> dict:
    ctx = cfg.context
    x, y = parse_element(args.lhs, ctx), parse_element(args.rhs, ctx)
    variant = Variant(args.variant)
    try:
        r = bracket(variant, x, y)
    except VariantMismatch as exc:
        raise UsageError(str(exc)) from None
    return _report("bracket", "ok", {"lhs": out.element(x), "rhs": out.element(y), "result": out.element(r)})


def cmd_jacobi(args, cfg: SessionConfig, out: Serializer) -> dict:
    variant = Variant(args.variant)
    ctx = cfg.context
    if args.x is not None:
        if args.y is None or args.z is None:
            raise UsageError("--x, --y and --z go together")
        x, y, z = (parse_element(t, ctx) for t in (args.x, args.y, args.z))
        d = jacobi_defect(variant, x, y, z)
        payload = {"mode": "elements", "defect": out.element(d)}
        if d.is_zero():
            return _report("jacobi", "ok", payload)
        return _report("jacobi", "fail", payload, [[out.element(x), out.element(y), out.element(z)]])

    B = cfg.window_B
    if cfg.mu_values is not None:
        # the scans run on symbolic mu; check the indices they touch up front
        for a in window(cfg.n, 2 * B):
            guard_index(a)
    if args.exhaustive:
        anti = antisymmetry_scan(cfg.n, B, variant)
        jac = jacobi_scan(cfg.n, B, variant)
        payload = {"mode": "exhaustive", "window": B, "pairs": anti.checked, "triples": jac.checked}
        bad = [c for c in (anti.counterexample, jac.counterexample) if c is not None]
    else:
        syms = basis_window(cfg.n, B, variant)
        rng = random.Random(cfg.seed)
        bad = []
        for _ in range(args.samples):
            t = tuple(rng.choice(syms) for _ in range(3))
            if _raw_jacobi_nonzero(*t):
                bad.append(t)
                break
        payload = {"mode": "sampled", "window": B, "seed": cfg.seed, "triples": args.samples}
    status = "fail" if bad else "ok"
    return _report("jacobi", status, payload, [[str(s) for s in t] for t in bad])


def _cochain_from_json(data, cfg: SessionConfig) -> Cochain2:
    if not isinstance(data, list):
        raise UsageError("a 2-cochain is a JSON list of {pair, value}")
    entries = []
    for item in data:
        try:
            p, q = item["pair"]
            value = item["value"]
        except (KeyError, TypeError, ValueError):
            raise UsageError(f"bad cochain entry {item!r}") from None
        entries.append((_symbol(p, cfg), _symbol(q, cfg), parse_scalar(str(value), cfg.context)))
    return Cochain2.from_entries(entries, cfg.n, cfg.window_B)


def cmd_cocycle_check(args, cfg: SessionConfig, out: Serializer) -> dict:
    if (args.which is None) == (args.cochain is None):
        raise UsageError("give exactly one of --which or --cochain")
    if args.which is not None:
        rep = check_cocycle(generator_cocycle(args.which), cfg.n, cfg.window_B)
        payload = {"cocycle": f"C{args.which}", "window": cfg.window_B, "triples": rep.checked}
    else:
        C = _cochain_from_json(_read_json_arg(args.cochain), cfg)
        rep = check_cocycle(C, cfg.n, cfg.window_B, closed_only=True)
        payload = {"cocycle": "input", "window": cfg.window_B, "triples": rep.checked}
    if rep.ok:
        return _report("cocycle-check", "ok", payload)
    x, y, z, d = rep.witness
    payload["defect"] = out.scalar(d)
    return _report("cocycle-check", "fail", payload, [[str(x), str(y), str(z)]])


def cmd_cocycle_decompose(args, cfg: SessionConfig, out: Serializer) -> dict:
    C = _cochain_from_json(_read_json_arg(args.cochain), cfg)
    try:
        dec = decompose_cocycle(C)
    except InconsistentCocycle as exc:
        w = exc.witness
        cex = [str(s) for s in w[:3]] if isinstance(w, tuple) else [str(w)]
        return _report("cocycle-decompose", "inconsistent", {"window": cfg.window_B}, [cex])
    except UnderdeterminedWindow as exc:
        raise UsageError(str(exc)) from None
    mismatch = agrees_on_window(C, combination(dec.coeffs, coboundary_function(dec.cob)), cfg.n, cfg.window_B)
    payload = {
        "window": cfg.window_B,
        "a": [out.scalar(c) for c in dec.coeffs],
        "b": [{"symbol": str(s), "value": out.scalar(v)} for s, v in sorted(dec.cob.values.items(), key=lambda kv: (kv[0].kind, kv[0].alpha))],
        "reproduces_input": mismatch is None,
    }
    if mismatch is not None:
        return _report("cocycle-decompose", "fail", payload, [[str(s) for s in mismatch]])
    return _report("cocycle-decompose", "ok", payload)


def cmd_theta_check(args, cfg: SessionConfig, out: Serializer) -> dict:
    th = parse_scalar(args.theta, Context(1, ("x",)))
    d = theta_defect(args.which, th)
    payload = {"which": args.which, "theta": str(th), "defect": str(d)}
    return _report("theta-check", "ok" if d.is_zero() else "fail", payload, [] if d.is_zero() else [str(d)])


def cmd_tmod_act(args, cfg: SessionConfig, out: Serializer) -> dict:
    spec = _tmod_spec(args, cfg)
    x = parse_element(args.x, cfg.context)
    if args.vector is not None:
        data = _read_json_arg(args.vector)
        if not isinstance(data, list):
            raise UsageError("a T-vector is a JSON list of {kappa, coeff}")
        v = TVector(
            (parse_lattice(json.dumps(d["kappa"]), cfg.n), parse_scalar(str(d.get("coeff", "1")), cfg.context))
            for d in data
        )
    elif args.kappa is not None:
        v = TVector.basis(parse_lattice(args.kappa, cfg.n))
    else:
        raise UsageError("give --kappa or --vector")
    r = t_act(spec, x, v)
    return _report("tmod-act", "ok", {"x": out.element(x), "v": out.tvector(v), "result": out.tvector(r)})


def cmd_tmod_axioms(args, cfg: SessionConfig, out: Serializer) -> dict:
    spec = _tmod_spec(args, cfg)
    B = cfg.window_B
    gens = basis_window(cfg.n, B)
    kappas = [k for k in window(cfg.n, B) if not (spec.quotient_v0 and not any(k))]
    if args.exhaustive:
        cases = [(x, y, k) for x, y in combinations(gens, 2) for k in kappas]
        mode = "exhaustive"
    else:
        rng = random.Random(cfg.seed)
        cases = [(rng.choice(gens), rng.choice(gens), rng.choice(kappas)) for _ in range(args.samples)]
        mode = "sampled"
    bad = []
    for x, y, k in cases:
        d = t_axiom_defect(spec, x, y, k)
        if not d.is_zero():
            bad.append({"x": str(x), "y": str(y), "kappa": list(k), "defect": out.tvector(d)})
            break
    payload = {"mode": mode, "window": B, "seed": cfg.seed, "checked": len(cases)}
    return _report("tmod-axioms", "fail" if bad else "ok", payload, bad)


def cmd_tmod_submodule(args, cfg: SessionConfig, out: Serializer) -> dict:
    spec = _tmod_spec(args, cfg)
    rep = t_submodule_window(spec, cfg.window_B)
    payload = {
        "window": cfg.window_B,
        "dimension": len(rep.indices),
        "subspaces": [[list(k) for k in s] for s in rep.subspaces],
        "edge_effects": rep.edge_effects,
    }
    return _report("tmod-submodule", "ok", payload)


def cmd_verma_act(args, cfg: SessionConfig, out: Serializer) -> dict:
    mod = VermaModule(_highest_weight(args, cfg), cfg.n, mirror=args.mirror)
    x = parse_element(args.x, cfg.context)
    mono = _monomial(_read_json_arg(args.monomial), cfg.n)
    try:
        v = mod.vector(mono)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r = mod.act(x, v)
    return _report("verma-act", "ok", {"x": out.element(x), "v": out.module_vector(v), "result": out.module_vector(r)})


def _gamma(args, cfg: SessionConfig):
    return parse_lattice(args.gamma, cfg.n)


def cmd_verma_weights(args, cfg: SessionConfig, out: Serializer) -> dict:
    gamma = _gamma(args, cfg)
    D, K = cfg.degree_D, cfg.coord_K
    basis = weight_basis(gamma, D, K, mirror=args.mirror)
    payload = {"gamma": list(gamma), "D": D, "K": K, "count": len(basis)}
    if args.list:
        payload["monomials"] = [out.pbw(m) for m in basis]
    return _report("verma-weights", "ok", payload)


def cmd_verma_growth(args, cfg: SessionConfig, out: Serializer) -> dict:
    gamma = _gamma(args, cfg)
    Ks = _int_list(args.K_text) if hasattr(args, "K_text") else list(range(1, cfg.coord_K + 1))
    if any(k < 1 for k in Ks):
        raise UsageError("K values must be positive")
    counts = weight_growth(gamma, cfg.degree_D, Ks, mirror=args.mirror)
    increasing = all(a < b for a, b in zip(counts, counts[1:]))
    payload = {"gamma": list(gamma), "D": cfg.degree_D, "K": Ks, "counts": counts, "strictly_increasing": increasing}
    return _report("verma-growth", "ok", payload)


def cmd_genverma_level(args, cfg: SessionConfig, out: Serializer) -> dict:
    if cfg.n < 2:
        raise DimensionTooSmall("genverma-level needs --n >= 2")
    spec = _tmod_spec(args, cfg, n=cfg.n - 1)
    kp = parse_lattice(args.kappa, cfg.n - 1) if args.kappa is not None else None
    samples = None if args.exhaustive else args.samples
    rep = genverma_level_check(spec, args.level, cfg.window_B, samples=samples, seed=cfg.seed, kappa_prime=kp)
    payload = {
        "level": rep.level,
        "window": rep.window,
        "level_count": rep.level_count,
        "expected_level_count": rep.expected_level1_count,
        "eigenvalue": out.scalar(rep.eigenvalue),
        "grading_checked": rep.grading_checked,
        "axiom_checked": rep.axiom_checked,
        "level0_checked": rep.level0_checked,
    }
    cex = (
        [{"check": "grading", "x": str(x), "state": _state(st)} for x, st in rep.grading_failures[:5]]
        + [{"check": "axiom", "x": str(x), "y": str(y), "state": _state(st)} for x, y, st in rep.axiom_failures[:5]]
        + [{"check": "level0", "x": str(x), "kappa": list(k)} for x, k in rep.level0_failures[:5]]
        + [{"check": "eigenvalue", "state": _state(st)} for st in rep.eigenvalue_failures[:5]]
    )
    if rep.expected_level1_count is not None and rep.level_count != rep.expected_level1_count:
        cex.append({"check": "level_count", "found": rep.level_count})
    return _report("genverma-level", "ok" if rep.ok else "fail", payload, cex)


def _state(st) -> dict:
    mono, base = st
    return {"monomial": Serializer.pbw(mono), "kappa": list(base)}


COMMANDS = {
    "bracket": cmd_bracket,
    "jacobi": cmd_jacobi,
    "cocycle-check": cmd_cocycle_check,
    "cocycle-decompose": cmd_cocycle_decompose,
    "theta-check": cmd_theta_check,
    "tmod-act": cmd_tmod_act,
    "tmod-axioms": cmd_tmod_axioms,
    "tmod-submodule": cmd_tmod_submodule,
    "verma-act": cmd_verma_act,
    "verma-weights": cmd_verma_weights,
    "verma-growth": cmd_verma_growth,
    "genverma-level": cmd_genverma_level,
}


# ---------------------------------------------------------------------------
# argument parsing


def _session_parent() -> argparse.ArgumentParser:
    # SUPPRESS keeps unset flags out of the namespace so config values survive
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    g = p.add_argument_group("session")
    g.add_argument("--n", type=int, help="rank of the index lattice (default 2)")
    g.add_argument("--params", help="comma-separated parameter names")
    g.add_argument("--B", dest="window_B", type=int, help="coordinate window |alpha_i| <= B")
    g.add_argument("--D", dest="degree_D", type=int, help="maximal PBW degree")
    g.add_argument("--K", dest="K_text", help="coordinate bound for PBW factors (verma-growth: a list 1,2,3)")
    g.add_argument("--mu", dest="mu_values", help="rational specialization of mu, e.g. 2,1 or [1/2,3]")
    g.add_argument("--seed", type=int, help="seed for sampled checks")
    g.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    g.add_argument("--pretty", action="store_true", help="human-readable output")
    return p


def _module_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", default="a")
    p.add_argument("--b", default="b")
    p.add_argument("--F", default="F")
    p.add_argument("--quotient", action="store_true", help="use T(0,0,0)/C v_0")


def build_parser() -> argparse.ArgumentParser:
    parent = _session_parent()
    parser = argparse.ArgumentParser(prog="hvir", parents=[parent], description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    variants = [v.value for v in Variant]

    p = sub.add_parser("bracket", parents=[parent], help="bracket of two elements")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--variant", choices=variants, default="HVir")

    p = sub.add_parser("jacobi", parents=[parent], help="Jacobi identity on elements or on the window")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--z")
    p.add_argument("--variant", choices=variants, default="HVir")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--exhaustive", action="store_true", help="all triples (n=3, B=2: about two minutes)")

    p = sub.add_parser("cocycle-check", parents=[parent], help="2-cocycle condition on the window")
    p.add_argument("--which", type=int, choices=(1, 2, 3))
    p.add_argument("--cochain", help="JSON list of {pair, value}, or @file")

    p = sub.add_parser("cocycle-decompose", parents=[parent], help="write a cocycle as sum a_i C_i + coboundary")
    p.add_argument("--cochain", required=True, help="JSON list of {pair, value}, or @file")

    p = sub.add_parser("theta-check", parents=[parent], help="functional equation for theta_which")
    p.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--theta", required=True, help="expression in x")

    p = sub.add_parser("tmod-act", parents=[parent], help="act on T(a,b,F)")
    _module_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--kappa", default=None, help="basis index, e.g. [0,1]")
    p.add_argument("--vector", default=None, help="JSON list of {kappa, coeff}, or @file")

    p = sub.add_parser("tmod-axioms", parents=[parent], help="module axiom for T(a,b,F)")
    _module_args(p)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("tmod-submodule", parents=[parent], help="invariant subspaces in the window")
    _module_args(p)

    for name, text in (("verma-act", "act on a Verma module"),):
        p = sub.add_parser(name, parents=[parent], help=text)
        for k in ("lam", "c0", "c1", "c2", "c3"):
            p.add_argument(f"--{k}", default=k)
        p.add_argument("--x", required=True)
        p.add_argument("--monomial", default="[]", help="JSON list of {kind, alpha}")
        p.add_argument("--mirror", action="store_true", help="lowest-weight mirror")

    p = sub.add_parser("verma-weights", parents=[parent], help="PBW basis of one weight space")
    p.add_argument("--gamma", required=True)
    p.add_argument("--list", action="store_true", help="include the monomials")
    p.add_argument("--mirror", action="store_true")

    p = sub.add_parser("verma-growth", parents=[parent], help="weight-space counts as K grows")
    p.add_argument("--gamma", required=True)
    p.add_argument("--mirror", action="store_true")

    p = sub.add_parser("genverma-level", parents=[parent], help="checks on one level of a generalized Verma module")
    _module_args(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--kappa", default=None, help="kappa' offset (rank n-1)")
    p.add_argument("--samples", type=int, default=60)
    p.add_argument("--exhaustive", action="store_true")
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    known = {f.name for f in fields(SessionConfig)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def _parse_mu(text) -> tuple | None:
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        s = text.strip().strip("[]")
        items = [t.strip() for t in s.split(",") if t.strip()]
    try:
        return tuple(Fraction(str(v)) for v in items)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --mu value {text!r}") from None


def make_config(ns: argparse.Namespace, env: dict | None = None) -> SessionConfig:
    env = os.environ if env is None else env
    data = _load_config(getattr(ns, "config", None) or env.get(CONFIG_ENV))
    for name in ("n", "window_B", "degree_D", "seed"):
        if hasattr(ns, name):
            data[name] = getattr(ns, name)
    if hasattr(ns, "K_text") and ns.command != "verma-growth":
        ks = _int_list(ns.K_text)
        if len(ks) != 1:
            raise UsageError("--K takes a single value here")
        data["coord_K"] = ks[0]
    if hasattr(ns, "params"):
        data["params"] = [p.strip() for p in ns.params.split(",") if p.strip()]
    if hasattr(ns, "mu_values"):
        data["mu_values"] = ns.mu_values
    if "mu_values" in data:
        data["mu_values"] = _parse_mu(data["mu_values"])
    return SessionConfig(**data)


def _pretty(report: dict) -> str:
    lines = [f"{report['command']}: {report['status']}"]

    def walk(prefix: str, v: Any):
        if isinstance(v, dict):
            for k, w in v.items():
                walk(f"{prefix}{k}.", w)
        elif isinstance(v, list) and v and all(isinstance(w, (dict, list)) for w in v):
            for i, w in enumerate(v):
                walk(f"{prefix}{i}.", w)
        else:
            lines.append(f"  {prefix[:-1]:<32} {json.dumps(v) if not isinstance(v, str) else v}")

    walk("", report["payload"])
    for i, c in enumerate(report["counterexamples"]):
        lines.append(f"  counterexample {i}: {json.dumps(c)}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, env: dict | None = None) -> tuple[int, str, str]:
    """Run the CLI and return (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), "", ""
    command = ns.command
    pretty = getattr(ns, "pretty", False)
    try:
        cfg = make_config(ns, env)
        out = Serializer(cfg)
        if cfg.mu_values is not None:
            with specialization(cfg.mu_values):
                report = COMMANDS[command](ns, cfg, out)
        else:
            report = COMMANDS[command](ns, cfg, out)
    except NonGenericSpecialization as exc:
        report = _report(
            command, "fail", {"error": "NonGenericSpecialization", "message": str(exc)}, [{"alpha": list(exc.alpha)}]
        )
    except ExprSyntaxError as exc:
        return 2, "", json.dumps({"error": "SyntaxError", "message": str(exc), "offset": exc.pos}) + "\n"
    except (
        UsageError,
        DimensionMismatch,
        UnknownIndeterminate,
        DimensionTooSmall,
        OutsideWindow,
        NotAntisymmetric,
        OSError,
    ) as exc:
        return 2, "", json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
    text = _pretty(report) if pretty else json.dumps(report)
    code = 0 if report["status"] == "ok" else 1
    return code, text + "\n", ""


def main(argv: Sequence[str] | None = None) -> int:
    code, stdout, stderr = run(argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
