"""Run configuration, suite construction and report assembly for the verification front end."""

from __future__ import annotations

import json
import multiprocessing
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import currents, vertexop
from .fock import (
    MODULE_LABELS,
    FockModule,
    FockMonomial,
    FockVector,
    Sector,
    apply_G,
    basis_list,
    boson_bracket,
    clear_caches,
    enumerate_basis,
    fock_module,
    g_eigenvalue,
    generating_function_counts,
)
from .qscalar import ONE, ZERO, q_pow
from .report import Check, CheckResult, run_check

__all__ = [
    "GROUPS",
    "ENV_PREFIX",
    "ConfigError",
    "RunConfig",
    "config_from_env",
    "build_checks",
    "fock_algebra_checks",
    "g_decomposition_checks",
    "decompose",
    "format_state",
    "parse_state",
    "run",
    "render_text",
]

GROUPS = (
    "drinfeld",
    "chevalley",
    "serre",
    "isomorphism",
    "fock-algebra",
    "intertwining",
    "vo-normalization",
    "vo-dual",
    "g-decomposition",
)
ENV_PREFIX = "UQBL_"
SCHEMA = 1


class ConfigError(ValueError):
    """Invalid run configuration (usage error)."""


def _module_label(text: str) -> str:
    t = str(text).strip()
    if t.startswith("Lambda_"):
        t = t[len("Lambda_") :]
    if t not in MODULE_LABELS:
        raise ConfigError("unknown module %r (expected one of 0, 1, l)" % text)
    return t


@dataclass(frozen=True)
class RunConfig:
    rank: int = 2
    max_degree: Fraction = Fraction(2)
    mode_bound: int = 2
    modules: tuple = MODULE_LABELS
    groups: tuple = GROUPS
    output: str = "json"
    jobs: int = 1
    # intertwiner checks through the coproduct and the dual suite use states up to this degree
    coproduct_degree: Fraction = Fraction(1)
    timing: bool = False
    extra: dict = field(default_factory=dict, compare=False)

    def validated(self) -> "RunConfig":
        if not isinstance(self.rank, int) or self.rank < 2:
            raise ConfigError("rank must be an integer >= 2")
        try:
            D = Fraction(self.max_degree)
            Dc = Fraction(self.coproduct_degree)
        except (TypeError, ValueError) as exc:
            raise ConfigError("bad degree: %s" % exc) from None
        if D < 0 or Dc < 0:
            raise ConfigError("degrees must be >= 0")
        if (2 * D).denominator != 1:
            raise ConfigError("max degree must be a multiple of 1/2")
        if not isinstance(self.mode_bound, int) or self.mode_bound < 1:
            raise ConfigError("mode bound must be an integer >= 1")
        mods = tuple(dict.fromkeys(_module_label(m) for m in self.modules))
        if not mods:
            raise ConfigError("no modules selected")
        if not self.groups:
            raise ConfigError("no relation groups selected")
        for g in self.groups:
            if g not in GROUPS:
                raise ConfigError("unknown relation group %r" % g)
        if self.output not in ("json", "text"):
            raise ConfigError("output must be 'json' or 'text'")
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigError("jobs must be a positive integer")
        return RunConfig(
            self.rank,
            D,
            self.mode_bound,
            tuple(sorted(mods, key=MODULE_LABELS.index)),
            tuple(g for g in GROUPS if g in self.groups),
            self.output,
            self.jobs,
            min(Dc, D),
            self.timing,
        )

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "max_degree": str(self.max_degree),
            "mode_bound": self.mode_bound,
            "modules": list(self.modules),
            "groups": list(self.groups),
            "coproduct_degree": str(self.coproduct_degree),
        }


def _split(text: str) -> tuple:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def config_from_env(environ=None) -> dict:
    """Configuration overrides from ``UQBL_*`` variables (flags take precedence)."""
    env = os.environ if environ is None else environ
    out = {}
    conv = {
        "RANK": ("rank", int),
        "MAX_DEGREE": ("max_degree", Fraction),
        "MODE_BOUND": ("mode_bound", int),
        "MODULE": ("modules", _split),
        "GROUP": ("groups", _split),
        "OUTPUT": ("output", str),
        "JOBS": ("jobs", int),
        "COPRODUCT_DEGREE": ("coproduct_degree", Fraction),
    }
    for suffix, (name, fn) in conv.items():
        raw = env.get(ENV_PREFIX + suffix)
        if raw is None or raw == "":
            continue
        try:
            out[name] = fn(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError("%s%s=%r: %s" % (ENV_PREFIX, suffix, raw, exc)) from None
    return out


# -- state syntax ---------------------------------------------------------------------------------


def format_state(module: FockModule, mono: FockMonomial) -> str:
    """``a(j,-m)... ; psi(-k)... ; lattice offset ; module``; the offset is relative to the
    highest weight vector of ``module``."""
    bos = "".join("a(%d,-%d)" % (j, m) for j, m in mono.bosons)
    fer = "".join("psi(-%s)" % Fraction(k2, 2) for k2 in mono.fermions)
    off = ",".join(str(a - b) for a, b in zip(mono.lattice, module.highest_lattice))
    return "%s;%s;%s;%s" % (bos, fer, off, module.label)


def parse_state(text: str, rank: int, module: Optional[str] = None) -> tuple:
    """Inverse of :func:`format_state`; returns ``(module, canonical FockVector)``.

    Operators are applied to the highest weight vector, so any order of
    creation modes is accepted.
    """
    import re

    parts = [p.strip() for p in text.split(";")]
    if len(parts) == 3 and module is not None:
        parts.append(module)
    if len(parts) != 4:
        raise ConfigError("state %r: expected 'bosons ; fermions ; lattice ; module'" % text)
    bos_s, fer_s, lat_s, mod_s = parts
    mod = fock_module(rank, _module_label(mod_s or (module or "0")))
    space = mod.space
    bosons = []
    for j, m in re.findall(r"a\(\s*(\d+)\s*,\s*-\s*(\d+)\s*\)", bos_s):
        bosons.append((int(j), int(m)))
    if re.sub(r"a\(\s*\d+\s*,\s*-\s*\d+\s*\)", "", bos_s).strip():
        raise ConfigError("cannot parse boson part %r" % bos_s)
    fermions = []
    for k in re.findall(r"psi\(\s*-?\s*([0-9/]+)\s*\)", fer_s):
        fermions.append(Fraction(k))
    if re.sub(r"psi\(\s*-?\s*[0-9/]+\s*\)", "", fer_s).strip():
        raise ConfigError("cannot parse fermion part %r" % fer_s)
    try:
        offs = [int(x) for x in lat_s.split(",")] if lat_s else [0] * rank
    except ValueError:
        raise ConfigError("cannot parse lattice offset %r" % lat_s) from None
    if len(offs) != rank:
        raise ConfigError("lattice offset needs %d entries" % rank)
    lat = tuple(a + b for a, b in zip(mod.highest_lattice, offs))
    v = FockVector.basis(space, FockMonomial((), (), lat))
    for k in reversed(fermions):
        two_k = 2 * k
        if two_k.denominator != 1 or not space.fermion_parity_ok(int(two_k)):
            raise ConfigError("fermion mode -%s does not belong to the %s sector" % (k, space.sector.value))
        v = currents.fermion_op(space, -k)(v)
    for j, m in reversed(bosons):
        if not 1 <= j <= rank or m < 1:
            raise ConfigError("boson a(%d,-%d) out of range" % (j, m))
        v = currents.boson_op(space, j, -m)(v)
    return mod, v


# -- suites defined here ----------------------------------------------------------------------------


def _fermion_modes(space, bound: int) -> list:
    start = Fraction(1, 2) if space.sector is Sector.NS else Fraction(0)
    ks = []
    k = start
    while k <= bound:
        ks.extend([k, -k] if k else [k])
        k += 1
    return sorted(ks)


def fock_algebra_checks(module: FockModule, states: list, mode_bound: int) -> list:
    """Boson brackets, fermion anticommutators and ``[a_j(n), Psi(k)] = 0``."""
    space = module.space
    l = space.rank
    M = mode_bound
    lab = module.label
    out = []
    nz = [n for n in range(-M, M + 1) if n]

    def add(rel, params, fn):
        out.append(Check("fock-algebra", rel, params, lab, lambda m: fn(FockVector.basis(space, m)), list(states)))

    for i in range(1, l + 1):
        for j in range(1, l + 1):
            for n in nz:
                for m in nz:
                    a, b = currents.boson_op(space, i, n), currents.boson_op(space, j, m)
                    c = boson_bracket(l, i, j, n) if n + m == 0 else ZERO
                    add("[a,a]", {"i": i, "j": j, "n": n, "m": m}, lambda v, a=a, b=b, c=c: a(b(v)) - b(a(v)) - v.scale(c))
    ks = _fermion_modes(space, M)
    for k in ks:
        for k2 in ks:
            p, r = currents.fermion_op(space, k), currents.fermion_op(space, k2)
            c = q_pow(k) + q_pow(-k) if k + k2 == 0 else ZERO
            add("{Psi,Psi}", {"k": k, "m": k2}, lambda v, p=p, r=r, c=c: p(r(v)) + r(p(v)) - v.scale(c))
    for j in range(1, l + 1):
        for n in nz:
            for k in ks:
                a, p = currents.boson_op(space, j, n), currents.fermion_op(space, k)
                add("[a,Psi]", {"j": j, "n": n, "k": k}, lambda v, a=a, p=p: a(p(v)) - p(a(v)))
    return out


def _space_key(module: FockModule) -> str:
    return "R" if module.space.sector is Sector.R else "NS"


def _space_module(module: FockModule) -> FockModule:
    """The module whose degree is used for a whole Fock space (``Lambda_0`` for NS)."""
    return module if module.label == "l" else fock_module(module.rank, "0")


def g_decomposition_checks(module: FockModule, max_degree, mode_bound: int) -> list:
    """``G`` commutes with every generator on the whole Fock space; graded
    dimensions agree with the generating-function count; the degree-0
    highest weight vectors split one per eigenspace."""
    base = _space_module(module)
    space = base.space
    l = space.rank
    lab = base.label
    states = basis_list(base, max_degree)
    out = []
    gens = []
    for i in range(l + 1):
        gens.append(("e", {"i": i}, currents.chevalley_op(space, "e", i)))
        gens.append(("f", {"i": i}, currents.chevalley_op(space, "f", i)))
        gens.append(("qh", {"i": i}, currents.q_h_op(space, i, 1)))
    for i in range(1, l + 1):
        for s in (1, -1):
            for n in range(-mode_bound, mode_bound + 1):
                gens.append(("x", {"i": i, "sign": s, "n": n}, currents.x_op(space, i, s, n)))
        for n in range(-mode_bound, mode_bound + 1):
            if n:
                gens.append(("a", {"i": i, "n": n}, currents.boson_op(space, i, n)))
    for name, params, op in gens:
        out.append(
            Check(
                "g-decomposition",
                "[G,%s]" % name,
                dict(params, space=_space_key(base)),
                lab,
                lambda m, op=op: (lambda v: apply_G(op(v)) - op(apply_G(v)))(FockVector.basis(space, m)),
                list(states),
            )
        )

    def dims(_):
        table = decompose(base, max_degree)
        oracle = generating_function_counts(base, max_degree)
        return table, oracle

    def cmp_dims(payload):
        table, oracle = payload
        got = {Fraction(r["degree"]): r["dim"] for r in table}
        want = {Fraction(k): v for k, v in oracle.items()}
        if got != want:
            return "graded dimensions %s differ from the generating function %s" % (got, want)
        return None

    out.append(
        Check("g-decomposition", "graded-dimension", {"space": _space_key(base)}, lab, dims, [base.highest], compare=cmp_dims)
    )

    E = [currents.chevalley_op(space, "e", i) for i in range(l + 1)]
    scan = basis_list(base, max(Fraction(max_degree), Fraction(1, 2)))
    expected = sorted(fock_module(l, x).highest for x in MODULE_LABELS if _space_key(fock_module(l, x)) == _space_key(base))

    def hw_split(_):
        return [m for m in scan if all(e(FockVector.basis(space, m)).is_zero() for e in E)]

    def cmp_hw(hws):
        signs = sorted(g_eigenvalue(space, m) for m in hws)
        if signs != [-1, 1]:
            return "highest weight monomials %s with G eigenvalues %s" % ([format_state(base, m) for m in hws], signs)
        if base.label != "l" and sorted(hws) != expected:
            return "highest weight monomials %s are not the module highest weight vectors" % [format_state(base, m) for m in hws]
        return None

    out.append(
        Check(
            "g-decomposition",
            "highest-weight-split",
            {"space": _space_key(base)},
            lab,
            hw_split,
            [base.highest],
            compare=cmp_hw,
            note="scanned %d monomials" % len(scan),
        )
    )
    if base.label == "l":
        # the zero mode Psi(0) anticommutes with G and squares to 1
        def even(_):
            return decompose(base, max_degree)

        def cmp_even(rows):
            bad = [r["degree"] for r in rows if r["G+"] != r["G-"]]
            return "uneven G split at degrees %s" % bad if bad else None

        out.append(Check("g-decomposition", "ramond-even-split", {"space": "R"}, lab, even, [base.highest], compare=cmp_even))
    return out


def decompose(module: FockModule, max_degree) -> list:
    """Graded table over the whole Fock space of ``module``, degrees measured from
    its highest weight vector.

    Rows carry ``degree``, ``dim``, the ``G+``/``G-`` dimensions, the number of
    highest weight monomials (killed by every ``e_i``) in each eigenspace and a
    few sample weights ``(h_1, ..., h_l)``.
    """
    space = module.space
    cd = space.cd
    E = [currents.chevalley_op(space, "e", i) for i in range(cd.rank + 1)]
    rows = []
    for deg, monos in enumerate_basis(module, max_degree).items():
        plus = [m for m in monos if g_eigenvalue(space, m) > 0]
        hws = [m for m in monos if all(not e.on(m) for e in E)]
        hw_plus = sum(1 for m in hws if g_eigenvalue(space, m) > 0)
        weights = sorted({tuple(str(currents.h_value(space, i, m.lattice)) for i in range(1, cd.rank + 1)) for m in monos})
        rows.append(
            {
                "degree": str(deg),
                "dim": len(monos),
                "G+": len(plus),
                "G-": len(monos) - len(plus),
                "highest_weight_G+": hw_plus,
                "highest_weight_G-": len(hws) - hw_plus,
                "sample_weights": [list(w) for w in weights[:4]],
            }
        )
    return rows


# -- orchestration --------------------------------------------------------------------------------------


def _states(module: FockModule, degree, cache: dict, both: bool = False) -> list:
    """Basis of the irreducible module; with ``both`` the whole Ramond space, which
    carries ``Lambda_l`` and ``Lambda_l'`` together."""
    irreducible = not (both and module.label == "l")
    key = (module.label, Fraction(degree), irreducible)
    if key not in cache:
        cache[key] = basis_list(module, degree, irreducible=irreducible)
    return cache[key]


def build_checks(config: RunConfig) -> list:
    """All checks of the configuration, in canonical order."""
    cfg = config
    l = cfg.rank
    M = cfg.mode_bound
    D = cfg.max_degree
    cache: dict = {}
    out = []
    seen_spaces = set()
    for lab in cfg.modules:
        mod = fock_module(l, lab)
        st = _states(mod, D, cache)
        # vertex operators on the Ramond space map each G eigenspace to the other
        vo_st = _states(mod, D, cache, both=True)
        low = _states(mod, cfg.coproduct_degree, cache, both=True)
        for g in cfg.groups:
            if g == "drinfeld":
                out += currents.drinfeld_checks(mod, st, M)
            elif g == "chevalley":
                out += currents.chevalley_checks(mod, st)
            elif g == "serre":
                out += currents.serre_checks(mod, st)
            elif g == "isomorphism":
                out += currents.isomorphism_checks(mod, st)
            elif g == "fock-algebra":
                out += fock_algebra_checks(mod, st, M)
            elif g == "intertwining":
                out += _vo_guard(l, lab, "intertwining", lambda: _intertwining(l, lab, vo_st, low, M))
            elif g == "vo-normalization":
                out += _vo_guard(l, lab, "vo-normalization", lambda: _normalization(l, lab))
            elif g == "vo-dual":
                out += _vo_guard(l, lab, "vo-dual", lambda: _dual(l, lab, low, M))
            elif g == "g-decomposition":
                key = _space_key(mod)
                if key not in seen_spaces:
                    seen_spaces.add(key)
                    out += g_decomposition_checks(mod, D, M)
    out.sort(key=Check.sort_key)
    return out


def _intertwining(l, lab, st, low, M) -> list:
    out = []
    for kind in ("I", "II"):
        fam = vertexop.vo_family(l, kind, lab)
        out += vertexop.intertwining_checks(fam, st, M, coproduct_states=low)
        if lab == "l":
            out += vertexop.g_anticommutation_checks(fam, st, M)
    return out


def _normalization(l, lab) -> list:
    return vertexop.normalization_checks(l, labels=(lab,)) + vertexop.leading_term_checks(l, labels=(lab,))


def _dual(l, lab, low, M) -> list:
    out = []
    for kind in ("I*", "II*"):
        out += vertexop.dual_checks(vertexop.vo_family(l, kind, lab), low, M)
    return out


def _vo_guard(l, lab, group, build) -> list:
    """Vertex operator suites on ``Lambda_l`` need ``(-1)^{2 partial_{lambda_l}}`` to be
    a sign; for odd rank it is not, and a single failing record says so."""
    if lab == "l" and l % 2:
        reason = "(-1)^{2 partial_{lambda_l}} has half-integer exponent on the Ramond sector for odd rank"
        return [Check(group, "unsupported", {"rank": l}, lab, lambda _: reason, ["-"], compare=lambda r: r)]
    return build()


_POOL_CHECKS: list = []


def _run_index(idx: int) -> tuple:
    check = _POOL_CHECKS[idx]
    mod = fock_module(_POOL_RANK[0], check.module) if check.module in MODULE_LABELS else None
    render = (lambda m: format_state(mod, m) if isinstance(m, FockMonomial) else str(m)) if mod else str
    return idx, run_check(check, render)


_POOL_RANK = [2]


def _execute(checks: list, jobs: int, rank: int) -> list:
    global _POOL_CHECKS
    _POOL_CHECKS = checks
    _POOL_RANK[0] = rank
    if jobs <= 1 or len(checks) <= 1:
        results = [_run_index(i)[1] for i in range(len(checks))]
    else:
        # fork shares the built checks with the workers; results come back by index
        ctx = multiprocessing.get_context("fork")
        results = [None] * len(checks)
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            for idx, res in pool.map(_run_index, range(len(checks)), chunksize=1):
                results[idx] = res
    _POOL_CHECKS = []
    return results


def run(config: RunConfig) -> tuple:
    """Execute the configured suites; returns ``(report dict, exit code)``."""
    cfg = config.validated()
    t0 = time.perf_counter()
    try:
        checks = build_checks(cfg)
        results = _execute(checks, cfg.jobs, cfg.rank)
    finally:
        # memo tables of a large run can hold gigabytes of intermediate states
        checks = None
        clear_caches()
        vertexop.clear_family_cache()
    elapsed = time.perf_counter() - t0
    records = [r.as_dict() for r in results]
    failed = sum(1 for r in results if r.failures)
    groups = {}
    for r in results:
        g = groups.setdefault(r.group, {"checks": 0, "failed": 0, "states": 0})
        g["checks"] += 1
        g["states"] += r.checked
        g["failed"] += 1 if r.failures else 0
    report = {
        "schema": SCHEMA,
        "config": cfg.as_dict(),
        "summary": {
            "checks": len(results),
            "passed": len(results) - failed,
            "failed": failed,
            "state_evaluations": sum(r.checked for r in results),
            "groups": {k: groups[k] for k in sorted(groups)},
        },
        "results": records,
    }
    if cfg.timing:
        report["timing"] = {"seconds": round(elapsed, 3), "jobs": cfg.jobs}
    return report, (1 if failed else 0)


def render_text(report: dict) -> str:
    lines = []
    s = report["summary"]
    cfg = report["config"]
    lines.append(
        "rank %s, max degree %s, mode bound %s, modules %s"
        % (cfg["rank"], cfg["max_degree"], cfg["mode_bound"], ",".join(cfg["modules"]))
    )
    for g, row in s["groups"].items():
        lines.append("  %-17s %5d checks  %6d state evaluations  %d failed" % (g, row["checks"], row["states"], row["failed"]))
    for r in report["results"]:
        if r["status"] == "fail":
            params = ", ".join("%s=%s" % kv for kv in r["parameters"].items())
            first = r["failures"][0]
            lines.append("FAIL %s %s [%s] on Lambda_%s: %s -> %s" % (r["group"], r["relation"], params, r["module"], first["state"], first["discrepancy"]))
    lines.append("%d checks, %d passed, %d failed" % (s["checks"], s["passed"], s["failed"]))
    if "timing" in report:
        lines.append("elapsed %.1f s" % report["timing"]["seconds"])
    return "\n".join(lines)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)
