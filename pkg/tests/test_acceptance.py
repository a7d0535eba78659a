"""Acceptance criteria, one printed PASS/FAIL line each.

Every comparison is exact equality in Q(t)[u]/(u^2 - omega); there is no
numerical tolerance anywhere.
"""

from fractions import Fraction
from functools import lru_cache

from uqbl.fock import basis_list, fock_module, g_eigenvalue
from uqbl.report import run_check
from uqbl.verify import RunConfig, run
from uqbl.vertexop import leading_term_checks, normalization_checks

ALL = ("0", "1", "l")


def report(rank, groups, modules, D, M=2, coproduct_degree=1):
    return _report(rank, groups, modules, D, M, coproduct_degree)


@lru_cache(maxsize=None)
def _report(rank, groups, modules, D, M, coproduct_degree):
    cfg = RunConfig(
        rank=rank,
        max_degree=Fraction(D),
        mode_bound=M,
        modules=modules,
        groups=groups,
        coproduct_degree=Fraction(coproduct_degree),
    )
    return run(cfg)[0]


def summarize(reports):
    checks = sum(r["summary"]["checks"] for r in reports)
    evals = sum(r["summary"]["state_evaluations"] for r in reports)
    bad = [x for r in reports for x in r["results"] if x["status"] == "fail"]
    return checks, evals, bad


def verdict(n, title, ok, detail):
    print("criterion %d [%s] %s: %s" % (n, "PASS" if ok else "FAIL", title, detail))
    return ok


def describe(bad):
    if not bad:
        return ""
    x = bad[0]
    f = x["failures"][0]
    return "; first failure %s %s %s on Lambda_%s at %s: %s" % (
        x["group"],
        x["relation"],
        x["parameters"],
        x["module"],
        f["state"],
        f["discrepancy"][:200],
    )


def per_module(rank, groups, D, M=2, coproduct_degree=1):
    return [report(rank, groups, (m,), D, M, coproduct_degree) for m in ALL]


def test_criterion_1_fock_algebra():
    reps = [r for l in (2, 3) for r in per_module(l, ("fock-algebra",), 2)]
    checks, evals, bad = summarize(reps)
    ok = verdict(1, "Fock algebra, l=2,3, degree <= 2", not bad, "%d relations, %d state evaluations%s" % (checks, evals, describe(bad)))
    assert ok


def test_criterion_2_drinfeld():
    reps = per_module(2, ("drinfeld",), 2)
    checks, evals, bad = summarize(reps)
    serre = sum(1 for r in reps for x in r["results"] if x["relation"] == "drinfeld-serre")
    ok = verdict(
        2,
        "Drinfeld relations with Serre p=2,3, l=2, degree <= 2, |n|,|m| <= 2",
        not bad and serre == 12,
        "%d relations (%d Serre blocks), %d state evaluations%s" % (checks, serre, evals, describe(bad)),
    )
    assert ok


def test_criterion_3_chevalley_and_isomorphism():
    reps = per_module(2, ("chevalley", "serre", "isomorphism"), 2)
    checks, evals, bad = summarize(reps)
    e0f0 = [x for r in reps for x in r["results"] if x["relation"] == "e-f" and x["parameters"] == {"i": "0", "j": "0"}]
    pchain = [x for r in reps for x in r["results"] if x["relation"] == "P-chain"]
    ok = not bad and len(e0f0) == 3 and len(pchain) == 3
    detail = "%d relations, %d state evaluations; [e_0,f_0] constant 1 on all three modules; P-chain on %d modules%s" % (
        checks,
        evals,
        len(pchain),
        describe(bad),
    )
    assert verdict(3, "Chevalley relations, q-Serre, P-chain, l=2, degree <= 2", ok, detail)


def test_criterion_4_vo_normalization():
    res = [run_check(c) for c in leading_term_checks(2)] + [run_check(c) for c in normalization_checks(2, kinds=("I",))]
    bad = [r for r in res if r.failures]
    lam1 = [r.note for r in res if r.relation == "leading-coefficient" and r.module == "1"]
    detail = "%d conditions; Lambda_0 and Lambda_l (both eigenspaces) coefficient 1; Lambda_1 closed-form coefficient %s" % (
        len(res),
        lam1[0] if lam1 else "missing",
    )
    if bad:
        detail += "; failing %s" % [(r.relation, r.module, r.failures[0]) for r in bad]
    assert verdict(4, "type I normalization conditions, l=2", not bad and bool(lam1), detail)


def test_criterion_5_intertwining():
    reps = per_module(2, ("intertwining",), 2)
    checks, evals, bad = summarize(reps)
    cop = sum(1 for r in reps for x in r["results"] if x["relation"] == "coproduct")
    ok = verdict(
        5,
        "type I and II intertwining relations, l=2, degree <= 2, modes <= 2, coproduct on degree <= 1",
        not bad and cop > 0,
        "%d relations (%d coproduct), %d state evaluations%s" % (checks, cop, evals, describe(bad)),
    )
    assert ok


def test_criterion_6_dual():
    reps = per_module(2, ("vo-dual", "vo-normalization"), 1, M=2, coproduct_degree=1)
    checks, evals, bad = summarize(reps)
    shift = sum(1 for r in reps for x in r["results"] if x["relation"] == "shift-identity")
    ok = verdict(
        6,
        "dual vertex operators: shift identities, dual recursions, normalizations, l=2, degree <= 1",
        not bad and shift > 0,
        "%d relations (%d shift identities), %d state evaluations%s" % (checks, shift, evals, describe(bad)),
    )
    assert ok


def test_criterion_7_g_decomposition():
    rep = report(2, ("g-decomposition",), ("l",), 3)
    checks, evals, bad = summarize([rep])
    rel = {x["relation"] for x in rep["results"]}
    ok = not bad and {"highest-weight-split", "graded-dimension", "ramond-even-split"} <= rel
    detail = "%d relations on the Ramond space, %d state evaluations; degree-0 highest weight vectors split 1/1%s" % (
        checks,
        evals,
        describe(bad),
    )
    assert verdict(7, "G-decomposition of the Lambda_l Fock space, l=2, degree <= 3", ok, detail)


def test_criterion_8_identity_coincidence():
    # one operator serves Lambda_l -> Lambda_l' and Lambda_l' -> Lambda_l; it must intertwine on both
    # G eigenspaces, swap them, and satisfy both normalization conditions
    rep = report(2, ("intertwining",), ("l",), 2)
    _, evals, bad = summarize([rep])
    mod = fock_module(2, "l")
    states = basis_list(mod, 2)
    plus = sum(1 for m in states if g_eigenvalue(mod.space, m) > 0)
    anti = [x for x in rep["results"] if x["relation"] == "G-anticommutation"]
    norms = [run_check(c) for c in normalization_checks(2, labels=("l",))]
    nbad = [r for r in norms if r.failures]
    ok = not bad and anti and not nbad and plus == len(states) - plus
    detail = "%d R states (%d per eigenspace), %d state evaluations, %d G-anticommutation relations, %d normalizations%s" % (
        len(states),
        plus,
        evals,
        len(anti),
        len(norms),
        describe(bad) or ("; failing %s" % [(r.relation, r.params) for r in nbad] if nbad else ""),
    )
    assert verdict(8, "Lambda_l and Lambda_l' formulas coincide on the Ramond space, l=2, degree <= 2", ok, detail)
