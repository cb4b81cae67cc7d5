"""The identity registry: coverage, sweeps, and harness negative controls."""

from __future__ import annotations

import pytest

from stmilnor import fastmul
from stmilnor.context import Context
from stmilnor.identities import (
    REGISTRY,
    CaseResult,
    IdentityDef,
    _combo_case,
    _poly_case,
    run_case,
    sweep,
    verify_all,
)

EXPECTED_IDS = {
    "lem2.2", "lem2.3", "thm2.4-ct5", "thm2.4-ct6",
    "thm3.1", "cor3.2", "prop3.3", "thm3.4", "thm3.5", "cor3.6",
    "thm3.7", "thm3.8", "thm3.9", "rem3.10",
    "prop4.1-ct7", "prop4.1-ct8", "ct9", "prop4.2", "prop4.3",
    "lem4.4", "lem4.5", "mui-expansion",
}


def test_registry_contains_exactly_the_expected_ids():
    assert set(REGISTRY) == EXPECTED_IDS
    for iid, ident in REGISTRY.items():
        assert ident.id == iid
        assert ident.summary
        assert callable(ident.check) and callable(ident.plan)


@pytest.mark.parametrize("iid", sorted(EXPECTED_IDS))
def test_quick_sweep_passes(iid):
    rep = sweep(iid, "quick")
    assert rep.ok, rep.first_failure
    assert rep.total > 0
    assert rep.passed == rep.total
    assert rep.failed == 0


def test_quick_plans_cover_every_branch():
    plans = {iid: list(REGISTRY[iid].plan("quick")) for iid in REGISTRY}
    assert {params["f"] for _, params in plans["rem3.10"]} == {1, 2, 3, 4, 5, 6}
    assert {params["part"] for _, params in plans["thm3.9"]} == {1, 2, 3}
    # quick keeps to p = 3; the full profile widens to both primes
    assert {p for p, _ in plans["lem2.2"]} == {3}
    assert {p for p, _ in REGISTRY["lem2.2"].plan("full")} == {3, 5}
    # cor3.2 splits into three regimes: i below, at, and above s+1
    regimes = {(params["i"] < params["s"] + 1, params["i"] == params["s"] + 1)
               for _, params in plans["cor3.2"]}
    assert len(regimes) == 3


def test_run_case_on_unknown_id_raises():
    with pytest.raises(KeyError):
        run_case("nosuch", 3, {})


def test_single_case_and_param_filters():
    res = run_case("lem2.2", 3, {"n": 2, "k": 0, "e": (0, 1), "u": 1})
    assert isinstance(res, CaseResult) and res.ok

    rep = sweep("lem2.2", "quick", param_filter={"e": (0,)})
    assert rep.total > 0 and rep.ok
    rep2 = sweep("lem2.2", "full", p_filter=5, param_filter={"n": 1})
    assert rep2.total > 0 and rep2.ok
    assert sweep("prop3.3", "full", p_filter=5).total == 0  # single-prime plan


def test_verify_all_reports_are_sorted_and_green():
    reports = verify_all("quick", [3])
    assert [r.id for r in reports] == sorted(EXPECTED_IDS)
    assert all(r.ok for r in reports)


# -- negative controls: the harness must actually detect failures ------------


def test_poly_case_detects_a_mismatch():
    ctx = Context(3, 2)
    res = _poly_case("selftest", 3, {"n": 2}, ctx.y(1), ctx.y(2))
    assert not res.ok
    assert "y" in res.detail  # names the offending monomial
    good = _poly_case("selftest", 3, {"n": 2}, ctx.y(1), ctx.y(1))
    assert good.ok


def test_combo_case_detects_a_mismatch_on_the_kernel_path():
    ctx = Context(3, 2)
    y1, y2 = ctx.y(1), ctx.y(2)
    # homogeneous jobs, same tag: kernel path; sums to y1^2*y2 - y1*y2^2 != 0
    combos = [(1, y1 * y1, y2), (-1, y1, y2 * y2)]
    res = _combo_case("selftest", 3, {}, ctx, combos)
    assert not res.ok
    ok = _combo_case("selftest", 3, {}, ctx, [(1, y1, y2), (-1, y2, y1)])
    assert ok.ok


def test_combo_case_detects_a_mismatch_on_the_fallback_path():
    ctx = Context(3, 2)
    mixed = ctx.y(1) + ctx.y(2) * ctx.y(2)  # inhomogeneous: kernel refuses
    res = _combo_case("selftest", 3, {}, ctx, [(1, mixed, ctx.one()), (-2, mixed, ctx.one())])
    assert not res.ok
    ok = _combo_case("selftest", 3, {}, ctx, [(1, mixed, ctx.one()), (-1, mixed, ctx.one())])
    assert ok.ok


def test_lincomb_witness_kernel_behaviour():
    p, nvars = 3, 2
    ma = {(1, 0): 1}
    mb = {(0, 1): 1}
    # +ab - ab = 0
    assert fastmul.lincomb_witness(p, nvars, [(1, 0, ma, mb), (-1, 0, ma, mb)]) is None
    # 2ab + 2ab = 4ab = ab mod 3: witness carries tag, exponents, coefficient
    wit = fastmul.lincomb_witness(p, nvars, [(2, 5, ma, mb), (2, 5, ma, mb)])
    assert wit == (5, (1, 1), 1)
    # tags keep graded pieces apart even when exponents collide
    wit2 = fastmul.lincomb_witness(p, nvars, [(1, 1, ma, mb), (-1, 2, ma, mb)])
    assert wit2 is not None and wit2[0] in (1, 2)
    # mixing y-degrees under one tag is refused, never silently accepted
    with pytest.raises(fastmul.PackUnavailable):
        fastmul.lincomb_witness(p, nvars, [(1, 0, ma, mb), (-1, 0, ma, {(2, 3): 1})])


def test_sweep_reports_the_first_failing_case_in_plan_order():
    ident = IdentityDef(
        id="selftest",
        summary="deliberately failing after two passes",
        check=lambda p, params: CaseResult("selftest", p, params, params["k"] < 2, "boom"),
        plan=lambda profile: [(3, {"k": k}) for k in range(5)],
    )
    REGISTRY["selftest"] = ident
    try:
        rep = sweep("selftest", "quick")
    finally:
        del REGISTRY["selftest"]
    assert not rep.ok
    assert rep.total == 5 and rep.passed == 2 and rep.failed == 3
    assert rep.first_failure is not None and rep.first_failure.params == {"k": 2}
