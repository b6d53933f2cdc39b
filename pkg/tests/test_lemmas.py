from fractions import Fraction

import pytest

from cosetvoa.coset import CosetContext
from cosetvoa.lemmas import (REGISTRY, cross_lemma_report, flip_diagnostic, ww_mode_scan,
                             omega1W_display, run_check, run_suite, virasoro_span)

PRINTED = "omega1W-expansion"
CORRECTED = "omega1W-expansion[corrected h_b(e_(a+b)f_(a+b)-e_a f_a)]"


def _by_status(reports):
    out = {}
    for r in reports:
        out.setdefault(r.check_id, set()).add(r.status)
    return out


def test_suite_l1_all_pass(ctx1):
    reports = run_suite(1, ctx=ctx1)
    assert reports and all(r.passed for r in reports)
    assert not any(r.check_id.startswith("omega1W") for r in reports)


def test_suite_l2_only_printed_display_fails(ctx2):
    st = _by_status(run_suite(2, ctx=ctx2))
    bad = {cid for cid, s in st.items() if s != {"pass"}}
    assert bad == {PRINTED}
    assert st[CORRECTED] == {"pass"}


@pytest.mark.slow
def test_suite_l3_only_printed_display_fails(ctx3):
    st = _by_status(run_suite(3, ctx=ctx3))
    assert {cid for cid, s in st.items() if s != {"pass"}} == {PRINTED}


def test_reports_are_sorted_and_serialisable(ctx2):
    reports = run_suite(2, ctx=ctx2, check_filter="WaWa")
    ids = [r.check_id for r in reports]
    assert ids == sorted(ids)
    d = reports[0].as_dict(timing=False)
    assert set(d) == {"check_id", "params", "status", "lhs", "rhs", "diff", "diff_terms"}
    assert d["params"]["n"] == "symbolic"


def test_failing_report_carries_difference(ctx2):
    a, b = ctx2.root(1, 1), ctx2.root(2, 2)
    rep = run_check(ctx2, REGISTRY[PRINTED], (a, b))
    assert rep.status == "fail" and rep.diff_terms > 0 and rep.diff
    fixed = omega1W_display(ctx2, a, b, corrected=True)
    assert fixed == ctx2.omega1W(a, b)


def test_no_single_sign_flip_repairs_display():
    a, b = (1, 0), (0, 1)
    assert flip_diagnostic(lambda: CosetContext(2), PRINTED, (a, b)) == []


def test_mode_scan_and_cross_check(ctx1):
    scan = ww_mode_scan(ctx1)
    assert scan.passed and "[3]" in scan.note
    assert cross_lemma_report(ctx1).passed


def test_virasoro_span_sizes(ctx1):
    # p(d) restricted to parts >= 2: 1, 0, 1, 1, 2, 2, 4
    assert [len(virasoro_span(ctx1, d)) for d in range(7)] == [1, 0, 1, 1, 2, 2, 4]


def test_numeric_level_suite():
    reports = run_suite(2, level=Fraction(7, 3), check_filter="WaWb")
    assert reports and all(r.passed for r in reports)
    assert reports[0].params["n"] == "7/3"
