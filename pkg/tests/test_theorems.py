import pytest

from ordfix import check_hypotheses, presets
from ordfix.theorems import ALIASES, THEOREMS
from ordfix.verdicts import Verdict

from conftest import antichain, line_space, make


def test_every_theorem_evaluates_on_the_grid(grid):
    for t in THEOREMS:
        report = check_hypotheses(grid, t)
        assert report.theorem == t
        assert report.entries


def test_grid_passes_the_comparability_lists_only(grid):
    for t in ("C51", "C51U", "T33", "T35", "T43", "T44", "T45", "T46"):
        assert check_hypotheses(grid, t).ok, t
    for t in ("RR", "NRL", "T27"):
        report = check_hypotheses(grid, t)
        assert [e.id for e in report.failed()] == [f"{t}.b"]


def test_aliases_resolve():
    assert check_hypotheses(presets.square_grid(), "rr-preset").theorem == "RR"
    assert set(ALIASES.values()) <= set(THEOREMS)
    with pytest.raises(KeyError):
        check_hypotheses(presets.square_grid(), "T99")


def test_extras_are_informational(grid):
    report = check_hypotheses(grid, "T35")
    extras = [e for e in report if not e.required]
    assert {e.id for e in extras} == {"C36.onto", "C36.closed"}


def test_report_lookup_by_suffix(grid):
    report = check_hypotheses(grid, "T33")
    assert report["vii"].verdict is Verdict.HOLDS
    assert report["T33.ii"].id == "T33.ii"


def test_failures_carry_witnesses():
    inst = make(antichain(2), [1, 0])
    report = check_hypotheses(inst, "T33")
    assert report["vi"].verdict is Verdict.FAILS
    u0 = check_hypotheses(make(antichain(2), [0, 1]), "T43")["u0"]
    assert u0.verdict is Verdict.FAILS and u0.witness == (0, 1)


def test_interval_report_uses_declarations(interval):
    report = check_hypotheses(interval, "T33")
    assert report.ok
    assert report["iii"].verdict in (Verdict.HOLDS, Verdict.ASSERTED)
    assert report["vii"].note.startswith("ESTIMATE")


def test_non_identity_g_fails_fixed_point_lists():
    inst = make(line_space([0, 1]), [0, 0], [1, 0])
    assert check_hypotheses(inst, "C51")["g=I"].verdict is Verdict.FAILS
