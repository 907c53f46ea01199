from fractions import Fraction

import pytest

from nbrw import (
    BadParamsError,
    BudgetExceededError,
    PrerequisiteUnverified,
    area_vol,
    butterfly,
    complete,
    cycle,
    diagnose,
    folner_trend,
    iota_bruteforce,
    make_multigraph,
    petersen,
)
from nbrw.multigraph import ball
from nbrw.sources import FreeGroupSource, GridZ2Source, RegularTreeSource


def test_area_vol_hand_values():
    g = butterfly()
    assert area_vol(g, ["x"]) == (4, 4)
    assert area_vol(g, ["x", "a"]) == (4, 6)
    assert area_vol(g, ["x", "a", "b"]) == (2, 8)
    assert area_vol(g, list(g.labels)) == (0, 12)
    assert area_vol(complete(4), ["0", "1"]) == (4, 6)


def test_area_vol_loops_stay_internal():
    g = make_multigraph(["u", "v"], {("u", "v"): 2}, loops={"v": 1})
    assert area_vol(g, ["v"]) == (2, 4)
    assert area_vol(g, ["u", "v"]) == (0, 6)


def test_area_vol_on_source():
    grid = GridZ2Source()
    assert area_vol(grid, ["0,0"]) == (4, 4)
    block = ["0,0", "0,1", "1,0", "1,1"]
    assert area_vol(grid, block) == (8, 16)
    assert area_vol(grid, block + block) == (8, 16)  # duplicates collapse
    with pytest.raises(BadParamsError):
        area_vol(grid, [])


def test_iota_k4_by_size():
    rep = iota_bruteforce(complete(4), 4)
    assert rep.lower_bound_exact == 0
    assert set(rep.best_set) == {"0", "1", "2", "3"}
    by_size = {len(w): r for w, _, _, r in rep.upper_bounds}
    assert by_size[1] == 1
    assert by_size[2] == Fraction(2, 3)
    assert by_size[3] == Fraction(1, 3)
    assert by_size[4] == 0


def test_iota_enumerates_connected_sets_once():
    # C4 has 4 + 4 + 4 + 1 connected vertex sets
    rep = iota_bruteforce(cycle(4), 4)
    assert rep.visited == 13


def test_iota_monotone_in_size_cap():
    g = petersen()
    values = [iota_bruteforce(g, k).lower_bound_exact for k in range(1, 6)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert values[0] == 1


def test_iota_witness_is_recomputable():
    g = petersen()
    rep = iota_bruteforce(g, 5)
    area, vol = area_vol(g, rep.best_set)
    assert (area, vol) == (rep.best_area, rep.best_vol)
    assert Fraction(area, vol) == rep.lower_bound_exact


def test_iota_on_grid_ball_with_ambient_degrees():
    view = ball(GridZ2Source(), "0,0", 4)
    rep = iota_bruteforce(view.graph, 4, true_degrees=view.true_degrees,
                          scope="ball")
    assert rep.lower_bound_exact == Fraction(1, 2)
    assert rep.scope == "ball"
    area, vol = area_vol(GridZ2Source(), rep.best_set)
    assert Fraction(area, vol) == Fraction(1, 2)


def test_iota_budget_raises_with_progress():
    with pytest.raises(BudgetExceededError) as exc:
        iota_bruteforce(petersen(), 6, budget=20)
    assert exc.value.visited == 21  # raised on the first set past the cap


def test_folner_trend_grid():
    trend = folner_trend(GridZ2Source(), "0,0", 40)
    assert trend.truncated_at is None
    assert len(trend.rows) == 41
    r, area, vol, ratio = trend.rows[-1]
    assert r == 40
    assert ratio == Fraction(area, vol)
    assert ratio == Fraction(81, 3281)
    ratios = trend.ratios()
    assert ratios[-1] < 0.1
    assert all(b <= a * 1.01 for a, b in zip(ratios[5:], ratios[6:]))


def test_folner_trend_tree_stays_bounded_below():
    trend = folner_trend(FreeGroupSource(2), "1", 8)
    assert min(trend.ratios()) > 0.49


def test_folner_trend_budget_truncates():
    trend = folner_trend(FreeGroupSource(2), "1", 30, budget=10_000)
    assert trend.truncated_at is not None
    assert trend.rows[-1][0] < 30


def test_diagnose_grid():
    diag = diagnose(GridZ2Source(), "0,0", n_max=200, r_max=40, k=4)
    assert diag.verdict == "consistent_amenable"
    assert diag.evidence == "amenable_like"
    assert diag.prerequisites["dense_cycles_verified"]
    assert diag.rho_estimate.value >= 0.95
    assert diag.folner.last_ratio() < 0.1
    assert diag.iota_report.folner_trend is diag.folner


def test_diagnose_tree_is_inconclusive_with_warning():
    with pytest.warns(PrerequisiteUnverified):
        diag = diagnose(FreeGroupSource(2), "1", n_max=60, r_max=8, k=4)
    assert diag.verdict == "inconclusive"
    assert diag.evidence == "nonamenable_like"
    assert not diag.prerequisites["dense_cycles_verified"]
    assert diag.rho_estimate.value == Fraction(1, 3)
    assert diag.iota_report.lower_bound_exact > 0
    assert any("informational" in note for note in diag.notes)


def test_diagnose_rejects_finite_graphs():
    with pytest.raises(BadParamsError):
        diagnose(petersen(), "o0")


def test_diagnose_shrinks_search_under_tight_budget():
    with pytest.warns(PrerequisiteUnverified):
        diag = diagnose(RegularTreeSource(3), "o", n_max=40, r_max=6, k=6,
                        budget=50_000)
    assert diag.iota_report is not None
    assert diag.iota_report.size_cap <= 6
