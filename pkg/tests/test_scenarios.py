import pytest
from hypothesis import given, settings, strategies as st

from clubgood.equilibrium import Zone, closed_form_m_star, optimal_m_numeric, soc_check
from clubgood.model import ParameterError, marginal_benefit, marginal_cost
from clubgood.scenarios import (
    CHINA_BASELINE,
    US_BASELINE,
    FracturedEconomy,
    SweepParameter,
    SweepResult,
    analyze_fracture,
    builtin_presets,
    get_preset,
    sensitivity_sweep,
    welfare_curve,
)

from test_model import params_strategy


def test_presets_exact():
    presets = {p.name: p for p in builtin_presets()}
    assert list(presets) == [
        "us-baseline",
        "china-baseline",
        "us-counterfactual-k8",
        "us-incumbents",
        "us-elites",
    ]
    us = presets["us-baseline"]
    assert (us.params.alpha, us.params.delta, us.params.theta) == (2.0, 0.0, 0.6)
    assert (us.params.gamma, us.params.phi, us.params.capacity, us.m_actual) == (1.0, 2.5, 5.0, 6.0)
    cn = presets["china-baseline"]
    assert (cn.params.alpha, cn.params.delta, cn.params.capacity, cn.m_actual) == (1.0, 0.5, 8.0, 6.0)
    assert presets["us-counterfactual-k8"].params == US_BASELINE.with_(capacity=8.0)
    assert presets["us-incumbents"].params == US_BASELINE.with_(capacity=4.0)
    assert presets["us-elites"].params.capacity == 7.0


def test_get_preset_unknown():
    assert get_preset("us-elites").params.capacity == 7.0
    with pytest.raises(KeyError, match="unknown preset"):
        get_preset("mars")


def test_welfare_curve_argmax_near_optimum():
    us = welfare_curve(US_BASELINE, 10.0, 101)
    best = max(range(len(us.m_grid)), key=us.welfare_values.__getitem__)
    # M* = 5.648; 5.6 is both the nearest grid point and the grid argmax
    assert us.m_grid[best] == pytest.approx(5.6)
    assert us.m_star_marker == pytest.approx(5.6484541045, rel=1e-10)

    cn = welfare_curve(CHINA_BASELINE, 12.0, 121)
    best = max(range(len(cn.m_grid)), key=cn.welfare_values.__getitem__)
    assert cn.m_grid[best] == pytest.approx(9.0)


def test_welfare_curve_two_points():
    c = welfare_curve(US_BASELINE, 3.0, 2)
    assert c.m_grid == [0.0, 3.0]
    assert c.welfare_values[0] == 0.0


def test_welfare_curve_rejects_bad_grid():
    with pytest.raises(ValueError):
        welfare_curve(US_BASELINE, 0.0, 10)
    with pytest.raises(ValueError):
        welfare_curve(US_BASELINE, 10.0, 1)


@settings(max_examples=50, deadline=None)
@given(p=params_strategy, m_max=st.floats(0.5, 30), n=st.integers(2, 60))
def test_welfare_curve_consistency(p, m_max, n):
    c = welfare_curve(p, m_max, n)
    assert len(c.m_grid) == len(c.benefit_values) == len(c.cost_values) == len(c.welfare_values) == n
    assert c.m_grid[0] == 0.0 and c.m_grid[-1] == m_max
    for b, k, w in zip(c.benefit_values, c.cost_values, c.welfare_values):
        assert w == b - k


def test_phi_sweep():
    res = sensitivity_sweep(US_BASELINE, "phi", [2.5, 2.0], 6.0)
    assert [r.parameter_value for r in res.rows] == [2.0, 2.5]
    assert abs(res.rows[0].m_star - 6.9) <= 0.1
    assert abs(res.rows[1].m_star - 5.7) <= 0.1
    assert [r.zone for r in res.rows] == [Zone.CLIMBING, Zone.DISECONOMY]


def test_capacity_sweep():
    res = sensitivity_sweep(US_BASELINE, SweepParameter.CAPACITY, [4, 5, 6, 7, 8], 6.0)
    expected = [4.2113024144660, 5.6484541045003, 7.1798513762022, 8.7943416911056, 10.483553814556]
    assert [r.m_star for r in res.rows] == pytest.approx(expected, rel=1e-12)
    ms = [r.m_star for r in res.rows]
    assert all(a < b for a, b in zip(ms, ms[1:]))


def test_sweep_invalid_row_does_not_stop():
    res = sensitivity_sweep(US_BASELINE, "phi", [0.5, 2.0], 6.0)
    bad, good = res.rows
    assert not bad.ok and bad.error == "phi must exceed 1" and bad.m_star is None
    assert good.ok and good.m_star is not None
    theta = sensitivity_sweep(US_BASELINE, "theta", [1.0], 6.0)
    assert "theta" in theta.rows[0].error


def test_sweep_rows_satisfy_equilibrium_conditions():
    res = sensitivity_sweep(US_BASELINE, "gamma", [0.5, 1.0, 2.0, 4.0], 6.0)
    for row in res.rows:
        p = US_BASELINE.with_(gamma=row.parameter_value)
        mb, mc = marginal_benefit(p, row.m_star), marginal_cost(p, row.m_star)
        assert abs(mb - mc) <= 1e-8 * (1 + mb)
        assert soc_check(p, row.m_star) < 0
        assert row.m_star == pytest.approx(optimal_m_numeric(p).m_star, rel=1e-6)


def test_sweep_parallel_matches_serial():
    values = [1.1 + 0.05 * i for i in range(60)]
    serial = sensitivity_sweep(US_BASELINE, "phi", values, 6.0)
    parallel = sensitivity_sweep(US_BASELINE, "phi", values, 6.0, workers=8)
    assert serial == parallel


def test_sweep_json_round_trip():
    res = sensitivity_sweep(US_BASELINE, "phi", [0.5, 2.0], 6.0)
    assert SweepResult.from_dict(res.to_dict()) == res


US_FRACTURE = FracturedEconomy.from_params(US_BASELINE, [("incumbents", 4.0), ("elites", 7.0)], 6.0)


def test_us_fracture():
    report = analyze_fracture(US_FRACTURE)
    inc, eli = report.per_group
    assert inc.label == "incumbents" and eli.label == "elites"
    assert inc.m_star == pytest.approx(4.2113024144660, rel=1e-12)
    assert eli.m_star == pytest.approx(8.7943416911056, rel=1e-12)
    assert inc.zone is Zone.DISECONOMY
    assert eli.zone is Zone.CLIMBING
    assert report.conflict is True


def test_fracture_without_conflict():
    low = FracturedEconomy.from_params(US_BASELINE, [("incumbents", 4.0), ("elites", 7.0)], 3.0)
    report = analyze_fracture(low)
    assert [g.zone for g in report.per_group] == [Zone.CLIMBING, Zone.CLIMBING]
    assert report.conflict is False


@pytest.mark.parametrize("m", [0.0, 3.0, 5.6484541045, 9.0])
def test_equal_capacities_never_conflict(m):
    e = FracturedEconomy.from_params(US_BASELINE, [("a", 5.0), ("b", 5.0)], m)
    r = analyze_fracture(e)
    assert r.per_group[0].m_star == r.per_group[1].m_star
    assert r.conflict is False


def test_fractured_economy_validation():
    with pytest.raises(ParameterError, match="at least 2"):
        FracturedEconomy.from_params(US_BASELINE, [("a", 5.0)], 6.0)
    with pytest.raises(ParameterError, match="unique"):
        FracturedEconomy.from_params(US_BASELINE, [("a", 5.0), ("a", 6.0)], 6.0)
    with pytest.raises(ParameterError, match="capacity"):
        FracturedEconomy.from_params(US_BASELINE, [("a", 5.0), ("b", -1.0)], 6.0)


group_lists = st.lists(
    st.floats(0.5, 20), min_size=2, max_size=6
).map(lambda ks: [(f"g{i}", k) for i, k in enumerate(ks)])


@settings(max_examples=200, deadline=None)
@given(p=params_strategy, groups=group_lists, m=st.floats(0, 50))
def test_fracture_ordering_and_conflict_definition(p, groups, m):
    report = analyze_fracture(FracturedEconomy.from_params(p, groups, m))
    by_k = sorted(report.per_group, key=lambda g: g.capacity)
    for lo, hi in zip(by_k, by_k[1:]):
        if hi.capacity > lo.capacity:
            assert hi.m_star > lo.m_star
    m_lo = closed_form_m_star(p.with_(capacity=by_k[0].capacity))
    m_hi = closed_form_m_star(p.with_(capacity=by_k[-1].capacity))
    assert report.conflict == (m_lo < m < m_hi)
