import pytest
from hypothesis import given, settings, strategies as st

from tarifflab.core import DataWarning, DomainError, ValidationError
from tarifflab.tariff_sim import (
    ALL_OTHERS, CHEAPER_ONLY, ElasticityParams, Origin, ScenarioState, TariffScenario, apply_shock,
    consumer_price_impact, cost_index, demand_shift, price_change, quantity_response,
)

from conftest import VIETNAM_FIXTURE
from oracles import share_shift_oracle

# frozen from oracles.share_shift_oracle (exact rational arithmetic) and checked by hand
VIETNAM_PROJECTED = {
    "Vietnam": 12.0625, "Brazil": 41.0375, "Colombia": 23.45,
    "Indonesia": 9.38, "India": 8.2075, "Ethiopia": 5.8625,
}
VIETNAM_WEIGHTED = 0.146085375


def scenario(rows, focal, ped=1.5, pt=0.75, mode=CHEAPER_ONLY):
    return TariffScenario(tuple(Origin(*r) for r in rows), focal, ElasticityParams(ped, pt), mode)


@pytest.mark.parametrize("tariff, pt, expected", [(46, 0.75, 0.345), (0, 0.75, 0.0), (10, 1.0, 0.10)])
def test_price_change(tariff, pt, expected):
    assert price_change(tariff, pt) == pytest.approx(expected, abs=1e-15)


def test_price_change_domain():
    with pytest.raises(DomainError):
        price_change(-1, 0.5)
    with pytest.raises(DomainError):
        price_change(10, 1.5)


@pytest.mark.parametrize("dp, expected", [(0.345, 134.5), (0.0, 100.0), (0.5, 150.0)])
def test_cost_index(dp, expected):
    assert cost_index(dp) == pytest.approx(expected, abs=1e-12)


def test_cost_index_domain():
    with pytest.raises(DomainError):
        cost_index(-1.01)


@pytest.mark.parametrize("ped, expected", [(1.5, -0.5175), (0.5, -0.1725)])
def test_quantity_response(ped, expected):
    assert quantity_response(ElasticityParams(ped, 0.75), 0.345) == pytest.approx(expected, abs=1e-12)


def test_quantity_response_zero_and_cap():
    assert quantity_response(ElasticityParams(3.0, 1.0), 0.0) == 0.0
    assert quantity_response(ElasticityParams(3.0, 1.0), 0.5) == -1.0


def test_elasticity_params_domain():
    for bad in [(0, 0.5), (-1.5, 0.5), (1.5, -0.1), (1.5, 1.1)]:
        with pytest.raises(DomainError):
            ElasticityParams(*bad)


@pytest.mark.parametrize("ped, quantity", [(1.5, 48.25), (0.5, 82.75)])
def test_apply_shock(ped, quantity):
    s = apply_shock(ScenarioState(), 46, ElasticityParams(ped, 0.75))
    assert s.price_index == pytest.approx(134.5, abs=1e-12)
    assert s.quantity_index == pytest.approx(quantity, abs=1e-12)


def test_apply_shock_zero_tariff():
    assert apply_shock(ScenarioState(), 0, ElasticityParams(1.5, 0.75)) == ScenarioState(100.0, 100.0)


def test_three_origin_example():
    p = demand_shift(scenario([("A", 40, 46), ("B", 30, 10), ("C", 30, 10)], "A"))
    assert p["A"].projected_share == pytest.approx(19.3, abs=1e-12)
    assert p["B"].projected_share == pytest.approx(40.35, abs=1e-12)
    assert p["C"].projected_share == pytest.approx(40.35, abs=1e-12)
    assert p.focal_loss == pytest.approx(20.7, abs=1e-12)
    assert not p.no_substitute


def test_equal_tariffs_no_substitute():
    rows = [("A", 40, 25), ("B", 30, 25), ("C", 30, 25)]
    p = demand_shift(scenario(rows, "A"))
    assert p.no_substitute
    assert [o.projected_share for o in p.origins] == [40, 30, 30]


def test_vietnam_fixture(vietnam_scenario):
    p = demand_shift(vietnam_scenario)
    oracle, weighted = share_shift_oracle(VIETNAM_FIXTURE, "Vietnam", 1.5, 0.75)
    for o in p.origins:
        assert o.projected_share == pytest.approx(float(oracle[o.name]), abs=1e-9)
        assert o.projected_share == pytest.approx(VIETNAM_PROJECTED[o.name], abs=1e-9)
    assert p["Vietnam"].projected_share < p["Vietnam"].baseline_share
    assert p["Brazil"].projected_share > p["Brazil"].baseline_share
    assert p["Colombia"].projected_share > p["Colombia"].baseline_share
    assert p["Vietnam"].cost_index == pytest.approx(134.5, abs=1e-12)


def test_consumer_price_impact_fixture(vietnam_scenario):
    p = demand_shift(vietnam_scenario)
    _, weighted = share_shift_oracle(VIETNAM_FIXTURE, "Vietnam", 1.5, 0.75)
    assert consumer_price_impact(p) == pytest.approx(float(weighted), abs=1e-12)
    assert consumer_price_impact(p) == pytest.approx(VIETNAM_WEIGHTED, abs=1e-12)
    assert p.weighted_price_change == pytest.approx(VIETNAM_WEIGHTED, abs=1e-12)
    assert consumer_price_impact(p) > 0


def test_consumer_price_constant_change():
    # pass-through 0.5 on a 10% tariff everywhere gives 0.05 for every origin
    p = demand_shift(scenario([("A", 50, 10), ("B", 50, 10)], "A", pt=0.5))
    assert consumer_price_impact(p) == pytest.approx(0.05, abs=1e-15)


def test_consumer_price_zero_tariffs():
    p = demand_shift(scenario([("A", 50, 0), ("B", 50, 0)], "A"))
    assert consumer_price_impact(p) == 0.0


def test_all_others_mode():
    rows = [("A", 40, 46), ("B", 30, 60), ("C", 30, 10)]
    cheaper = demand_shift(scenario(rows, "A"))
    everyone = demand_shift(scenario(rows, "A", mode=ALL_OTHERS))
    assert cheaper["B"].projected_share == 30
    assert everyone["B"].projected_share > 30
    assert sum(o.projected_share for o in everyone.origins) == pytest.approx(100, abs=1e-9)


def test_cap_gives_exact_zero():
    p = demand_shift(scenario([("A", 40, 100), ("B", 60, 0)], "A", ped=2.0, pt=1.0))
    assert p["A"].projected_share == 0.0
    assert p["B"].projected_share == pytest.approx(100.0, abs=1e-12)


def test_zero_share_recipients_split_equally():
    p = demand_shift(scenario([("A", 100, 46), ("B", 0, 0), ("C", 0, 0)], "A"))
    assert p["B"].projected_share == p["C"].projected_share == pytest.approx(51.75 / 2)


def test_renormalizes_with_warning():
    with pytest.warns(DataWarning, match="renormaliz"):
        p = demand_shift(scenario([("A", 40, 46), ("B", 30, 10), ("C", 20, 10)], "A"))
    assert sum(o.baseline_share for o in p.origins) == pytest.approx(100, abs=1e-9)
    assert sum(o.projected_share for o in p.origins) == pytest.approx(100, abs=1e-9)


@pytest.mark.parametrize("rows, focal, mode", [
    ([("A", 50, 10), ("A", 50, 10)], "A", CHEAPER_ONLY),
    ([("A", 50, 10), ("B", 50, 10)], "Z", CHEAPER_ONLY),
    ([("A", 50, -10), ("B", 50, 10)], "A", CHEAPER_ONLY),
    ([("A", 150, 10), ("B", 50, 10)], "A", CHEAPER_ONLY),
    ([("A", 50, 10), ("B", 50, 10)], "A", "nearest"),
    ([], "A", CHEAPER_ONLY),
])
def test_invalid_scenarios(rows, focal, mode):
    with pytest.raises(ValidationError):
        demand_shift(scenario(rows, focal, mode=mode))


def test_json_round_trip(vietnam_scenario):
    again = TariffScenario.from_json(vietnam_scenario.to_json())
    assert again == vietnam_scenario


def test_from_json_missing_keys():
    with pytest.raises(ValidationError, match="focal"):
        TariffScenario.from_json({"ped": 1.5, "pass_through": 0.75, "origins": []})


def test_projection_json_keys(vietnam_scenario):
    js = demand_shift(vietnam_scenario).to_json()
    assert {"focal_loss", "weighted_price_change", "no_substitute", "origins"} <= set(js)
    assert set(js["origins"][0]) == {"name", "baseline_share", "projected_share", "price_change", "cost_index"}


@st.composite
def scenarios(draw, mode=CHEAPER_ONLY):
    n = draw(st.integers(2, 8))
    shares = draw(st.lists(st.floats(0.5, 50), min_size=n, max_size=n))
    total = sum(shares)
    shares = [s * 100 / total for s in shares]
    shares[-1] = 100 - sum(shares[:-1])
    tariffs = draw(st.lists(st.floats(0, 150), min_size=n, max_size=n))
    rows = [(f"o{i}", s, t) for i, (s, t) in enumerate(zip(shares, tariffs))]
    focal = f"o{draw(st.integers(0, n - 1))}"
    ped = draw(st.floats(0.1, 4))
    pt = draw(st.floats(0, 1))
    return scenario(rows, focal, ped, pt, mode)


@settings(max_examples=300, deadline=None)
@given(scenarios())
def test_conservation_and_direction(sc):
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DataWarning)
        p = demand_shift(sc)
    assert abs(sum(o.projected_share for o in p.origins) - 100) <= 1e-9
    assert all(o.projected_share >= 0 for o in p.origins)
    focal = p[sc.focal_origin]
    for o in p.origins:
        if o.projected_share > o.baseline_share:
            assert o.cost_index < focal.cost_index
        if o.name != sc.focal_origin:
            assert o.projected_share >= o.baseline_share


@settings(max_examples=200, deadline=None)
@given(scenarios(), st.floats(0, 100))
def test_focal_share_monotone_in_tariff(sc, bump):
    import warnings
    raised = TariffScenario(
        tuple(Origin(o.name, o.baseline_share, o.tariff + bump if o.name == sc.focal_origin else o.tariff)
              for o in sc.origins),
        sc.focal_origin, sc.params, sc.redistribution,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DataWarning)
        before = demand_shift(sc)[sc.focal_origin].projected_share
        after = demand_shift(raised)[sc.focal_origin].projected_share
    assert after <= before + 1e-12


@settings(max_examples=200, deadline=None)
@given(scenarios(mode=ALL_OTHERS))
def test_zero_shock_identity(sc):
    import warnings
    zeroed = TariffScenario(
        tuple(Origin(o.name, o.baseline_share, 0.0 if o.name == sc.focal_origin else o.tariff)
              for o in sc.origins),
        sc.focal_origin, sc.params, sc.redistribution,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DataWarning)
        p = demand_shift(zeroed)
    assert all(o.projected_share == o.baseline_share for o in p.origins)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 500), st.floats(0, 1))
def test_price_and_cost_compose(t, p):
    assert cost_index(price_change(t, p)) == pytest.approx(100 + t * p, abs=1e-12)
