from collections import Counter

import pytest

from chainconic.chain import center_polygon, propagate
from chainconic.conic import ConicKind, guaranteed_kind, verify_inscribed_conic
from chainconic.errors import ConfigurationError, ExhaustedRetries, UnknownScenario
from chainconic.generator import SCENARIO_NAMES, CarrierSeparation, GeneratorProfile, random_config, scenario
from chainconic.kernel import StraightLine, squared_distance
from chainconic.serialize import dumps_config

INSIDE = CarrierSeparation.K_INSIDE_L


def test_deterministic():
    a = random_config(6, GeneratorProfile(INSIDE, 0))
    b = random_config(6, GeneratorProfile(INSIDE, 0))
    assert a == b
    assert dumps_config(a) == dumps_config(b)


def test_different_seeds_differ():
    a = random_config(6, GeneratorProfile(INSIDE, 0))
    b = random_config(6, GeneratorProfile(INSIDE, 1))
    assert a.p_params != b.p_params or a.carrier_k != b.carrier_k or a.q_start != b.q_start


def test_line_profile():
    config = random_config(4, GeneratorProfile(CarrierSeparation.L_IS_LINE, 7))
    assert isinstance(config.carrier_l, StraightLine)


@pytest.mark.parametrize("sep, kind", [
    (CarrierSeparation.K_INSIDE_L, ConicKind.ELLIPSE),
    (CarrierSeparation.K_OUTSIDE_L, ConicKind.HYPERBOLA),
    (CarrierSeparation.L_IS_LINE, ConicKind.PARABOLA),
])
def test_profiles_fix_conic_kind(sep, kind):
    for seed in range(5):
        config = random_config(6, GeneratorProfile(sep, seed))
        assert guaranteed_kind(config.carrier_k, config.carrier_l) is kind
        if sep is not CarrierSeparation.L_IS_LINE:
            inside = squared_distance(config.carrier_k.center, config.carrier_l.center) < config.carrier_l.radius_sq
            assert inside is (sep is CarrierSeparation.K_INSIDE_L)


def test_parameters_on_grid():
    profile = GeneratorProfile(INSIDE, 3, param_grid=9)
    config = random_config(8, profile)
    for t in config.p_params + (config.q_start,):
        assert abs(t.numerator) <= 9 and 1 <= t.denominator <= 9


@pytest.mark.parametrize("n", [3, 5, 6])
def test_emitted_configurations_propagate(n):
    for seed in range(5):
        config = random_config(n, GeneratorProfile(INSIDE, seed))
        chain = propagate(config)
        if n % 2 == 0:
            verify_inscribed_conic(config.carrier_k.center, config.carrier_l, center_polygon(chain))


def test_rejection_stats_and_retry_budget():
    stats = Counter()
    random_config(6, GeneratorProfile(CarrierSeparation.K_OUTSIDE_L, 0), stats)
    assert stats["profile"] > 0
    with pytest.raises(ExhaustedRetries):
        random_config(6, GeneratorProfile(CarrierSeparation.K_OUTSIDE_L, 0, max_retries=1, min_separation=0.4))


def test_profile_validation():
    with pytest.raises(ConfigurationError):
        GeneratorProfile(INSIDE, 0, param_grid=4)
    with pytest.raises(ConfigurationError):
        GeneratorProfile(INSIDE, -1)
    with pytest.raises(ConfigurationError):
        random_config(2, GeneratorProfile(INSIDE, 0))


@pytest.mark.parametrize("name, kind", [
    ("fig2-ellipse", ConicKind.ELLIPSE),
    ("fig3-parabola", ConicKind.PARABOLA),
    ("hyperbola", ConicKind.HYPERBOLA),
])
def test_scenarios(name, kind):
    config = scenario(name)
    assert config.n == 6
    conic, _ = verify_inscribed_conic(config.carrier_k.center, config.carrier_l, center_polygon(propagate(config)))
    assert conic.kind is kind


def test_unknown_scenario():
    with pytest.raises(UnknownScenario):
        scenario("no-such")
    assert set(SCENARIO_NAMES) == {"fig2-ellipse", "fig3-parabola", "hyperbola"}


def test_inside_profile_never_concentric():
    stats = Counter()
    for seed in range(60):
        config = random_config(6, GeneratorProfile(CarrierSeparation.K_INSIDE_L, seed), stats)
        assert config.carrier_k.center != config.carrier_l.center
    assert stats["concentric"] > 0
