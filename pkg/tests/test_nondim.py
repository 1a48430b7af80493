import numpy as np
import pytest

from shoalwave import nondim
from shoalwave.errors import DomainError


@pytest.mark.parametrize(
    "kwargs",
    [
        {"wavelength": 0.0, "depth": 1.0, "gravity": 9.8, "amplitude": 0.1},
        {"wavelength": 1.0, "depth": -1.0, "gravity": 9.8, "amplitude": 0.1},
        {"wavelength": 1.0, "depth": 1.0, "gravity": 0.0, "amplitude": 0.1},
        {"wavelength": 1.0, "depth": 1.0, "gravity": 9.8, "amplitude": -0.1},
    ],
)
def test_params_validation(kwargs):
    with pytest.raises(ValueError):
        nondim.NondimParams(**kwargs)


def test_ratios_and_speed():
    p = nondim.NondimParams(wavelength=100.0, depth=4.0, gravity=9.8, amplitude=0.5)
    assert p.delta == pytest.approx(0.04)
    assert p.epsilon == pytest.approx(0.125)
    assert p.speed == pytest.approx(np.sqrt(39.2))


def test_round_trip():
    # Scale down and back up over a wide sweep of scenario scales; each
    # component is touched by one multiply and one divide, so the round
    # trip should sit within a few ulp.
    rng = np.random.default_rng(7)
    for _ in range(1000):
        p = nondim.NondimParams(
            wavelength=float(rng.uniform(1.0, 1e6)),
            depth=float(rng.uniform(0.1, 5000.0)),
            gravity=float(rng.uniform(0.1, 30.0)),
            amplitude=float(rng.uniform(0.0, 10.0)),
        )
        vals = tuple(rng.uniform(-100.0, 100.0, size=5))
        back = nondim.to_dimensional(p, *nondim.to_dimensionless(p, *vals))
        for a, b in zip(vals, back):
            assert b == pytest.approx(a, rel=1e-13, abs=1e-13)


def test_unit_scales_change_nothing():
    p = nondim.NondimParams(wavelength=1.0, depth=1.0, gravity=1.0, amplitude=0.3)
    assert p.speed == 1.0
    vals = (3.0, -20.0, 4.0, 1.0, 5.0)
    assert nondim.to_dimensionless(p, *vals) == vals
    assert nondim.to_dimensional(p, *vals) == vals


def test_scaling_directions():
    # wavelength 10, depth 2, gravity 0.5 -> unit wave speed.
    p = nondim.NondimParams(wavelength=10.0, depth=2.0, gravity=0.5, amplitude=0.0)
    assert p.speed == 1.0
    t, x, y, s, phi = nondim.to_dimensionless(p, 3.0, 20.0, 4.0, 1.0, 5.0)
    assert t == pytest.approx(0.3)
    assert x == pytest.approx(2.0)
    assert y == pytest.approx(2.0)
    assert s == pytest.approx(0.5)
    assert phi == pytest.approx(0.5)


def test_shallowness_report_open_ocean():
    # 800 km wavelength over a 3.9 km deep basin, 7 m amplitude.
    p = nondim.NondimParams(
        wavelength=800_000.0, depth=3900.0, gravity=9.8, amplitude=7.0
    )
    rep = nondim.shallowness_report(p)
    assert rep.delta2 == pytest.approx(2.38e-5, abs=1e-7)
    assert rep.epsilon == pytest.approx(1.79e-3, abs=1e-5)
    assert rep.is_shallow is True
    d = rep.as_dict()
    assert d["is_shallow"] is True
    assert d["delta2"] == rep.delta2


def test_shallowness_report_scaled_down():
    # Same ratios at 1/100 scale give the identical report.
    p = nondim.NondimParams(wavelength=8000.0, depth=39.0, gravity=9.8, amplitude=0.07)
    rep = nondim.shallowness_report(p)
    assert rep.delta2 == pytest.approx(2.3765625e-5)
    assert rep.epsilon == pytest.approx(1.7948717948717949e-3)
    assert rep.is_shallow is True


def test_shallowness_zero_amplitude_is_not_shallow():
    p = nondim.NondimParams(wavelength=1000.0, depth=10.0, gravity=9.8, amplitude=0.0)
    rep = nondim.shallowness_report(p)
    assert rep.epsilon == 0.0
    assert rep.is_shallow is False


def test_shallowness_ratio_max():
    # delta2 = 1e-4, epsilon = 1e-3: shallow at the default ratio_max=0.1,
    # not shallow when the margin is tightened.
    p = nondim.NondimParams(wavelength=100.0, depth=1.0, gravity=9.8, amplitude=1e-3)
    assert nondim.shallowness_report(p).is_shallow is True
    assert nondim.shallowness_report(p, ratio_max=0.05).is_shallow is False
    with pytest.raises(ValueError):
        nondim.shallowness_report(p, ratio_max=0.0)


def test_shallowness_boundary_ratio_is_not_shallow():
    # delta2 and epsilon equal (1e-2 each): the ratio is 1, an order of
    # magnitude past the default margin.
    p = nondim.NondimParams(wavelength=10.0, depth=1.0, gravity=9.8, amplitude=0.01)
    rep = nondim.shallowness_report(p)
    assert rep.delta2 == pytest.approx(rep.epsilon)
    assert rep.is_shallow is False


def test_sound_speed_unit_column():
    ms, kmh = nondim.sound_speed(1.0, 1.0)
    assert ms == 1.0
    assert kmh == 3.6


def test_sound_speed_abyssal_plain():
    ms, kmh = nondim.sound_speed(3900.0, 9.8)
    assert ms == pytest.approx(195.499, abs=1e-3)
    assert kmh == ms * 3.6


def test_sound_speed_grows_with_depth():
    depths = np.logspace(-1, np.log10(5000.0), 40)
    speeds = [nondim.sound_speed(float(d))[0] for d in depths]
    assert all(a < b for a, b in zip(speeds, speeds[1:]))


def test_sound_speed_deep_trench():
    ms, kmh = nondim.sound_speed(4282.0, 9.8)
    assert ms == pytest.approx(204.85, abs=0.01)
    assert kmh == pytest.approx(737.46, abs=0.05)
    assert kmh == ms * 3.6


def test_sound_speed_rejects_bad_inputs():
    with pytest.raises(DomainError):
        nondim.sound_speed(0.0)
    with pytest.raises(DomainError):
        nondim.sound_speed(-5.0)
    with pytest.raises(DomainError):
        nondim.sound_speed(100.0, gravity=0.0)
