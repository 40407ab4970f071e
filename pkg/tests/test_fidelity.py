import numpy as np
import pytest
from fractions import Fraction

from tbrevival import (
    ChainSpec,
    GaussianSpec,
    NoMirrorCloneError,
    RevivalFraction,
    SuperpositionSpec,
    TraceOptions,
    autocorrelation,
    build_gwp,
    build_superposition,
    eigen_modes,
    evolve_quadratic,
    find_peaks,
    fractional_fidelity,
    inner_product,
    mirror_fidelity,
    trace,
)

ALPHA24 = 2 * np.sqrt(np.log(2)) / 24


def test_autocorrelation_at_zero(chain500, packet50):
    assert autocorrelation(chain500, packet50, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_autocorrelation_eigenmode_modulus_one():
    chain = ChainSpec(n_sites=11)
    mode = eigen_modes(chain)[2]
    j = np.arange(1, 12)
    vec = (np.sqrt(2 / 12) * np.sin(mode.wavenumber * j)).astype(complex)
    for t in (3.0, 171.5, 4096.0):
        assert abs(autocorrelation(chain, vec, t)) == pytest.approx(1.0, abs=1e-12)


def test_autocorrelation_half_revival_weight(chain500, clock500, packet50):
    # a weight-1/2 clone sits at the initial position at half the revival time
    value = abs(autocorrelation(chain500, packet50, clock500.revival_time / 2)) ** 2
    assert value == pytest.approx(0.5, abs=0.02)


def test_autocorrelation_half_revival_with_overlapping_mirror(chain500, clock500):
    # center adjacent to its own mirror: the two clones coincide and the
    # autocorrelation climbs to (1 + f^2)/2 instead of 1/2
    state = build_gwp(chain500, GaussianSpec(center=250.0, alpha=ALPHA24))
    value = abs(autocorrelation(chain500, state, clock500.revival_time / 2)) ** 2
    assert value == pytest.approx(0.973, abs=5e-3)


def test_mirror_fidelity_modulus_bounded(chain500, spec50):
    for t in (0.0, 1000.0, 50000.0):
        assert abs(mirror_fidelity(chain500, spec50, t)) <= 1 + 1e-9


def test_mirror_fidelity_center_symmetry(chain500, clock500):
    a = GaussianSpec(center=50.0, alpha=ALPHA24)
    b = GaussianSpec(center=451.0, alpha=ALPHA24)
    for t in (clock500.revival_time / 3, clock500.revival_time):
        assert abs(mirror_fidelity(chain500, a, t)) == pytest.approx(
            abs(mirror_fidelity(chain500, b, t)), abs=1e-9
        )


def test_mirror_fidelity_third_chain_value(chain500, clock500):
    spec = GaussianSpec(center=501 / 3, alpha=ALPHA24)
    value = abs(mirror_fidelity(chain500, spec, clock500.revival_time / 3)) ** 2
    assert value == pytest.approx(0.98687, abs=1e-3)


def test_third_chain_quadratic_phase(chain500, clock500):
    # under quadratic phases the shortened revival carries phase exp(-i pi/3)
    spec = GaussianSpec(center=501 / 3, alpha=ALPHA24)
    initial = build_gwp(chain500, spec)
    target = build_gwp(chain500, spec.mirrored(chain500))
    evolved = evolve_quadratic(chain500, initial, clock500.revival_time / 3)
    phase = inner_product(target, evolved)
    assert phase == pytest.approx(np.exp(-1j * np.pi / 3), abs=1e-9)


def test_fractional_fidelity_full_revival_equals_mirror(chain500, clock500, spec50):
    frac = RevivalFraction(1, 1)
    assert fractional_fidelity(chain500, spec50, frac) == pytest.approx(
        abs(mirror_fidelity(chain500, spec50, clock500.revival_time)), abs=1e-12
    )


def test_fractional_fidelity_no_mirror_clone(chain500, spec50):
    with pytest.raises(NoMirrorCloneError):
        fractional_fidelity(chain500, spec50, RevivalFraction(2, 3))


def test_fractional_fidelity_dominates_mirror_fidelity(chain500, clock500, spec50):
    for p, q in ((1, 2), (1, 3), (1, 5), (3, 4)):
        frac = RevivalFraction(p, q)
        f = abs(mirror_fidelity(chain500, spec50, frac.time(chain500)))
        assert fractional_fidelity(chain500, spec50, frac) >= f - 1e-12


def test_fractional_fidelity_flags_clone_pileup(chain500):
    # commensurate center: a folded clone lands on the mirror site and the
    # single-coefficient normalisation overshoots 1
    spec = GaussianSpec(center=501 / 10, alpha=ALPHA24)
    with pytest.warns(UserWarning, match="exceeds 1"):
        value = fractional_fidelity(chain500, spec, RevivalFraction(1, 10))
    assert value**2 == pytest.approx(3.897, abs=0.01)


def test_trace_single_point_matches_scalar_ops(chain500, clock500, spec50, packet50):
    result = trace(chain500, packet50, [Fraction(1, 2)])
    t = clock500.revival_time / 2
    assert result.abs_f_sq[0] == pytest.approx(
        abs(mirror_fidelity(chain500, spec50, t)) ** 2, abs=1e-12
    )
    assert result.abs_a_sq[0] == pytest.approx(
        abs(autocorrelation(chain500, packet50, t)) ** 2, abs=1e-12
    )
    assert result.abs_ff_sq[0] == pytest.approx(
        fractional_fidelity(chain500, spec50, RevivalFraction(1, 2)) ** 2, abs=1e-12
    )


def test_trace_validates_grid(chain500, packet50):
    with pytest.raises(ValueError):
        trace(chain500, packet50, [])
    with pytest.raises(ValueError):
        trace(chain500, packet50, [0.2, 0.2, 0.3])
    with pytest.raises(ValueError):
        trace(chain500, packet50, [0.3, 0.1])


def test_trace_no_mirror_clone_is_nan(chain500, packet50):
    result = trace(chain500, packet50, [Fraction(0, 1), Fraction(2, 3)])
    assert np.isnan(result.abs_ff_sq).all()
    assert result.abs_a_sq[0] == pytest.approx(1.0, abs=1e-12)


def test_trace_bounds_and_determinism(chain500, packet50):
    grid = np.linspace(0.0, 1.0, 101)
    one = trace(chain500, packet50, grid)
    two = trace(chain500, packet50, grid)
    np.testing.assert_array_equal(one.abs_f_sq, two.abs_f_sq)
    np.testing.assert_array_equal(one.abs_a_sq, two.abs_a_sq)
    assert np.all((one.abs_f_sq >= 0) & (one.abs_f_sq <= 1 + 1e-9))
    assert np.all((one.abs_a_sq >= 0) & (one.abs_a_sq <= 1 + 1e-9))


def test_trace_profiles_and_runtime(chain500, packet50):
    import time

    start = time.time()
    result = trace(
        chain500,
        packet50,
        np.linspace(0.0, 1.0, 2000),
        TraceOptions(profile_times=(0.5,)),
    )
    elapsed = time.time() - start
    assert elapsed < 60.0
    assert 0.5 in result.profiles
    assert (result.profiles[0.5] ** 2).sum() == pytest.approx(1.0, abs=1e-9)


def test_find_peaks_monotone_is_empty():
    t = np.linspace(0, 1, 50)
    assert find_peaks(t, t**2, min_height=0.0, min_separation=0.01) == []


def test_find_peaks_reports_earlier_of_equal_maxima():
    t = np.arange(7, dtype=float)
    v = np.array([0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0])
    peaks = find_peaks(t, v, min_height=0.5, min_separation=2.0)
    assert peaks == [(1.0, 1.0)]


def test_find_peaks_separation_and_height():
    t = np.arange(9, dtype=float)
    v = np.array([0, 0.6, 0, 0.9, 0, 0.3, 0, 0.8, 0], dtype=float)
    peaks = find_peaks(t, v, min_height=0.5, min_separation=3.0)
    assert peaks == [(3.0, 0.9), (7.0, 0.8)]


def test_superposition_first_strong_peak_at_twelfth(chain500, clock500):
    # survivors n = +-1 mod 6 all share parity +1, so the first strong
    # recurrence sits at 2 pi/(24 dE) = t_rev/12
    spec = SuperpositionSpec.equal_weights([501 / 3, 2 * 501 / 3], alpha=ALPHA24)
    state = build_superposition(chain500, spec)
    grid = [Fraction(k, 2400) for k in range(0, 601)]
    result = trace(chain500, state, grid)
    peaks = find_peaks(result.times, result.abs_a_sq, min_height=0.5, min_separation=0.01)
    assert peaks, "no strong recurrence found"
    assert peaks[0][0] == pytest.approx(1 / 12, rel=0.02)
    assert peaks[0][1] >= 0.99
    # and nothing at the naive half period: k = 100 -> t = 1/24
    assert result.abs_a_sq[100] < 0.05
