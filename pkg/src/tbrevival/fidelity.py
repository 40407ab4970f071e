"""Scalar revival diagnostics and fidelity traces over time grids.

The three diagnostics: autocorrelation A(t) = <initial|evolved(t)>, mirror
fidelity F(t) = <mirrored initial|evolved(t)>, and fractional fidelity
|F_f| = |F| / |b_{l/2}|, which rescales F by the predicted amplitude of the
clone at the mirror position so that a faithful partial clone scores 1.

Fidelities are complex for programmatic phase checks; traces record the
squared magnitudes that get plotted.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chain import ChainSpec, inner_product, mode_energies, reflect, to_spectral
from .propagator import evolve_exact, revival_clock
from .revival import RevivalFraction, gauss_coefficients
from .wavepacket import GaussianSpec, build_gwp

__all__ = [
    "NoMirrorCloneError",
    "autocorrelation",
    "mirror_fidelity",
    "fractional_fidelity",
    "TraceOptions",
    "FidelityTrace",
    "trace",
    "find_peaks",
]


class NoMirrorCloneError(ValueError):
    """The Gauss expansion has b_{l/2} = 0: no clone sits at the mirror position."""


def autocorrelation(chain: ChainSpec, initial: np.ndarray, t: float) -> complex:
    """A(t) = <initial|exp(-iHt)|initial>."""
    return inner_product(initial, evolve_exact(chain, initial, t))


def mirror_fidelity(chain: ChainSpec, spec: GaussianSpec, t: float) -> complex:
    """F(t): overlap of the evolved packet with a fresh packet at the mirror site."""
    initial = build_gwp(chain, spec)
    target = build_gwp(chain, spec.mirrored(chain))
    return inner_product(target, evolve_exact(chain, initial, t))


def fractional_fidelity(chain: ChainSpec, spec: GaussianSpec, fraction: RevivalFraction) -> float:
    """|F(tau)| / |b_{l/2}| at tau = (p/q) t_rev.

    Raises :class:`NoMirrorCloneError` when b_{l/2} = 0 (no mirror clone is
    predicted at this fraction).  Values above 1 + 1e-6 are reported with a
    warning: they flag instants where folded clones pile onto the mirror
    position and the single-coefficient normalisation underestimates the
    predicted amplitude there.
    """
    coeffs = gauss_coefficients(fraction)
    mirror_amp = abs(coeffs.mirror)
    if mirror_amp < 1e-12:
        raise NoMirrorCloneError(f"no mirror clone at fraction {fraction}")
    value = abs(mirror_fidelity(chain, spec, fraction.time(chain))) / mirror_amp
    if value > 1 + 1e-6:
        warnings.warn(
            f"fractional fidelity {value:.4f} exceeds 1 at {fraction}: "
            "clone coincidence at the mirror position",
            stacklevel=2,
        )
    return value


@dataclass(frozen=True)
class TraceOptions:
    """Trace knobs: rational labelling cap and optional profile snapshots."""

    max_denominator: int = 128
    profile_times: tuple[float, ...] = ()


@dataclass(frozen=True)
class FidelityTrace:
    """Sampled |F|^2, |F_f|^2, |A|^2 over a grid of times in units of t_rev.

    ``abs_ff_sq`` is NaN where no mirror clone exists for the grid point's
    rational label (including t = 0).
    """

    times: np.ndarray
    abs_f_sq: np.ndarray
    abs_ff_sq: np.ndarray
    abs_a_sq: np.ndarray
    profiles: dict = field(default_factory=dict)


def trace(
    chain: ChainSpec,
    initial: np.ndarray,
    grid,
    options: TraceOptions | None = None,
) -> FidelityTrace:
    """Evaluate the diagnostics on a strictly increasing grid of t/t_rev.

    Grid entries may be floats or :class:`fractions.Fraction`.  For the
    fractional-fidelity normalisation every entry is labelled by its
    closest rational within ``options.max_denominator``; fractions that
    already reduce below the cap pass through exactly.  Points are
    independent, so results do not depend on evaluation order.
    """
    options = options or TraceOptions()
    if len(grid) == 0:
        raise ValueError("time grid is empty")
    times = np.array([float(g) for g in grid], dtype=float)
    if len(times) > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("time grid must be strictly increasing")

    t_rev = revival_clock(chain).revival_time
    energies = mode_energies(chain)
    coeff = to_spectral(chain, initial)
    coeff_mirror = to_spectral(chain, reflect(chain, initial))
    w_auto = np.abs(coeff) ** 2
    w_mirror = np.conj(coeff_mirror) * coeff

    phases = np.exp(-1j * np.outer(times * t_rev, energies))
    f_vals = phases @ w_mirror
    a_vals = phases @ w_auto

    mirror_amp = np.empty(len(times))
    for i, g in enumerate(grid):
        fr = g if isinstance(g, Fraction) else Fraction(float(g))
        fr = fr.limit_denominator(options.max_denominator)
        coeffs = gauss_coefficients(RevivalFraction(fr.numerator, fr.denominator))
        mirror_amp[i] = abs(coeffs.mirror)

    with np.errstate(divide="ignore", invalid="ignore"):
        ff_sq = np.where(
            mirror_amp > 1e-12, (np.abs(f_vals) / np.where(mirror_amp > 0, mirror_amp, 1)) ** 2,
            np.nan,
        )

    profiles = {}
    for pt in options.profile_times:
        profiles[float(pt)] = np.abs(evolve_exact(chain, initial, float(pt) * t_rev))

    return FidelityTrace(
        times=times,
        abs_f_sq=np.abs(f_vals) ** 2,
        abs_ff_sq=ff_sq,
        abs_a_sq=np.abs(a_vals) ** 2,
        profiles=profiles,
    )


def find_peaks(
    times: np.ndarray,
    values: np.ndarray,
    min_height: float,
    min_separation: float,
) -> list[tuple[float, float]]:
    """Local maxima at least ``min_height`` tall and ``min_separation`` apart.

    Higher peaks win inside a separation window; exact ties go to the
    earlier time.  Returns (time, value) pairs sorted by time.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    candidates = [
        i
        for i in range(1, len(values) - 1)
        if values[i] >= values[i - 1] and values[i] >= values[i + 1] and values[i] >= min_height
    ]
    accepted: list[int] = []
    for i in sorted(candidates, key=lambda i: (-values[i], times[i])):
        if all(abs(times[i] - times[j]) >= min_separation for j in accepted):
            accepted.append(i)
    return [(float(times[i]), float(values[i])) for i in sorted(accepted, key=lambda i: times[i])]
