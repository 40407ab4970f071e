"""Gaussian wave packets and their superpositions.

A packet is parameterised either by the momentum-space width ``alpha`` or
by the real-space half width ``half_width`` (full width at half maximum of
the site probability), related exactly by

    half_width = 2 sqrt(ln 2) / alpha.

Site amplitudes follow exp(-alpha^2 (j - center)^2 / 2); normalisation is
by the actual discrete norm, so builders always return unit vectors.
Non-integer centers are allowed and evaluated directly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, mode_wavenumbers

__all__ = [
    "GaussianSpec",
    "SuperpositionSpec",
    "SURVIVOR_TOLERANCE",
    "build_gwp",
    "build_gwp_spectral",
    "build_superposition",
    "packet_overlap",
    "surviving_modes",
    "high_mode_weight",
]

# Relative cutoff below which a spectral coefficient counts as an exact
# symmetry zero rather than a small Gaussian tail.
SURVIVOR_TOLERANCE = 1e-8

_WIDTH_FACTOR = 2.0 * np.sqrt(np.log(2.0))


@dataclass(frozen=True)
class GaussianSpec:
    """Packet centre (site units, may be fractional) and width parameter alpha."""

    center: float
    alpha: float

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")

    @classmethod
    def from_half_width(cls, center: float, half_width: float) -> "GaussianSpec":
        if not half_width > 0:
            raise ValueError(f"half_width must be positive, got {half_width!r}")
        return cls(center=float(center), alpha=_WIDTH_FACTOR / half_width)

    @property
    def half_width(self) -> float:
        return _WIDTH_FACTOR / self.alpha

    def is_contained(self, chain: ChainSpec) -> bool:
        """True when the packet sits inside the chain with half a width to spare."""
        half = self.half_width / 2.0
        return 1.0 + half < self.center < chain.n_sites - half

    def mirrored(self, chain: ChainSpec) -> "GaussianSpec":
        return GaussianSpec(center=chain.n_sites + 1 - self.center, alpha=self.alpha)


@dataclass(frozen=True)
class SuperpositionSpec:
    """Weighted Gaussian components sharing one alpha; weights need not be normalised."""

    centers: tuple[float, ...]
    weights: tuple[complex, ...]
    alpha: float

    def __post_init__(self) -> None:
        if len(self.centers) == 0:
            raise ValueError("superposition needs at least one center")
        if len(self.weights) != len(self.centers):
            raise ValueError("weights and centers must have the same length")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")

    @classmethod
    def equal_weights(cls, centers, alpha: float) -> "SuperpositionSpec":
        cs = tuple(float(c) for c in centers)
        return cls(centers=cs, weights=(1.0 + 0.0j,) * len(cs), alpha=float(alpha))


def _warn_if_not_contained(chain: ChainSpec, spec: GaussianSpec) -> None:
    if not spec.is_contained(chain):
        warnings.warn(
            f"packet at {spec.center} with half width {spec.half_width:.3g} "
            f"is not fully contained in a chain of {chain.n_sites} sites",
            stacklevel=3,
        )


def build_gwp(chain: ChainSpec, spec: GaussianSpec) -> np.ndarray:
    """Normalised Gaussian packet in position space."""
    _warn_if_not_contained(chain, spec)
    j = np.arange(1, chain.n_sites + 1, dtype=float)
    amps = np.exp(-spec.alpha**2 * (j - spec.center) ** 2 / 2.0).astype(complex)
    return amps / np.linalg.norm(amps)


def build_gwp_spectral(chain: ChainSpec, spec: GaussianSpec) -> np.ndarray:
    """The same packet built directly from its mode expansion.

    coefficient_n is proportional to sin(k_n center) exp(-k_n^2 / 2 alpha^2);
    centers commensurate with the chain produce exact zeros here (e.g. every
    third mode for center (N+1)/3), which is what shortens revival periods.
    """
    _warn_if_not_contained(chain, spec)
    k = mode_wavenumbers(chain)
    coeff = (np.sin(k * spec.center) * np.exp(-(k**2) / (2.0 * spec.alpha**2))).astype(complex)
    norm = np.linalg.norm(coeff)
    if norm == 0:
        raise ValueError(f"packet at center {spec.center} has no spectral weight")
    return coeff / norm


def build_superposition(chain: ChainSpec, spec: SuperpositionSpec) -> np.ndarray:
    """Weighted sum of Gaussian packets, renormalised to unit norm.

    Renormalisation uses the true norm of the sum; overlapping components
    make nominal prefactors like 1/sqrt(2) only approximate.
    """
    state = np.zeros(chain.n_sites, dtype=complex)
    for center, weight in zip(spec.centers, spec.weights):
        state += weight * build_gwp(chain, GaussianSpec(center=center, alpha=spec.alpha))
    norm = np.linalg.norm(state)
    if norm == 0:
        raise ValueError("superposition components cancel exactly")
    return state / norm


def packet_overlap(chain: ChainSpec, spec_a: GaussianSpec, spec_b: GaussianSpec) -> float:
    """Real overlap of two equal-width packets; close to exp(-alpha^2 d^2/4) at separation d."""
    if not np.isclose(spec_a.alpha, spec_b.alpha, rtol=0, atol=1e-12):
        raise ValueError("packet_overlap requires equal alpha")
    a = build_gwp(chain, spec_a)
    b = build_gwp(chain, spec_b)
    return float(np.real(np.vdot(a, b)))


def surviving_modes(coefficients: np.ndarray, tolerance: float = SURVIVOR_TOLERANCE) -> np.ndarray:
    """1-based indices of modes whose coefficient exceeds tolerance * max|coefficient|."""
    mags = np.abs(np.asarray(coefficients))
    if mags.size == 0:
        return np.zeros(0, dtype=int)
    return np.where(mags > tolerance * mags.max())[0] + 1


def high_mode_weight(chain: ChainSpec, coefficients: np.ndarray) -> float:
    """Fraction of spectral weight above the lowest quarter of the band (n > (N+1)/4)."""
    mags = np.abs(np.asarray(coefficients)) ** 2
    total = mags.sum()
    cut = (chain.n_sites + 1) / 4.0
    n = np.arange(1, chain.n_sites + 1)
    return float(mags[n > cut].sum() / total)
