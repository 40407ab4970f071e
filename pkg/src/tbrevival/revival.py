"""Closed-form fractional-revival predictions.

At t = (p/q) t_rev with p, q coprime, the quadratic phase exp(-i p n^2 pi/q)
is periodic in n with period l = 2q (q odd) or q (q even), so it has a
finite Fourier expansion

    exp(-i p n^2 pi/q) = sum_{r=0}^{l-1} b_r exp(-i 2 pi n r / l),

whose coefficients b_r are quadratic Gauss sums.  Each Fourier component
translates the packet by 2(N+1)r/l sites, so the evolved state is a
superposition of clones of the initial packet:

    b_0 psi(c) - b_{l/2} psi(N+1-c)
        + sum_{r=1}^{l/2-1} b_r [psi(c + 2(N+1)r/l) + psi(c - 2(N+1)r/l)],

where psi(x) denotes the packet whose mode coefficients are
sin(k x) exp(-k^2/2 alpha^2).  Exactly q of the b_r are nonzero and each
carries probability 1/q; for odd q the coefficients of one parity of r
vanish identically.

A clone center outside [1, N] is equivalent to a folded one: the sine
basis is the odd extension of period 2(N+1), so sin(k x) = -sin(k(-x)) and
sin(k x) = -sin(k(2(N+1)-x)).  Clones are therefore reflected back into
the chain with a sign flip per reflection (method of images); a center
landing exactly on 0 or N+1 is a node and the clone vanishes.  Folded
clones that coincide superpose coherently, which is how strong partial
revivals (e.g. weight (2+sqrt 2)/4 at the mirror for quarter-period
revivals of a quarter-chain packet) arise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
import warnings

import numpy as np

from .chain import ChainSpec, mode_energies, mode_parities, mode_wavenumbers, to_position
from .propagator import quadratic_energies, revival_clock
from .wavepacket import (
    SURVIVOR_TOLERANCE,
    GaussianSpec,
    build_gwp_spectral,
    high_mode_weight,
    surviving_modes,
)

__all__ = [
    "RevivalFraction",
    "GaussCoefficients",
    "CloneEntry",
    "SubPacketPrediction",
    "SpmcReport",
    "fourier_period",
    "gauss_coefficients",
    "fold_center",
    "predict_state",
    "spmc_check",
    "effective_period",
    "is_commensurate",
]


@dataclass(frozen=True)
class RevivalFraction:
    """Reduced fraction p/q of the revival time."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        p, q = self.numerator, self.denominator
        if int(p) != p or int(q) != q:
            raise ValueError("fraction parts must be integers")
        if q < 1 or p < 0:
            raise ValueError(f"need numerator >= 0 and denominator >= 1, got {p}/{q}")
        if gcd(int(p), int(q)) != 1:
            raise ValueError(f"{p}/{q} is not reduced")
        object.__setattr__(self, "numerator", int(p))
        object.__setattr__(self, "denominator", int(q))

    @classmethod
    def from_float(cls, value: float, max_denominator: int = 128) -> "RevivalFraction":
        fr = Fraction(value).limit_denominator(max_denominator)
        return cls(fr.numerator, fr.denominator)

    @property
    def value(self) -> float:
        return self.numerator / self.denominator

    def time(self, chain: ChainSpec) -> float:
        return self.value * revival_clock(chain).revival_time

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def fourier_period(q: int) -> int:
    """Period l of exp(-i p n^2 pi/q) in n: 2q for odd q, q for even q."""
    if q < 1:
        raise ValueError(f"denominator must be >= 1, got {q}")
    return 2 * q if q % 2 else q


@dataclass(frozen=True)
class GaussCoefficients:
    """Gauss-sum clone weights b_0..b_{l-1} for one revival fraction."""

    period: int
    values: np.ndarray = field(repr=False)

    @property
    def mirror(self) -> complex:
        """Coefficient b_{l/2} of the mirror-image clone."""
        return complex(self.values[self.period // 2])


@lru_cache(maxsize=4096)
def _gauss_values(p: int, q: int) -> np.ndarray:
    l = fourier_period(q)
    n = np.arange(l)
    r = np.arange(l)[:, None]
    values = np.exp(1j * (2.0 * np.pi * n * r / l - np.pi * p * n * n / q)).mean(axis=1)
    values.setflags(write=False)  # shared through the cache
    return values


def gauss_coefficients(fraction: RevivalFraction) -> GaussCoefficients:
    """b_r = (1/l) sum_n exp(i(2 pi n r/l - p n^2 pi/q)).

    The summand is l-periodic in n, so the window origin is immaterial.
    Satisfies b_r = b_{l-r} and |b_r|^2 in {0, 1/q}.
    """
    p, q = fraction.numerator, fraction.denominator
    return GaussCoefficients(period=fourier_period(q), values=_gauss_values(p, q))


def fold_center(chain: ChainSpec, center: float) -> tuple[float, float, bool]:
    """Fold a clone center into [0, N+1] on the odd-extended lattice.

    Returns (folded_center, sign, reflected): the odd 2(N+1)-periodic
    extension maps x -> x mod 2(N+1) freely, and x -> 2(N+1)-x with a sign
    flip, which also mirrors the clone.
    """
    L = chain.n_sites + 1
    y = float(center) % (2 * L)
    if y > L:
        return 2 * L - y, -1.0, True
    return y, 1.0, False


@dataclass(frozen=True)
class CloneEntry:
    """One clone of the sub-packet sum after folding into the chain."""

    raw_center: float
    center: float
    weight: complex  # includes fold sign and the minus on the mirror term
    reflected: bool


@dataclass(frozen=True)
class SubPacketPrediction:
    """Predicted state at t = (p/q) t_rev and its clone decomposition."""

    chain: ChainSpec
    spec: GaussianSpec
    fraction: RevivalFraction
    entries: tuple[CloneEntry, ...]
    state: np.ndarray = field(repr=False)

    def merged(self, position_tol: float = 1e-6) -> list[tuple[float, complex]]:
        """Coincident clones combined into physical sub-packets.

        Entries at node positions (center within tol of 0 or N+1) vanish
        identically and are dropped, as are groups whose weights cancel.
        Sorted by center.
        """
        L = self.chain.n_sites + 1
        groups: list[tuple[float, complex]] = []
        for e in sorted(self.entries, key=lambda e: e.center):
            if e.center < position_tol or abs(e.center - L) < position_tol:
                continue
            if groups and abs(e.center - groups[-1][0]) < position_tol:
                groups[-1] = (groups[-1][0], groups[-1][1] + e.weight)
            else:
                groups.append((e.center, e.weight))
        return [(c, w) for c, w in groups if abs(w) > 1e-9]


def predict_state(
    chain: ChainSpec, spec: GaussianSpec, fraction: RevivalFraction
) -> SubPacketPrediction:
    """Assemble the clone superposition for t = (p/q) t_rev.

    The clones share the initial packet's spectral envelope, so the
    assembled state equals the quadratic-spectrum evolution of the packet
    exactly; comparing it against the exact propagator measures only the
    quartic dispersion error.
    """
    coeffs = gauss_coefficients(fraction)
    l, b = coeffs.period, coeffs.values
    L = chain.n_sites + 1
    c0 = spec.center

    spectral0 = build_gwp_spectral(chain, spec)
    tail = high_mode_weight(chain, spectral0)
    if tail > 1e-6:
        warnings.warn(
            f"packet has {tail:.2e} of its weight outside the low-energy "
            "quarter of the band; clone predictions degrade",
            stacklevel=2,
        )

    raw: list[tuple[float, complex, bool]] = [(c0, complex(b[0]), False)]
    raw.append((L - c0, -complex(b[l // 2]), True))  # dedicated mirror-image term
    for r in range(1, l // 2):
        shift = 2.0 * L * r / l
        raw.append((c0 + shift, complex(b[r]), False))
        raw.append((c0 - shift, complex(b[r]), False))

    entries = []
    for raw_center, weight, mirror_term in raw:
        if abs(weight) < 1e-10:
            continue
        folded, sign, flipped = fold_center(chain, raw_center)
        entries.append(
            CloneEntry(
                raw_center=raw_center,
                center=folded,
                weight=sign * weight,
                reflected=mirror_term ^ flipped,
            )
        )

    k = mode_wavenumbers(chain)
    envelope = np.exp(-(k**2) / (2.0 * spec.alpha**2))
    coeff = np.zeros(chain.n_sites, dtype=complex)
    for e in entries:
        coeff += e.weight * np.sin(k * e.center)
    coeff *= envelope
    norm = np.linalg.norm(coeff)
    if norm == 0:
        raise ValueError("predicted clones cancel exactly; no state to assemble")
    state = to_position(chain, coeff / norm)

    return SubPacketPrediction(
        chain=chain, spec=spec, fraction=fraction, entries=tuple(entries), state=state
    )


@dataclass(frozen=True)
class SpmcReport:
    """Spectrum/parity matching over a packet's spectral support."""

    support: np.ndarray = field(repr=False)
    max_relative_deviation: float
    within_tolerance: bool
    parity_matched: bool


def spmc_check(
    chain: ChainSpec,
    packet,
    tolerance: float = 1e-2,
    support_weight: float = 1 - 1e-6,
) -> SpmcReport:
    """Check that offset-removed energies are n^2 dE and parities alternate.

    ``packet`` is a :class:`GaussianSpec` or a spectral coefficient vector.
    The support is the smallest set of modes carrying ``support_weight`` of
    the probability; over it the exact energies +2J are compared with the
    quadratic ladder, and the mirror parity of each mode vector is checked
    against (-1)^(n+1).
    """
    if isinstance(packet, GaussianSpec):
        coeff = build_gwp_spectral(chain, packet)
    else:
        coeff = np.asarray(packet, dtype=complex)
    weights = np.abs(coeff) ** 2
    weights = weights / weights.sum()
    order = np.argsort(weights)[::-1]
    cut = int(np.searchsorted(np.cumsum(weights[order]), support_weight)) + 1
    support = np.sort(order[:cut]) + 1  # 1-based mode indices

    exact = mode_energies(chain)[support - 1] + 2.0 * chain.hopping
    quad = quadratic_energies(chain)[support - 1]
    max_rel = float(np.max(np.abs(exact - quad) / quad))

    # parity of each supported mode vector under site reversal
    from .chain import _sine_matrix  # local import keeps cache shared

    s = _sine_matrix(chain.n_sites)
    expected = mode_parities(chain)[support - 1]
    parity_ok = True
    for idx, par in zip(support - 1, expected):
        vec = s[idx]
        if np.max(np.abs(vec[::-1] - par * vec)) > 1e-10:
            parity_ok = False
            break

    return SpmcReport(
        support=support,
        max_relative_deviation=max_rel,
        within_tolerance=max_rel <= tolerance,
        parity_matched=parity_ok,
    )


def effective_period(
    chain: ChainSpec,
    coefficients: np.ndarray,
    tolerance: float = SURVIVOR_TOLERANCE,
) -> tuple[int, float]:
    """Spacing multiplier and shortened revival period for a spectral state.

    Symmetry zeros in the expansion thin out the quadratic ladder n^2 dE;
    the gcd g of all surviving differences n_i^2 - n_j^2 rescales the
    clock.  Returns (g, t_rev / g).
    """
    surv = surviving_modes(coefficients, tolerance)
    if len(surv) < 2:
        raise ValueError("need at least two surviving levels to define a period")
    base = int(surv[0]) ** 2
    g = 0
    for n in surv[1:]:
        g = gcd(g, int(n) ** 2 - base)
    return g, revival_clock(chain).revival_time / g


def is_commensurate(chain: ChainSpec, center: float, period: int) -> bool:
    """True when (N+1-2*center) * period is an integer multiple of 2(N+1).

    Commensurate centers make all folded clones land exactly on top of
    each other or exactly apart, keeping the revived sub-packets cleanly
    separated.
    """
    if period < 1:
        raise ValueError(f"period must be >= 1, got {period}")
    L = chain.n_sites + 1
    v = (L - 2.0 * center) * period / (2.0 * L)
    return bool(abs(v - round(v)) <= 1e-9 * max(1.0, abs(v)))
