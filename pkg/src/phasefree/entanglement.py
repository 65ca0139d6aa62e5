"""Exact, per-outcome, and measurement-averaged entanglement accounting.

The encoded pair state for outcomes (K, L) is already Schmidt-decomposed,
so its entanglement is the Shannon entropy of the squared Schmidt
coefficients.  Averaging that entropy over the outcome distribution,

    E_avg = sum_{K,L} P(K, L) E(K, L),

and comparing against the entanglement of the original two-mode squeezed
state gives the fraction sacrificed by converting to the
phase-reference-free encoding.  The squeezed-state benchmark has the closed
form (with tanh r = eta)

    E = cosh^2(r) log2(cosh^2 r) - sinh^2(r) log2(sinh^2 r).

The average runs on the same log-space outcome grid as the distribution:
with t_n(K, L) the n-th summand of P(K, L), the per-outcome Schmidt weights
are q_n = t_n / P, so

    P * E = P log2 P - sum_n t_n log2 t_n

and both accumulators vectorize over the whole window.  Per-outcome
equality with the encode/entropy composition is pinned by tests.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .encoding import (
    DEFAULT_EPSILON_TAIL,
    EncodedPairState,
    _pair_window_grid,
    _require_ancilla,
    _require_eta,
    _require_tail,
)
from .numerics import LN2, shannon_entropy_bits


@dataclass(frozen=True)
class SqueezingParams:
    """Squeezing parameter r >= 0; eta = tanh r."""

    r: float

    def __post_init__(self):
        if not (self.r >= 0.0 and math.isfinite(self.r)):
            raise ValueError(f"squeezing parameter r must be finite and >= 0, got {self.r!r}")

    @classmethod
    def from_eta(cls, eta: float) -> "SqueezingParams":
        if not 0.0 <= eta < 1.0:
            raise ValueError(f"eta must lie in [0, 1), got {eta!r}")
        return cls(math.atanh(eta))


class ContributionTable(Mapping):
    """Read-only map (K, L) -> (probability, ebits) over the enumerated
    outcome window, stored as dense grids to keep large sweeps cheap."""

    __slots__ = ("probabilities", "entropies")

    def __init__(self, probabilities: np.ndarray, entropies: np.ndarray):
        probabilities.setflags(write=False)
        entropies.setflags(write=False)
        self.probabilities = probabilities
        self.entropies = entropies

    def __getitem__(self, key):
        try:
            k, l = key
        except (TypeError, ValueError):
            raise KeyError(key) from None
        size_k, size_l = self.probabilities.shape
        if not (0 <= k < size_k and 0 <= l < size_l):
            raise KeyError(key)
        return float(self.probabilities[k, l]), float(self.entropies[k, l])

    def __iter__(self):
        size_k, size_l = self.probabilities.shape
        for k in range(size_k):
            for l in range(size_l):
                yield (k, l)

    def __len__(self):
        return self.probabilities.size

    def top(self, count: int = 10) -> list[tuple[tuple[int, int], float, float]]:
        """The count most probable outcomes as ((K, L), probability, ebits),
        most probable first; ties broken by outcome index."""
        flat = self.probabilities.ravel()
        order = np.lexsort((np.arange(flat.size), -flat))[:count]
        size_l = self.probabilities.shape[1]
        return [
            (
                (int(i // size_l), int(i % size_l)),
                float(flat[i]),
                float(self.entropies.ravel()[i]),
            )
            for i in order
        ]


@dataclass(frozen=True)
class EntanglementReport:
    """Entanglement accounting for one (eta, |beta|) operating point.

    residual_bound is the stated cap on what the unenumerated tail could
    have added to E_avg: residual times the log2 of the window size.
    """

    eta: float
    beta_abs: float
    E_exact: float
    E_avg: float
    fraction_lost: float
    residual: float
    residual_bound: float
    window_K: int
    window_L: int
    contributions: ContributionTable = field(repr=False)


def tmss_entanglement(eta: float) -> float:
    """Entanglement (ebits) of the two-mode squeezed state with parameter
    eta; equals the entropy of the geometric Schmidt spectrum
    (1 - eta^2) eta^(2n)."""
    eta = _require_eta(eta)
    if eta == 0.0:
        return 0.0
    r = SqueezingParams.from_eta(eta).r
    ch2 = math.cosh(r) ** 2
    sh2 = math.sinh(r) ** 2
    return ch2 * math.log2(ch2) - sh2 * math.log2(sh2)


def entropy_of_entanglement(state: EncodedPairState) -> float:
    """Schmidt entropy in ebits of an encoded pair state."""
    probs = np.abs(state.schmidt_coeffs) ** 2
    return shannon_entropy_bits(probs)


def average_entanglement(
    eta: float,
    beta,
    epsilon_tail: float = DEFAULT_EPSILON_TAIL,
) -> EntanglementReport:
    """Outcome-averaged entanglement of the encoded pair at one operating
    point, with per-outcome contributions and explicit tail accounting."""
    eta = _require_eta(eta)
    beta = _require_ancilla(beta)
    epsilon_tail = _require_tail(epsilon_tail)
    mean_b = abs(beta) ** 2

    a_grid, b_grid, residual, k_max = _pair_window_grid(eta, mean_b, epsilon_tail, with_entropy=True)
    if eta == 0.0:
        # every outcome is a product state
        entropies = np.zeros_like(a_grid)
        e_avg = 0.0
    else:
        positive = a_grid > 0.0
        safe = np.where(positive, a_grid, 1.0)
        log2_a = np.where(positive, np.log2(safe), 0.0)
        entropies = np.maximum(np.where(positive, log2_a - b_grid / (LN2 * safe), 0.0), 0.0)
        # min(K, L) == 0 admits a single Schmidt term; pin the float noise
        entropies[0, :] = 0.0
        entropies[:, 0] = 0.0
        e_avg = float((a_grid * entropies).sum())

    e_exact = tmss_entanglement(eta)
    fraction_lost = (e_exact - e_avg) / e_exact if e_exact > 0.0 else 0.0
    window = k_max + 1
    return EntanglementReport(
        eta=eta,
        beta_abs=abs(beta),
        E_exact=e_exact,
        E_avg=e_avg,
        fraction_lost=fraction_lost,
        residual=residual,
        residual_bound=residual * math.log2(window) if window > 1 else 0.0,
        window_K=window,
        window_L=window,
        contributions=ContributionTable(a_grid, entropies),
    )


def entanglement_sweep(
    etas: Sequence[float],
    betas: Sequence[float],
    epsilon_tail: float = DEFAULT_EPSILON_TAIL,
    max_workers: int | None = None,
) -> list[EntanglementReport]:
    """One report per (eta, beta) grid point, eta-major order.  Points are
    independent; max_workers > 1 computes them concurrently with output
    order (and content) unchanged."""
    etas = list(etas)
    betas = list(betas)
    if not etas or not betas:
        raise ValueError("eta and beta grids must be non-empty")
    points = [(eta, beta) for eta in etas for beta in betas]
    if max_workers is None or max_workers <= 1:
        return [average_entanglement(eta, beta, epsilon_tail) for eta, beta in points]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda p: average_entanglement(p[0], p[1], epsilon_tail), points))
