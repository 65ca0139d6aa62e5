"""Total-photon-number projection onto phase-reference-free logical states.

A QND measurement of the combined photon number of a signal mode and a
coherent ancilla |beta> collapses the pair onto a fixed-total subspace.  In
the logical basis |n; M> = |n>|M - n> the surviving coefficients are, for a
coherent signal alpha and outcome M,

    c_n  proportional to  (alpha/beta)^n / sqrt(n! (M-n)!),   n = 0..M,

and for one half of a two-mode squeezed pair (parameter eta) whose two
halves are measured jointly with two ancillas |beta>, outcomes K and L,

    c_n  proportional to  (eta/beta^2)^n / sqrt((K-n)! (L-n)!),
                                                  n = 0..min(K, L).

Every reference-phase factor collects into a single global phase, which is
why the encoded states need no phase standard.  Magnitudes are evaluated on
the log scale throughout; the quotient alpha/beta (or eta/beta^2) is taken
once and powered as log-magnitude plus phase so that large photon numbers
never overflow and small quotients never underflow.

Outcome statistics follow from the same amplitudes:

    P(M)    = sum_n Pois(|alpha|^2, n) Pois(|beta|^2, M-n)
    P(K, L) = sum_n (1-eta^2) eta^(2n) Pois(|beta|^2, K-n) Pois(|beta|^2, L-n)

enumerated over an adaptive window [0, mu + w sqrt(mu)] whose unenumerated
tail mass is reported, never ignored.
"""

from __future__ import annotations

import cmath
import math
import operator
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .numerics import (
    LOG_ZERO,
    log_factorial_table,
    log_poisson_table,
    log_sum_exp,
)

DEFAULT_EPSILON_TAIL = 1e-10

# exp() of anything below this is exactly 0.0 in binary64 (subnormals end
# near -744.4); slices that are all-zero can be skipped without error.
_UNDERFLOW_LOG = -760.0

# Window growth factor limit; reaching it means epsilon_tail is below what
# float64 summation can resolve.
_MAX_WINDOW_GROWTH = float(2**24)


@dataclass(frozen=True)
class EncodedCoherentState:
    """Post-measurement logical state for total-photon outcome M.

    coeffs[n] is the amplitude of |n; M>, normalized; norm_log is the log of
    the normalizer sum_n |alpha/beta|^(2n) / (n! (M-n)!).
    """

    M: int
    coeffs: np.ndarray
    norm_log: float


@dataclass(frozen=True)
class EncodedPairState:
    """Post-measurement two-party logical state for outcomes (K, L).

    schmidt_coeffs[n] multiplies |n; K> on one side and |n; L> on the other;
    the expansion is already a Schmidt decomposition across that split.
    """

    K: int
    L: int
    schmidt_coeffs: np.ndarray
    norm_log: float


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probability table over measurement outcomes with explicit tail mass.

    support maps an outcome (int M, or an (int K, int L) pair) to its
    probability; residual is the mass of every outcome left unenumerated.
    """

    support: dict
    residual: float

    def total(self) -> float:
        return math.fsum(self.support.values())


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _require_outcome(value, name: str) -> int:
    value = operator.index(value)
    if value < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {value}")
    return value


def _require_ancilla(beta) -> complex:
    beta = complex(beta)
    if beta == 0:
        raise ValueError("beta must be nonzero: a vacuum ancilla makes the encoding degenerate")
    return beta


def _require_eta(eta: float) -> float:
    eta = float(eta)
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must lie in [0, 1), got {eta!r}")
    return eta


def _require_tail(epsilon_tail: float) -> float:
    epsilon_tail = float(epsilon_tail)
    if not 0.0 < epsilon_tail < 1.0:
        raise ValueError(f"epsilon_tail must lie in (0, 1), got {epsilon_tail!r}")
    return epsilon_tail


def encode_coherent(alpha, beta, M: int) -> EncodedCoherentState:
    """Logical state after measuring total photon number M on a coherent
    signal alpha paired with a coherent ancilla beta."""
    beta = _require_ancilla(beta)
    alpha = complex(alpha)
    M = _require_outcome(M, "M")

    lf = log_factorial_table(M)
    ratio = alpha / beta
    coeffs = np.zeros(M + 1, dtype=complex)
    if ratio == 0:
        coeffs[0] = 1.0
        return EncodedCoherentState(M, _frozen(coeffs), float(-lf[M]))

    n = np.arange(M + 1)
    log_mag = n * math.log(abs(ratio)) - 0.5 * (lf + lf[::-1])
    norm_log = log_sum_exp(2.0 * log_mag)
    mags = np.exp(log_mag - 0.5 * norm_log)
    mags /= math.sqrt(math.fsum((mags * mags).tolist()))
    coeffs = mags * np.exp(1j * cmath.phase(ratio) * n)
    return EncodedCoherentState(M, _frozen(coeffs), float(norm_log))


def coherent_approx_param(alpha, beta, M: int) -> complex:
    """Amplitude alpha' = alpha sqrt(M) / beta of the coherent state the
    encoded state approaches when |beta| is large."""
    beta = _require_ancilla(beta)
    M = _require_outcome(M, "M")
    return complex(alpha) * math.sqrt(M) / beta


def encode_pair(eta: float, beta, K: int, L: int) -> EncodedPairState:
    """Two-party logical state after measuring totals K and L on the two
    halves of a squeezed pair, each joined with a coherent ancilla beta."""
    eta = _require_eta(eta)
    beta = _require_ancilla(beta)
    K = _require_outcome(K, "K")
    L = _require_outcome(L, "L")

    n_top = min(K, L)
    lf = log_factorial_table(max(K, L))
    lf_k = lf[K::-1][: n_top + 1]  # ln((K-n)!) for n = 0..n_top
    lf_l = lf[L::-1][: n_top + 1]
    coeffs = np.zeros(n_top + 1, dtype=complex)
    if eta == 0.0:
        coeffs[0] = 1.0
        return EncodedPairState(K, L, _frozen(coeffs), float(-(lf[K] + lf[L])))

    quot = eta / (beta * beta)
    n = np.arange(n_top + 1)
    log_mag = n * math.log(abs(quot)) - 0.5 * (lf_k + lf_l)
    norm_log = log_sum_exp(2.0 * log_mag)
    mags = np.exp(log_mag - 0.5 * norm_log)
    mags /= math.sqrt(math.fsum((mags * mags).tolist()))
    coeffs = mags * np.exp(1j * cmath.phase(quot) * n)
    return EncodedPairState(K, L, _frozen(coeffs), float(norm_log))


def pair_approx_param(eta: float, beta, K: int, L: int) -> float:
    """Squeezing magnitude eta' = eta sqrt(K L) / |beta|^2 of the two-mode
    squeezed state the encoded pair approaches when |beta| is large."""
    eta = _require_eta(eta)
    beta = _require_ancilla(beta)
    K = _require_outcome(K, "K")
    L = _require_outcome(L, "L")
    return eta * math.sqrt(float(K) * float(L)) / abs(beta) ** 2


# ---------------------------------------------------------------------------
# outcome distributions
# ---------------------------------------------------------------------------


def _coherent_outcome_vector(mean_a: float, mean_b: float, m_max: int) -> np.ndarray:
    """P(M) for M = 0..m_max by direct convolution of the two Poisson laws."""
    lpa = log_poisson_table(mean_a, m_max)
    lpb = log_poisson_table(mean_b, m_max)
    out = np.empty(m_max + 1)
    for m in range(m_max + 1):
        terms = lpa[: m + 1] + lpb[m::-1]
        shift = float(terms.max())
        out[m] = 0.0 if shift == LOG_ZERO else math.exp(shift) * float(np.exp(terms - shift).sum())
    return out


def coherent_outcome_distribution(alpha, beta, epsilon_tail: float = DEFAULT_EPSILON_TAIL) -> OutcomeDistribution:
    """Distribution of the total-photon outcome M for signal alpha and
    ancilla beta; equals Poisson(|alpha|^2 + |beta|^2) by additivity, but is
    evaluated by the defining convolution so that identity stays testable."""
    epsilon_tail = _require_tail(epsilon_tail)
    mean_a = abs(complex(alpha)) ** 2
    mean_b = abs(complex(beta)) ** 2
    mu = mean_a + mean_b

    w = 8.0
    while True:
        m_max = int(math.ceil(mu + w * math.sqrt(mu))) if mu > 0 else 0
        probs = _coherent_outcome_vector(mean_a, mean_b, m_max)
        residual = max(0.0, 1.0 - math.fsum(probs.tolist()))
        if residual <= epsilon_tail:
            support = {m: float(p) for m, p in enumerate(probs)}
            return OutcomeDistribution(support, residual)
        if w >= _MAX_WINDOW_GROWTH:
            raise RuntimeError(
                f"outcome window failed to reach tail {epsilon_tail} (mean={mu})"
            )
        w *= 2.0


def _pair_log_slices(eta: float, mean_b: float, k_max: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (n, log_term) with log_term[K, L] the log of the n-th summand of
    P(K, L); the iteration stops once every remaining summand underflows."""
    lp = log_poisson_table(mean_b, k_max)
    lp_max = float(lp.max())
    lw0 = math.log1p(-eta * eta)
    for n in range(k_max + 1):
        if n > 0 and eta == 0.0:
            return
        lw = lw0 + 2.0 * n * math.log(eta) if n > 0 else lw0
        if lw + 2.0 * lp_max < _UNDERFLOW_LOG:
            return
        # splitting the weight over both factors keeps the grid exactly
        # symmetric under K <-> L (float addition is commutative)
        shifted = np.full(k_max + 1, LOG_ZERO)
        shifted[n:] = 0.5 * lw + lp[: k_max + 1 - n]
        yield n, shifted[:, None] + shifted[None, :]


def _pair_window_grid(
    eta: float,
    mean_b: float,
    epsilon_tail: float,
    with_entropy: bool,
) -> tuple[np.ndarray, np.ndarray | None, float, int]:
    """Joint probability grid A[K, L] over an adaptively grown square window,
    plus (optionally) the companion accumulator B = sum_n t_n ln(t_n) needed
    for per-outcome Schmidt entropies.  Returns (A, B, residual, k_max)."""
    mu = mean_b + (eta * eta / (1.0 - eta * eta))
    w = 8.0
    while True:
        k_max = int(math.ceil(mu + w * math.sqrt(mu))) if mu > 0 else 0
        a_grid = np.zeros((k_max + 1, k_max + 1))
        b_grid = np.zeros_like(a_grid) if with_entropy else None
        for _, log_term in _pair_log_slices(eta, mean_b, k_max):
            term = np.exp(log_term)
            a_grid += term
            if with_entropy:
                b_grid += term * np.where(term > 0.0, log_term, 0.0)
        residual = max(0.0, 1.0 - float(a_grid.sum()))
        if residual <= epsilon_tail:
            return a_grid, b_grid, residual, k_max
        if w >= _MAX_WINDOW_GROWTH:
            raise RuntimeError(
                f"outcome window failed to reach tail {epsilon_tail} (eta={eta}, mean={mean_b})"
            )
        w *= 2.0


def pair_outcome_distribution(eta: float, beta, epsilon_tail: float = DEFAULT_EPSILON_TAIL) -> OutcomeDistribution:
    """Joint distribution of the two total-photon outcomes (K, L); exactly
    symmetric under K <-> L by construction."""
    eta = _require_eta(eta)
    epsilon_tail = _require_tail(epsilon_tail)
    mean_b = abs(complex(beta)) ** 2

    a_grid, _, residual, k_max = _pair_window_grid(eta, mean_b, epsilon_tail, with_entropy=False)
    size = k_max + 1
    flat = a_grid.ravel()
    support = {(idx // size, idx % size): float(p) for idx, p in enumerate(flat)}
    return OutcomeDistribution(support, residual)


# ---------------------------------------------------------------------------
# large-|beta| approximation quality
# ---------------------------------------------------------------------------


def mean_coherent_approx_fidelity(alpha, beta, epsilon_tail: float = DEFAULT_EPSILON_TAIL) -> float:
    """P(M)-weighted fidelity between the encoded state and the coherent
    state of amplitude alpha' = alpha sqrt(M)/beta it approximates.

    Outcomes outside the enumerated window contribute zero, so the result
    underestimates by at most the window residual.
    """
    beta = _require_ancilla(beta)
    alpha = complex(alpha)
    dist = coherent_outcome_distribution(alpha, beta, epsilon_tail)

    weighted = 0.0
    for m, prob in dist.support.items():
        if prob == 0.0:
            continue
        exact = encode_coherent(alpha, beta, m).coeffs
        approx_amp = coherent_approx_param(alpha, beta, m)
        n = np.arange(m + 1)
        lf = log_factorial_table(m)
        if approx_amp == 0:
            approx = np.zeros(m + 1, dtype=complex)
            approx[0] = 1.0
        else:
            mag = abs(approx_amp)
            log_mag = -0.5 * mag * mag + n * math.log(mag) - 0.5 * lf
            approx = np.exp(log_mag) * np.exp(1j * cmath.phase(approx_amp) * n)
        weighted += prob * abs(np.vdot(approx, exact)) ** 2
    return weighted


def mean_pair_approx_fidelity(eta: float, beta, epsilon_tail: float = DEFAULT_EPSILON_TAIL) -> float:
    """P(K, L)-weighted fidelity between the encoded pair state and the
    two-mode squeezed state of parameter eta' = eta sqrt(KL)/|beta|^2.

    The squeezed-state family carries a phase degree of freedom, so the
    approximant is taken with the squeezing phase of the exact state; the
    overlap then involves coefficient magnitudes only and the result cannot
    depend on the phase of beta.  Outcomes where eta' >= 1 (far tail at
    small |beta|) admit no squeezed approximant and count as fidelity zero.
    """
    eta = _require_eta(eta)
    beta = _require_ancilla(beta)
    epsilon_tail = _require_tail(epsilon_tail)
    mean_b = abs(beta) ** 2

    a_grid, _, _, k_max = _pair_window_grid(eta, mean_b, epsilon_tail, with_entropy=False)
    k = np.arange(k_max + 1, dtype=float)
    eta_prime = eta * np.sqrt(np.outer(k, k)) / mean_b
    valid = eta_prime < 1.0
    with np.errstate(divide="ignore"):
        log_eta_prime = np.where(eta_prime > 0.0, np.log(np.where(eta_prime > 0.0, eta_prime, 1.0)), LOG_ZERO)

    # overlap[K, L] = sum_n sqrt(q_n) eta'^n, with q_n the Schmidt weights;
    # sqrt(t_n) = sqrt(q_n P) so one division by P at the end suffices.
    overlap = np.zeros((k_max + 1, k_max + 1))
    for n, log_term in _pair_log_slices(eta, mean_b, k_max):
        half = np.exp(0.5 * log_term)
        if n == 0:
            factor = np.ones_like(eta_prime)
        else:
            factor = np.where(eta_prime > 0.0, np.exp(n * log_eta_prime), 0.0)
        overlap += half * factor

    positive = a_grid > 0.0
    fid = np.where(
        positive & valid,
        np.clip(1.0 - eta_prime * eta_prime, 0.0, None)
        * overlap**2
        / np.where(positive, a_grid, 1.0),
        0.0,
    )
    return float((a_grid * fid).sum())
