"""Wigner functions, sampling entropies and their Monte Carlo estimators.

With the vacuum normalised to the identity, the Wigner function of a
zero-mean Gaussian state is

    W(xi) = pi^(-n) det(gamma)^(-1/2) exp(-xi^T gamma^(-1) xi),

i.e. a normal density with covariance ``gamma / 2``.
"""

from dataclasses import dataclass

import numpy as np

from .core import bipartition, check_physical, direct_sum, reduce, renyi2_entropy

MC_CHUNK = 65536


@dataclass(frozen=True)
class EntropyEstimate:
    mean: float
    std_error: float
    sample_count: int


def _log_wigner(g, xi):
    n = g.shape[0] // 2
    chol = np.linalg.cholesky(g)
    y = np.linalg.solve(chol, np.atleast_2d(xi).T)
    quad = np.sum(y * y, axis=0)
    logdet = 2 * np.sum(np.log(np.diag(chol)))
    return -n * np.log(np.pi) - 0.5 * logdet - quad


def wigner_eval(cm, xi):
    """Wigner function at one phase-space point or at each row of an array.

    Args:
        cm: covariance matrix (2n x 2n).
        xi: point of length 2n, or array of shape (m, 2n).
    """
    g = check_physical(cm)
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != g.shape[0]:
        raise ValueError(f"phase point has length {xi.shape[-1]}, expected {g.shape[0]}")
    out = np.exp(_log_wigner(g, xi))
    return float(out[0]) if xi.ndim == 1 else out


def sampling_entropy(cm):
    """Differential entropy of the Wigner distribution, S2 + n(1 + ln pi)."""
    g = check_physical(cm)
    n = g.shape[0] // 2
    return renyi2_entropy(g) + n * (1 + np.log(np.pi))


def relative_sampling_entropy(cm1, cm2):
    """Kullback-Leibler divergence between two Wigner distributions.

    Returns:
        0.5 * [ln(det g2 / det g1) + tr(g1 g2^-1)] - n
    """
    g1, g2 = check_physical(cm1), check_physical(cm2)
    if g1.shape != g2.shape:
        raise ValueError("mode counts differ")
    n = g1.shape[0] // 2
    _, ld1 = np.linalg.slogdet(g1)
    _, ld2 = np.linalg.slogdet(g2)
    tr = np.trace(np.linalg.solve(g2, g1))
    return float(0.5 * (ld2 - ld1 + tr) - n)


def mutual_information_via_relent(cm, partition):
    """Mutual information as the relative entropy between gamma_AB and gamma_A (+) gamma_B."""
    g = check_physical(cm)
    a, b = bipartition(g, partition)
    order = a + b
    g_ab = reduce(g, order)
    prod = direct_sum(reduce(g, a), reduce(g, b))
    return relative_sampling_entropy(g_ab, prod)


def sample_phase_space(cm, count, rng):
    """Draws ``count`` points from the Wigner distribution (normal, covariance gamma/2)."""
    g = check_physical(cm)
    if count < 1:
        raise ValueError("count must be >= 1")
    chol = np.linalg.cholesky(0.5 * g)
    z = rng.standard_normal((int(count), g.shape[0]))
    return z @ chol.T


def _mc_mean(fn, count, rng, g):
    # streaming mean/variance over fixed-size chunks, reduced in order
    total, total_sq, done = 0.0, 0.0, 0
    while done < count:
        m = min(MC_CHUNK, count - done)
        vals = fn(sample_phase_space(g, m, rng))
        total += float(np.sum(vals))
        total_sq += float(np.sum(vals * vals))
        done += m
    mean = total / count
    var = max(total_sq / count - mean * mean, 0.0) * count / max(count - 1, 1)
    return EntropyEstimate(mean, float(np.sqrt(var / count)), int(count))


def mc_entropy(cm, count, rng):
    """Monte Carlo estimate of the sampling entropy, mean of -ln W over draws from W."""
    g = check_physical(cm)
    if count < 1000:
        raise ValueError("count must be >= 1000")
    return _mc_mean(lambda xi: -_log_wigner(g, xi), count, rng, g)


def mc_relative_entropy(cm1, cm2, count, rng):
    """Monte Carlo estimate of the relative sampling entropy, mean of ln(W1/W2) over draws from W1."""
    g1, g2 = check_physical(cm1), check_physical(cm2)
    if g1.shape != g2.shape:
        raise ValueError("mode counts differ")
    if count < 1000:
        raise ValueError("count must be >= 1000")
    return _mc_mean(lambda xi: _log_wigner(g1, xi) - _log_wigner(g2, xi), count, rng, g1)
