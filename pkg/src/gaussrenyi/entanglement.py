"""Renyi-2 entanglement of Gaussian states and the tripartite quantities built on it.

The Renyi-2 entanglement of a two-mode state is the Gaussian convex roof
``E2 = inf { S2(sigma_A) : sigma pure, sigma <= gamma }``. For two modes it
reduces to a one-parameter minimisation of ``m_theta`` over ``theta`` on the
standard form; :func:`convex_roof_oracle` provides an independent direct
search used to check it.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .core import (
    DomainError,
    bipartition,
    check_physical,
    n_modes,
    reduce,
    renyi2_entropy,
    standard_form_symplectic,
    symplectic_form,
    to_standard_form,
    williamson,
)
from .correlations import MeasureReport, classical_correlations, discord
from .optimize import golden_section

SEP_TOL = 1e-9
CLAMP_TOL = 1e-12
DOMAIN_TOL = 1e-9
PURE_TOL = 1e-8
THETA_GRID = 720

M_READINGS = ("corrected", "printed")
K_READINGS = ("corrected", "printed", "printed_cpcm")


def smaller_symplectic_eigenvalue(a, b, cp, cm, transposed=False):
    """Smaller symplectic eigenvalue of a standard-form CM or of its partial transpose.

    Vectorised over arrays of parameters. The discriminant is expanded as
    ``(a^2 - b^2)^2 + 4 (a c+ -+ b c-)(b c+ -+ a c-)`` so that nearly equal
    marginals do not cancel.
    """
    a, b, cp, cm = (np.asarray(v, dtype=float) for v in (a, b, cp, cm))
    s = -1.0 if transposed else 1.0
    det = (a * b - cp * cp) * (a * b - cm * cm)
    delta = a * a + b * b + 2 * s * cp * cm
    disc = (a * a - b * b) ** 2 + 4 * (a * cp + s * b * cm) * (b * cp + s * a * cm)
    with np.errstate(divide="ignore", invalid="ignore"):
        # smaller root of x^2 - delta x + det, written without cancellation
        out = np.sqrt(2 * det / (delta + np.sqrt(np.maximum(disc, 0.0))))
    return out if out.ndim else float(out)


def ppt_min_symplectic_eigenvalue(cm):
    """Smallest symplectic eigenvalue of the partially transposed two-mode CM.

    Values below one signal entanglement; for two single modes the test is
    necessary and sufficient.
    """
    g = np.asarray(cm, dtype=float)
    if g.shape != (4, 4):
        raise ValueError("a two-mode covariance matrix is required")
    return smaller_symplectic_eigenvalue(*to_standard_form(g), transposed=True)


def _is_pure(g):
    _, ld = np.linalg.slogdet(g)
    return abs(ld) <= PURE_TOL


def _clamped_sqrt(x, scale):
    """sqrt with roundoff clamping; returns nan where x is clearly negative."""
    x = np.asarray(x, dtype=float)
    bad = x < -DOMAIN_TOL * scale
    out = np.sqrt(np.where(x < 0, 0.0, x))
    return np.where(bad, np.nan, out)


def _m_pieces(a, b, cp, cm):
    P = a * b - cm**2
    R = (a - b * P) * (b - a * P)
    Q = 2 * a * b * cm**3 + (a * a + b * b) * cp * cm**2 + ((1 - 2 * b * b) * a * a + b * b) * cm - a * b * (a * a + b * b - 2) * cp
    return P, R, Q


def _ratio(num, den, scale):
    # num / den with den -> 0 allowed only when num -> 0 too (pure states)
    num, den = np.broadcast_arrays(np.asarray(num, float), np.asarray(den, float))
    small = den <= CLAMP_TOL * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(small, 0.0, num / np.where(small, 1.0, den))
    return np.where(small & (np.abs(num) > 1e-8 * scale), np.nan, out)


def m_theta(sf, theta, reading="corrected"):
    """The one-parameter family whose minimum over theta gives exp(2 E2).

    Args:
        sf: standard-form parameters (a, b, c+, c-).
        theta: angle or array of angles.
        reading: ``"corrected"`` multiplies the whole bracket of the
            denominator by ``2(ab - c-^2)``, which is what the minimisation
            over pure states produces; ``"printed"`` applies that factor to
            the constant term only, as in the commonly quoted expression,
            which disagrees with the convex-roof value unless ``a = b`` and
            ``c+ = -c-``.

    Returns:
        Values with the same shape as ``theta``; ``nan`` where a radicand is
        negative beyond 1e-9 or the denominator is not positive.
    """
    if reading not in M_READINGS:
        raise ValueError(f"reading must be one of {M_READINGS}")
    a, b, cp, cm = (float(v) for v in sf)
    theta = np.asarray(theta, dtype=float)
    P, R, Q = _m_pieces(a, b, cp, cm)
    scale = max(1.0, (a * b) ** 2)
    sR = _clamped_sqrt(R, scale)
    q_term = _ratio(Q, sR, scale)
    s_term = _clamped_sqrt(1 - _ratio((cp * P + cm) ** 2, sR * sR, scale), 1.0)
    s_term = np.where(sR <= CLAMP_TOL * scale, 0.0, s_term)
    F = cp * P - cm + np.cos(theta) * sR
    bracket_var = np.sin(theta) * (a * a - b * b) * s_term - np.cos(theta) * q_term
    if reading == "corrected":
        G = 2 * P * ((a * a + b * b + 2 * cp * cm) + bracket_var)
    else:
        G = 2 * P * (a * a + b * b + 2 * cp * cm) + bracket_var
    with np.errstate(divide="ignore", invalid="ignore"):
        m = 1 + F * F / G
    m = np.where(G > 0, m, np.nan)
    return m if m.ndim else float(m)


def _m_theta_scalar(sf):
    """Fast scalar m_theta (corrected reading) for the refinement step."""
    a, b, cp, cm = (float(v) for v in sf)
    P, R, Q = _m_pieces(a, b, cp, cm)
    scale = max(1.0, (a * b) ** 2)
    sR = float(_clamped_sqrt(R, scale))
    q_term = float(_ratio(Q, sR, scale))
    s_term = 0.0 if sR <= CLAMP_TOL * scale else float(_clamped_sqrt(1 - (cp * P + cm) ** 2 / (sR * sR), 1.0))
    f0, k0, ks = cp * P - cm, a * a + b * b + 2 * cp * cm, (a * a - b * b) * s_term

    def m(t):
        c = math.cos(t)
        den = 2 * P * (k0 + math.sin(t) * ks - c * q_term)
        return 1 + (f0 + c * sR) ** 2 / den if den > 0 else math.inf

    return m


def _refine_theta(sf, thetas, vals):
    """Golden-section refinement around the two best local minima of a periodic grid."""
    n = len(thetas)
    step = thetas[1] - thetas[0]
    loc = [i for i in range(n) if vals[i] <= vals[i - 1] and vals[i] <= vals[(i + 1) % n]]
    loc = sorted(loc, key=lambda i: vals[i])[:2] or [int(np.argmin(vals))]
    best_t, best_v, iters, conv = thetas[loc[0]], vals[loc[0]], 0, True
    f = _m_theta_scalar(sf)
    for i in loc:
        t, v, it, c = golden_section(f, thetas[i] - step, thetas[i] + step, xtol=1e-10)
        iters += it
        if v < best_v:
            best_t, best_v, conv = t, v, c
    return float(np.mod(best_t, 2 * np.pi)), float(best_v), iters, conv


def e2_two_mode(cm, oracle_restarts=8, rng=None):
    """Renyi-2 entanglement of a two-mode Gaussian state.

    A partial-transpose test decides separability first (value 0). Pure
    states return S2 of a marginal. Otherwise ``m_theta`` is minimised on a
    720-point grid followed by golden-section refinement; if the formula
    leaves its domain the direct convex-roof search is used instead.

    Returns:
        MeasureReport; the witness holds the optimal theta, or records the
        shortcut taken.
    """
    g = check_physical(cm)
    if g.shape != (4, 4):
        raise ValueError("a two-mode covariance matrix is required")
    nu_t = ppt_min_symplectic_eigenvalue(g)
    if nu_t >= 1 - SEP_TOL:
        return MeasureReport(0.0, {"ppt_nu": nu_t, "separable": True}, "closed_form", True, 0)
    if _is_pure(g):
        return MeasureReport(renyi2_entropy(g[:2, :2]), {"pure": True}, "closed_form", True, 0)
    sf = to_standard_form(g)
    thetas = np.linspace(0, 2 * np.pi, THETA_GRID, endpoint=False)
    vals = m_theta(sf, thetas)
    if np.all(np.isfinite(vals)):
        theta, m, it, conv = _refine_theta(sf, thetas, vals)
        if m >= 1 - 1e-12:
            return MeasureReport(0.5 * float(np.log(max(m, 1.0))), {"theta": theta}, "closed_form", conv, it)
    rep = convex_roof_oracle(g, restarts=oracle_restarts, rng=rng)
    return MeasureReport(rep.value, dict(rep.witness, fallback=True), "numeric", rep.converged, rep.iterations)


# ---------------------------------------------------------------- convex roof


def _pure_from_x(x_mat):
    """Pure two-mode CM with q-block X and p-block X^-1 (interleaved order)."""
    xi = np.linalg.inv(x_mat)
    s = np.zeros((4, 4))
    s[0::2, 0::2] = x_mat
    s[1::2, 1::2] = xi
    return s


def _qp_block_search(sf, rng, samples=2048, sectors=8):
    """Best pure state of the form X (+) X^-1 below a standard-form CM.

    Such states satisfy ``sigma <= gamma`` iff ``inv(g_p) <= X <= g_q``, where
    g_q and g_p are the q- and p-blocks of the standard form. They are written
    ``X = L + D^(1/2) Y D^(1/2)`` with ``L = inv(g_p)``, ``D = g_q - L`` and
    ``0 <= Y <= I``.
    """
    a, b, cp, cm = sf
    upper = np.array([[a, cp], [cp, b]])
    lower = np.linalg.inv(np.array([[a, cm], [cm, b]]))
    d = upper - lower
    ev, u = np.linalg.eigh(0.5 * (d + d.T))
    dh = (u * np.sqrt(np.maximum(ev, 0))) @ u.T

    def xmats(p):
        p = np.atleast_2d(p)
        t, e1, e2 = p[:, 0], np.sin(p[:, 1]) ** 2, np.sin(p[:, 2]) ** 2
        c, s = np.cos(t), np.sin(t)
        y = np.empty((len(t), 2, 2))
        y[:, 0, 0] = c * c * e1 + s * s * e2
        y[:, 1, 1] = s * s * e1 + c * c * e2
        y[:, 0, 1] = y[:, 1, 0] = c * s * (e1 - e2)
        return lower + dh @ y @ dh

    def objective(p):
        x = xmats(p)
        det = x[:, 0, 0] * x[:, 1, 1] - x[:, 0, 1] ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            val = 0.5 * np.log(x[:, 0, 0] * x[:, 1, 1] / det)
        return np.where(det > 0, val, np.inf)

    pts = np.column_stack(
        [rng.uniform(0, np.pi, samples), rng.uniform(0, np.pi / 2, samples), rng.uniform(0, np.pi / 2, samples)]
    )
    corners = np.array([[t, w1, w2] for t in np.linspace(0, np.pi, 8, endpoint=False) for w1 in (0, np.pi / 2) for w2 in (0, np.pi / 2)])
    pts = np.vstack([corners, pts])
    vals = objective(pts)
    order = np.argsort(vals, kind="stable")
    best_p, best_v, iters = pts[order[0]], float(vals[order[0]]), 0
    l11, l12, l22 = lower[0, 0], lower[0, 1], lower[1, 1]
    d11, d12, d22 = dh[0, 0], dh[0, 1], dh[1, 1]

    def scalar_objective(p):
        c, s = np.cos(p[0]), np.sin(p[0])
        e1, e2 = np.sin(p[1]) ** 2, np.sin(p[2]) ** 2
        y11, y22, y12 = c * c * e1 + s * s * e2, s * s * e1 + c * c * e2, c * s * (e1 - e2)
        # X = L + Dh Y Dh, written out for 2x2 symmetric matrices
        m11, m12 = d11 * y11 + d12 * y12, d11 * y12 + d12 * y22
        m21, m22 = d12 * y11 + d22 * y12, d12 * y12 + d22 * y22
        x11 = l11 + m11 * d11 + m12 * d12
        x12 = l12 + m11 * d12 + m12 * d22
        x22 = l22 + m21 * d12 + m22 * d22
        det = x11 * x22 - x12 * x12
        return 0.5 * np.log(x11 * x22 / det) if det > 0 else np.inf

    # the best samples tend to crowd into one basin, so polish the overall
    # best two plus the best sample of each rotation-angle sector
    sector = np.minimum((pts[:, 0] / np.pi * sectors).astype(int), sectors - 1)
    starts = list(order[:2])
    for k in range(sectors):
        idx = order[sector[order] == k]
        if idx.size and idx[0] not in starts:
            starts.append(idx[0])
    for k in starts:
        if not np.isfinite(vals[k]):
            continue
        res = minimize(
            scalar_objective,
            pts[k],
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": 1e-16, "maxiter": 2000},
        )
        iters += res.nit
        if res.fun < best_v:
            best_p, best_v = res.x, float(res.fun)
    return _pure_from_x(xmats(best_p)[0]), iters


_OMEGA2 = symplectic_form(2)
_EYE4 = np.eye(4)
_TRIU4 = np.triu_indices(4)


def _cayley(h):
    k = 0.5 * (_OMEGA2 @ h)
    return np.linalg.solve(_EYE4 - k, _EYE4 + k)


def _sym_from_vec(v):
    h = np.zeros((4, 4))
    h[_TRIU4] = v
    return h + h.T - np.diag(np.diag(h))


def _random_floor_start(nu, s_w, rng):
    """Random pure CM below gamma = S diag(nu) S^T: squeezed states within each nu."""
    blocks = np.zeros((4, 4))
    for k, v in enumerate(nu):
        r = rng.uniform(-0.5, 0.5) * np.log(v)
        t = rng.uniform(0, np.pi)
        c, s = np.cos(t), np.sin(t)
        rot = np.array([[c, -s], [s, c]])
        blocks[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = rot @ np.diag([np.exp(2 * r), np.exp(-2 * r)]) @ rot.T
    return s_w @ blocks @ s_w.T


def convex_roof_oracle(cm, restarts=32, rng=None):
    """Direct minimisation of S2(sigma_A) over pure two-mode CMs sigma <= gamma.

    Stage one searches the pure states that are block diagonal in q and p in
    the standard-form frame. Stage two runs a derivative-free local descent
    over ``sigma = T sigma0 T^T`` (``T`` symplectic, Cayley-parameterised by
    ten numbers) from the stage-one optimum, the Williamson floor of gamma
    and ``restarts - 2`` random feasible starts.

    Args:
        cm: two-mode covariance matrix.
        restarts: total number of local descents (at least 2).
        rng: numpy Generator (a fixed default is used when omitted).

    Returns:
        MeasureReport with method ``"numeric"`` and the best feasible sigma.
    """
    g = check_physical(cm)
    if g.shape != (4, 4):
        raise ValueError("a two-mode covariance matrix is required")
    rng = np.random.default_rng(0) if rng is None else rng
    s_loc, sf = standard_form_symplectic(g)
    s_inv = np.linalg.inv(s_loc)
    sigma_qp, iters = _qp_block_search(sf, rng)
    sigma_qp = s_inv @ sigma_qp @ s_inv.T
    nu, s_w = williamson(g)
    starts = [sigma_qp, s_w @ s_w.T]
    for _ in range(max(restarts, 2) - 2):
        starts.append(_random_floor_start(nu, s_w, rng))

    scale = max(1.0, np.max(np.abs(g)))
    feas_tol = -1e-10 * scale

    def value(sigma):
        if np.linalg.eigvalsh(g - sigma)[0] < feas_tol:
            return np.inf
        return 0.5 * np.log(np.linalg.det(sigma[:2, :2]))

    best_v, best_s, conv = np.inf, None, False
    for s0 in starts:
        s0 = 0.5 * (s0 + s0.T)
        v0 = value(s0)
        if not np.isfinite(v0):
            continue

        def obj(h, s0=s0):
            t = _cayley(_sym_from_vec(h))
            return value(t @ s0 @ t.T)

        res = minimize(obj, np.zeros(10), method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-14, "maxiter": 1500, "initial_simplex": _simplex(10, 0.02)})
        iters += res.nit
        if res.fun < v0:
            t = _cayley(_sym_from_vec(res.x))
            cand, cv = t @ s0 @ t.T, float(res.fun)
        else:
            cand, cv = s0, float(v0)
        if cv < best_v:
            best_v, best_s, conv = cv, cand, bool(res.success)
    if best_s is None:
        raise RuntimeError("no feasible pure state found below gamma")
    return MeasureReport(float(max(best_v, 0.0)), {"sigma": best_s.tolist()}, "numeric", conv, int(iters))


def _simplex(dim, step):
    return np.vstack([np.zeros(dim), step * np.eye(dim)])


def e2_pure_bipartition(cm, partition):
    """Renyi-2 entanglement of a pure state across a bipartition, S2 of either side."""
    g = check_physical(cm)
    if not _is_pure(g):
        raise ValueError("state is not pure; the entanglement is then a convex roof")
    a, _ = bipartition(g, partition)
    return renyi2_entropy(reduce(g, a))


# -------------------------------------------------------- three-mode states


class ThreeModeLocalInvariants(NamedTuple):
    a1: float
    a2: float
    a3: float


@dataclass(frozen=True)
class InseparabilityClass:
    branches: dict
    fully_inseparable: bool


TRIANGLE_TOL = 1e-12


def check_triangle(inv):
    """Raises ValueError unless |a_j - a_k| + 1 <= a_i <= a_j + a_k - 1 for every i."""
    a = [float(v) for v in inv]
    if min(a) < 1 - TRIANGLE_TOL:
        raise ValueError("local invariants must be >= 1")
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        if not (abs(a[j] - a[k]) + 1 - TRIANGLE_TOL <= a[i] <= a[j] + a[k] - 1 + TRIANGLE_TOL):
            raise ValueError(f"triangle condition violated for a = {tuple(a)}")
    return ThreeModeLocalInvariants(*a)


def _c_pair(ai, aj, ak):
    """(c+, c-) of the block coupling modes j and k, from mode i's invariant."""
    r1 = ((ai - 1) ** 2 - (aj - ak) ** 2) * ((ai + 1) ** 2 - (aj - ak) ** 2)
    r2 = ((ai - 1) ** 2 - (aj + ak) ** 2) * ((ai + 1) ** 2 - (aj + ak) ** 2)
    if min(r1, r2) < -DOMAIN_TOL * max(1.0, ai**4):
        raise DomainError("negative radicand in the three-mode construction")
    s1, s2 = np.sqrt(max(r1, 0.0)), np.sqrt(max(r2, 0.0))
    d = 4 * np.sqrt(aj * ak)
    return (s1 + s2) / d, (s1 - s2) / d


def three_mode_pure_cm(inv):
    """Pure three-mode CM in standard form with marginal determinants a_i^2."""
    a1, a2, a3 = check_triangle(inv)
    g = np.diag([a1, a1, a2, a2, a3, a3])
    a = (a1, a2, a3)
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        cp, cm = _c_pair(a[i], a[j], a[k])
        g[2 * j, 2 * k] = g[2 * k, 2 * j] = cp
        g[2 * j + 1, 2 * k + 1] = g[2 * k + 1, 2 * j + 1] = cm
    return g


def delta_beta(inv):
    """The auxiliary quantities (delta, beta) of a pure three-mode state."""
    a1, a2, a3 = (float(v) for v in inv)
    delta = 1.0
    for s2 in (1, -1):
        for s3 in (1, -1):
            delta *= (a1 + s2 * a2 + s3 * a3) ** 2 - 1
    sq = a1 * a1 + a2 * a2 + a3 * a3
    beta = (
        -1
        + 2 * sq
        + 2 * (a1 * a1 * a2 * a2 + a1 * a1 * a3 * a3 + a2 * a2 * a3 * a3)
        - (a1**4 + a2**4 + a3**4)
        - np.sqrt(max(delta, 0.0))
    )
    return delta, beta


def _alpha(ai, aj):
    d = ai * ai - aj * aj
    s = ai * ai + aj * aj
    return np.sqrt((2 * s + d * d + abs(d) * np.sqrt(d * d + 8 * s)) / (2 * s))


def _pair(pair):
    i, j = (int(v) for v in pair)
    if i == j or not {i, j} <= {0, 1, 2}:
        raise ValueError("pair must hold two distinct indices in {0, 1, 2}")
    (k,) = {0, 1, 2} - {i, j}
    return i, j, k


def g_branch(inv, pair):
    """Which of the three branches of g applies to the reduction on ``pair``."""
    a = check_triangle(inv)
    i, j, k = _pair(pair)
    if a[k] >= np.sqrt(a[i] ** 2 + a[j] ** 2 - 1):
        return 1
    if a[k] > _alpha(a[i], a[j]):
        return 2
    return 3


def g_reduced(inv, pair):
    """exp(2 E2) of the two-mode reduction of a pure three-mode state.

    Args:
        inv: local invariants (a1, a2, a3).
        pair: indices (i, j) of the retained modes.
    """
    a = check_triangle(inv)
    i, j, k = _pair(pair)
    branch = g_branch(a, pair)
    if branch == 1:
        return 1.0
    if branch == 2:
        return float(delta_beta(a)[1] / (8 * a[k] ** 2))
    if a[k] - 1 < TRIANGLE_TOL:
        # mode k is then uncorrelated and (i, j) is pure with a_i = a_j
        return float(a[i] * a[j])
    return float(((a[i] ** 2 - a[j] ** 2) / (a[k] ** 2 - 1)) ** 2)


def classify(inv):
    """Branch of g for every pair and membership of the fully inseparable window."""
    a = check_triangle(inv)
    branches = {(i, j): g_branch(a, (i, j)) for i, j in ((0, 1), (0, 2), (1, 2))}
    full = True
    for i, j in ((0, 1), (0, 2), (1, 2)):
        k = 3 - i - j
        if not abs(a[i] - a[j]) + 1 < a[k] < np.sqrt(a[i] ** 2 + a[j] ** 2 - 1):
            full = False
    return InseparabilityClass(branches, full)


def residual_e2(inv, focus=0):
    """Residual tripartite entanglement with respect to the focus mode."""
    a = check_triangle(inv)
    i = int(focus)
    j, k = [m for m in range(3) if m != i]
    return float(0.5 * np.log(a[i] ** 2 / (g_reduced(a, (i, j)) * g_reduced(a, (i, k)))))


def residual_e2_invariant(inv):
    """Permutation-invariant residual entanglement, ln(8 a1 a2 a3 / beta).

    Only valid inside the (open) fully inseparable window.
    """
    a = check_triangle(inv)
    if not classify(a).fully_inseparable:
        raise DomainError("outside the fully inseparable window; use residual_e2 per focus")
    _, beta = delta_beta(a)
    return float(0.5 * np.log(64 * (a[0] * a[1] * a[2]) ** 2 / beta**2))


def residual_d2(inv, focus=0):
    """Residual tripartite discord with respect to the focus mode.

    ``S2(A_i) - D2(A_i|A_j) - D2(A_i|A_k)``, where the first term is the
    discord of the pure global split ``A_i | A_j A_k``.
    """
    a = check_triangle(inv)
    g = three_mode_pure_cm(a)
    i = int(focus)
    j, k = [m for m in range(3) if m != i]
    s_i = renyi2_entropy(reduce(g, [i]))
    d_ij = discord(reduce(g, [i, j]), "A|B").value
    d_ik = discord(reduce(g, [i, k]), "A|B").value
    return float(s_i - d_ij - d_ik)


# ------------------------------------------------- monogamy-type relations


def monogamy_gap(cm, focus=0):
    """E2(focus : rest) - sum over other modes j of E2(focus : j), for pure 3- or 4-mode states."""
    g = check_physical(cm)
    n = n_modes(g)
    if n not in (3, 4):
        raise ValueError("monogamy checks support 3 or 4 modes")
    if not _is_pure(g):
        raise ValueError("monogamy checks need a pure global state")
    focus = int(focus)
    others = [m for m in range(n) if m != focus]
    total = renyi2_entropy(reduce(g, [focus]))
    for j in others:
        total -= e2_two_mode(reduce(g, [focus, j])).value
    return float(total)


def kw_gap(cm, ordering=(0, 1, 2)):
    """S2(A) - J2(A|B) - E2(A:C) for a pure three-mode state and ordering (A, B, C)."""
    g = check_physical(cm)
    if n_modes(g) != 3:
        raise ValueError("a three-mode state is required")
    if not _is_pure(g):
        raise ValueError("the trade-off relation holds for pure states")
    a, b, c = (int(v) for v in ordering)
    if sorted((a, b, c)) != [0, 1, 2]:
        raise ValueError("ordering must be a permutation of (0, 1, 2)")
    s_a = renyi2_entropy(reduce(g, [a]))
    j_ab = classical_correlations(reduce(g, [a, b]), "A|B").value
    e_ac = e2_two_mode(reduce(g, [a, c])).value
    return float(s_a - j_ab - e_ac)


def je_gap(cm):
    """J2(A|B) - E2(A:B) for a two-mode state."""
    g = check_physical(cm)
    return float(classical_correlations(g, "A|B").value - e2_two_mode(g).value)


# -------------------------------------------------------------- K function


def k_values(a, b, cp, cm, reading="corrected"):
    """Vectorised K = J - F^2/G - 1 with heterodyne J and theta = pi in m_theta.

    Args:
        a, b, cp, cm: arrays of standard-form parameters.
        reading: ``"corrected"`` uses ``m_theta`` at theta = pi with the
            corrected grouping; ``"printed"`` and ``"printed_cpcm"`` evaluate
            the F and G expressions as commonly printed, with ``2 c+ c+`` or
            ``2 c+ c-`` in G (diagnostics only).

    Returns:
        (K, ok) where ``ok`` is False at domain failures (K is nan there).
    """
    if reading not in K_READINGS:
        raise ValueError(f"reading must be one of {K_READINGS}")
    a, b, cp, cm = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, cp, cm)))
    P, R, Q = _m_pieces(a, b, cp, cm)
    scale = np.maximum(1.0, (a * b) ** 2)
    bad_r = R < -DOMAIN_TOL * scale
    sR = np.sqrt(np.where(R < 0, 0.0, R))
    tiny = sR <= CLAMP_TOL * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        q_term = np.where(tiny, 0.0, Q / np.where(tiny, 1.0, sR))
    bad_q = tiny & (np.abs(Q) > 1e-8 * scale)
    if reading == "corrected":
        F = cp * P - cm - sR
        G = 2 * P * ((a * a + b * b + 2 * cp * cm) + q_term)
    else:
        cross = cp * cp if reading == "printed" else cp * cm
        F = cp * P - cm + sR
        G = 2 * P * (a * a + b * b + 2 * cross) - q_term
    J = a * a * (1 + b) ** 2 / ((a + a * b - cp**2) * (a + a * b - cm**2))
    ok = ~(bad_r | bad_q | (np.abs(G) <= CLAMP_TOL * scale))
    with np.errstate(divide="ignore", invalid="ignore"):
        k = J - F * F / G - 1
    ok &= np.isfinite(k)
    return np.where(ok, k, np.nan), ok


def k_function(a, b, c_plus, c_minus, reading="corrected"):
    """Scalar K(a, b, c+, c-); raises DomainError at degenerate points."""
    k, ok = k_values(a, b, c_plus, c_minus, reading)
    if not bool(ok):
        raise DomainError("K is undefined here (G = 0 or a negative radicand)")
    return float(k)
