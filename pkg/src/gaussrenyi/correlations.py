"""Mutual information, strong subadditivity, Gaussian measurements, J2 and D2.

One-way classical correlations ``J2(A|B)`` are the largest decrease of the
Renyi-2 entropy of A obtainable by a Gaussian measurement on B. The
optimisation runs over pure measurement seeds; single-mode pure seeds are
``Gamma = R(phi) diag(lam, 1/lam) R(phi)^T``. Since ``(lam, phi)`` and
``(1/lam, phi + pi/2)`` give the same seed, ``lam`` is restricted to [0, 1]
and ``phi`` to [0, pi); ``lam = 0`` is the homodyne limit and is evaluated
exactly.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .core import (
    PartitionError,
    bipartition,
    check_physical,
    n_modes,
    parse_partition,
    quadrature_indices,
    rotation,
    to_standard_form,
)
from .optimize import coordinate_golden

DIRECTIONS = ("A|B", "B|A")


@dataclass(frozen=True)
class MeasurementSeed:
    """Covariance matrix of the state seeding a Gaussian measurement."""

    gamma_seed: np.ndarray
    lam: Optional[float] = None
    phi: Optional[float] = None

    @classmethod
    def pure_single_mode(cls, lam, phi):
        if lam <= 0:
            raise ValueError("lam must be positive; use homodyne limits via the optimisers")
        r = rotation(phi)
        return cls(r @ np.diag([lam, 1.0 / lam]) @ r.T, float(lam), float(phi))


@dataclass(frozen=True)
class MeasureReport:
    value: float
    witness: dict = field(default_factory=dict)
    method: str = "closed_form"
    converged: bool = True
    iterations: int = 0


def _logdet_modes(g, modes):
    if not modes:
        return 0.0
    idx = quadrature_indices(modes)
    sign, ld = np.linalg.slogdet(g[np.ix_(idx, idx)])
    if sign <= 0:
        raise ValueError("reduced covariance matrix has non-positive determinant")
    return ld


def mutual_information(cm, partition=((0,), (1,))):
    """Renyi-2 mutual information S2(A) + S2(B) - S2(AB)."""
    g = check_physical(cm)
    a, b = bipartition(g, partition)
    return 0.5 * (_logdet_modes(g, a) + _logdet_modes(g, b) - _logdet_modes(g, a + b))


def ssa_gap(cm, partition):
    """Strong-subadditivity gap S(AB) + S(BC) - S(ABC) - S(B).

    Args:
        cm: covariance matrix.
        partition: three disjoint groups (A, B, C); any group may be empty
            (an empty B gives plain subadditivity between A and C).

    Returns:
        0.5 * ln(det g_AB det g_BC / (det g_ABC det g_B)), non-negative for
        every Gaussian state.
    """
    g = check_physical(cm)
    groups = parse_partition(partition, n_modes(g), allow_empty=True)
    if len(groups) != 3:
        raise PartitionError("expected three groups A, B, C")
    a, b, c = groups
    return 0.5 * (
        _logdet_modes(g, a + b) + _logdet_modes(g, b + c) - _logdet_modes(g, a + b + c) - _logdet_modes(g, b)
    )


def conditional_cm(cm, partition, seed):
    """Covariance matrix of A after a Gaussian measurement on B.

    The result does not depend on the measurement outcome:
    ``g_A - C (g_B + Gamma)^-1 C^T``.

    Args:
        cm: covariance matrix.
        partition: groups (A, B); B is measured.
        seed: MeasurementSeed or a 2|B| x 2|B| seed covariance matrix.
    """
    g = check_physical(cm)
    groups = parse_partition(partition, n_modes(g))
    if len(groups) != 2:
        raise PartitionError("expected two groups (A, B)")
    ia, ib = quadrature_indices(groups[0]), quadrature_indices(groups[1])
    gam = np.asarray(getattr(seed, "gamma_seed", seed), dtype=float)
    if gam.shape != (len(ib), len(ib)):
        raise ValueError("seed size does not match the measured subsystem")
    m = g[np.ix_(ib, ib)] + gam
    if np.linalg.cond(m) > 1e14:
        raise np.linalg.LinAlgError("g_B + Gamma is singular")
    c = g[np.ix_(ia, ib)]
    out = g[np.ix_(ia, ia)] - c @ np.linalg.solve(m, c.T)
    return 0.5 * (out + out.T)


def _check_direction(direction):
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")


def _oriented(sf, direction):
    # returns (a, b, c+, c-) with b the measured mode
    a, b, cp, cm = sf
    return (a, b, cp, cm) if direction == "A|B" else (b, a, cp, cm)


def min_conditional_det(a, b, cp, cm):
    """Smallest det of the conditional CM of mode A over Gaussian measurements on B.

    Closed two-branch formula on the standard form.

    Returns:
        (value, branch) with branch 1 the homodyne solution.
    """
    if b * b - 1 < 1e-12:
        # a pure marginal on B admits no correlations
        return a * a, 0
    cond = (a * b * b * cm**2 - cp**2 * (a + b * cm**2)) * (a * b * b * cp**2 - cm**2 * (a + b * cp**2))
    if cond < 0:
        return a * (a - cp**2 / b), 1
    big_a = a * (b * b - 1) - b * cm**2
    big_b = a * (b * b - 1) - b * cp**2
    val = (2 * abs(cm * cp) * np.sqrt(max(big_a * big_b, 0.0)) + big_a * big_b + cm**2 * cp**2) / (b * b - 1) ** 2
    return val, 2


def classical_correlations(cm, direction="A|B", partition=None):
    """One-way classical correlations J2 of a two-mode state (closed form).

    Args:
        cm: covariance matrix. Inputs with more than two modes are sent to
            :func:`classical_correlations_numeric` with ``partition``.
        direction: ``"A|B"`` measures mode B, ``"B|A"`` measures mode A.
    """
    _check_direction(direction)
    g = check_physical(cm)
    if n_modes(g) != 2:
        if partition is None:
            raise PartitionError("multimode input needs an explicit partition")
        return classical_correlations_numeric(g, direction, partition=partition)
    a, b, cp, cm_ = _oriented(to_standard_form(g), direction)
    mdet, branch = min_conditional_det(a, b, cp, cm_)
    value = float(np.log(a) - 0.5 * np.log(mdet))
    return MeasureReport(value, {"branch": branch, "min_det": float(mdet)}, "closed_form", True, 0)


def discord(cm, direction="A|B"):
    """Renyi-2 discord D2 = I2 - J2 of a two-mode state (closed form)."""
    _check_direction(direction)
    g = check_physical(cm)
    if n_modes(g) != 2:
        raise ValueError("closed-form discord needs a two-mode state")
    a, b, cp, cm_ = _oriented(to_standard_form(g), direction)
    mdet, branch = min_conditional_det(a, b, cp, cm_)
    _, ld = np.linalg.slogdet(g)
    value = float(np.log(b) - 0.5 * ld + 0.5 * np.log(mdet))
    return MeasureReport(value, {"branch": branch, "min_det": float(mdet)}, "closed_form", True, 0)


def _seed_inverse_batch(gb, lam, phi):
    """(g_B + Gamma(lam, phi))^-1 for arrays of single-mode seeds, finite at lam = 0."""
    c, s = np.cos(phi), np.sin(phi)
    # g_B in the frame rotated by phi, where the seed is diag(lam, 1/lam)
    m11 = c * c * gb[0, 0] + 2 * c * s * gb[0, 1] + s * s * gb[1, 1]
    m22 = s * s * gb[0, 0] - 2 * c * s * gb[0, 1] + c * c * gb[1, 1]
    m12 = c * s * (gb[1, 1] - gb[0, 0]) + (c * c - s * s) * gb[0, 1]
    # multiply numerator and denominator by lam
    det = (m11 + lam) * (lam * m22 + 1) - lam * m12 * m12
    i11 = (lam * m22 + 1) / det
    i22 = lam * (m11 + lam) / det
    i12 = -lam * m12 / det
    # rotate back: R M^-1 R^T
    r11 = c * c * i11 - 2 * c * s * i12 + s * s * i22
    r22 = s * s * i11 + 2 * c * s * i12 + c * c * i22
    r12 = c * s * (i11 - i22) + (c * c - s * s) * i12
    return np.stack([np.stack([r11, r12], -1), np.stack([r12, r22], -1)], -2)


def _logdet_conditional_1(g, ia, ib, lam, phi):
    lam, phi = np.broadcast_arrays(np.asarray(lam, float), np.asarray(phi, float))
    inv = _seed_inverse_batch(g[np.ix_(ib, ib)], lam, phi)
    c = g[np.ix_(ia, ib)]
    cond = g[np.ix_(ia, ia)] - np.einsum("ij,...jk,lk->...il", c, inv, c)
    sign, ld = np.linalg.slogdet(cond)
    return np.where(sign > 0, ld, np.inf)


def _scalar_logdet_1(g, ia, ib):
    """Scalar ln det of the conditional CM for one mode A and one measured mode B.

    Same algebra as the batched path, written with ``math`` for the refinement loops.
    """
    a11, a12, a22 = (float(g[ia[i], ia[j]]) for i, j in ((0, 0), (0, 1), (1, 1)))
    b11, b12, b22 = (float(g[ib[i], ib[j]]) for i, j in ((0, 0), (0, 1), (1, 1)))
    c11, c12, c21, c22 = (float(g[ia[i], ib[j]]) for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)))

    def f(x):
        lam, phi = x[0], x[1]
        c, s = math.cos(phi), math.sin(phi)
        m11 = c * c * b11 + 2 * c * s * b12 + s * s * b22
        m22 = s * s * b11 - 2 * c * s * b12 + c * c * b22
        m12 = c * s * (b22 - b11) + (c * c - s * s) * b12
        det = (m11 + lam) * (lam * m22 + 1) - lam * m12 * m12
        i11, i22, i12 = (lam * m22 + 1) / det, lam * (m11 + lam) / det, -lam * m12 / det
        r11 = c * c * i11 - 2 * c * s * i12 + s * s * i22
        r22 = s * s * i11 + 2 * c * s * i12 + c * c * i22
        r12 = c * s * (i11 - i22) + (c * c - s * s) * i12
        # cond = A - C R C^T
        u11, u12 = c11 * r11 + c12 * r12, c11 * r12 + c12 * r22
        u21, u22 = c21 * r11 + c22 * r12, c21 * r12 + c22 * r22
        k11 = a11 - (u11 * c11 + u12 * c12)
        k12 = a12 - (u11 * c21 + u12 * c22)
        k22 = a22 - (u21 * c21 + u22 * c22)
        dk = k11 * k22 - k12 * k12
        return math.log(dk) if dk > 0 else math.inf

    return f


def _pure_two_mode_seed(x):
    """Pure two-mode seed from (theta, psi1, psi2, chi, l1, l2); l = ln lambda per mode."""
    theta, psi1, psi2, chi, l1, l2 = x
    u = np.exp(1j * chi) * np.array(
        [
            [np.exp(1j * psi1) * np.cos(theta), np.exp(1j * psi2) * np.sin(theta)],
            [-np.exp(-1j * psi2) * np.sin(theta), np.exp(-1j * psi1) * np.cos(theta)],
        ]
    )
    xr, yr = u.real, u.imag
    o = np.block([[xr, -yr], [yr, xr]])[np.ix_([0, 2, 1, 3], [0, 2, 1, 3])]
    z = np.diag(np.exp([l1, -l1, l2, -l2]))
    return o @ z @ o.T


def classical_correlations_numeric(cm, direction="A|B", grid_density=64, refine_tol=1e-10, partition=None):
    """J2 by direct search over pure Gaussian measurement seeds.

    Single-mode seeds: a (lam, phi) grid, coordinate golden-section from the
    best grid point, then a bounded Nelder-Mead polish.

    Args:
        cm: covariance matrix.
        direction: for two-mode inputs without ``partition``, which mode is
            measured (``"A|B"`` measures mode 1).
        grid_density: grid points per seed parameter (single-mode seeds).
        refine_tol: golden-section tolerance on the parameters.
        partition: optional groups (A, B) with B measured (1 or 2 modes).

    Returns:
        MeasureReport with witness ``{"lam", "phi"}`` for single-mode seeds.
    """
    g = check_physical(cm)
    if partition is None:
        _check_direction(direction)
        if n_modes(g) != 2:
            raise PartitionError("multimode input needs an explicit partition")
        partition = ((0,), (1,)) if direction == "A|B" else ((1,), (0,))
    grp_a, grp_b = parse_partition(partition, n_modes(g))
    if len(grp_b) > 2:
        raise ValueError("measured subsystems larger than two modes are not supported")
    ia, ib = quadrature_indices(grp_a), quadrature_indices(grp_b)
    _, ld_a = np.linalg.slogdet(g[np.ix_(ia, ia)])

    if len(grp_b) == 1:
        lams = np.r_[0.0, np.logspace(-3, 0, grid_density - 1)]
        phis = np.linspace(0, np.pi, grid_density, endpoint=False)
        ll, pp = np.meshgrid(lams, phis, indexing="ij")
        vals = _logdet_conditional_1(g, ia, ib, ll, pp)
        i, j = np.unravel_index(np.argmin(vals), vals.shape)
        best = float(vals[i, j])
        if len(ia) == 2:
            f = _scalar_logdet_1(g, ia, ib)
        else:
            f = lambda x: float(_logdet_conditional_1(g, ia, ib, x[0], x[1]))
        lam0 = lams[i]
        step_l = max(0.2 * lam0, 2e-3)
        x, fx, it, conv = coordinate_golden(
            f, [lam0, phis[j]], [(0.0, 1.0), (phis[j] - np.pi, phis[j] + np.pi)], [step_l, np.pi / grid_density * 1.5], xtol=refine_tol
        )
        if fx > best:
            x, fx = [lam0, phis[j]], best
        # coordinate steps crawl along curved valleys away from the standard-form frame
        nm = {"method": "Nelder-Mead", "bounds": [(0.0, 1.0), (None, None)]}
        opts = {"xatol": refine_tol, "fatol": 1e-15, "maxiter": 2000}
        res = minimize(f, x, options=opts, **nm)
        it += res.nit
        conv = bool(res.success)
        if not conv:
            # flat valleys never shrink the simplex; accept once a restart stops improving
            again = minimize(f, res.x, options=opts, **nm)
            it += again.nit
            conv = bool(again.success) or abs(again.fun - res.fun) <= 1e-13
            if again.fun < res.fun:
                res = again
        if res.fun < fx:
            x, fx = res.x, float(res.fun)
        witness = {"lam": float(x[0]), "phi": float(np.mod(x[1], np.pi))}
    else:
        f = lambda x: float(np.linalg.slogdet(conditional_cm(g, (grp_a, grp_b), _pure_two_mode_seed(x)))[1])
        rng = np.random.default_rng(0)
        fx, x, it, conv = np.inf, None, 0, False
        bounds = [(0, np.pi), (0, 2 * np.pi), (0, 2 * np.pi), (0, 2 * np.pi), (-12, 12), (-12, 12)]
        for _ in range(grid_density // 4):
            x0 = [rng.uniform(lo, hi) for lo, hi in bounds]
            xs, fs, its, cs = coordinate_golden(f, x0, bounds, [0.5] * 4 + [3.0, 3.0], xtol=refine_tol, max_sweeps=40)
            it += its
            if fs < fx:
                fx, x, conv = fs, xs, cs
        witness = {"params": [float(v) for v in x]}
    value = float(0.5 * (ld_a - fx))
    return MeasureReport(value, witness, "numeric", bool(conv), int(it))


def det_conditional_expr(a, b, cp, cm, lam, phi):
    """Explicit det of the conditional CM of A for a (lam, phi) seed on B (standard form)."""
    num = (
        2 * a * a * (b + lam) * (1 + b * lam)
        - a * (cp**2 + cm**2) * (2 * b * lam + lam**2 + 1)
        + 2 * cp**2 * cm**2 * lam
        + a * (cp**2 - cm**2) * (lam**2 - 1) * np.cos(2 * phi)
    )
    return num / (2 * (b + lam) * (1 + b * lam))


def seed_search(cm, direction="A|B", grid_density=64, refine_tol=1e-10):
    """Minimises the explicit conditional determinant over (lam, phi).

    Returns:
        (lam, phi, det_value)
    """
    _check_direction(direction)
    g = check_physical(cm)
    if n_modes(g) != 2:
        raise ValueError("seed_search needs a two-mode state")
    a, b, cp, cm_ = _oriented(to_standard_form(g), direction)
    lams = np.r_[0.0, np.logspace(-3, 0, grid_density - 1)]
    phis = np.linspace(0, np.pi, grid_density, endpoint=False)
    ll, pp = np.meshgrid(lams, phis, indexing="ij")
    vals = det_conditional_expr(a, b, cp, cm_, ll, pp)
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    f = lambda x: float(det_conditional_expr(a, b, cp, cm_, x[0], x[1]))
    x, fx, _, _ = coordinate_golden(
        f, [lams[i], phis[j]], [(0.0, 1.0), (phis[j] - np.pi, phis[j] + np.pi)], [max(0.2 * lams[i], 2e-3), 1.5 * np.pi / grid_density], xtol=refine_tol
    )
    if fx > vals[i, j]:
        x, fx = [lams[i], phis[j]], float(vals[i, j])
    return float(x[0]), float(np.mod(x[1], np.pi)), float(fx)
