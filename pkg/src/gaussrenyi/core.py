"""Covariance-matrix data model, symplectic algebra, entropies and random states.

Conventions used throughout the package:

* quadratures are interleaved, ``(q1, p1, q2, p2, ...)``;
* the vacuum covariance matrix is the identity;
* entropies are in nats.
"""

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

PHYS_TOL = 1e-9
PAIR_TOL = 1e-8


class UnphysicalStateError(ValueError):
    """Raised when a matrix is not a bona fide covariance matrix."""


class PartitionError(ValueError):
    """Raised for malformed mode partitions."""


class DomainError(ValueError):
    """Raised when a closed formula is evaluated outside its domain."""


@dataclass(frozen=True)
class ValidityReport:
    symmetric: bool
    positive_definite: bool
    physical: bool
    nu_min: float


class LocalInvariants(NamedTuple):
    I1: float
    I2: float
    I3: float
    I4: float


class TwoModeStandardForm(NamedTuple):
    a: float
    b: float
    c_plus: float
    c_minus: float

    def matrix(self):
        """Returns the 4x4 standard-form covariance matrix."""
        return standard_form_cm(*self)

    def physicality(self):
        """Left-hand side of the standard-form uncertainty constraint (>= 0 when physical)."""
        a, b, cp, cm = self
        return (a * a - 1) * (b * b - 1) - 2 * cm * cp - a * b * cp**2 + cm**2 * (cp**2 - a * b)


def _as_matrix(cm):
    g = np.asarray(cm, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2:
        raise ValueError(f"covariance matrix must be 2n x 2n, got shape {g.shape}")
    return g


def n_modes(cm):
    """Number of modes of a covariance matrix."""
    return _as_matrix(cm).shape[0] // 2


def symplectic_form(n):
    """Block-diagonal symplectic form for ``n`` modes in (q1, p1, ...) ordering."""
    if int(n) != n or n < 1:
        raise ValueError("number of modes must be a positive integer")
    return np.kron(np.eye(int(n)), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _is_symmetric(g):
    return np.max(np.abs(g - g.T)) <= 1e-12 * (1 + np.max(np.abs(g)))


def symplectic_spectrum(cm):
    """Symplectic eigenvalues of a covariance matrix, in descending order.

    The moduli of the eigenvalues of ``i Omega gamma`` are obtained from the
    similar Hermitian matrix ``i gamma^(1/2) Omega gamma^(1/2)``, whose spectrum
    comes in pairs ``+nu, -nu``.

    Args:
        cm: symmetric positive definite 2n x 2n matrix.

    Returns:
        Array of n symplectic eigenvalues, largest first.
    """
    g = _as_matrix(cm)
    if not _is_symmetric(g):
        raise UnphysicalStateError("covariance matrix is not symmetric")
    g = 0.5 * (g + g.T)
    ev, u = np.linalg.eigh(g)
    if ev[0] <= 0:
        raise UnphysicalStateError("covariance matrix is not positive definite")
    n = g.shape[0] // 2
    half = (u * np.sqrt(ev)) @ u.T
    h = 1j * half @ symplectic_form(n) @ half
    w = np.linalg.eigvalsh(0.5 * (h + h.conj().T))
    pos, neg = w[n:][::-1], -w[:n]
    if np.any(np.abs(pos - neg) > PAIR_TOL * np.maximum(1.0, pos)):
        raise ArithmeticError("symplectic eigenvalues failed to pair up")
    return 0.5 * (pos + neg)


def validate(cm):
    """Checks symmetry, positive definiteness and the uncertainty principle.

    Returns:
        ValidityReport with the measured smallest symplectic eigenvalue
        (``nan`` when it cannot be computed).
    """
    g = _as_matrix(cm)
    sym = bool(_is_symmetric(g))
    gs = 0.5 * (g + g.T)
    pd = bool(np.linalg.eigvalsh(gs)[0] > 0)
    if pd:
        try:
            nu_min = float(symplectic_spectrum(gs)[-1])
        except ArithmeticError:
            nu_min = float("nan")
    else:
        n = g.shape[0] // 2
        nu_min = float(np.min(np.abs(np.linalg.eigvals(symplectic_form(n) @ gs))))
    physical = sym and pd and nu_min >= 1 - PHYS_TOL
    return ValidityReport(sym, pd, bool(physical), nu_min)


def check_physical(cm):
    """Returns ``cm`` as a float array, raising if it is not a physical CM."""
    g = _as_matrix(cm)
    rep = validate(g)
    if not rep.physical:
        raise UnphysicalStateError(
            f"not a physical covariance matrix (symmetric={rep.symmetric}, "
            f"positive_definite={rep.positive_definite}, nu_min={rep.nu_min:.6g})"
        )
    return g


def _logdet(g):
    sign, ld = np.linalg.slogdet(g)
    if sign <= 0:
        raise UnphysicalStateError("determinant is not positive")
    return ld


def purity(cm):
    """Purity tr(rho^2) = det(gamma)^(-1/2)."""
    ld = _logdet(_as_matrix(cm))
    if ld < np.log1p(-PHYS_TOL):
        raise UnphysicalStateError("det gamma < 1")
    return float(np.exp(-0.5 * ld))


def renyi2_entropy(cm):
    """Renyi-2 entropy, half the log-determinant of the covariance matrix."""
    ld = _logdet(_as_matrix(cm))
    if ld < np.log1p(-PHYS_TOL):
        raise UnphysicalStateError("det gamma < 1")
    return float(0.5 * ld)


def renyi_alpha_entropy(cm, alpha):
    """Renyi-alpha entropy of a Gaussian state from its symplectic spectrum.

    Args:
        cm: covariance matrix.
        alpha: order, positive and different from one.
    """
    if alpha <= 0 or alpha == 1:
        raise ValueError("alpha must be positive and != 1 (use von_neumann_entropy)")
    nu = np.maximum(symplectic_spectrum(cm), 1.0)
    # ln[2^a / ((nu+1)^a - (nu-1)^a)] written to stay accurate near nu = 1
    lp = np.log((nu + 1) / 2)
    with np.errstate(divide="ignore"):
        ratio = np.where(nu > 1, alpha * (np.log(nu - 1) - np.log(nu + 1)), -np.inf)
    terms = -alpha * lp - np.log1p(-np.exp(ratio))
    return float(np.sum(terms) / (1 - alpha))


def von_neumann_entropy(cm):
    """Von Neumann entropy of a Gaussian state."""
    nu = np.maximum(symplectic_spectrum(cm), 1.0)
    xp, xm = (nu + 1) / 2, (nu - 1) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        tm = np.where(xm > 0, xm * np.log(xm), 0.0)
    return float(np.sum(xp * np.log(xp) - tm))


def quadrature_indices(modes):
    return np.ravel([[2 * m, 2 * m + 1] for m in modes]).astype(int)


def parse_partition(groups, n, allow_empty=False):
    """Validates a partition given as a sequence of mode-index groups.

    Returns:
        List of lists of ints.
    """
    out, seen = [], set()
    for grp in groups:
        grp = [int(m) for m in grp]
        if not grp and not allow_empty:
            raise PartitionError("empty group")
        for m in grp:
            if not 0 <= m < n:
                raise PartitionError(f"mode index {m} out of range for {n} modes")
            if m in seen:
                raise PartitionError(f"mode index {m} repeated")
            seen.add(m)
        out.append(grp)
    return out


def reduce(cm, modes):
    """Reduced covariance matrix of the given modes (in the given order)."""
    g = _as_matrix(cm)
    (modes,) = parse_partition([modes], g.shape[0] // 2)
    idx = quadrature_indices(modes)
    return g[np.ix_(idx, idx)]


def direct_sum(*cms):
    """Block-diagonal covariance matrix of a product state."""
    mats = [_as_matrix(c) for c in cms]
    size = sum(m.shape[0] for m in mats)
    out = np.zeros((size, size))
    k = 0
    for m in mats:
        d = m.shape[0]
        out[k : k + d, k : k + d] = m
        k += d
    return out


def _check_two_mode(g):
    if g.shape != (4, 4):
        raise ValueError("a two-mode covariance matrix is required")


def local_invariants(cm):
    """Local symplectic invariants (det A, det B, det C, det gamma) of a two-mode CM."""
    g = _as_matrix(cm)
    _check_two_mode(g)
    return LocalInvariants(
        float(np.linalg.det(g[:2, :2])),
        float(np.linalg.det(g[2:, 2:])),
        float(np.linalg.det(g[:2, 2:])),
        float(np.linalg.det(g)),
    )


def standard_form_cm(a, b, c_plus, c_minus):
    """4x4 covariance matrix in standard form."""
    return np.array(
        [
            [a, 0, c_plus, 0],
            [0, a, 0, c_minus],
            [c_plus, 0, b, 0],
            [0, c_minus, 0, b],
        ],
        dtype=float,
    )


def standard_form_from_invariants(inv):
    """Standard-form parameters rebuilt from the local invariants alone.

    ``c+^2`` and ``c-^2`` are the roots of ``x^2 - s x + I3^2`` with
    ``s = (I1 I2 + I3^2 - I4) / (a b)``. This path loses roughly half of the
    significant digits when ``c+ ~ |c-|`` (pure states, for instance), so
    :func:`to_standard_form` only uses it as a consistency check.
    """
    I1, I2, I3, I4 = inv
    if I1 <= 0 or I2 <= 0:
        raise UnphysicalStateError("marginal determinants must be positive")
    a, b = np.sqrt(I1), np.sqrt(I2)
    s = (I1 * I2 + I3**2 - I4) / (a * b)
    disc = s * s - 4 * I3**2
    if disc < -PHYS_TOL * max(1.0, s * s):
        raise UnphysicalStateError("negative discriminant in standard-form reduction")
    big = max((s + np.sqrt(max(disc, 0.0))) / 2, 0.0)
    # the product of the roots is I3^2
    small = I3**2 / big if big > 0 else 0.0
    cm = np.copysign(np.sqrt(small), I3) if I3 != 0 else 0.0
    return TwoModeStandardForm(float(a), float(b), float(np.sqrt(big)), float(cm))


def to_standard_form(cm):
    """Standard-form parameters (a, b, c+, c-) of a two-mode covariance matrix.

    ``a`` and ``b`` are the square roots of the marginal determinants; ``c+``
    and ``|c-|`` are the singular values of the correlation block once both
    marginals are brought to multiples of the identity, with ``c+ >= |c-|``
    and ``sign(c+ c-) = sign(det C)``. The discriminant of the invariant
    reconstruction is checked so numerically unphysical input is rejected.
    """
    g = _as_matrix(cm)
    _check_two_mode(g)
    standard_form_from_invariants(local_invariants(g))
    return _local_normalisation(g)[1]


def rotation(phi):
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


def _inv_sqrt_psd2(m):
    ev, u = np.linalg.eigh(m)
    return (u / np.sqrt(ev)) @ u.T


def _local_normalisation(g):
    a_blk, b_blk = g[:2, :2], g[2:, 2:]
    a, b = np.sqrt(np.linalg.det(a_blk)), np.sqrt(np.linalg.det(b_blk))
    # single-mode normalisation: sqrt(det) * A^(-1/2) is symplectic (det 1)
    sa = np.sqrt(a) * _inv_sqrt_psd2(a_blk)
    sb = np.sqrt(b) * _inv_sqrt_psd2(b_blk)
    c = sa @ g[:2, 2:] @ sb.T
    u, sv, vt = np.linalg.svd(c)
    # rotations need det +1; fold any reflection into the smaller singular value
    du, dv = np.linalg.det(u), np.linalg.det(vt)
    oa = (u @ np.diag([1.0, du])).T
    ob = np.diag([1.0, dv]) @ vt
    s_mat = np.zeros((4, 4))
    s_mat[:2, :2] = oa @ sa
    s_mat[2:, 2:] = ob @ sb
    sf = TwoModeStandardForm(float(a), float(b), float(sv[0]), float(np.sign(du * dv) * sv[1]))
    return s_mat, sf


def standard_form_symplectic(cm):
    """Local symplectic ``S = S_A (+) S_B`` bringing a two-mode CM to standard form.

    Returns:
        (S, sf) where ``S @ cm @ S.T`` equals ``sf.matrix()`` up to roundoff.
    """
    g = check_physical(cm)
    _check_two_mode(g)
    return _local_normalisation(g)


def williamson(cm):
    """Williamson decomposition ``gamma = S diag(nu) S^T``.

    Returns:
        (nu, S) with nu the symplectic eigenvalues (one per mode, in the
        order of the normal modes) and S symplectic.
    """
    from scipy.linalg import schur

    g = check_physical(cm)
    n = g.shape[0] // 2
    ev, u = np.linalg.eigh(g)
    half = (u * np.sqrt(ev)) @ u.T
    ihalf = (u / np.sqrt(ev)) @ u.T
    t, o = schur(ihalf @ symplectic_form(n) @ ihalf, output="real")
    o = o.copy()
    nu = np.empty(n)
    for k in range(n):
        tk = t[2 * k, 2 * k + 1]
        if tk < 0:
            o[:, [2 * k, 2 * k + 1]] = o[:, [2 * k + 1, 2 * k]]
            tk = -tk
        nu[k] = 1.0 / tk
    s = half @ o @ np.diag(np.repeat(1.0 / np.sqrt(nu), 2))
    return nu, s


def tmss_cm(r):
    """Two-mode squeezed vacuum with squeezing parameter ``r``."""
    a, c = np.cosh(2 * r), np.sinh(2 * r)
    return standard_form_cm(a, a, c, -c)


def random_orthosymplectic(n, rng):
    """Haar-random passive (orthogonal and symplectic) transformation.

    Built from a random unitary ``U = X + iY`` as ``[[X, -Y], [Y, X]]`` and
    reordered to interleaved quadratures.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    x, y = q.real, q.imag
    o = np.block([[x, -y], [y, x]])
    perm = np.ravel([[i, i + n] for i in range(n)])
    return o[np.ix_(perm, perm)]


def random_local_symplectic(mode_count, rng, squeeze_cap=1.0):
    """Random product of single-mode symplectics (rotation, squeeze, rotation)."""
    blocks = []
    for _ in range(mode_count):
        r = rng.uniform(-squeeze_cap, squeeze_cap)
        blocks.append(
            rotation(rng.uniform(0, 2 * np.pi)) @ np.diag([np.exp(r), np.exp(-r)]) @ rotation(rng.uniform(0, 2 * np.pi))
        )
    out = np.zeros((2 * mode_count, 2 * mode_count))
    for k, blk in enumerate(blocks):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = blk
    return out


def _random_symplectic(n, squeeze_cap, rng):
    k1 = random_orthosymplectic(n, rng)
    k2 = random_orthosymplectic(n, rng)
    r = rng.uniform(0, squeeze_cap, n)
    z = np.diag(np.exp(np.ravel(np.column_stack([r, -r]))))
    return k1 @ z @ k2


def random_pure_cm(n, squeeze_cap, rng):
    """Random pure covariance matrix ``S S^T``.

    Args:
        n: number of modes.
        squeeze_cap: per-mode squeezing drawn uniformly from [0, squeeze_cap].
        rng: ``numpy.random.Generator``.
    """
    if n < 1 or not np.isfinite(squeeze_cap) or squeeze_cap < 0:
        raise ValueError("need n >= 1 and a finite squeeze_cap >= 0")
    s = _random_symplectic(n, squeeze_cap, rng)
    g = s @ s.T
    return 0.5 * (g + g.T)


def random_mixed_cm(n, squeeze_cap, temp_cap, rng):
    """Random mixed covariance matrix ``S D S^T`` with symplectic eigenvalues in [1, temp_cap]."""
    if n < 1 or not np.isfinite(squeeze_cap) or squeeze_cap < 0:
        raise ValueError("need n >= 1 and a finite squeeze_cap >= 0")
    if not np.isfinite(temp_cap) or temp_cap < 1:
        raise ValueError("temp_cap must be finite and >= 1")
    s = _random_symplectic(n, squeeze_cap, rng)
    nu = rng.uniform(1, temp_cap, n)
    g = (s * np.repeat(nu, 2)) @ s.T
    return 0.5 * (g + g.T)


def bipartition(cm, groups: Sequence[Sequence[int]]):
    """Validates a two-group partition that covers every mode exactly once."""
    n = n_modes(cm)
    parts = parse_partition(groups, n)
    if len(parts) != 2 or sum(len(p) for p in parts) != n:
        raise PartitionError("expected two groups covering all modes")
    return parts
