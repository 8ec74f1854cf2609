"""Derivative-free scalar minimisation helpers."""

import math

INVPHI = (math.sqrt(5) - 1) / 2


def golden_section(f, lo, hi, xtol=1e-10, max_iter=200):
    """Minimises a unimodal function on ``[lo, hi]`` by golden-section search.

    Args:
        f: scalar function of one real argument.
        lo, hi: bracket.
        xtol: stop once the bracket is narrower than this.
        max_iter: iteration cap.

    Returns:
        (x, f(x), iterations, converged)
    """
    a, b = float(lo), float(hi)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while abs(b - a) > xtol and it < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
        it += 1
    x, fx = (c, fc) if fc <= fd else (d, fd)
    return x, fx, it, abs(b - a) <= xtol


def coordinate_golden(f, x0, bounds, steps, xtol=1e-10, ftol=1e-12, max_sweeps=50):
    """Coordinate-wise golden-section descent.

    Each sweep minimises along every coordinate on a window of half-width
    ``steps[i]`` around the current point (clipped to ``bounds[i]``); windows
    shrink when a sweep yields no improvement. Stops once a sweep improves the
    objective by less than ``ftol``.

    Returns:
        (x, f(x), iterations, converged)
    """
    x = list(x0)
    fx = f(x)
    steps = list(steps)
    total = 0
    for _ in range(max_sweeps):
        f_start = fx
        for i, (blo, bhi) in enumerate(bounds):
            lo, hi = max(blo, x[i] - steps[i]), min(bhi, x[i] + steps[i])

            def line(t, i=i):
                y = list(x)
                y[i] = t
                return f(y)

            t, ft, it, _ = golden_section(line, lo, hi, xtol=xtol)
            total += it
            if ft < fx:
                x[i], fx = t, ft
            steps[i] = max(steps[i] * 0.5, 4 * xtol)
        if f_start - fx < ftol:
            return x, fx, total, True
    return x, fx, total, False
