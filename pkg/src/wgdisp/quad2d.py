"""Adaptive tensor-product Gauss-Legendre quadrature on a rectangle.

Each panel is estimated with a 12x12 and a 25x25 tensor rule; their
difference drives the subdivision.  Trigonometric integrands of the kind
produced by waveguide mode profiles converge to machine accuracy after
the oscillation is resolved, so callers can seed the initial grid with
one panel per half-wave.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import QuadratureError

_LO_N = 12
_HI_N = 25

_lo_x, _lo_w = np.polynomial.legendre.leggauss(_LO_N)
_hi_x, _hi_w = np.polynomial.legendre.leggauss(_HI_N)


def _panel_estimates(f, xa, xb, ya, yb):
    """Return (coarse, fine) tensor-rule estimates on one panel."""
    hx, hy = 0.5 * (xb - xa), 0.5 * (yb - ya)
    cx, cy = 0.5 * (xb + xa), 0.5 * (yb + ya)

    def tensor(nodes, weights):
        X, Y = np.meshgrid(cx + hx * nodes, cy + hy * nodes, indexing="ij")
        vals = f(X, Y)
        return hx * hy * np.einsum("i,j,ij->", weights, weights, vals)

    return tensor(_lo_x, _lo_w), tensor(_hi_x, _hi_w)


def integrate2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    xa: float,
    xb: float,
    ya: float,
    yb: float,
    tol: float = 1e-11,
    initial: tuple[int, int] = (1, 1),
    max_panels: int = 4096,
) -> tuple[float, float]:
    """Integrate ``f`` over [xa, xb] x [ya, yb] to absolute tolerance ``tol``.

    Returns ``(value, error_estimate)``; raises QuadratureError if the
    panel budget is exhausted before the tolerance is met.
    """
    nx, ny = initial
    xs = np.linspace(xa, xb, nx + 1)
    ys = np.linspace(ya, yb, ny + 1)
    stack = [(xs[i], xs[i + 1], ys[j], ys[j + 1])
             for i in range(nx) for j in range(ny)]

    done_value = 0.0
    done_error = 0.0
    panels_used = len(stack)
    while stack:
        if panels_used > max_panels:
            best = done_value + sum(_panel_estimates(f, *p)[1] for p in stack)
            raise QuadratureError(
                f"2-D quadrature exceeded {max_panels} panels",
                best_estimate=best,
                achieved_error=done_error + tol * len(stack),
            )
        pa = stack.pop()
        coarse, fine = _panel_estimates(f, *pa)
        err = abs(fine - coarse)
        # Per-panel share of the global budget, scaled by panel area.
        area_frac = (pa[1] - pa[0]) * (pa[3] - pa[2]) / ((xb - xa) * (yb - ya))
        if err <= max(tol * area_frac, 1e-3 * tol):
            done_value += fine
            done_error += err
            continue
        xm = 0.5 * (pa[0] + pa[1])
        ym = 0.5 * (pa[2] + pa[3])
        stack.extend([
            (pa[0], xm, pa[2], ym), (xm, pa[1], pa[2], ym),
            (pa[0], xm, ym, pa[3]), (xm, pa[1], ym, pa[3]),
        ])
        panels_used += 4
    return done_value, done_error
