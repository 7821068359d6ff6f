"""Composite Gauss-Legendre rules on polylines and rectangles.

Line integrals over a closed polyline are evaluated panel by panel.  Each
straight segment starts as one panel; a panel is accepted when the order-k
rule on the whole panel agrees with the sum over its two halves to within
its share of the tolerance, and is bisected otherwise.  Panels are processed
in breadth-first rounds with a fixed ordering, so the result is bitwise
reproducible for a given input.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import QuadratureError

DEFAULT_ORDER = 10
MAX_DEPTH = 40


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def _panel_rule(integrand, za, zb, order):
    # integrand(z, dz/ds) on straight panels za -> zb, s in [0, 1]
    x, w = gauss_legendre(order)
    dz = (zb - za)[:, None]
    z = za[:, None] + dz * x[None, :]
    vals = integrand(z, np.broadcast_to(dz, z.shape))
    return vals @ w


def integrate_polyline(
    integrand: Callable[[np.ndarray, np.ndarray], np.ndarray],
    vertices: np.ndarray,
    tol: float,
    order: int = DEFAULT_ORDER,
    closed: bool = True,
) -> float:
    """Adaptively integrate ``integrand(z, dz) ds`` along a polyline.

    ``integrand`` receives complex arrays of points and tangent vectors (with
    respect to the local panel parameter) of equal shape and must return a
    real array of the same shape.  The absolute error target ``tol`` is split
    between panels in proportion to their length.
    """
    v = np.asarray(vertices, dtype=complex)
    if closed:
        za, zb = v, np.roll(v, -1)
    else:
        za, zb = v[:-1], v[1:]
    lengths = np.abs(zb - za)
    total_length = float(lengths.sum())
    if total_length == 0.0:
        return 0.0

    accepted: list[np.ndarray] = []
    for _depth in range(MAX_DEPTH):
        zm = 0.5 * (za + zb)
        whole = _panel_rule(integrand, za, zb, order)
        left = _panel_rule(integrand, za, zm, order)
        right = _panel_rule(integrand, zm, zb, order)
        halves = left + right
        if not np.all(np.isfinite(halves)):
            raise QuadratureError("integrand is not finite on the curve")
        budget = tol * np.abs(zb - za) / total_length
        ok = np.abs(whole - halves) <= budget
        accepted.append(halves[ok])
        if ok.all():
            break
        bad = ~ok
        za, zm_bad, zb = za[bad], zm[bad], zb[bad]
        za, zb = np.concatenate([za, zm_bad]), np.concatenate([zm_bad, zb])
    else:
        raise QuadratureError(
            f"line quadrature did not reach tol={tol:g} after {MAX_DEPTH} bisections"
        )
    return float(np.sum(np.concatenate(accepted)))


def tensor_rule(a: float, b: float, panels: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [a, b]."""
    x, w = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    h = np.diff(edges)
    nodes = edges[:-1, None] + h[:, None] * x[None, :]
    weights = h[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()
