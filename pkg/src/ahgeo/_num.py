"""Small shared numerical helpers (quadrature panels, exponential-tail fits)."""

from __future__ import annotations

import numpy as np

_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Legendre nodes/weights on [-1, 1], cached by order."""
    if order not in _GAUSS_CACHE:
        _GAUSS_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GAUSS_CACHE[order]


def panel_gauss(f, a: float, b: float, panels: np.ndarray | None = None,
                order: int = 32) -> float:
    """Composite Gauss-Legendre integral of a vectorized ``f`` over [a, b].

    ``panels`` is an increasing array of breakpoints spanning [a, b]; when
    omitted a single panel is used.
    """
    if panels is None:
        panels = np.array([a, b], dtype=float)
    x, w = gauss_nodes(order)
    lo = panels[:-1]
    hi = panels[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return float(np.sum(vals * w[None, :] * half[:, None]))


def geometric_panels(a: float, b: float, first: float = 1.0) -> np.ndarray:
    """Breakpoints a, a+first, a+2*first, a+4*first, ... capped at b."""
    if b <= a:
        return np.array([a, b])
    pts = [a]
    step = first
    while pts[-1] + step < b:
        pts.append(pts[-1] + step)
        step *= 2.0
    pts.append(b)
    return np.array(pts)


def fit_const_plus_exp(t: np.ndarray, y: np.ndarray, rate: float = 2.0):
    """Least-squares fit y ~ a + b*exp(-rate*t); returns (a, b, residual_rms)."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    basis = np.column_stack([np.ones_like(t), np.exp(-rate * t)])
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    resid = y - basis @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    return float(coef[0]), float(coef[1]), rms


def wrap_angle(x):
    """Wrap angle(s) to (-pi, pi]."""
    out = np.mod(np.asarray(x, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    return out if out.ndim else float(out)
