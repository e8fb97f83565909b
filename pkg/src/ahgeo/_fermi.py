"""Hyperbolic-quotient internals: hyperboloid cover, windings, cut sets.

The universal cover of the Fermi quotient is hyperbolic space, realised on
the hyperboloid -X0^2 + X1^2 + |Y|^2 = -1.  Fermi coordinates (t, w, z)
about the core line z -> (cosh z, sinh z, 0) lift as

    P(t, w, z) = (cosh t cosh z, cosh t sinh z, sinh t * w),

with z = lam * theta the arc length along the core.  Deck transformations
translate z by multiples of 2*pi*lam, so quotient distances are minima of
cover distances over windings.

To stay accurate at large z, points and tangent vectors are carried in the
split form (X0+X1, X0-X1, Y); the first two components scale like e^{+z}
and e^{-z} and are combined without cancellation.
"""

from __future__ import annotations

import math

import numpy as np

from .models import FermiQuotient, ModelPoint


def circle_length(model: FermiQuotient) -> float:
    return 2.0 * math.pi * model.lam


def _acosh_clip(x):
    return np.arccosh(np.maximum(x, 1.0))


def pair_distance(model: FermiQuotient, t1, w1, th1, t2, w2, th2,
                  max_windings: int = 256):
    """Quotient distance, vectorized; minimum of winding lifts.

    The winding minimum is attained at the principal wrap because the
    sphere term is winding-independent, but neighbouring windings are
    evaluated anyway as a sound guard (windings k are pruned once the
    crude bound |dz + k*ell| exceeds the best distance found).
    """
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    ell = circle_length(model)
    dz = model.lam * (np.asarray(th2, dtype=float) - np.asarray(th1, dtype=float))
    dz = np.mod(dz + 0.5 * ell, ell) - 0.5 * ell
    dot = np.sum(np.asarray(w1, dtype=float) * np.asarray(w2, dtype=float), axis=-1)
    A = np.cosh(t1) * np.cosh(t2)
    B = np.sinh(t1) * np.sinh(t2) * dot
    best = _acosh_clip(A * np.cosh(dz) - B)
    for k in range(1, max_windings + 1):
        bound = k * ell - np.max(np.abs(dz))
        if bound > np.max(best):
            break
        for dzk in (dz + k * ell, dz - k * ell):
            best = np.minimum(best, _acosh_clip(A * np.cosh(dzk) - B))
    return best


def distance(model: FermiQuotient, p: ModelPoint, q: ModelPoint) -> float:
    return float(pair_distance(model, p.t, p.sphere, p.circle,
                               q.t, q.sphere, q.circle))


class SplitFrame:
    """Point lift and orthonormal tangent basis in split coordinates.

    ``basis`` rows are (plus, minus, Y...) for each of the n+1 tangent
    directions; row 0 is the scan axis.  At a core point the axis is the
    core direction (the minimizing set there is an exact latitude band
    about it); elsewhere it is the outward radial direction.
    """

    def __init__(self, model: FermiQuotient, p: ModelPoint):
        self.model = model
        self.p = p
        n = model.n
        t, w, z = p.t, p.sphere, model.lam * p.circle
        ez, emz = math.exp(z), math.exp(-z)
        self.P = np.concatenate([[math.cosh(t) * ez, math.cosh(t) * emz],
                                 math.sinh(t) * w])
        core_dir = np.concatenate([[ez, -emz], np.zeros(n)])
        if t < 1e-14:
            rows = [core_dir] + [np.concatenate([[0.0, 0.0], e]) for e in np.eye(n)]
        else:
            radial = np.concatenate([[math.sinh(t) * ez, math.sinh(t) * emz],
                                     math.cosh(t) * w])
            sph = []
            for e in np.eye(n):
                v = e - (e @ w) * w
                for b in sph:
                    v = v - (v @ b) * b
                nv = np.linalg.norm(v)
                if nv > 1e-8:
                    sph.append(v / nv)
            rows = [radial] + [np.concatenate([[0.0, 0.0], b]) for b in sph] + [core_dir]
        self.basis = np.array(rows)

    def endpoint(self, coeffs: np.ndarray, s):
        """Fermi coordinates (t, w, theta) of exp(s * u), u = coeffs . basis.

        ``coeffs`` has rows of n+1 basis coefficients; ``s`` broadcasts.
        """
        coeffs = np.atleast_2d(np.asarray(coeffs, dtype=float))
        s = np.broadcast_to(np.asarray(s, dtype=float), coeffs.shape[:-1])
        U = coeffs @ self.basis
        E = np.cosh(s)[..., None] * self.P + np.sinh(s)[..., None] * U
        plus, minus, Y = E[..., 0], E[..., 1], E[..., 2:]
        sh2 = np.maximum(plus * minus - 1.0, 0.0)
        tE = np.arcsinh(np.sqrt(sh2))
        norm = np.sqrt(np.sum(Y * Y, axis=-1))
        safe = np.where(norm == 0, 1.0, norm)
        wE = Y / safe[..., None]
        degenerate = norm == 0
        if np.any(degenerate):
            fill = np.zeros(self.model.n)
            fill[0] = 1.0
            wE = np.where(degenerate[..., None], fill, wE)
        zE = 0.5 * np.log(plus / minus)
        thE = zE / self.model.lam
        return tE, wE, thE


def minimizing_mask(model: FermiQuotient, frame: SplitFrame, coeffs, s,
                    tol: float = 1e-7):
    """True where the cover geodesic with basis coefficients ``coeffs`` is
    still minimizing in the quotient at arc length s.

    The cover geodesic realises length s to its endpoint, so it is
    minimizing exactly when the quotient distance (minimum over all deck
    lifts, its own included) is >= s - tol.
    """
    p = frame.p
    tE, wE, thE = frame.endpoint(coeffs, s)
    d = pair_distance(model, p.t, p.sphere, p.circle, tE, wE, thE)
    return d >= np.broadcast_to(np.asarray(s, dtype=float), d.shape) - tol


def min_direction_measure(model: FermiQuotient, p: ModelPoint, t: float,
                          n_cols: int = 160, n_lat: int = 256,
                          tol: float = 1e-7):
    """Measure (and error estimate) of the set of unit directions at p whose
    geodesic is still minimizing at radius t.  Dimension n = 2 only.

    Scans columns of constant azimuth about the frame axis, locates every
    transition of the minimizing indicator along the polar angle by
    bisection, and accumulates exact cos-differences per included segment.
    """
    if model.n != 2:
        raise NotImplementedError("direction-measure scan implemented for n = 2")
    frame = SplitFrame(model, p)

    def sigma(cols: int) -> float:
        zeta = (np.arange(cols) + 0.5) * (2 * math.pi / cols)
        nu = (np.arange(n_lat) + 0.5) * (math.pi / n_lat)
        cz, sz = np.cos(zeta), np.sin(zeta)
        cn, sn = np.cos(nu), np.sin(nu)
        coeffs = np.zeros((cols, n_lat, 3))
        coeffs[..., 0] = cn[None, :]
        coeffs[..., 1] = sn[None, :] * cz[:, None]
        coeffs[..., 2] = sn[None, :] * sz[:, None]
        mask = minimizing_mask(model, frame, coeffs.reshape(-1, 3), t, tol)
        mask = mask.reshape(cols, n_lat)
        edges_nu = np.arange(n_lat + 1) * (math.pi / n_lat)
        cell = np.cos(edges_nu[:-1]) - np.cos(edges_nu[1:])
        total = np.sum(mask * cell[None, :], axis=1)
        flip = mask[:, :-1] != mask[:, 1:]
        col_idx, lat_idx = np.nonzero(flip)
        if len(col_idx) > 0:
            lo = nu[lat_idx].copy()
            hi = nu[lat_idx + 1].copy()
            state_lo = mask[col_idx, lat_idx]
            cz_e, sz_e = cz[col_idx], sz[col_idx]
            for _ in range(44):
                mid = 0.5 * (lo + hi)
                cm = np.column_stack([np.cos(mid), np.sin(mid) * cz_e,
                                      np.sin(mid) * sz_e])
                mstate = minimizing_mask(model, frame, cm, t, tol)
                same = mstate == state_lo
                lo = np.where(same, mid, lo)
                hi = np.where(same, hi, mid)
            star = 0.5 * (lo + hi)
            cell_edge = edges_nu[lat_idx + 1]
            corr = np.where(state_lo,
                            np.cos(cell_edge) - np.cos(star),   # in -> out
                            np.cos(star) - np.cos(cell_edge))   # out -> in
            np.add.at(total, col_idx, corr)
        return float(np.sum(total) * (2 * math.pi / cols))

    val = sigma(n_cols)
    coarse = sigma(max(8, n_cols // 2))
    err = abs(val - coarse) / 3.0 + 4 * math.pi * 1e-12
    return val, err


def montecarlo_direction_measure(model: FermiQuotient, p: ModelPoint, t: float,
                                 n_samples: int, rng: np.random.Generator,
                                 tol: float = 1e-7):
    """Monte-Carlo estimate of the minimizing-direction measure (oracle)."""
    frame = SplitFrame(model, p)
    g = rng.normal(size=(n_samples, model.n + 1))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    frac = 0.0
    chunk = 200_000
    hits = 0
    for i in range(0, n_samples, chunk):
        hits += int(np.sum(minimizing_mask(model, frame, g[i:i + chunk], t, tol)))
    frac = hits / n_samples
    total = 2.0 * math.pi ** ((model.n + 1) / 2) / math.gamma((model.n + 1) / 2)
    err = total * math.sqrt(max(frac * (1 - frac), 1e-12) / n_samples)
    return total * frac, err
