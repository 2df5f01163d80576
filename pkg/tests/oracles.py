"""Independent reference computations used by the test suite only.

The enclosing-ball oracle enumerates every candidate center instead of
recursing: the optimal center is the circumcenter of its support set, and
the support has between 2 and dim+1 affinely independent points, so
checking the covering radius of every subset circumcenter and taking the
minimum is exhaustive.  Quadratic-to-quartic in the point count, which is
fine for the small clouds the tests use.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def brute_force_mecb(points) -> tuple[np.ndarray, float]:
    """Minimum enclosing ball by exhaustive search over support subsets."""
    pts = np.asarray(points, dtype=float)
    m, dim = pts.shape
    if m == 1:
        return pts[0].copy(), 0.0

    centers = [pts.mean(axis=0)]  # fallback candidate, never optimal for m >= 2
    for size in range(2, dim + 2):
        if size > m:
            break
        idx = np.array(list(combinations(range(m), size)), dtype=int)
        base = pts[idx[:, 0]]
        span = pts[idx[:, 1:]] - base[:, None, :]
        gram = span @ span.transpose(0, 2, 1)
        rhs = 0.5 * np.einsum("nij,nij->ni", span, span)
        dets = np.abs(np.linalg.det(gram))
        scale = np.maximum(
            np.einsum("nii->ni", gram).max(axis=1) ** (size - 1), 1e-300
        )
        keep = dets > 1e-12 * scale
        if not np.any(keep):
            continue
        coeff = np.linalg.solve(gram[keep], rhs[keep][..., None])[..., 0]
        centers.append(base[keep] + np.einsum("ni,nij->nj", coeff, span[keep]))

    candidates = np.vstack([np.atleast_2d(c) for c in centers])
    covering = np.linalg.norm(candidates[:, None, :] - pts[None, :, :], axis=2).max(axis=1)
    best = int(np.argmin(covering))
    return candidates[best].copy(), float(covering[best])
