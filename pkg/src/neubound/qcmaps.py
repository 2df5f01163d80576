"""Quasiconformality coefficients of the maps used to build example domains.

For an orientation-preserving linear map with matrix D acting on the plane,
the distortion is K = lambda_max(D D^T) / det D >= 1, with equality exactly
for conformal (similarity) maps.  A piecewise-affine homeomorphism is
K-quasiconformal with K the worst distortion over its pieces.  Two families
with known coefficients are provided: boundary graphs of beta-Hoelder cusps
("star-shaped" with exponent beta) and their logarithmic-spiral twists.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np


def affine_qc_coefficient(matrix: Sequence[Sequence[float]]) -> float:
    """Distortion K of an orientation-preserving linear map of the plane."""
    d = np.asarray(matrix, dtype=float)
    if d.shape != (2, 2) or not np.all(np.isfinite(d)):
        raise ValueError("matrix must be a finite 2x2 array")
    det = float(d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0])
    if det <= 0.0:
        raise ValueError(f"map must preserve orientation: det = {det}")
    # split into rotation-scaling and reflection-scaling parts; the singular
    # values are q +- r, so K = s_max / s_min = lambda_max(D D^T) / det.
    # The usual trace/discriminant route cancels catastrophically near
    # conformal maps; this form returns exactly 1 for similarities.
    q = math.hypot(0.5 * (d[0, 0] + d[1, 1]), 0.5 * (d[1, 0] - d[0, 1]))
    r = math.hypot(0.5 * (d[0, 0] - d[1, 1]), 0.5 * (d[1, 0] + d[0, 1]))
    return (q + r) / (q - r)


def piecewise_qc_coefficient(matrices: Iterable[Sequence[Sequence[float]]]) -> float:
    """Distortion of a piecewise-affine map: the maximum over its pieces."""
    coefficients = [affine_qc_coefficient(m) for m in matrices]
    if not coefficients:
        raise ValueError("need at least one affine piece")
    return max(coefficients)


def star_shaped_K(beta: float) -> float:
    """Quasidisc coefficient of a beta-star-shaped domain, 0 <= beta < 1.

    K = cot^2((1 - beta) pi / 4); beta = 0 gives the conformal value 1.
    """
    if not (isinstance(beta, (int, float)) and math.isfinite(beta)):
        raise ValueError(f"beta must be a finite number, got {beta!r}")
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must lie in [0, 1), got {beta}")
    angle = 0.25 * math.pi * (1.0 - beta)
    c = math.tan(angle)
    return 1.0 / (c * c)


def spiral_shaped_K(beta: float, gamma: float) -> float:
    """Quasidisc coefficient of a beta-spiral-shaped domain with twist gamma.

    Valid only for |gamma| < beta pi / 2; the twist does not worsen the
    coefficient, so the value coincides with star_shaped_K(beta).
    """
    if not (isinstance(gamma, (int, float)) and math.isfinite(gamma)):
        raise ValueError(f"gamma must be a finite number, got {gamma!r}")
    k = star_shaped_K(beta)  # validates beta as a side effect
    if not abs(gamma) < 0.5 * math.pi * beta:
        raise ValueError(
            f"twist gamma={gamma} needs |gamma| < beta pi/2 = {0.5 * math.pi * beta}"
        )
    return k
