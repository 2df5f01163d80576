"""Planar domain descriptions and the geometry behind the eigenvalue bounds.

A domain enters the toolkit as a DomainSpec: an explicit polygon, a named
boundary sampler (unit_disc, half_disc, tan_disc), or one of the built-in
presets.  Geometry consumers need two numbers from it, the diameter d and
the radius R of the smallest enclosing ball, plus an ordered boundary loop
for meshing.  Boundary loops carry their curve parameterization so mesh
refinement can place new boundary vertices on the exact curve instead of
on chords.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

_MAX_BALL_DIM = 8
_CONTAIN_SLACK = 1e-11  # multiplicative slack for enclosing-ball membership


@dataclass(frozen=True, eq=False)
class Ball:
    """A closed Euclidean ball given by center and radius."""

    center: np.ndarray
    radius: float

    def contains(self, point: np.ndarray, slack: float = _CONTAIN_SLACK) -> bool:
        d2 = float(np.dot(point - self.center, point - self.center))
        return d2 <= self.radius * self.radius * (1.0 + slack) + 1e-30


@dataclass(frozen=True, eq=False)
class DomainSpec:
    """Description of a bounded planar domain plus user-declared metadata.

    Metadata fields (symmetry_center, qc_coefficient, star_beta, convex,
    norm_sq) are assertions by the caller, never derived from the shape;
    the bounds module only uses a bound family when its metadata is
    present.  anchor is a point the domain is star-shaped with respect to,
    used as the fan center when meshing.
    """

    kind: str  # "polygon" or "sampler"
    dim: int = 2
    vertices: np.ndarray | None = None
    name: str | None = None
    samples: int = 256
    symmetry_center: np.ndarray | None = None
    qc_coefficient: float | None = None
    star_beta: float | None = None
    convex: bool | None = None
    norm_sq: float | None = None
    norm_source: str | None = None
    anchor: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("polygon", "sampler"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if not isinstance(self.dim, int) or self.dim < 2:
            raise ValueError(f"dim must be an integer >= 2, got {self.dim!r}")
        if self.kind == "polygon":
            if self.vertices is None:
                raise ValueError("polygon spec needs vertices")
            verts = np.asarray(self.vertices, dtype=float)
            if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
                raise ValueError("vertices must be an (m, 2) array with m >= 3")
            if not np.all(np.isfinite(verts)):
                raise ValueError("vertices must be finite")
            if np.any(np.all(verts == np.roll(verts, -1, axis=0), axis=1)):
                raise ValueError("polygon has a repeated consecutive vertex")
            if abs(_shoelace(verts)) < 1e-14:
                raise ValueError("polygon has zero area")
            if _shoelace(verts) < 0.0:
                verts = verts[::-1].copy()  # normalize to counterclockwise
            if not _polygon_is_simple(verts):
                raise ValueError("polygon boundary is self-intersecting")
            object.__setattr__(self, "vertices", verts)
        else:
            if self.name not in _SAMPLER_FAMILIES:
                known = ", ".join(sorted(_SAMPLER_FAMILIES))
                raise ValueError(f"unknown sampler {self.name!r}; known: {known}")
            if not isinstance(self.samples, int) or self.samples < 3:
                raise ValueError(f"samples must be an integer >= 3, got {self.samples!r}")
        for attr in ("symmetry_center", "anchor"):
            value = getattr(self, attr)
            if value is not None:
                arr = np.asarray(value, dtype=float)
                if arr.shape != (2,) or not np.all(np.isfinite(arr)):
                    raise ValueError(f"{attr} must be a finite 2-vector")
                object.__setattr__(self, attr, arr)
        if self.qc_coefficient is not None and not self.qc_coefficient >= 1.0:
            raise ValueError("qc_coefficient must be >= 1")
        if self.star_beta is not None and not 0.0 <= self.star_beta < 1.0:
            raise ValueError("beta must lie in [0, 1)")
        if self.norm_sq is not None and not self.norm_sq >= 1.0:
            raise ValueError("norm_sq must be >= 1")


def _shoelace(verts: np.ndarray) -> float:
    x, y = verts[:, 0], verts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_area(verts: Sequence[Sequence[float]]) -> float:
    """Signed shoelace area of a closed polygon given by its vertex loop."""
    return _shoelace(np.asarray(verts, dtype=float))


def _segments_properly_cross(p, q, r, s) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(p, q, r), orient(p, q, s)
    d3, d4 = orient(r, s, p), orient(r, s, q)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0:
        return True
    # collinear overlap counts as a crossing too
    for a, b, c, dd in ((p, q, r, d1), (p, q, s, d2), (r, s, p, d3), (r, s, q, d4)):
        if dd == 0:
            lo = min(a[0], b[0]), min(a[1], b[1])
            hi = max(a[0], b[0]), max(a[1], b[1])
            if lo[0] <= c[0] <= hi[0] and lo[1] <= c[1] <= hi[1]:
                if not (np.array_equal(c, a) or np.array_equal(c, b)):
                    return True
    return False


def _polygon_is_simple(verts: np.ndarray) -> bool:
    m = len(verts)
    for i in range(m):
        a, b = verts[i], verts[(i + 1) % m]
        for j in range(i + 1, m):
            if j == i or (j + 1) % m == i or (i + 1) % m == j:
                continue  # adjacent edges share an endpoint by design
            c, d = verts[j], verts[(j + 1) % m]
            if _segments_properly_cross(a, b, c, d):
                return False
    return True


# ---------------------------------------------------------------------------
# boundary samplers

def _circle_curve(s: float) -> np.ndarray:
    t = 2.0 * math.pi * s
    return np.array([math.cos(t), math.sin(t)])


def _tan_disc_curve(s: float) -> np.ndarray:
    w = cmath.tan(cmath.exp(2.0j * math.pi * s))
    return np.array([w.real, w.imag])


_HALF_DISC_ARC_FRAC = math.pi / (math.pi + 2.0)


def _half_disc_curve(s: float) -> np.ndarray:
    # lower half of the unit disc; loop = lower arc then the diameter
    s = s % 1.0
    if s < _HALF_DISC_ARC_FRAC:
        theta = math.pi * (1.0 + s / _HALF_DISC_ARC_FRAC)
        return np.array([math.cos(theta), math.sin(theta)])
    u = (s - _HALF_DISC_ARC_FRAC) / (1.0 - _HALF_DISC_ARC_FRAC)
    return np.array([1.0 - 2.0 * u, 0.0])


# each family: (curve, breakpoints in s that samples must land on exactly)
_SAMPLER_FAMILIES: dict[str, tuple[Callable[[float], np.ndarray], tuple[float, ...]]] = {
    "unit_disc": (_circle_curve, (0.0,)),
    "tan_disc": (_tan_disc_curve, (0.0,)),
    "half_disc": (_half_disc_curve, (0.0, _HALF_DISC_ARC_FRAC)),
}


def _polygon_loop(verts: np.ndarray, m: int | None):
    """Arclength parameterization of a polygon loop, optionally densified."""
    edges = np.roll(verts, -1, axis=0) - verts
    lengths = np.linalg.norm(edges, axis=1)
    total = float(lengths.sum())
    starts = np.concatenate(([0.0], np.cumsum(lengths)[:-1])) / total
    nv = len(verts)

    def curve(s: float) -> np.ndarray:
        s = s % 1.0
        i = int(np.searchsorted(starts, s, side="right")) - 1
        u = (s - starts[i]) * total / lengths[i]
        return verts[i] + u * edges[i]

    if m is None or m <= nv:
        return verts.copy(), starts.copy(), curve
    # distribute extra samples over edges proportionally to length
    extra = m - nv
    alloc = np.floor(lengths / total * extra).astype(int)
    for _ in range(extra - int(alloc.sum())):
        alloc[int(np.argmax(lengths / (alloc + 1)))] += 1
    params = []
    for i in range(nv):
        span = (starts[(i + 1)] if i + 1 < nv else 1.0) - starts[i]
        for j in range(alloc[i] + 1):
            params.append(starts[i] + span * j / (alloc[i] + 1))
    params = np.array(params)
    points = np.array([curve(s) for s in params])
    return points, params, curve


def boundary_loop(spec: DomainSpec, m: int | None = None):
    """Ordered boundary samples of a domain.

    Returns (points, params, curve): an (m, 2) array of counterclockwise
    boundary points, their curve parameters in [0, 1), and the exact curve
    as a callable.  Sampler breakpoints (polygon vertices, the half-disc
    corners) are always included so no corner gets rounded off.
    """
    if spec.kind == "polygon":
        return _polygon_loop(spec.vertices, m)
    curve, breaks = _SAMPLER_FAMILIES[spec.name]
    m = spec.samples if m is None else int(m)
    if m < 3:
        raise ValueError(f"need at least 3 boundary samples, got {m}")
    pieces = list(breaks) + [1.0]
    params: list[float] = []
    for i in range(len(pieces) - 1):
        lo, hi = pieces[i], pieces[i + 1]
        count = max(1, round(m * (hi - lo)))
        if i == len(pieces) - 2:
            count = max(1, m - len(params))
        params.extend(lo + (hi - lo) * j / count for j in range(count))
    arr = np.array(params[:m])
    points = np.array([curve(s) for s in arr])
    return points, arr, curve


def sample_domain(spec: DomainSpec, m: int | None = None) -> np.ndarray:
    """Deterministic boundary point cloud for a domain spec.

    Polygons yield their vertices (densified along edges when m exceeds the
    vertex count); samplers yield m points on the exact boundary curve.
    """
    points, _, _ = boundary_loop(spec, m)
    return points


# ---------------------------------------------------------------------------
# diameter and smallest enclosing ball

def diameter(points: Sequence[Sequence[float]]) -> float:
    """Largest pairwise distance over a point cloud, by exhaustive scan.

    Chunked so memory stays bounded for large clouds; in the plane a convex
    hull prefilter keeps big inputs fast without changing the result.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("points must be a nonempty (m, dim) array")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    if len(pts) < 2:
        return 0.0
    if pts.shape[1] == 2 and len(pts) > 512:
        try:
            from scipy.spatial import ConvexHull

            pts = pts[ConvexHull(pts).vertices]
        except Exception:
            pass  # degenerate cloud; fall back to the full scan
    m, dim = pts.shape
    best = 0.0
    chunk = max(1, int(4_000_000 // (m * dim)) or 1)
    for i0 in range(0, m, chunk):
        diff = pts[i0 : i0 + chunk, None, :] - pts[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        best = max(best, float(d2.max()))
    return math.sqrt(best)


def _ball_of_support(pts: np.ndarray, support: list[int]) -> Ball | None:
    """Smallest ball with the given affinely independent points on its surface."""
    if not support:
        return None
    q = pts[support]
    if len(support) == 1:
        return Ball(q[0].copy(), 0.0)
    u = q[1:] - q[0]
    gram = u @ u.T
    b = 0.5 * np.einsum("ij,ij->i", u, u)
    try:
        coef = np.linalg.solve(gram, b)
    except np.linalg.LinAlgError:
        coef = np.linalg.lstsq(gram, b, rcond=None)[0]
    center = q[0] + coef @ u
    radius = float(np.linalg.norm(center - q[0]))
    return Ball(center, radius)


def _welzl_mtf(pts: np.ndarray, order: list[int], end: int, support: list[int]) -> Ball | None:
    ball = _ball_of_support(pts, support)
    if len(support) == pts.shape[1] + 1:
        return ball
    i = 0
    while i < end:
        p = order[i]
        if ball is None or not ball.contains(pts[p]):
            ball = _welzl_mtf(pts, order, i, support + [p])
            order.insert(0, order.pop(i))
        i += 1
    return ball


def min_enclosing_ball(points: Sequence[Sequence[float]], seed: int = 0) -> Ball:
    """Smallest enclosing ball of a finite point cloud, dimensions 2 through 8.

    Move-to-front Welzl over a seeded shuffle of the input order; recursion
    depth is bounded by dim + 2 regardless of cloud size, and a fixed seed
    makes the run fully reproducible.  The returned ball is the exact
    optimum up to roundoff: at most dim + 1 support points determine it.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("points must be a nonempty (m, dim) array")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    dim = pts.shape[1]
    if not 1 <= dim <= _MAX_BALL_DIM:
        raise ValueError(f"dimension must be between 1 and {_MAX_BALL_DIM}, got {dim}")
    rng = np.random.default_rng(seed)
    order = list(rng.permutation(len(pts)))
    ball = _welzl_mtf(pts, order, len(order), [])
    if ball is None:  # m >= 1, so this cannot happen
        raise RuntimeError("unreachable: empty support for nonempty cloud")
    return ball


# ---------------------------------------------------------------------------
# presets and JSON loading

_PHI_K = (3.0 + math.sqrt(5.0)) / 2.0  # largest distortion of the shear pieces

_BOWTIE_VERTICES = np.array(
    [
        [-0.5, 0.0],
        [0.0, 0.5],
        [0.5, 0.0],
        [0.5, 1.0],
        [0.0, 1.5],
        [-0.5, 1.0],
    ]
)


def _presets() -> dict[str, DomainSpec]:
    return {
        # two sheared unit squares glued along x = 0; piecewise-affine image
        # of a square, quasidisc coefficient (3 + sqrt 5)/2
        "bowtie": DomainSpec(
            kind="polygon",
            vertices=_BOWTIE_VERTICES,
            name="bowtie",
            qc_coefficient=_PHI_K,
            convex=False,
            anchor=np.array([0.0, 1.0]),
        ),
        "unit_disc": DomainSpec(
            kind="sampler",
            name="unit_disc",
            samples=256,
            symmetry_center=np.array([0.0, 0.0]),
            qc_coefficient=1.0,
            convex=True,
            anchor=np.array([0.0, 0.0]),
        ),
        # lower half of the unit disc; even reflection across the diameter
        # extends H^1 functions with energy factor exactly 2
        "half_disc": DomainSpec(
            kind="sampler",
            name="half_disc",
            samples=256,
            convex=True,
            norm_sq=2.0,
            norm_source="mirror reflection",
            anchor=np.array([0.0, -0.4]),
        ),
        # image of the unit disc under tan; odd map, so centrally symmetric,
        # and (1/2)-star-shaped about the origin
        "tan_disc": DomainSpec(
            kind="sampler",
            name="tan_disc",
            samples=4096,
            symmetry_center=np.array([0.0, 0.0]),
            star_beta=0.5,
            convex=False,
            anchor=np.array([0.0, 0.0]),
        ),
    }


def preset_names() -> tuple[str, ...]:
    """Names accepted by named_domain, sorted."""
    return tuple(sorted(_presets()))


def named_domain(name: str, **overrides) -> DomainSpec:
    """Look up a built-in example domain by name."""
    presets = _presets()
    if name not in presets:
        raise ValueError(f"unknown named domain {name!r}; known: {', '.join(sorted(presets))}")
    spec = presets[name]
    return replace(spec, **overrides) if overrides else spec


_JSON_KEYS = {
    "kind", "dim", "vertices", "name", "samples", "symmetry_center",
    "K", "beta", "convex", "norm_sq", "anchor",
}


def load_domain_spec(source) -> DomainSpec:
    """Build a DomainSpec from a JSON file path, a JSON string, or a dict.

    Schema: {"kind": "polygon" | "named" | "sampler", "dim": n,
    "vertices": [[x, y], ...], "name": ..., "samples": m} plus optional
    metadata keys "symmetry_center", "K", "beta", "convex", "norm_sq",
    "anchor".  "named" resolves a preset and then applies any overrides
    given alongside it.
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            with open(text, "r", encoding="utf-8") as fh:
                data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("domain spec must be a JSON object")
    unknown = set(data) - _JSON_KEYS
    if unknown:
        raise ValueError(f"unknown domain spec keys: {sorted(unknown)}")
    kind = data.get("kind")
    if kind == "named":
        if "name" not in data:
            raise ValueError('kind "named" requires a "name"')
        overrides = {}
        if "samples" in data:
            overrides["samples"] = int(data["samples"])
        if "anchor" in data:
            overrides["anchor"] = np.asarray(data["anchor"], dtype=float)
        if "dim" in data:
            overrides["dim"] = int(data["dim"])
        return named_domain(data["name"], **overrides)
    if kind not in ("polygon", "sampler"):
        raise ValueError(f'kind must be "polygon", "sampler" or "named", got {kind!r}')
    kwargs: dict = {"kind": kind}
    if "dim" in data:
        kwargs["dim"] = int(data["dim"])
    if "vertices" in data:
        kwargs["vertices"] = np.asarray(data["vertices"], dtype=float)
    if "name" in data:
        kwargs["name"] = data["name"]
    if "samples" in data:
        kwargs["samples"] = int(data["samples"])
    if "symmetry_center" in data:
        kwargs["symmetry_center"] = np.asarray(data["symmetry_center"], dtype=float)
    if "K" in data:
        kwargs["qc_coefficient"] = float(data["K"])
    if "beta" in data:
        kwargs["star_beta"] = float(data["beta"])
    if "convex" in data:
        if not isinstance(data["convex"], bool):
            raise ValueError('"convex" must be a JSON boolean')
        kwargs["convex"] = data["convex"]
    if "norm_sq" in data:
        kwargs["norm_sq"] = float(data["norm_sq"])
        kwargs["norm_source"] = "declared in spec"
    if "anchor" in data:
        kwargs["anchor"] = np.asarray(data["anchor"], dtype=float)
    return DomainSpec(**kwargs)
