"""P1 finite-element Neumann eigenvalues, used to audit the lower bounds.

Meshing is deliberately simple: fan out from an anchor the domain is
star-shaped about, then refine uniformly, projecting each new boundary
vertex onto the exact boundary curve via the parameterization carried by
the boundary loop.  Conforming P1 elements over-approximate Neumann
eigenvalues, so a mesh eigenvalue below a claimed lower bound is a hard
contradiction; that is the check verify_bound runs.

Assembly uses the classic per-triangle formulas: with edge coefficients
b_i = y_j - y_k and c_i = x_k - x_j (cyclic), the stiffness block is
(b b^T + c c^T) / (4 area) and the consistent mass block is
(area / 12) (1 + delta_ij).  Stiffness rows sum to zero (constants cost
no energy) and the total mass equals the mesh area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from . import bounds as bounds_mod
from . import geometry
from .errors import NumericalError

_MAX_REFINEMENT = 8
_MAX_DOF = 20_000
_MAX_EIGS = 10
_DENSE_DOF_LIMIT = 1800
_MIN_TRIANGLE_DOUBLE_AREA = 2e-14
_SAMPLER_MESH_BOUNDARY = 96  # refinement doubles boundary resolution per level


@dataclass(frozen=True, eq=False)
class Mesh:
    """A conforming triangle mesh: vertices, positively oriented triangles,
    and a boundary-vertex mask."""

    vertices: np.ndarray  # (nv, 2) float
    triangles: np.ndarray  # (nt, 3) int
    boundary: np.ndarray  # (nv,) bool

    @property
    def dof_count(self) -> int:
        return int(len(self.vertices))

    @property
    def mesh_size(self) -> float:
        v, t = self.vertices, self.triangles
        h = 0.0
        for a, b in ((0, 1), (1, 2), (2, 0)):
            edge = v[t[:, a]] - v[t[:, b]]
            h = max(h, float(np.sqrt((edge * edge).sum(axis=1)).max()))
        return h


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending Neumann eigenvalues of a mesh with its resolution data."""

    eigenvalues: tuple[float, ...]
    mesh_size: float
    dof_count: int


def _signed_double_areas(vertices: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    p0 = vertices[triangles[:, 0]]
    u = vertices[triangles[:, 1]] - p0
    w = vertices[triangles[:, 2]] - p0
    return u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0]


def _wrap_midpoint(s_a: float, s_b: float) -> float:
    gap = (s_b - s_a) % 1.0
    if gap > 0.5:
        s_a, s_b = s_b, s_a
        gap = (s_b - s_a) % 1.0
    return (s_a + 0.5 * gap) % 1.0


def triangulate(
    spec: geometry.DomainSpec,
    anchor=None,
    refinement: int = 0,
    samples: int | None = None,
) -> Mesh:
    """Fan triangulation from a star center, uniformly refined.

    anchor defaults to the spec's anchor, else the vertex centroid for
    polygons and the origin for samplers; the domain must be star-shaped
    about it, and a fan triangle folding over is reported with its
    boundary index.  Each refinement splits every triangle in four; new
    vertices on boundary edges are placed on the exact boundary curve at
    the parameter midpoint, so curved domains are tracked and straight
    edges are simply halved.  For sampler domains the initial boundary
    resolution defaults to min(spec.samples, 96); pass samples to override.
    """
    if not isinstance(refinement, int) or not 0 <= refinement <= _MAX_REFINEMENT:
        raise ValueError(f"refinement must be an integer in [0, {_MAX_REFINEMENT}], got {refinement!r}")
    if spec.kind == "sampler" and samples is None:
        samples = min(spec.samples, _SAMPLER_MESH_BOUNDARY)
    points, params, curve = geometry.boundary_loop(spec, samples)
    m = len(points)

    if anchor is None:
        anchor = spec.anchor
    if anchor is None:
        anchor = points.mean(axis=0) if spec.kind == "polygon" else np.zeros(2)
    anchor = np.asarray(anchor, dtype=float)
    if anchor.shape != (2,) or not np.all(np.isfinite(anchor)):
        raise ValueError("anchor must be a finite 2-vector")

    vertices = np.vstack([anchor[None, :], points])
    triangles = np.array(
        [[0, 1 + i, 1 + (i + 1) % m] for i in range(m)], dtype=np.int64
    )
    boundary = np.zeros(len(vertices), dtype=bool)
    boundary[1:] = True
    s_param = {1 + i: float(params[i]) for i in range(m)}

    double_areas = _signed_double_areas(vertices, triangles)
    bad = np.nonzero(double_areas <= _MIN_TRIANGLE_DOUBLE_AREA)[0]
    if len(bad):
        i = int(bad[0])
        raise NumericalError(
            f"fan triangle at boundary index {i} is inverted or degenerate: "
            f"the domain is not star-shaped about anchor {anchor.tolist()}"
        )

    for _ in range(refinement):
        vertices, triangles, boundary, s_param = _refine_once(
            vertices, triangles, boundary, s_param, curve
        )

    double_areas = _signed_double_areas(vertices, triangles)
    bad = np.nonzero(double_areas <= _MIN_TRIANGLE_DOUBLE_AREA)[0]
    if len(bad):
        raise NumericalError(
            f"triangle {int(bad[0])} degenerated during refinement "
            "(boundary resolution too coarse for this curve)"
        )
    return Mesh(vertices=vertices, triangles=triangles, boundary=boundary)


def _refine_once(vertices, triangles, boundary, s_param, curve):
    new_vertices = [vertices]
    boundary_flags = list(boundary)
    next_index = len(vertices)
    midpoint_of: dict[tuple[int, int], int] = {}
    new_points: list[np.ndarray] = []
    new_s: dict[int, float] = dict(s_param)

    def midpoint(a: int, b: int) -> int:
        nonlocal next_index
        key = (a, b) if a < b else (b, a)
        found = midpoint_of.get(key)
        if found is not None:
            return found
        if boundary[a] and boundary[b]:
            # an edge between boundary vertices is a boundary arc by fan
            # construction; track the exact curve
            s_mid = _wrap_midpoint(new_s[a], new_s[b])
            point = curve(s_mid)
            boundary_flags.append(True)
            new_s[next_index] = s_mid
        else:
            point = 0.5 * (vertices[a] + vertices[b])
            boundary_flags.append(False)
        new_points.append(np.asarray(point, dtype=float))
        midpoint_of[key] = next_index
        next_index += 1
        return next_index - 1

    children = np.empty((4 * len(triangles), 3), dtype=np.int64)
    for i, (v0, v1, v2) in enumerate(triangles):
        m01 = midpoint(int(v0), int(v1))
        m12 = midpoint(int(v1), int(v2))
        m20 = midpoint(int(v2), int(v0))
        children[4 * i] = (v0, m01, m20)
        children[4 * i + 1] = (v1, m12, m01)
        children[4 * i + 2] = (v2, m20, m12)
        children[4 * i + 3] = (m01, m12, m20)

    if new_points:
        new_vertices.append(np.vstack(new_points))
    return (
        np.vstack(new_vertices),
        children,
        np.array(boundary_flags, dtype=bool),
        new_s,
    )


def assemble(mesh: Mesh):
    """Stiffness and consistent mass matrices (CSR) for P1 elements."""
    v, t = mesh.vertices, mesh.triangles
    if t.ndim != 2 or t.shape[1] != 3 or len(t) == 0:
        raise ValueError("mesh has no triangles")
    double_area = _signed_double_areas(v, t)
    bad = np.nonzero(double_area <= _MIN_TRIANGLE_DOUBLE_AREA)[0]
    if len(bad):
        raise NumericalError(f"triangle {int(bad[0])} has non-positive area")

    p0, p1, p2 = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    b = np.stack([p1[:, 1] - p2[:, 1], p2[:, 1] - p0[:, 1], p0[:, 1] - p1[:, 1]], axis=1)
    c = np.stack([p2[:, 0] - p1[:, 0], p0[:, 0] - p2[:, 0], p1[:, 0] - p0[:, 0]], axis=1)
    k_local = (b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :]) / (
        2.0 * double_area
    )[:, None, None]
    m_pattern = (np.ones((3, 3)) + np.eye(3)) / 24.0
    m_local = double_area[:, None, None] * m_pattern[None, :, :]

    rows = np.repeat(t, 3, axis=1).ravel()
    cols = np.tile(t, (1, 3)).ravel()
    nv = len(v)
    stiffness = scipy.sparse.coo_matrix(
        (k_local.ravel(), (rows, cols)), shape=(nv, nv)
    ).tocsr()
    mass = scipy.sparse.coo_matrix(
        (m_local.ravel(), (rows, cols)), shape=(nv, nv)
    ).tocsr()
    return stiffness, mass


def neumann_eigenvalues(mesh: Mesh, k: int = 6) -> SpectrumResult:
    """The k smallest Neumann eigenvalues of a mesh, ascending.

    The first is always ~0 (constants); the second is the mesh's mu_1,
    an over-approximation of the true mu_1 that decreases under
    refinement.  Dense solve below 1800 unknowns, shift-invert Lanczos
    with a fixed starting vector above; both are deterministic.
    """
    if not isinstance(k, int) or not 2 <= k <= _MAX_EIGS:
        raise ValueError(f"k must be an integer in [2, {_MAX_EIGS}], got {k!r}")
    nv = mesh.dof_count
    if nv > _MAX_DOF:
        raise ValueError(f"mesh has {nv} unknowns, above the supported {_MAX_DOF}")
    if k >= nv:
        raise ValueError(f"k={k} needs a mesh with more than {k} vertices")
    stiffness, mass = assemble(mesh)

    if nv <= _DENSE_DOF_LIMIT:
        vals = scipy.linalg.eigh(
            stiffness.toarray(),
            mass.toarray(),
            subset_by_index=[0, k - 1],
            eigvals_only=True,
        )
    else:
        center = mesh.vertices.mean(axis=0)
        spread = float(np.linalg.norm(mesh.vertices - center, axis=1).max())
        sigma = -0.2 * (1.8412 / max(spread, 1e-9)) ** 2
        rng = np.random.default_rng(0)
        v0 = rng.standard_normal(nv)
        try:
            vals = scipy.sparse.linalg.eigsh(
                stiffness,
                k=k,
                M=mass,
                sigma=sigma,
                which="LM",
                v0=v0,
                maxiter=2000,
                return_eigenvectors=False,
            )
        except scipy.sparse.linalg.ArpackNoConvergence as exc:
            raise NumericalError(f"eigenvalue iteration did not converge: {exc}") from exc
    vals = np.sort(np.asarray(vals, dtype=float))[:k]

    lam0, lam1 = vals[0], vals[1]
    if not (lam1 > 0.0 and abs(lam0) < 1e-8 * max(lam1, 1.0)):
        raise NumericalError(
            f"spectrum lacks the constant mode: lambda_0={lam0}, lambda_1={lam1}"
        )
    return SpectrumResult(
        eigenvalues=tuple(float(x) for x in vals),
        mesh_size=mesh.mesh_size,
        dof_count=nv,
    )


def rayleigh_quotient(mesh: Mesh, nodal_values) -> float:
    """Gradient-energy over mass quotient u^T K u / u^T M u of a P1 function.

    After M-orthogonalizing against constants, the quotient of any nonzero
    u is an upper bound for the mesh's mu_1; for raw u it is 0 exactly
    when u is constant.
    """
    u = np.asarray(nodal_values, dtype=float)
    if u.shape != (mesh.dof_count,):
        raise ValueError(
            f"nodal_values must have shape ({mesh.dof_count},), got {u.shape}"
        )
    if not np.all(np.isfinite(u)):
        raise ValueError("nodal_values must be finite")
    stiffness, mass = assemble(mesh)
    denom = float(u @ (mass @ u))
    if denom <= 0.0:
        raise ValueError("nodal_values is (numerically) the zero function")
    return float(u @ (stiffness @ u)) / denom


def verify_bound(
    spec: geometry.DomainSpec,
    refinement: int = 4,
    k: int = 4,
    samples: int | None = None,
    fem_samples: int | None = None,
    strict: bool = True,
) -> dict:
    """Check every applicable lower bound for a domain against the mesh mu_1.

    Conforming elements cannot undershoot the true eigenvalue, so any
    applicable bound at or above the mesh's mu_1 disproves the bound (or
    the metadata it came from).  With strict=True such a violation raises
    NumericalError; the returned record carries per-bound margins either
    way.  samples feeds the geometry cloud, fem_samples the mesh boundary.
    """
    if spec.dim != 2:
        raise ValueError("finite-element verification is planar: spec.dim must be 2")
    report = bounds_mod.best_bound_report(spec, n=2, samples=samples)
    mesh = triangulate(spec, refinement=refinement, samples=fem_samples)
    spectrum = neumann_eigenvalues(mesh, k=k)
    fem_mu1 = spectrum.eigenvalues[1]

    checked = []
    violations = []
    for bound in report.bounds:
        entry = bound.as_dict()
        if bound.applicable:
            margin = fem_mu1 - bound.value
            entry["margin"] = margin
            entry["satisfied"] = bool(margin > 0.0)
            if margin <= 0.0:
                violations.append(f"{bound.formula}={bound.value:.6g} vs fem mu1={fem_mu1:.6g}")
        checked.append(entry)

    record = {
        "fem_mu1": fem_mu1,
        "eigenvalues": list(spectrum.eigenvalues),
        "dof_count": spectrum.dof_count,
        "mesh_size": spectrum.mesh_size,
        "refinement": refinement,
        "geometry": report.as_dict()["geometry"],
        "bounds": checked,
        "best": report.best,
        "improves_on_payne_weinberger": report.pw_comparison,
        "notes": list(report.notes),
        "all_satisfied": not violations,
    }
    if strict and violations:
        raise NumericalError(
            "lower bound exceeds the finite-element eigenvalue: " + "; ".join(violations)
        )
    return record
