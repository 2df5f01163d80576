"""Lower bounds for the first nontrivial Neumann eigenvalue mu_1.

All bounds share one mechanism: if E extends H^1(Omega) into a ball B of
radius R containing Omega with squared gradient-energy norm ||E||^2, then

    mu_1(Omega) >= (p_{n/2} / R)^2 / ||E||^2,

where p_{n/2} = p_zero(n) and (p_{n/2}/R)^2 is mu_1 of the ball itself.
Centrally symmetric domains admit the same bound with R replaced by d/2
(half the diameter), which is never worse.  Specializations: K-quasidiscs
use ||E||^2 <= (1+K)^2, beta-star-shaped plane domains use the explicit
K(beta), and the classical pi^2/d^2 bound for convex domains serves as the
benchmark the extension route tries to beat.

best_bound_report assembles every bound a domain's declared metadata
supports, marks which ones are actual claims for this domain versus
reference values, and picks the best claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import geometry, qcmaps
from .extension_norms import ExtensionNormEstimate, quasidisc_norm_sq
from .special import p_zero

_DEDUPE_TOL = 1e-12


def ball_mu1(n: int, radius: float) -> float:
    """First nontrivial Neumann eigenvalue of a ball of given radius in R^n."""
    if not (isinstance(radius, (int, float)) and math.isfinite(radius) and radius > 0.0):
        raise ValueError(f"radius must be finite and > 0, got {radius!r}")
    p = p_zero(n)
    return (p / radius) ** 2


def extension_ball_bound(norm_sq: float, radius: float, n: int) -> float:
    """mu_1 >= p_{n/2}^2 / (||E||^2 R^2) from an extension into a ball of radius R."""
    _check_norm_sq(norm_sq)
    if not (isinstance(radius, (int, float)) and math.isfinite(radius) and radius > 0.0):
        raise ValueError(f"radius must be finite and > 0, got {radius!r}")
    return ball_mu1(n, radius) / norm_sq


def symmetric_domain_bound(norm_sq: float, diam: float, n: int) -> float:
    """The d/2 variant for centrally symmetric domains: (p/d)^2 (2/||E||)^2."""
    _check_norm_sq(norm_sq)
    if not (isinstance(diam, (int, float)) and math.isfinite(diam) and diam > 0.0):
        raise ValueError(f"diameter must be finite and > 0, got {diam!r}")
    p = p_zero(n)
    return (p / diam) ** 2 * (4.0 / norm_sq)


def quasidisc_bound(k: float, radius: float) -> float:
    """Planar K-quasidisc inside a disc of radius R: mu_1 >= (p_1/R)^2 / (1+K)^2."""
    est = quasidisc_norm_sq(k)
    return extension_ball_bound(est.value_sq, radius, 2)


def star_shaped_bound(beta: float, diam: float) -> float:
    """Planar beta-star-shaped domain: mu_1 >= 4 sin^4((1-beta) pi/4) (p_1/d)^2."""
    if not (isinstance(diam, (int, float)) and math.isfinite(diam) and diam > 0.0):
        raise ValueError(f"diameter must be finite and > 0, got {diam!r}")
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and 0.0 <= beta < 1.0):
        raise ValueError(f"beta must lie in [0, 1), got {beta!r}")
    s = math.sin(0.25 * math.pi * (1.0 - beta))
    p = p_zero(2)
    return 4.0 * s**4 * (p / diam) ** 2


def payne_weinberger_bound(diam: float) -> float:
    """Classical convex-domain bound pi^2 / d^2 (not valid without convexity)."""
    if not (isinstance(diam, (int, float)) and math.isfinite(diam) and diam > 0.0):
        raise ValueError(f"diameter must be finite and > 0, got {diam!r}")
    return (math.pi / diam) ** 2


def improvement_condition(norm_sq: float, n: int) -> bool:
    """Whether the symmetric extension bound beats pi^2/d^2: ||E|| <= 2 p_{n/2} / pi."""
    _check_norm_sq(norm_sq)
    return math.sqrt(norm_sq) <= 2.0 * p_zero(n) / math.pi


def quasi_monotonicity_upper(mu1_inner: float, norm_sq: float) -> float:
    """Upper bound mu_1(outer) <= ||E||^2 mu_1(inner) for an extending pair.

    Here `inner` is the domain the extension leaves and `outer` any
    Lipschitz domain the extension lands in; enlarging a domain can raise
    mu_1 by at most the energy factor of the extension.
    """
    _check_norm_sq(norm_sq)
    if not (isinstance(mu1_inner, (int, float)) and math.isfinite(mu1_inner) and mu1_inner >= 0.0):
        raise ValueError(f"mu1_inner must be finite and >= 0, got {mu1_inner!r}")
    return mu1_inner * norm_sq


def poincare_constant(mu1: float) -> float:
    """Best constant in ||u - mean u||_2 <= C ||grad u||_2, namely mu_1^(-1/2)."""
    if not (isinstance(mu1, (int, float)) and math.isfinite(mu1) and mu1 > 0.0):
        raise ValueError(f"mu1 must be finite and > 0, got {mu1!r}")
    return 1.0 / math.sqrt(mu1)


def _check_norm_sq(norm_sq: float) -> None:
    if not (isinstance(norm_sq, (int, float)) and math.isfinite(norm_sq) and norm_sq >= 1.0):
        raise ValueError(f"squared extension norm must be finite and >= 1, got {norm_sq!r}")


# ---------------------------------------------------------------------------
# report assembly


@dataclass(frozen=True)
class LowerBound:
    """One lower-bound candidate for a domain.

    applicable says whether the value is an actual claim about this domain
    (and so must sit below any trustworthy computation of mu_1); entries
    kept for reference only, like the convex-domain benchmark on a domain
    not declared convex, have applicable False.  eligible_for_best further
    restricts which claims compete for the headline number.
    """

    value: float
    formula: str
    inputs: dict
    applicable: bool = True
    eligible_for_best: bool = True
    note: str = ""

    def as_dict(self) -> dict:
        out = {
            "value": self.value,
            "formula": self.formula,
            "inputs": dict(self.inputs),
            "applicable": self.applicable,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class BoundReport:
    """Every bound the metadata supports, plus the headline choice."""

    bounds: list[LowerBound]
    best: int | None
    pw_comparison: bool | None
    notes: list[str] = field(default_factory=list)
    geometry: dict = field(default_factory=dict)

    def best_bound(self) -> LowerBound | None:
        return None if self.best is None else self.bounds[self.best]

    def as_dict(self) -> dict:
        return {
            "geometry": dict(self.geometry),
            "bounds": [b.as_dict() for b in self.bounds],
            "best": self.best,
            "best_value": None if self.best is None else self.bounds[self.best].value,
            "improves_on_payne_weinberger": self.pw_comparison,
            "notes": list(self.notes),
        }


def _is_duplicate(value: float, entries: list[LowerBound]) -> str | None:
    for entry in entries:
        if abs(entry.value - value) <= _DEDUPE_TOL * max(1.0, abs(entry.value)):
            return entry.formula
    return None


def best_bound_report(
    spec: geometry.DomainSpec,
    n: int | None = None,
    samples: int | None = None,
) -> BoundReport:
    """Assemble all metadata-supported lower bounds for a domain spec.

    The boundary cloud supplies the diameter d and enclosing-ball radius R.
    n defaults to the spec's dimension; passing a larger n evaluates the
    dimension-dependent constants for the analytic extension of the shape
    (the planar cross-section's d and R are used unchanged, which is only
    meaningful for axially symmetric shapes like the half-ball).
    """
    n = spec.dim if n is None else n
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n!r}")
    points = geometry.sample_domain(spec, samples)
    d = geometry.diameter(points)
    ball = geometry.min_enclosing_ball(points)
    radius = ball.radius
    if radius <= 0.0 or d <= 0.0:
        raise ValueError("domain is degenerate: zero diameter or enclosing radius")

    notes: list[str] = []
    entries: list[LowerBound] = []

    # resolve the extension norm this domain's metadata supports
    norm: ExtensionNormEstimate | None = None
    norm_formula = "extension_ball"
    if spec.norm_sq is not None:
        norm = ExtensionNormEstimate(
            spec.norm_sq, "exact", spec.norm_source or "declared norm"
        )
    elif spec.qc_coefficient is not None and n == 2:
        norm = quasidisc_norm_sq(spec.qc_coefficient)
        norm_formula = "quasidisc"
    elif spec.star_beta is not None and n == 2:
        norm = quasidisc_norm_sq(qcmaps.star_shaped_K(spec.star_beta))
        norm_formula = "quasidisc"
    elif (spec.qc_coefficient is not None or spec.star_beta is not None) and n != 2:
        notes.append("quasidisc metadata ignored: it only applies in dimension 2")

    if spec.star_beta is not None and n == 2:
        value = star_shaped_bound(spec.star_beta, d)
        entries.append(
            LowerBound(
                value,
                "star_shaped",
                {"n": 2, "d": d, "beta": spec.star_beta},
            )
        )

    if norm is not None:
        value = extension_ball_bound(norm.value_sq, radius, n)
        dup = _is_duplicate(value, entries)
        if dup is None:
            inputs = {"n": n, "R": radius, "norm_sq": norm.value_sq}
            if norm_formula == "quasidisc":
                inputs["K"] = math.sqrt(norm.value_sq) - 1.0
            entries.append(LowerBound(value, norm_formula, inputs))

        sym_value = symmetric_domain_bound(norm.value_sq, d, n)
        dup = _is_duplicate(sym_value, entries)
        if dup is None:
            declared = spec.symmetry_center is not None
            note = ""
            if not declared:
                note = (
                    "central symmetry not declared; d/2 convention shown "
                    "for comparison with published figures"
                )
                notes.append(
                    "symmetric-form bound uses d/2 in place of the enclosing radius; "
                    "it competes for best only when a symmetry center is declared"
                )
            entries.append(
                LowerBound(
                    sym_value,
                    "symmetric_extension",
                    {"n": n, "d": d, "norm_sq": norm.value_sq},
                    eligible_for_best=declared,
                    note=note,
                )
            )

    pw = payne_weinberger_bound(d)
    convex = bool(spec.convex)
    pw_note = "" if convex else "convexity not verified; reference only"
    if not convex:
        notes.append("convexity not verified: pi^2/d^2 listed for reference only")
    entries.append(
        LowerBound(
            pw,
            "payne_weinberger",
            {"n": n, "d": d},
            applicable=convex,
            eligible_for_best=convex,
            note=pw_note,
        )
    )

    eligible = [i for i, e in enumerate(entries) if e.eligible_for_best and e.applicable]
    if eligible:
        best = max(eligible, key=lambda i: entries[i].value)
    else:
        best = max(range(len(entries)), key=lambda i: entries[i].value)
        notes.append("no bound is certified for this domain; best shown is reference only")

    pw_comparison = None if norm is None else improvement_condition(norm.value_sq, n)

    return BoundReport(
        bounds=entries,
        best=best,
        pw_comparison=pw_comparison,
        notes=notes,
        geometry={
            "dim": n,
            "diameter": d,
            "enclosing_radius": radius,
            "enclosing_center": [float(c) for c in ball.center],
            "boundary_points": int(len(points)),
        },
    )
