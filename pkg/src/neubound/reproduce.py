"""Reproduction reports for the worked examples backing this package.

Each report recomputes a worked example end to end and places the result
next to the published figure, with a match flag per quantity and a
discrepancies list for anything that does not line up.  The reports are
plain dicts so the command line can serialize them directly.

Published figures are quoted at the precision they were stated with, so
"match" means agreement within that precision, not bitwise equality.
"""

from __future__ import annotations

import math

from . import bounds, extension_norms, geometry, qcmaps, special

_PZERO_PUBLISHED = {
    2: 1.841,
    3: 2.081,
    4: 2.299,
    5: 2.501,
    6: 2.688,
    7: 2.864,
    8: 3.031,
}

_MIKHLIN_PUBLISHED = [
    (3, 2.0, 8.38905),
    (3, 3.0, 7.50825),
]


def _entry(published: float, computed: float, tol: float) -> dict:
    return {
        "published": published,
        "computed": computed,
        "difference": computed - published,
        "match": bool(abs(computed - published) <= tol),
    }


def _pzero_table() -> dict:
    rows = []
    for n, published in _PZERO_PUBLISHED.items():
        row = {"n": n, **_entry(published, special.p_zero(n), 1e-3)}
        rows.append(row)
    return {
        "name": "pzero_table",
        "description": "first zero of the radial Neumann condition "
        "J_{n/2}(t) = t J_{n/2+1}(t), n = 2..8, against the published "
        "3-decimal table",
        "rows": rows,
        "discrepancies": [f"n={r['n']}" for r in rows if not r["match"]],
    }


def _mikhlin_table() -> dict:
    rows = []
    for n, big_r, published in _MIKHLIN_PUBLISHED:
        est = extension_norms.mikhlin_ball_norm_sq(n, big_r)
        rows.append({"n": n, "R": big_r, **_entry(published, est.value_sq, 1e-4)})
    return {
        "name": "mikhlin_table",
        "description": "squared norm of the two-ball extension operator, "
        "concentric balls of radii 1 and R, against the published values",
        "rows": rows,
        "discrepancies": [f"n={r['n']} R={r['R']}" for r in rows if not r["match"]],
    }


def _bowtie() -> dict:
    spec = geometry.named_domain("bowtie")
    points, _, _ = geometry.boundary_loop(spec, None)

    piece = [[1.0, 0.0], [1.0, 1.0]]
    k_computed = qcmaps.affine_qc_coefficient(piece)
    k_exact = (3.0 + math.sqrt(5.0)) / 2.0
    d_computed = geometry.diameter(points)
    d_exact = math.sqrt(10.0) / 2.0
    ball = geometry.min_enclosing_ball(points)
    norm_sq = extension_norms.quasidisc_norm_sq(k_computed).value_sq

    bound_sym = bounds.symmetric_domain_bound(norm_sq, d_computed, 2)
    bound_mecb = bounds.quasidisc_bound(k_computed, ball.radius)

    return {
        "name": "bowtie",
        "description": "piecewise-affine image of a square: quasiconformal "
        "coefficient, diameter, enclosing ball, and both eigenvalue bounds",
        "inputs": {
            "vertices": [list(map(float, v)) for v in points],
            "affine_piece": piece,
        },
        "intermediate": {
            "qc_coefficient": _entry(k_exact, k_computed, 1e-12),
            "diameter": _entry(d_exact, d_computed, 1e-12),
            "norm_sq": norm_sq,
            "enclosing_center": [float(c) for c in ball.center],
            "enclosing_center_published": [0.0, 2.0 / 3.0],
            "enclosing_radius": _entry(5.0 / 6.0, ball.radius, 1e-9),
        },
        "bounds": {
            # the published "approximately 2/5" rounds the d/2 figure
            "symmetric_form": _entry(0.4, bound_sym, 0.02),
            "enclosing_ball_form": _entry(0.3729, bound_mecb, 1e-3),
        },
        "discrepancies": [],
    }


def _half_ball() -> dict:
    norm_sq = extension_norms.half_ball_reflection_norm_sq().value_sq
    bound_n4 = bounds.extension_ball_bound(norm_sq, 1.0, 4)
    pw = bounds.payne_weinberger_bound(2.0)
    improves = {n: bounds.improvement_condition(norm_sq, n) for n in range(3, 9)}
    report = {
        "name": "half_ball",
        "description": "unit half-ball via mirror reflection: exact norm 2, "
        "the n=4 eigenvalue bound, and where it beats the classical "
        "convex-domain estimate",
        "inputs": {"norm_sq": norm_sq, "radius": 1.0},
        "computed": {
            "bound_n4": _entry(2.643, bound_n4, 0.01),
            "payne_weinberger": _entry(2.467, pw, 1e-3),
            "improves_for_n": {str(n): bool(v) for n, v in improves.items()},
        },
        "published": {"improves_from_n": 4},
        "discrepancies": [],
    }
    ok = all(improves[n] for n in range(4, 9)) and not improves[3]
    if not ok:
        report["discrepancies"].append(
            "improvement threshold does not match the published n >= 4"
        )
    return report


def _tan_star() -> dict:
    # the published computation displays these three factors
    published_diameter = 3.2
    published_jzero = 1.84118
    angle_factor = 4.0 * math.sin(math.pi / 8.0) ** 4
    published_product = angle_factor * (published_jzero / published_diameter) ** 2
    published_claim = 0.2  # stated as "approximately 1/5"

    spec = geometry.named_domain("tan_disc")
    points = geometry.sample_domain(spec)
    d_sampled = geometry.diameter(points)
    pipeline_bound = bounds.star_shaped_bound(spec.star_beta, d_sampled)

    discrepancies = []
    if not math.isclose(published_product, published_claim, rel_tol=0.25):
        discrepancies.append(
            "the displayed factors multiply to "
            f"{published_product:.4f}, not the claimed approximately 1/5 = 0.2"
        )
    if abs(d_sampled - published_diameter) > 0.1:
        discrepancies.append(
            f"sampled diameter {d_sampled:.4f} is not within 0.1 of the "
            f"published {published_diameter}"
        )

    return {
        "name": "tan_star",
        "description": "boundary tan(e^{i theta}) of the half-star-shaped "
        "conformal disc image: the published bound recomputed from its own "
        "displayed factors",
        "inputs": {
            "beta": spec.star_beta,
            "published_diameter": published_diameter,
            "published_first_zero": published_jzero,
        },
        "intermediate": {
            "angle_factor": angle_factor,
            "zero_over_diameter_sq": (published_jzero / published_diameter) ** 2,
            "sampled_diameter": d_sampled,
        },
        "computed": {
            "bound_from_published_factors": _entry(published_claim, published_product, 0.01),
            "bound_from_sampled_diameter": pipeline_bound,
        },
        "published": {"claim": "approximately 1/5"},
        "discrepancies": discrepancies,
    }


_EXAMPLES = {
    "bowtie": _bowtie,
    "half_ball": _half_ball,
    "tan_star": _tan_star,
    "mikhlin_table": _mikhlin_table,
    "pzero_table": _pzero_table,
}


def example_names() -> tuple[str, ...]:
    return tuple(sorted(_EXAMPLES))


def reproduce(name: str) -> dict:
    """Recompute a worked example; raises ValueError for unknown names."""
    try:
        builder = _EXAMPLES[name]
    except KeyError:
        raise ValueError(
            f"unknown example {name!r}; known: {', '.join(example_names())}"
        ) from None
    return builder()
