"""Eigenvalue lower bounds: scalar formulas, identities, and domain reports."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from neubound import bounds, geometry, qcmaps
from neubound.special import p_zero


def test_ball_eigenvalue():
    p = p_zero(2)
    assert bounds.ball_mu1(2, 1.0) == pytest.approx(p * p, rel=1e-14)
    # scaling law mu_1(B_R) = mu_1(B_1) / R^2
    for n in (2, 3, 5):
        base = bounds.ball_mu1(n, 1.0)
        assert bounds.ball_mu1(n, 2.5) == pytest.approx(base / 2.5**2, rel=1e-14)


def test_extension_bound_is_tight_for_the_ball_itself():
    for n in (2, 3, 4):
        assert bounds.extension_ball_bound(1.0, 1.0, n) == pytest.approx(
            bounds.ball_mu1(n, 1.0), rel=1e-14
        )


def test_symmetric_form_is_half_diameter_substitution():
    rng = np.random.default_rng(31)
    for _ in range(200):
        norm_sq = float(rng.uniform(1.0, 30.0))
        diam = float(rng.uniform(0.1, 20.0))
        n = int(rng.integers(2, 9))
        lhs = bounds.symmetric_domain_bound(norm_sq, diam, n)
        rhs = bounds.extension_ball_bound(norm_sq, 0.5 * diam, n)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_star_bound_is_quasidisc_bound_at_half_diameter():
    rng = np.random.default_rng(37)
    for _ in range(200):
        beta = float(rng.uniform(0.0, 0.99))
        diam = float(rng.uniform(0.1, 20.0))
        lhs = bounds.star_shaped_bound(beta, diam)
        rhs = bounds.quasidisc_bound(qcmaps.star_shaped_K(beta), 0.5 * diam)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_payne_weinberger_value():
    assert bounds.payne_weinberger_bound(2.0) == pytest.approx(math.pi**2 / 4.0, rel=1e-15)
    assert bounds.payne_weinberger_bound(1.0) == pytest.approx(math.pi**2, rel=1e-15)


def test_improvement_condition_threshold():
    # mirror-reflected half-ball: better than pi^2/d^2 from dimension 4 on
    assert not bounds.improvement_condition(2.0, 3)
    for n in range(4, 9):
        assert bounds.improvement_condition(2.0, n)
    # a perfect extension always qualifies
    assert bounds.improvement_condition(1.0, 2)


def test_quasi_monotonicity_and_poincare():
    assert bounds.quasi_monotonicity_upper(3.0, 2.0) == pytest.approx(6.0, rel=1e-15)
    assert bounds.poincare_constant(4.0) == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(ValueError):
        bounds.poincare_constant(0.0)


def test_scalar_validation():
    with pytest.raises(ValueError):
        bounds.extension_ball_bound(0.9, 1.0, 2)  # norms are >= 1
    with pytest.raises(ValueError):
        bounds.extension_ball_bound(2.0, 0.0, 2)
    with pytest.raises(ValueError):
        bounds.extension_ball_bound(2.0, 1.0, 1)
    with pytest.raises(ValueError):
        bounds.quasidisc_bound(0.5, 1.0)
    with pytest.raises(ValueError):
        bounds.star_shaped_bound(1.0, 2.0)
    with pytest.raises(ValueError):
        bounds.payne_weinberger_bound(-1.0)


def test_bowtie_report():
    report = bounds.best_bound_report(geometry.named_domain("bowtie"))
    by_formula = {b.formula: b for b in report.bounds}

    assert by_formula["quasidisc"].value == pytest.approx(0.3729164046576486, rel=1e-9)
    assert by_formula["quasidisc"].eligible_for_best

    sym = by_formula["symmetric_extension"]
    assert sym.value == pytest.approx(0.4143515607307206, rel=1e-9)
    assert sym.applicable and not sym.eligible_for_best

    pw = by_formula["payne_weinberger"]
    assert not pw.applicable and not pw.eligible_for_best

    best = report.best_bound()
    assert best is not None and best.formula == "quasidisc"
    assert report.pw_comparison is False


def test_unit_disc_report():
    report = bounds.best_bound_report(geometry.named_domain("unit_disc"))
    by_formula = {b.formula: b for b in report.bounds}
    assert by_formula["quasidisc"].value == pytest.approx(
        p_zero(2) ** 2 / 4.0, rel=1e-4
    )
    best = report.best_bound()
    assert best is not None and best.formula == "payne_weinberger"
    assert best.value == pytest.approx(math.pi**2 / 4.0, rel=1e-4)


def test_half_disc_report():
    report = bounds.best_bound_report(geometry.named_domain("half_disc"))
    by_formula = {b.formula: b for b in report.bounds}
    # mirror reflection norm 2 against the enclosing unit disc
    assert by_formula["extension_ball"].value == pytest.approx(
        p_zero(2) ** 2 / 2.0, rel=1e-4
    )
    best = report.best_bound()
    assert best is not None and best.formula == "payne_weinberger"


def test_tan_disc_report():
    report = bounds.best_bound_report(geometry.named_domain("tan_disc"))
    best = report.best_bound()
    assert best is not None and best.formula == "star_shaped"
    # with the analytically known diameter 2 tan(1)
    want = 4.0 * math.sin(math.pi / 8.0) ** 4 * (p_zero(2) / (2.0 * math.tan(1.0))) ** 2
    assert best.value == pytest.approx(want, rel=1e-3)


def test_report_with_explicit_dimension():
    # half-disc metadata reused in ambient dimension 4 (analytic mode)
    report = bounds.best_bound_report(geometry.named_domain("half_disc"), n=4)
    by_formula = {b.formula: b for b in report.bounds}
    assert by_formula["extension_ball"].value == pytest.approx(
        p_zero(4) ** 2 / 2.0, rel=1e-4
    )


def test_report_serializes_to_json():
    report = bounds.best_bound_report(geometry.named_domain("bowtie"))
    payload = report.as_dict()
    text = json.dumps(payload)
    back = json.loads(text)
    assert back["best_value"] == payload["best_value"]
    assert back["bounds"][back["best"]]["value"] == payload["best_value"]
    assert {"geometry", "bounds", "best", "best_value",
            "improves_on_payne_weinberger", "notes"} <= set(back)


def test_report_without_any_structure():
    # a polygon with no quasidisc/star/norm metadata still reports geometry
    # and the reference-only convex bound
    spec = geometry.load_domain_spec(
        {"kind": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]], "name": "square"}
    )
    report = bounds.best_bound_report(spec)
    formulas = [b.formula for b in report.bounds]
    assert formulas == ["payne_weinberger"]
    assert report.best is None or not report.bounds[report.best].eligible_for_best
    assert any("no bound is certified" in note for note in report.notes)


def test_report_with_declared_convexity():
    spec = geometry.load_domain_spec(
        {
            "kind": "polygon",
            "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]],
            "name": "square",
            "convex": True,
        }
    )
    report = bounds.best_bound_report(spec)
    best = report.best_bound()
    assert best is not None and best.formula == "payne_weinberger"
    assert best.value == pytest.approx(math.pi**2 / 2.0, rel=1e-12)
