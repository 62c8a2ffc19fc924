"""Self-map DSL, Earle-Hamilton, Wolff construction, orbits, and reports."""

import math

import numpy as np
import pytest

from symdom import dynamics as D
from symdom import factors as F
from symdom import horofunction as H
from symdom.boundary import closure_contains
from symdom.errors import ConfigError, DomainError
from symdom.mobius import kobayashi


def psi_map(disc, b=0.5):
    return D.PipelineMap(
        disc, [D.CoordinatewiseStep(disc, [{"type": "mobius", "b": [b, 0.0]}])]
    )


def affine_half(disc):
    return D.PipelineMap(
        disc,
        [D.CoordinatewiseStep(disc, [{"type": "affine", "alpha": [0.5, 0], "beta": [0.5, 0]}])],
    )


# -- DSL ------------------------------------------------------------------------

def test_empty_pipeline_is_identity(r22, rng):
    f = D.PipelineMap(r22, [])
    x = F.random_element(r22, 0.8, rng)
    assert F.element_norm(f(x) - x) == 0.0


def test_transvection_step(disc):
    f = D.PipelineMap(disc, [D.TransvectionStep(F.Element(disc, [0.5]))])
    assert f(F.zero_element(disc)).coords[0] == pytest.approx(0.5)


def test_coordinatewise_apply(p2):
    f = D.PipelineMap(
        p2,
        [D.CoordinatewiseStep(p2, [
            {"type": "mobius", "b": [0.5, 0]},
            {"type": "affine", "alpha": [0.5, 0], "beta": [0, 0]},
        ])],
    )
    out = f(F.Element(p2, [0.0, 0.4]))
    assert out.coords[0] == pytest.approx(0.5)
    assert out.coords[1] == pytest.approx(0.2)


def test_primitive_validation(p2, disc):
    with pytest.raises(DomainError):
        D.ScaleStep(disc, 1.2)
    with pytest.raises(DomainError):
        D.CoordinatewiseStep(disc, [{"type": "affine", "alpha": [0.7, 0], "beta": [0.5, 0]}])
    with pytest.raises(DomainError):
        D.CoordinatewiseStep(disc, [{"type": "mobius", "b": [1.0, 0]}])
    with pytest.raises(ConfigError):
        D.CoordinatewiseStep(p2, [{"type": "mobius", "b": [0.5, 0]}])  # wrong arity
    with pytest.raises(ConfigError):
        D.IsometryStep(p2, perm=[1, 1])


def test_isometry_rect(r22, rng):
    th = 0.5
    u = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    w = np.diag([1.0, 1j])
    step = D.IsometryStep(r22, u=u, w=w)
    x = F.random_element(r22, 0.8, rng)
    out = step.apply(x)
    assert np.allclose(F.as_matrix(out), u @ F.as_matrix(x) @ w)
    assert F.element_norm(out) == pytest.approx(F.element_norm(x), abs=1e-12)


def test_isometry_spin_triple_automorphism(spin4, rng):
    u = np.eye(4)[[1, 0, 2, 3]] * 1.0  # coordinate swap, real orthogonal
    step = D.IsometryStep(spin4, u=u, phase=np.exp(0.3j))
    a, b, c = (F.random_element(spin4, 0.9, rng) for _ in range(3))
    lhs = step.apply(F.triple_product(a, b, c))
    rhs = F.triple_product(step.apply(a), step.apply(b), step.apply(c))
    assert F.element_norm(lhs - rhs) < 1e-12


def test_map_dict_round_trip(p2):
    spec = {
        "pipeline": [
            {"op": "transvection", "a": [[0.2, 0.0], [0.0, 0.1]]},
            {"op": "scale", "lambda": [0.9, 0.0]},
            {"op": "isometry", "perm": [1, 0], "phases": [[0.0, 1.0], [1.0, 0.0]]},
            {"op": "coordwise", "parts": [
                {"type": "mobius", "b": [0.5, 0.0]},
                {"type": "affine", "alpha": [0.3, 0.0], "beta": [0.2, 0.0]},
            ]},
        ]
    }
    f = D.map_from_dict(p2, spec)
    assert f.to_dict() == spec
    g = D.map_from_dict(p2, f.to_dict())
    x = F.Element(p2, [0.1, -0.2j])
    assert F.element_norm(f(x) - g(x)) == 0.0


def test_map_dict_rejects_unknown(p2):
    with pytest.raises(ConfigError):
        D.map_from_dict(p2, {"pipeline": [{"op": "teleport"}]})
    with pytest.raises(ConfigError):
        D.map_from_dict(p2, {"pipeline": [], "extra": 1})


def _demo_maps():
    from symdom.config import run_config_from_dict
    from symdom.demos import DEMO_NAMES, demo_config

    return {name: run_config_from_dict(demo_config(name)).map for name in DEMO_NAMES}


def test_schwarz_pick_all_builtin_maps():
    # kappa(f x, f y) <= kappa(x, y) + 1e-8 on 200 random pairs per map
    for name, f in _demo_maps().items():
        assert D.schwarz_pick_defect(f, pairs=200, seed=3) <= 1e-8, name


def test_escape_all_builtin_maps():
    # fixed-point-free demos push the orbit norm past 1 - 1e-4 within N = 200
    for name, f in _demo_maps().items():
        rec = D.orbit(f, F.zero_element(f.factor), 200)
        assert rec.max_norm > 1.0 - 1e-4, name


# -- Earle-Hamilton ---------------------------------------------------------------

def test_eh_affine_oracle(disc):
    z = D.earle_hamilton(affine_half(disc), 0.9)
    assert z.coords[0] == pytest.approx(0.9 / 1.1, abs=1e-11)


def test_eh_identity_map(disc):
    f = D.PipelineMap(disc, [])
    z = D.earle_hamilton(f, 0.9)
    assert F.element_norm(z) <= 1e-10


def test_eh_mobius_quadratic_oracle(disc):
    beta = 0.99
    root = (-(1 - beta) + math.sqrt((1 - beta) ** 2 + 2 * beta * 0.5**2 * 2)) / 1.0
    # beta(1/2 + z) = z(1 + z/2): z^2/2 + (1-beta) z - beta/2 = 0
    root = (-(1 - beta) + math.sqrt((1 - beta) ** 2 + beta)) / 1.0
    z = D.earle_hamilton(psi_map(disc), beta)
    assert z.coords[0] == pytest.approx(root, abs=1e-10)
    assert F.element_norm(beta * psi_map(disc)(z) - z) <= 1e-11


def test_eh_invalid_beta(disc):
    with pytest.raises(DomainError):
        D.earle_hamilton(psi_map(disc), 1.0)


# -- Wolff ------------------------------------------------------------------------

def test_wolff_affine(disc):
    w = D.wolff(affine_half(disc), invariance_samples=200, seed=1)
    assert w.verdict == "fixed-point-free"
    assert F.element_norm(w.zeta - F.Element(disc, [1.0])) < 1e-6
    assert w.F.sigma == (1.0,)
    assert max(w.residuals) <= 1e-10
    assert w.invariance_margin <= 1e-6 * (1 + w.f_scale)
    # oracle: z_k = beta/(2-beta)
    for beta, z in zip(w.beta_schedule, w.fixed_points):
        assert z.coords[0] == pytest.approx(beta / (2 - beta), abs=1e-10)


def test_wolff_mobius(disc):
    w = D.wolff(psi_map(disc), invariance_samples=200, seed=2)
    assert w.verdict == "fixed-point-free"
    assert F.element_norm(w.zeta - F.Element(disc, [1.0])) < 1e-6
    assert w.invariance_margin <= 1e-6 * (1 + w.f_scale)


def test_wolff_interior_fixed_point(disc):
    f = D.PipelineMap(disc, [D.ScaleStep(disc, 0.5)])
    w = D.wolff(f)
    assert w.verdict == "interior-fixed-point"
    assert F.element_norm(w.fixed_point) <= 1e-10
    assert w.F is None


def test_wolff_bidisc_case_a(p2):
    f = D.CoupledBidiscMap("a", p2, 0.5)
    w = D.wolff(f, invariance_samples=100, seed=3)
    assert w.verdict == "fixed-point-free"
    assert np.allclose(w.F.horocentre.coords, [1.0, 0.0], atol=1e-6)
    assert len(w.F.sigma) == 1
    assert w.invariance_margin <= 1e-6 * (1 + w.f_scale)


# -- orbits -------------------------------------------------------------------------

def test_orbit_mobius_converges(disc):
    rec = D.orbit(psi_map(disc), F.zero_element(disc), 50)
    assert abs(rec.points[-1].coords[0] - 1.0) <= 1e-10
    assert len(rec.tail_clusters) == 1
    assert rec.max_norm > 1 - 1e-10


def test_orbit_interior_contraction(disc):
    f = D.PipelineMap(disc, [D.ScaleStep(disc, 0.5)])
    rec = D.orbit(f, F.Element(disc, [0.3]), 60)
    assert rec.max_norm < 0.5
    assert not rec.saturated
    assert len(rec.tail_clusters) == 1
    assert F.element_norm(rec.tail_clusters[0].centre) < 1e-6


def test_orbit_rotation_clusters_on_circle(p2):
    th = math.pi * (3 - math.sqrt(5))
    f = D.PipelineMap(p2, [D.CoordinatewiseStep(p2, [
        {"type": "mobius", "b": [0.5, 0]},
        {"type": "affine", "alpha": [math.cos(th), math.sin(th)], "beta": [0, 0]},
    ])])
    y0 = 0.4
    rec = D.orbit(f, F.Element(p2, [0.0, y0]), 160)
    for cl in rec.tail_clusters:
        assert abs(cl.centre.coords[0] - 1.0) <= 1e-3
        assert abs(abs(cl.centre.coords[1]) - y0) <= 1e-3


def test_orbit_zero_iterations(disc):
    rec = D.orbit(psi_map(disc), F.zero_element(disc), 0)
    assert len(rec.points) == 1
    assert rec.kappa_steps == ()


def test_limit_functions_shared_subsequences(p2):
    th = math.pi * (3 - math.sqrt(5))
    f = D.PipelineMap(p2, [D.CoordinatewiseStep(p2, [
        {"type": "mobius", "b": [0.5, 0]},
        {"type": "affine", "alpha": [math.cos(th), math.sin(th)], "beta": [0, 0]},
    ])])
    starts = [F.Element(p2, [0.0, 0.4]), F.Element(p2, [0.1, 0.2j])]
    lf = D.limit_functions(f, starts, 120)
    assert lf.nonfinite_omega  # irrational rotation: tail does not settle
    assert len(lf.subsequences) >= 4
    comp_frame = F.Element(p2, [1.0, 0.0])
    from symdom.boundary import component_of_tripotent

    comp = component_of_tripotent(comp_frame)
    for _start, values in lf.per_start:
        for v in values:
            assert closure_contains(comp, v, 1e-3)


def test_limit_functions_single_cluster(disc):
    lf = D.limit_functions(psi_map(disc), [F.zero_element(disc), F.Element(disc, [0.2j])], 60)
    assert not lf.nonfinite_omega
    assert len(lf.subsequences) == 1
    for _start, values in lf.per_start:
        assert abs(values[0].coords[0] - 1.0) <= 1e-6


# -- reports -----------------------------------------------------------------------

def test_report_disc(disc):
    rep = D.denjoy_wolff_report(psi_map(disc), iterations=80, invariance_samples=50)
    assert rep.verdict == "fixed-point-free"
    assert rep.hypothesis.status == "holds"
    assert rep.clusters_captured
    assert np.allclose(rep.predicted_component.centre.coords, [1.0], atol=1e-6)
    assert rep.truncation_index == 1
    assert rep.s0 < 1.0


def test_report_interior(disc):
    f = D.PipelineMap(disc, [D.ScaleStep(disc, 0.4)])
    rep = D.denjoy_wolff_report(f, iterations=40, invariance_samples=10)
    assert rep.verdict == "interior-fixed-point"
    assert rep.predicted_component is None


def test_report_rect_hypothesis_fails(r22):
    a = F.element_from_matrix(r22, [[0.5, 0], [0, 0]])
    f = D.PipelineMap(r22, [D.TransvectionStep(a)])
    starts = [F.element_from_matrix(r22, [[0.0, 0], [0, 0.3]])]
    rep = D.denjoy_wolff_report(f, starts=starts, iterations=200, invariance_samples=50)
    assert rep.verdict == "fixed-point-free"
    assert rep.hypothesis.status == "fails"
    assert "non-structural" in rep.hypothesis.detail
    assert rep.clusters_captured  # component capture holds regardless


def test_hilbert_alternative_fixed_point_free(h3):
    a = F.Element(h3, [0.5, 0, 0])
    f = D.PipelineMap(h3, [D.TransvectionStep(a)])
    verdict = D.hilbert_alternative(f, iterations=200, seed=4)
    assert verdict.verdict == "single-boundary-point"
    assert F.element_norm(verdict.zeta - F.Element(h3, [1, 0, 0])) < 1e-6
    assert verdict.consistent


def test_hilbert_alternative_interior(h3):
    f = D.PipelineMap(h3, [D.ScaleStep(h3, 0.5)])
    verdict = D.hilbert_alternative(f)
    assert verdict.verdict == "interior-dynamics"


def test_hilbert_alternative_transvection_zeta(disc):
    # g_a has the attracting boundary fixed point a/|a|
    f = D.PipelineMap(disc, [D.TransvectionStep(F.Element(disc, [0.4j]))])
    verdict = D.hilbert_alternative(f, iterations=300, seed=5)
    assert verdict.verdict == "single-boundary-point"
    assert F.element_norm(verdict.zeta - F.Element(disc, [1j])) < 1e-4


def test_hilbert_alternative_needs_hilbert(p2):
    with pytest.raises(ConfigError):
        D.hilbert_alternative(D.CoupledBidiscMap("a", p2))


# -- appendix scenarios --------------------------------------------------------------

def test_appendix_case_b(p2):
    rep = D.bidisc_appendix_suite("case_b", iterations=150, seed=6)
    assert rep.verdict == "ok"
    assert np.allclose(rep.horocentre.coords, [1.0, 1.0], atol=1e-6)
    for r in rep.per_start:
        assert r.branch == "extreme0"
        assert r.decay_at_60 is not None and r.decay_at_60 <= 1e-3
        assert r.re_identity_max_diff <= 1e-10
        assert r.clusters_captured


def test_appendix_case_a(p2):
    rep = D.bidisc_appendix_suite("case_a", iterations=150, seed=7)
    assert rep.verdict == "ok"
    assert np.allclose(rep.horocentre.coords, [1.0, 0.0], atol=1e-6)
    for r in rep.per_start:
        assert r.branch == "extreme0"
        assert r.decay_final <= 1e-6
        assert r.clusters_captured


def test_appendix_case_c(p2):
    rep = D.bidisc_appendix_suite("case_c", iterations=150, seed=8)
    assert rep.verdict == "ok"
    assert np.allclose(rep.horocentre.coords, [1.0, 1.0], atol=1e-4)
    for r in rep.per_start:
        assert r.branch in ("extreme0", "extreme")
        assert r.clusters_captured


def test_appendix_detects_fixed_point(p2, monkeypatch):
    # replace the scenario map with one that has an interior fixed point
    def fake_build(scenario, factor, b=0.5):
        return D.PipelineMap(factor, [D.ScaleStep(factor, 0.5)])

    monkeypatch.setattr(D, "build_bidisc_scenario", fake_build)
    rep = D.bidisc_appendix_suite("case_b", iterations=20, seed=1)
    assert rep.verdict == "interior-fixed-point"


# -- determinism -----------------------------------------------------------------------

def test_reports_are_deterministic(p2):
    import json

    from symdom.cli import dump_json, report_to_dict

    f1 = D.CoupledBidiscMap("a", p2, 0.5)
    r1 = D.denjoy_wolff_report(f1, iterations=60, seed=9, invariance_samples=20)
    f2 = D.CoupledBidiscMap("a", p2, 0.5)
    r2 = D.denjoy_wolff_report(f2, iterations=60, seed=9, invariance_samples=20)
    assert dump_json(report_to_dict(r1)) == dump_json(report_to_dict(r2))
