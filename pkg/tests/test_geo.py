import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from paraslant.ambient import gallery_lookup
from paraslant.errors import DegenerateError, InputError
from paraslant.frame import Sampling, evaluate_frame, sample_frames
from paraslant.geo import (
    LocalGeometry,
    covariant_identity_residuals,
    cr_curvature_check,
    geodesy_report,
    holomorphic_sectional,
    integrability_report,
    intrinsic_curvature,
    second_fundamental_form,
    shape_operator,
    spaceform_curvature,
    umbilicity_defect,
)
from paraslant.slant import DistributionSpec

from charts import random_polynomial_components
from conftest import make_chart
from sympy_oracle import riemann_lowered, second_fundamental_form as sym_h

G4 = gallery_lookup("J-g-R4").g.astype(int).tolist()
DIECISIETE = ["u", "k*cosh(v)", "v", "k*sinh(v)", "w", "0"]
PARA_GRAPH = ["u", "v", "u^2+v^2", "2*u*v"]


def diecisiete(k=2.0):
    return make_chart(DIECISIETE, "J5-g5-R6", ("u", "v", "w"), {"k": k})


def test_graph_second_fundamental_form_by_hand(graph_chart):
    # h(du, du) is the normal part of 2 e3; the others vanish
    for u in (0.0, 0.4, -0.7):
        fr = evaluate_frame(graph_chart, [u, 0.1])
        h = second_fundamental_form(fr)
        H = np.array([0.0, 0.0, 2.0, 0.0])
        a = np.linalg.solve(fr.G, fr.E.T @ fr.g @ H)
        np.testing.assert_allclose(h([1, 0], [1, 0]), H - fr.E @ a, atol=1e-14)
        np.testing.assert_allclose(h.hAmb[0, 1], 0, atol=1e-14)
        np.testing.assert_allclose(h.hAmb[1, 1], 0, atol=1e-14)


def _sym_h_numeric(components, params, g, point):
    h = sym_h(components, params, g, point)
    return np.array(h, dtype=float)


def test_diecisiete_h_matches_symbolic():
    g = gallery_lookup("J5-g5-R6").g.astype(int).tolist()
    for pt in ([0.1, 0.3, -0.2], [0.5, -0.8, 0.9]):
        fr = evaluate_frame(diecisiete(), pt)
        ref = _sym_h_numeric([c.replace("k*", "2*") for c in DIECISIETE], ("u", "v", "w"), g, pt)
        np.testing.assert_allclose(second_fundamental_form(fr).hAmb, ref, atol=1e-12)


RANDOM_CHARTS = [random_polynomial_components(s) for s in range(20)]


def _points(chart, n=4, seed=0):
    return [f.u for f in sample_frames(chart, Sampling(n, seed))]


@pytest.mark.parametrize("idx", range(0, 20, 4))
def test_random_chart_h_matches_symbolic(idx):
    comps = RANDOM_CHARTS[idx]
    chart = make_chart(comps)
    for pt in _points(chart, 2):
        ref = _sym_h_numeric(comps, ("u", "v"), G4, pt)
        np.testing.assert_allclose(second_fundamental_form(chart, pt).hAmb, ref, atol=1e-10)


@pytest.mark.parametrize("comps", [RANDOM_CHARTS[1], RANDOM_CHARTS[7], ["u", "v", "u^2", "0"]])
def test_riemann_matches_symbolic(comps):
    chart = make_chart(comps)
    pt = _points(chart, 1, seed=3)[0]
    ref = np.array(riemann_lowered(comps, ("u", "v"), G4, pt))
    R = intrinsic_curvature(chart, pt).riemann
    np.testing.assert_allclose(R, ref, atol=1e-9 * max(1.0, np.max(np.abs(ref))))


def test_riemann_symmetries():
    R = intrinsic_curvature(diecisiete(), [0.2, 0.4, 0.1]).riemann
    np.testing.assert_allclose(R, -R.transpose(1, 0, 2, 3), atol=1e-12)
    np.testing.assert_allclose(R, -R.transpose(0, 1, 3, 2), atol=1e-12)
    np.testing.assert_allclose(R, R.transpose(2, 3, 0, 1), atol=1e-12)
    np.testing.assert_allclose(R + R.transpose(1, 2, 0, 3) + R.transpose(2, 0, 1, 3), 0, atol=1e-12)


@pytest.mark.parametrize("chart", [
    make_chart(["u", "v", "u^2", "0"]),
    diecisiete(),
    make_chart(PARA_GRAPH),
], ids=["graph", "diecisiete", "para-graph"])
def test_gauss_codazzi_on_curved_charts(chart):
    for fr in sample_frames(chart, Sampling(8, 0)):
        rep = intrinsic_curvature(fr)
        assert rep.gaussResidual <= 1e-7 and rep.codazziResidual <= 1e-7


def test_affine_chart_is_exactly_flat():
    chart = make_chart(["u + 2*v", "3*v", "u - v", "0.5*u"])
    for fr in sample_frames(chart, Sampling(4, 0)):
        rep = intrinsic_curvature(fr)
        assert rep.gaussResidual == 0 and rep.codazziResidual == 0
        assert not rep.riemann.any()


@pytest.mark.parametrize("idx", range(20))
def test_para_kaehler_identities_on_random_charts(idx):
    chart = make_chart(RANDOM_CHARTS[idx])
    fields = [(["1", "0"], ["0", "1"]), (["u", "v^2"], ["1+u*v", "u"]), (["0", "1"], ["v", "0"])]
    for pt in _points(chart, 3, seed=idx):
        for X, Y in fields:
            rP, rF = covariant_identity_residuals(chart, pt, X, Y)
            assert rP <= 1e-8 and rF <= 1e-8


def test_shape_operator_is_adjoint_of_h(graph_chart):
    fr = evaluate_frame(graph_chart, [0.3, -0.2])
    h = second_fundamental_form(fr)
    V = fr.Nbasis[:, 0] + 2 * fr.Nbasis[:, 1]
    A = shape_operator(fr, h, V)
    X, Y = np.array([1.0, 2.0]), np.array([-0.5, 1.5])
    assert np.isclose(X @ fr.G @ (A @ Y), h(X, Y) @ fr.g @ V)
    with pytest.raises(InputError):
        shape_operator(fr, h, fr.E[:, 0])


def _rand_vec(rng, n):
    return rng.standard_normal(n)


@given(st.integers(0, 10_000), st.floats(-5, 5))
def test_spaceform_holomorphic_normalisation(seed, c):
    s = gallery_lookup("J2-g2-R8")
    rng = np.random.default_rng(seed)
    X, Y, Z, W = (rng.standard_normal(8) for _ in range(4))
    g, J = s.g, s.J
    q = X @ g @ X
    val = spaceform_curvature(g, J, c, X, J @ X, J @ X) @ g @ X
    assert np.isclose(val, c * q * q, rtol=1e-9, atol=1e-9)
    # algebraic symmetries of a curvature tensor
    R = lambda a, b, d, e: spaceform_curvature(g, J, c, a, b, d) @ g @ e  # noqa: E731
    assert np.isclose(R(X, Y, Z, W), -R(Y, X, Z, W), atol=1e-9)
    assert np.isclose(R(X, Y, Z, W), -R(X, Y, W, Z), atol=1e-9)
    assert np.isclose(R(X, Y, Z, W), R(Z, W, X, Y), atol=1e-8)


def test_holomorphic_sectional_scaling_and_gauss_cross_check():
    chart = make_chart(PARA_GRAPH)
    fr = evaluate_frame(chart, [0.3, 0.6])
    h = second_fundamental_form(fr)
    X = np.array([1.0, 0.4])
    base = holomorphic_sectional(fr, h, X, 0.0)
    for s in (0.5, 2.0, 3.0):
        assert np.isclose(holomorphic_sectional(fr, h, s * X, 1.5) - 1.5, s**4 * base, rtol=1e-12)
    R = intrinsic_curvature(fr).riemann
    PX = fr.P @ X
    assert np.isclose(np.einsum("ijkl,i,j,k,l->", R, X, PX, PX, X), base, rtol=1e-10)
    with pytest.raises(InputError):
        holomorphic_sectional(evaluate_frame(make_chart(["u", "v", "u^2", "0"]), [0.3, 0.6]),
                              h, X, 0.0)


def test_umbilicity():
    curve = make_chart(["u", "0", "u^2", "u^3"], params=("u",))
    defect, L = umbilicity_defect(LocalGeometry(evaluate_frame(curve, [0.4])))
    assert defect <= 1e-13
    defect, L = umbilicity_defect(LocalGeometry(evaluate_frame(make_chart(["u", "v", "u^2", "0"]), [0.4, 0.2])))
    assert defect > 0.5


P4 = ("u1", "v1", "u2", "v2")
# a holomorphic plane times a totally real plane: a genuine CR submanifold
CR_CHART = ["u1", "v1", "u1^2 + v1^2", "2*u1*v1", "u2", "0", "v2", "0"]
D1 = DistributionSpec.coordinate("D1", (0, 1), 4)
D2 = DistributionSpec.coordinate("D2", (2, 3), 4)


def test_cr_chart_structure_and_curvature():
    chart = make_chart(CR_CHART, "J2-g2-R8", P4)
    S = Sampling(8, 0)
    ir = integrability_report(chart, D1, D2, S)
    assert ir.types == ("para-complex", "totally-real")
    assert ir.totally_real is None and ir.holomorphic <= 1e-9
    assert ir.bracket_D1 <= 1e-12 and ir.bracket_D2 <= 1e-12
    for c in (-4.0, 4.0):
        value, _ = cr_curvature_check(chart, D1, D2, c, S)
        assert value <= 1e-10
    gr = geodesy_report(chart, D1, D2, S)
    assert gr.mixed <= 1e-12  # a product immersion is mixed totally geodesic


def test_bislant_chart_fails_cr_curvature():
    chart = make_chart(["a*u1", "v1", "b*u1", "u1", "c*u2", "v2", "d*u2", "u2"], "J2-g2-R8", P4,
                       {"a": 1, "b": 2, "c": 1, "d": 2})
    value, where = cr_curvature_check(chart, D1, D2, 4.0, Sampling(4, 0))
    assert value > 0.01 and where is not None


def test_degenerate_point_raises():
    with pytest.raises(DegenerateError):
        intrinsic_curvature(make_chart(["u", "u", "v", "v"]), [0.1, 0.2])
