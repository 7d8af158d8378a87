import math

import numpy as np
import pytest
import sympy as sp

from paraslant.ambient import gallery_lookup
from paraslant.errors import InputError, NoAdmissibleSamples
from paraslant.frame import Sampling, evaluate_frame
from paraslant.slant import (
    DistributionSpec,
    Tolerances,
    check_P_invariance,
    classify_slant,
    decompose_bislant,
    decomposition_label,
    estimate_lambda,
    maximal_distributions,
    slant_type,
)

from conftest import make_chart
from sympy_oracle import restricted_P_squared

AW1 = ["a*u1", "v1", "b*u1", "u1", "c*u2", "v2", "d*u2", "u2"]
P4 = ("u1", "v1", "u2", "v2")
S = Sampling(16, 0)


def aw1(a, b, c, d):
    return make_chart(AW1, "J2-g2-R8", P4, {"a": a, "b": b, "c": c, "d": d})


def D(name, *idx, m=4):
    return DistributionSpec.coordinate(name, idx, m)


def test_symbolic_oracle_reproduces_aw1_formula():
    s = gallery_lookup("J2-g2-R8")
    a, b = sp.symbols("a b")
    comps = [c.replace("c*", "2*").replace("d*", "3*") for c in AW1]
    Pd2 = restricted_P_squared(comps, P4, s.J.astype(int).tolist(), s.g.astype(int).tolist(), (0, 1))
    lam = a**2 / (a**2 + b**2 - 1)
    assert sp.simplify(Pd2 - lam * sp.eye(2)) == sp.zeros(2)


# lambda values frozen from the symbolic oracle above
@pytest.mark.parametrize("a,b,lam,typ", [
    (2, 0, 4 / 3, "slant-1"),
    (1, 2, 0.25, "slant-2"),
    (0.5, 0.5, -0.5, "slant-3"),
    (0, 2, 0.0, "totally-real"),
])
def test_aw1_first_factor(a, b, lam, typ):
    rep = classify_slant(aw1(a, b, 1, 2), D("D1", 0, 1), S)
    assert rep.type == typ
    assert abs(rep.lam - lam) <= 1e-12
    if typ == "slant-1":
        assert math.isclose(math.cosh(rep.theta) ** 2, lam)
    if typ == "slant-3":
        assert math.isclose(-math.sinh(rep.theta) ** 2, lam)


def test_aw1_second_factor_inverts_role_of_c():
    # lambda = c^2/(c^2+d^2-1) with the constants of the second block
    rep = classify_slant(aw1(1, 2, 1.5, 1.5), D("D2", 2, 3), S)
    assert abs(rep.lam - 2.25 / 3.5) < 1e-12 and rep.type == "slant-2"


def test_bislant_whole_tangent_is_not_slant():
    ch = aw1(1, 2, 2, 0)
    assert classify_slant(ch, None, S).type == "non-slant"
    rep = decompose_bislant(ch, D("D1", 0, 1), D("D2", 2, 3), S)
    assert rep.label == "bi-slant" and rep.orthogonal and rep.spanning


def test_para_complex_and_totally_real_planes():
    assert classify_slant(make_chart(["u", "v", "0", "0"]), None, S).type == "para-complex"
    assert classify_slant(make_chart(["u", "0", "v", "0"]), None, S).type == "totally-real"


def test_anti_invariant_is_not_totally_real():
    # P maps d/du1 into D2 but kills nothing normal: P_D = 0 while P != 0
    rep = classify_slant(aw1(1, 2, 1, 2), D("Dt1", 0, 3), S)
    assert rep.type == "anti-invariant" and rep.p_norm > 0.1


def test_P_invariance():
    ch = aw1(1, 2, 1, 2)
    assert check_P_invariance(ch, D("D1", 0, 1), S) <= 1e-12
    assert check_P_invariance(ch, D("Dt1", 0, 3), S) > 0.1


def test_maximal_distributions_on_graph(graph_chart):
    fr = evaluate_frame(graph_chart, [0.3, 0.2])
    hol, tr = maximal_distributions(fr)
    assert hol.shape[1] == 0 and tr.shape[1] == 0
    fr = evaluate_frame(make_chart(["u", "v", "0", "0"]), [0.1, 0.1])
    hol, tr = maximal_distributions(fr)
    assert hol.shape[1] == 2 and tr.shape[1] == 0


def test_estimate_lambda():
    lam, res = estimate_lambda(np.array([[0.0, 2.0], [1.0, 0.0]]))
    assert lam == 2.0 and res == 0.0
    lam, res = estimate_lambda(np.diag([1.0, 2.0]))
    assert lam == 2.5 and res > 0


def test_slant_type_thresholds():
    t = Tolerances()
    assert slant_type(1.0 + 1e-9, 0, 0, 1, 1, 0, t)[0] == "para-complex"
    assert slant_type(1.0, 0, 0, 1, 1, 0.5, t)[0] == "boundary"
    assert slant_type(0.0, 0, 0, 0.5, 1, 1, t)[0] == "boundary"  # nilpotent P_D
    assert slant_type(0.5, 1e-3, 0, 1, 1, 1, t)[0] == "non-slant"
    typ, theta = slant_type(0.5, 0, 0, 1, 1, 1, t)
    assert typ == "slant-2" and math.isclose(theta, math.pi / 4)


@pytest.mark.parametrize("pair,label", [
    (("para-complex", "totally-real"), "CR"),
    (("totally-real", "para-complex"), "CR"),
    (("para-complex", "slant-3"), "semi-slant"),
    (("slant-1", "totally-real"), "hemi-slant"),
    (("slant-1", "slant-2"), "bi-slant"),
    (("slant-1", "non-slant"), "invalid"),
])
def test_decomposition_labels(pair, label):
    assert decomposition_label(*pair) == label


def test_degenerate_distribution_everywhere():
    # rank-one null direction e1 + e2 inside the tangent plane
    ch = make_chart(["u + v", "u", "0", "v"])
    with pytest.raises(NoAdmissibleSamples):
        classify_slant(ch, DistributionSpec("N", (("1", "0"),)), S)


def test_distribution_shape_is_checked():
    with pytest.raises(InputError):
        classify_slant(aw1(1, 2, 1, 2), DistributionSpec("bad", (("1", "0"),)), S)
