"""Graph evaluation, the first Taylor coefficient, and the wheel identity.

The frozen values below were derived by hand; the derivations are kept
in the comments so they can be re-checked without any code.
"""

import random
from fractions import Fraction

from formaldisk import (AdmissibleGraph, DifferentialForm, EtaOperator,
                        MaurerCartanData, PolyVectorField, TruncatedSeries,
                        closed_form_map, contract, evaluate_graph, gamma0,
                        graph_operator, hkr, theta_and_det,
                        twisted_first_taylor, u_one, wheel_graph_weight,
                        xi_matrix, todd_series, tilde_todd_series,
                        exp_half_series)
from formaldisk.suites import random_field

import helpers

CAP = 8


def test_u_one_equals_hkr_on_random_fields():
    rng = random.Random(77)
    for _ in range(30):
        dim = rng.randint(1, 3)
        fld = random_field(rng, dim, 6, rng.randint(-1, dim - 1))
        assert u_one(fld) == hkr(fld)


def test_corolla_operator_is_full_antisymmetrization():
    # gamma0(m) carries no aerial derivatives, so its operator on a
    # wedge field is the plain signed component sum (no 1/m! here)
    dim = 2
    t1 = TruncatedSeries.variable(dim, 1, CAP)
    pi = PolyVectorField(dim, 1, {(1, 2): t1})
    op = graph_operator(gamma0(2), [pi])
    f = t1 * t1
    g = TruncatedSeries.variable(dim, 2, CAP)
    assert op.apply([f, g]).agrees_with(helpers.biv_action(pi, f, g), CAP - 2)


def test_frozen_three_edge_graph_value():
    # G: edges (1,2),(1,3),(2,3); B = t2 d1^d2 on vertex 1,
    # X = t1 t2 d1 on vertex 2, ground function u = t1^2.
    #
    # Axis assignments (a on (1,2), b on (1,3), c on (2,3)) must pick a
    # component of B at (a,b) and of X at (c), with the edge (1,2)
    # differentiating X:
    #   (1,2,1): B^{12} d1(t1 t2) = t2 * t2   acting as d2 d1 u
    #   (2,1,1): B^{21} d2(t1 t2) = -t2 * t1  acting as d1 d1 u
    # On u = t1^2 only the second survives: -t1 t2 * 2 = -2 t1 t2.
    dim = 2
    t1 = TruncatedSeries.variable(dim, 1, CAP)
    t2 = TruncatedSeries.variable(dim, 2, CAP)
    G = AdmissibleGraph(2, 1, ((1, 2), (1, 3), (2, 3)))
    B = PolyVectorField(dim, 1, {(1, 2): t2})
    X = PolyVectorField(dim, 0, {(1,): t1 * t2})
    val = evaluate_graph(G, [B, X], [t1 * t1])
    assert val.agrees_with((t1 * t2).scale(-2), CAP - 3)


def test_graph_operator_degree_mismatch_gives_zero():
    # the center needs out-degree = wedge factors; a vector field on a
    # two-out-edge vertex contributes nothing
    dim = 2
    v = PolyVectorField(dim, 0, {(1,): TruncatedSeries.variable(dim, 1, CAP)})
    op = graph_operator(gamma0(2), [v])
    assert op.is_zero()


def test_wheel_graph_weight_values():
    # cycle type (2,), no ground vertices:
    #   cross terms: none; internal pairs of the 2-cycle: 1
    #   (-1)^{(0+4)(0+3)/2} = (-1)^6 = +1, (-1)^j = +1, 1/0! = 1
    # so the weight is W_2 = 1/24
    assert wheel_graph_weight((2,), 0) == Fraction(1, 24)
    # with one ground slot: (m+2j)(m+2j-1)/2 = 5*4/2 = 10, still even
    assert wheel_graph_weight((2,), 1) == Fraction(1, 24)
    # two ground slots: 6*5/2 = 15 odd flips the sign, 1/2! halves
    assert wheel_graph_weight((2,), 2) == Fraction(-1, 48)
    # odd cycles carry zero weight
    assert wheel_graph_weight((3,), 0) == 0
    # (2,2): cross = 4 even, j = 4 even, (m+2j)(m+2j-1)/2 = 8*7/2 = 28
    assert wheel_graph_weight((2, 2), 0) == Fraction(1, 24) ** 2


def test_xi_matrix_entries():
    # omega_1 = t2^2 d1 gives Xi^1_2 = 2 eta_1 dt2 and nothing else
    dim = 2
    t2 = TruncatedSeries.variable(dim, 2, CAP)
    mc = MaurerCartanData([PolyVectorField(dim, 0, {(1,): t2 * t2})])
    xi = xi_matrix(mc)
    entry = xi.entries[0][1]
    assert set(entry.terms) == {((1,), (2,))}
    assert entry.terms[((1,), (2,))].constant_term() == 2
    assert xi.entries[0][0].is_zero()
    assert xi.entries[1][0].is_zero()
    assert xi.entries[1][1].is_zero()


def test_linear_twisting_data_is_flat():
    # constant first derivatives make Xi = 0 and det(e^Theta) = 1
    dim = 2
    mc = MaurerCartanData([
        PolyVectorField(dim, 0, {(1,): TruncatedSeries.variable(dim, 2, CAP)})])
    xi = xi_matrix(mc)
    assert all(xi.entries[i][j].is_zero() for i in range(2) for j in range(2))
    theta, det = theta_and_det(xi)
    assert det == det.one_like()
    gamma = PolyVectorField.from_wedge(dim, (1, 2))
    closed = closed_form_map(mc, gamma)
    assert list(closed.parts) == [()]
    assert closed.parts[()] == hkr(gamma)


def test_wheel_identity_d2_frozen_coefficient():
    # omega_1 = t2^2 d1, omega_2 = t1^2 d2, gamma = d1^d2.
    # Xi^1_2 = 2 eta_1 dt2, Xi^2_1 = 2 eta_2 dt1, so
    # tr Xi^2 = 8 eta_1 eta_2 dt1 dt2 (both reorderings contribute +).
    # Theta's l=2 sign is -(W_2/2) = -1/48, so tr Theta =
    # -(1/6) eta_1 eta_2 dt1 dt2 and det = 1 - (1/6) eta_1 eta_2 dt1 dt2.
    # Contraction of dt1^dt2 into d1^d2 is -1 (iterated interior
    # product), leaving +1/6 as the eta_1 eta_2 component.
    dim = 2
    u1 = TruncatedSeries.variable(dim, 1, CAP)
    u2 = TruncatedSeries.variable(dim, 2, CAP)
    mc = MaurerCartanData([
        PolyVectorField(dim, 0, {(1,): u2 * u2}),
        PolyVectorField(dim, 0, {(2,): u1 * u1}),
    ])
    gamma = PolyVectorField.from_wedge(dim, (1, 2))
    # the contraction convention the derivation above relies on:
    form = DifferentialForm.from_basis(dim, (1, 2), 1)
    assert contract(form, gamma).as_function().constant_term() == -1
    for res in (twisted_first_taylor(mc, gamma), closed_form_map(mc, gamma)):
        part = res.parts[(1, 2)]
        assert part.degree == -1
        assert part.terms[()].constant_term() == Fraction(1, 6)
        # the eta-free part is the untwisted quantization
        assert res.parts[()].agrees_with(hkr(gamma), CAP - 3)


def test_twisted_taylor_j0_is_u_one():
    dim = 3
    t2 = TruncatedSeries.variable(dim, 2, CAP)
    mc = MaurerCartanData([PolyVectorField(dim, 0, {(1,): t2})])
    gamma = PolyVectorField.from_wedge(dim, (1, 3))
    res = twisted_first_taylor(mc, gamma, j_max=0)
    assert list(res.parts) == [()]
    assert res.parts[()].agrees_with(u_one(gamma), CAP - 2)


def test_wheel_identity_with_ground_slot():
    # a d=3 variant where the surviving operator keeps one argument slot
    dim = 3
    s1 = TruncatedSeries.variable(dim, 1, CAP)
    s2 = TruncatedSeries.variable(dim, 2, CAP)
    mc = MaurerCartanData([
        PolyVectorField(dim, 0, {(1,): s2 * s2}),
        PolyVectorField(dim, 0, {(2,): s1 * s1}),
    ])
    gamma = PolyVectorField.from_wedge(dim, (1, 2, 3))
    lhs = twisted_first_taylor(mc, gamma)
    rhs = closed_form_map(mc, gamma)
    assert lhs.agrees_with(rhs, CAP - 3)
    part = lhs.parts[(1, 2)]
    assert part.degree == 0   # one slot left over


def test_todd_series_coefficients():
    q = todd_series(6)
    assert q.coeffs[:5] == [Fraction(1), Fraction(1, 2), Fraction(1, 12),
                            Fraction(0), Fraction(-1, 720)]
    qt = tilde_todd_series(6)
    assert qt.coeffs[:5] == [Fraction(1), Fraction(0), Fraction(-1, 24),
                             Fraction(0), Fraction(7, 5760)]
    prod = q * exp_half_series(6, sign=-1)
    assert prod.truncate(6).coeffs == qt.truncate(6).coeffs


def test_eta_operator_agreement_tolerates_word_mismatch():
    a = EtaOperator(2, {})
    b = EtaOperator(2, {})
    assert a.agrees_with(b, 4)
