from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coringlab.algebra_bimodule import (Module, Tensor, bimodule_maps, direct_sum, ground, regular,
                                        vector_space)
from coringlab.bialgebra_hopf import cyclic_group_bialgebra, hopf_coring
from coringlab.exact_linalg import QQ, hstack, is_bijective, is_surjective, kron
from coringlab.ring_coring import (Coring, Ring, adjunction_counit, adjunction_unit, check_a_ring, check_coring,
                                   comonad_laws, convolution_ring, default_probes, grouplike_coalgebra,
                                   hom_comonad_data, hom_component, hom_monad_data, mate_of_bimodule_map,
                                   matrix_coalgebra, monad_laws, ring_from_algebra, tensor_component,
                                   triangle_identities, trivial_coring, trivial_ring, yoneda_reduce)

from conftest import F5, dual_numbers, failed_names, group_algebra, matrix_algebra, scalars


def corings(F):
    return [trivial_coring(group_algebra(F, 2)), trivial_coring(matrix_algebra(F)),
            grouplike_coalgebra(F, 2), matrix_coalgebra(F), hopf_coring(cyclic_group_bialgebra(F, 2))]


def rings(F):
    k = ground(F)
    kc2 = group_algebra(F, 2)
    return [trivial_ring(kc2), trivial_ring(dual_numbers(F)),
            ring_from_algebra(kc2, k, F.vector([1, 0])),
            ring_from_algebra(matrix_algebra(F), k, F.vector([1, 0, 0, 1]))]


# -- rings ---------------------------------------------------------------------

def test_ring_examples(field):
    for B in rings(field):
        assert check_a_ring(B).ok, B.name


def test_wrong_unit_fails(field):
    kc2 = group_algebra(field, 2)
    good = ring_from_algebra(kc2, ground(field), field.vector([1, 0]))
    bad = Ring(good.carrier, good.mu, field.vector([0, 1]), "kC2, iota(1) = g")
    rep = check_a_ring(bad)
    assert failed_names(rep) == {"left unit", "right unit"}


# -- corings -------------------------------------------------------------------

def test_coring_examples(field):
    for C in corings(field):
        assert check_coring(C).ok, C.name


def test_zero_counit_fails(field):
    C = matrix_coalgebra(field)
    bad = Coring(C.carrier, C.delta, field.zeros(1, 4), "eps = 0")
    assert failed_names(check_coring(bad)) == {"left counit", "right counit"}


def test_bad_comultiplication_fails_coassociativity():
    C = matrix_coalgebra(QQ)
    # Delta(e_ij) = e_ij (x) e_ij is coassociative, so break it on one generator only
    d = C.delta.tolist()
    d[0][1], d[1][1] = 1, 0
    bad = Coring(C.carrier, QQ.matrix(d), C.eps)
    assert "coassociativity" in failed_names(check_coring(bad))


# -- convolution ---------------------------------------------------------------

def oracle_convolution(C, f, g):
    """(f * g)(c) = f(g(c_1) c_2) for a k-coalgebra, evaluated from the comultiplication table."""
    n = C.dim
    dk = C.delta_k.tolist()
    fv, gv = f.entries(), g.entries()
    return [sum(dk[i * n + j][c] * gv[i] * fv[j] for i in range(n) for j in range(n)) for c in range(n)]


@pytest.mark.parametrize("build", [lambda F: grouplike_coalgebra(F, 2), matrix_coalgebra])
def test_convolution_matches_oracle(field, build):
    C = build(field)
    R = convolution_ring(C)
    H = R.hom
    for s in range(H.dim):
        for t in range(H.dim):
            prod = H.to_map(R.mu_k @ kron(field.basis_vector(H.dim, s), field.basis_vector(H.dim, t)))
            assert prod.entries() == [field.scalar(x) for x in oracle_convolution(C, H.basis_map(s),
                                                                                   H.basis_map(t))]


def test_convolution_shapes(field):
    # grouplike: k x k, the dual basis is a pair of orthogonal idempotents
    R = convolution_ring(grouplike_coalgebra(field, 2))
    A = R.as_algebra()
    e0, e1 = A.e(0), A.e(1)
    assert A.mul(e0, e0) == e0 and A.mul(e1, e1) == e1 and A.mul(e0, e1).is_zero()
    # matrix coalgebra: E_xy = e*_yx are matrix units
    A = convolution_ring(matrix_coalgebra(field)).as_algebra()
    E = lambda x, y: A.e(y * 2 + x)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    want = E(a, d) if b == c else field.zeros(4, 1)
                    assert A.mul(E(a, b), E(c, d)) == want
    # trivial coring over k: C* = k
    assert convolution_ring(trivial_coring(ground(field))).carrier.dim == 1


def test_convolution_rings_pass(field):
    for C in corings(field):
        for side in ("right", "left"):
            assert check_a_ring(convolution_ring(C, side)).ok, (C.name, side)


# -- adjunction ----------------------------------------------------------------

def test_counit_is_evaluation_pairing(field):
    B = vector_space(field, 2)
    H, T, eps = adjunction_counit(vector_space(field, 1), B)
    assert eps.shape == (1, 4) and is_surjective(eps)


def test_unit_for_regular_is_iso(field):
    A = group_algebra(field, 2)
    X = regular(A).forget_left()
    _, H, eta = adjunction_unit(X, regular(A))
    assert is_bijective(eta)


@pytest.mark.parametrize("which", range(3))
def test_triangle_identities_on_probes(field, which):
    A = [group_algebra(field, 2), dual_numbers(field), matrix_algebra(field)][which]
    B = direct_sum(regular(A), regular(A))
    for X in default_probes(A, regular(A)):
        assert triangle_identities(X, B).ok


# -- (co)monads ----------------------------------------------------------------

def test_monad_laws_on_probes(field):
    for C in corings(field):
        for X in default_probes(C.base, C.carrier):
            assert monad_laws(C, X).ok, (C.name, X.name)


def test_monad_examples(field):
    C = matrix_coalgebra(field)
    d = hom_monad_data(C, vector_space(field, 1))
    assert d.HC.dim == 4
    # trivial coring: unit and product are isomorphisms
    A = group_algebra(field, 2)
    d = hom_monad_data(trivial_coring(A), regular(A).forget_left())
    assert is_bijective(d.unit) and is_bijective(d.product)


def test_monad_unit_law_grouplike(field):
    C = grouplike_coalgebra(field, 2)
    X = vector_space(field, 1)
    d = hom_monad_data(C, X)
    from coringlab.ring_coring import monad_unit
    assert d.product @ monad_unit(C, d.HC.module, d.HCC) == field.identity(d.HC.dim)


def test_comonad_laws(field):
    for B in rings(field):
        for X in default_probes(B.base, B.carrier):
            assert comonad_laws(B, X).ok, (B.name, X.name)


def test_comonad_example(field):
    kc2 = group_algebra(field, 2)
    B = ring_from_algebra(kc2, ground(field), field.vector([1, 0]))
    d = hom_comonad_data(B, vector_space(field, 1))
    assert d.HB.dim == 2 and d.coproduct.shape == (d.HBB.dim, 2)


# -- Yoneda reduction ----------------------------------------------------------

def test_yoneda_identity_and_corruption(field):
    A = group_algebra(field, 2)
    B = direct_sum(regular(A), regular(A))
    probes = list(default_probes(A))
    comps = [(X, tensor_component(X, B, B, B.identity())[2]) for X in probes]
    phi, w = yoneda_reduce(comps, B, B)
    assert w is None and phi == B.identity()
    X1, c1 = comps[1]
    bad = c1.tolist()
    bad[0][0] = field.scalar(bad[0][0]) + 1
    comps[1] = (X1, field.matrix(bad))
    phi, w = yoneda_reduce(comps, B, B)
    assert phi == B.identity() and w["probe"] == 1 and w["name"] == "A+A"


def test_yoneda_recovers_multiplication(field):
    B = trivial_ring(matrix_algebra(field))
    T2 = B.T2
    comps = [(X, tensor_component(X, T2.module, B.carrier, B.mu)[2]) for X in default_probes(B.base)]
    phi, w = yoneda_reduce(comps, T2.module, B.carrier)
    assert w is None and phi == B.mu


# -- mates ---------------------------------------------------------------------

def characters(F, A):
    """1-dimensional (kC2, kC2)-bimodules where g acts by +-1 on either side."""
    out = []
    for s in (1, -1):
        for t in (1, -1):
            out.append(Module(A, A, 1, F.matrix([[1, s]]), F.matrix([[1, t]]), f"chi{s:+d}{t:+d}"))
    return out


@st.composite
def kc2_bimodules(draw, F):
    A = group_algebra(F, 2)
    pieces = draw(st.lists(st.sampled_from(characters(F, A) + [regular(A)]), min_size=1, max_size=2))
    return direct_sum(*pieces) if len(pieces) > 1 else pieces[0]


@st.composite
def bilinear_maps(draw, F, M, N):
    S = bimodule_maps(M, N)
    cs = draw(st.lists(scalars(F), min_size=S.dim, max_size=S.dim))
    return S.to_map(F.vector(cs)) if S.dim else F.zeros(N.dim, M.dim)


def test_mate_of_identity_and_unit(field):
    A = group_algebra(field, 2)
    B = direct_sum(regular(A), regular(A))
    rep = mate_of_bimodule_map(B, B, B.identity(), default_probes(A))
    assert rep.ok
    assert all(c.is_identity() for c in rep.data["components"])
    # iota: A -> B as a bimodule map
    R = trivial_ring(A)
    iota = R.iota
    assert mate_of_bimodule_map(regular(A), R.carrier, iota, default_probes(A)).ok


def test_mate_requires_bilinear(field):
    A = group_algebra(field, 2)
    M = characters(field, A)[0]
    N = characters(field, A)[1]
    with pytest.raises(ValueError):
        mate_of_bimodule_map(M, N, field.identity(1), default_probes(A))


@given(st.data())
def test_mate_antimultiplicative_f5(data):
    F = F5
    A = group_algebra(F, 2)
    B1, B2, B3 = (data.draw(kc2_bimodules(F)) for _ in range(3))
    phi = data.draw(bilinear_maps(F, B1, B2))
    psi = data.draw(bilinear_maps(F, B2, B3))
    X = data.draw(st.sampled_from(list(default_probes(A))))
    lhs = hom_component(B1, B3, psi @ phi, X)[2]
    rhs = hom_component(B1, B2, phi, X)[2] @ hom_component(B2, B3, psi, X)[2]
    assert lhs == rhs


@given(st.data())
def test_double_mate_and_invertibility(data):
    F = data.draw(st.sampled_from([QQ, F5]))
    A = group_algebra(F, 2)
    B1 = data.draw(kc2_bimodules(F))
    B2 = data.draw(kc2_bimodules(F))
    phi = data.draw(bilinear_maps(F, B1, B2))
    rep = mate_of_bimodule_map(B1, B2, phi, default_probes(A))
    assert rep.ok
    inv = phi.rows == phi.cols and is_bijective(phi)
    assert inv == all(c.rows == c.cols and is_bijective(c) for c in rep.data["components"])
