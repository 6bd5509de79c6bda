import pytest
from hypothesis import given, settings, strategies as st

from coringlab.algebra_bimodule import HomSpace, Tensor, check_algebra, ground, regular, vector_space
from coringlab.bialgebra_hopf import cyclic_group_bialgebra, grouplike_comodule, idempotent_monoid_bialgebra
from coringlab.comod_contramod import (Bicomodule, Comodule, check_comodule, comodule_direct_sum,
                                       regular_comodule, trivial_comodule)
from coringlab.exact_linalg import QQ, hstack, kron
from coringlab.galois import (GaloisContext, can_comonad, can_comonad_report, can_monad, can_monad_report,
                              can_naturality, comatrix_canonical_map, comatrix_coring, context_from_left_comodule,
                              coring_morphism_report, dual_comodule, endomorphism_ring, fgp_galois_agreement,
                              lemma_comatrix_endomorphisms, verify_structure_theorem, with_endomorphism_action)
from coringlab.ring_coring import (check_coring, default_probes, grouplike_coalgebra, matrix_coalgebra,
                                   trivial_coring)

from conftest import F5, failed_names, group_algebra, scalars


def k(F, d=1):
    return vector_space(F, d, "k" if d == 1 else f"k^{d}")


def standard_comodule(F):
    """k^2 as a left M_2^c-comodule, e_i |-> sum_j e_ij (x) e_j."""
    C = matrix_coalgebra(F)
    V = k(F, 2)
    T = Tensor([C.carrier, V])
    cols = [sum((T.proj @ kron(F.basis_vector(4, 2 * i + j), F.basis_vector(2, j)) for j in range(2)),
                F.zeros(T.dim, 1)) for i in range(2)]
    return Comodule(C, V, hstack(cols), "left", "V")


def trivial_context(F):
    return context_from_left_comodule(trivial_comodule(vector_space(F, 1, "k"), "left"))


# -- canonical maps ------------------------------------------------------------

def test_can_monad_trivial(field):
    rep = can_monad_report(trivial_context(field))
    assert rep.ok


def test_can_monad_hopf_kc2(field):
    ctx = context_from_left_comodule(grouplike_comodule(cyclic_group_bialgebra(field, 2)))
    assert can_monad_report(ctx).ok


def test_can_monad_needs_large_enough_base(field):
    C = matrix_coalgebra(field)
    CC = comodule_direct_sum(regular_comodule(C, "left"), regular_comodule(C, "left"))
    rep = can_monad_report(context_from_left_comodule(CC))
    assert not rep.ok
    w = rep.first_failure().witness
    assert w["rank"] < min(w["shape"]) or w["shape"][0] != w["shape"][1]
    # with B = End^C(C + C) acting on the right the map becomes bijective
    NB, T, E = with_endomorphism_action(CC)
    assert T.dim == 16
    assert can_monad_report(context_from_left_comodule(NB)).ok


def test_can_monad_standard_comodule(field):
    assert can_monad_report(context_from_left_comodule(standard_comodule(field))).ok


@given(st.data())
def test_can_naturality(data):
    F = data.draw(st.sampled_from([QQ, F5]))
    ctx = context_from_left_comodule(standard_comodule(F))
    X, Y = k(F, data.draw(st.integers(1, 2))), k(F, data.draw(st.integers(1, 2)))
    ent = data.draw(st.lists(scalars(F), min_size=X.dim * Y.dim, max_size=X.dim * Y.dim))
    h = F.from_entries(Y.dim, X.dim, ent)
    assert can_naturality(ctx, X, Y, h).ok


def test_can_comonad(field):
    ctx = trivial_context(field)
    assert can_comonad_report(ctx, [k(field), k(field, 2)]).ok
    ctx = context_from_left_comodule(grouplike_comodule(cyclic_group_bialgebra(field, 2)))
    assert can_comonad_report(ctx, [k(field), k(field, 2)]).ok


def test_can_comonad_corrupted_coaction(field):
    N = standard_comodule(field)
    bad = Comodule(N.coring, N.module, N.rho.scale(0), "left", "broken")
    assert not check_comodule(bad).ok
    ct, can, rep = can_comonad(context_from_left_comodule(bad), k(field))
    w = rep.first_failure().witness
    assert not rep.ok and w["rank"] < max(w["shape"])


# -- duals, comatrix corings ---------------------------------------------------

def test_dual_comodule_examples(field):
    A = group_algebra(field, 2)
    D = dual_comodule(trivial_comodule(regular(A).forget_right(), "left"))
    assert check_comodule(D).ok and D.dim == 2
    for C in (grouplike_coalgebra(field, 2), matrix_coalgebra(field)):
        D = dual_comodule(regular_comodule(C, "left"))
        assert check_comodule(D).ok and D.dim == C.dim


def test_comatrix_examples(field):
    cm = comatrix_coring(k(field))
    assert check_coring(cm.coring).ok and cm.coring.dim == 1
    cm = comatrix_coring(k(field, 2))
    C = matrix_coalgebra(field)
    assert check_coring(cm.coring).ok
    # with the standard dual basis the constants coincide with M_2^c
    assert cm.coring.delta == C.delta and cm.coring.eps == C.eps
    assert lemma_comatrix_endomorphisms(cm).ok


def test_comatrix_hopf_case(field):
    H = cyclic_group_bialgebra(field, 2)
    N = grouplike_comodule(H)
    cm = comatrix_coring(N.module)
    assert check_coring(cm.coring).ok
    phi, rep = comatrix_canonical_map(N, cm)
    assert rep.ok
    assert coring_morphism_report(phi, cm.coring, N.coring).ok


def test_non_projective_refused():
    from conftest import dual_numbers, module_from_actions
    A = dual_numbers(QQ)
    S = module_from_actions(A, [QQ.identity(1), QQ.zeros(1, 1)], "left")
    with pytest.raises(ValueError, match="not finitely generated projective"):
        comatrix_coring(S)


# -- endomorphism rings --------------------------------------------------------

def test_endomorphism_rings(field):
    T, E = endomorphism_ring(trivial_comodule(k(field)))
    assert T.dim == 1 and check_algebra(T).ok
    C = matrix_coalgebra(field)
    T, E = endomorphism_ring(regular_comodule(C))
    assert T.dim == 4 and check_algebra(T).ok
    CC = comodule_direct_sum(regular_comodule(C), regular_comodule(C))
    T, E = endomorphism_ring(CC)
    # End^C(C + C) = M_2(End^C(C)) has dimension 4 * 4
    assert T.dim == 16 and check_algebra(T).ok


# -- structure theorem and the four Galois conditions --------------------------

def test_structure_theorem_trivial(field):
    assert verify_structure_theorem(trivial_context(field)).ok


def test_structure_theorem_hopf_kc2(field):
    ctx = context_from_left_comodule(grouplike_comodule(cyclic_group_bialgebra(field, 2)))
    rep = verify_structure_theorem(ctx)
    assert rep.ok
    for claim in ("(1)", "(2)", "(3)", "(4)", "(5)"):
        assert any(c.name.startswith(claim) for c in rep.checks)


def test_structure_theorem_refuses_nontrivial_d(field):
    C = grouplike_coalgebra(field, 2)
    N = Bicomodule(regular_comodule(C, "left"), regular_comodule(C, "right"), "C")
    rep = verify_structure_theorem(GaloisContext(N))
    assert [c.verdict for c in rep.checks] == ["unsupported"]


def test_galois_agreement(field):
    rep = fgp_galois_agreement(grouplike_comodule(cyclic_group_bialgebra(field, 2)))
    assert rep.ok and set(rep.data["verdicts"].values()) == {True}
    rep = fgp_galois_agreement(grouplike_comodule(idempotent_monoid_bialgebra(field)))
    assert rep.data["verdicts"] == {"a": False, "b": False, "c": False, "d": False}
    assert "unanimous" not in failed_names(rep)
    rep = fgp_galois_agreement(trivial_comodule(k(field), "left"))
    assert rep.ok and set(rep.data["verdicts"].values()) == {True}


def test_galois_agreement_standard(field):
    rep = fgp_galois_agreement(standard_comodule(field))
    assert rep.ok
