from fractions import Fraction

import pytest

from coringlab.algebra_bimodule import ground, regular, vector_space
from coringlab.bialgebra_hopf import (Bialgebra, EntwiningMap, HopfModule, _cyclic_table, bimonad_compat_check,
                                      build_psi, check_bialgebra, check_entwining, cyclic_group_bialgebra,
                                      distributive_law_probe, dual_group_bialgebra, entwined_coring, find_antipode,
                                      free_hopf_module, fundamental_theorem_probe, gamma_map, group_bialgebra,
                                      hom_contra_action, hom_module, hopf_characterisation_battery,
                                      hopf_cointegral, hopf_coring, hopf_coring_isomorphism, hopf_module_convert,
                                      hopf_contramodule_check, idempotent_monoid_bialgebra, regular_right,
                                      s3_bialgebra, sweedler_h4, trivial_bialgebra, trivial_module,
                                      twist_entwining)
from coringlab.exact_linalg import QQ, kron
from coringlab.ring_coring import check_coring, grouplike_coalgebra

from conftest import F5, failed_names, group_algebra

KLEIN = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


@pytest.fixture(scope="module")
def h4():
    return sweedler_h4(QQ)


def small_bialgebras(F):
    return [trivial_bialgebra(F), cyclic_group_bialgebra(F, 2), cyclic_group_bialgebra(F, 3),
            group_bialgebra(F, KLEIN, "kV4"), dual_group_bialgebra(F, _cyclic_table(2)),
            dual_group_bialgebra(F, _cyclic_table(3)), idempotent_monoid_bialgebra(F)]


# -- oracles written from the defining formulas on group-like bases ------------

def grouplike_psi_r(F, n):
    """psi_r(a (x) b) = b (x) ab on C_n, a (x) b at index a*n + b."""
    ent = [[0] * (n * n) for _ in range(n * n)]
    for a in range(n):
        for b in range(n):
            ent[b * n + (a + b) % n][a * n + b] = 1
    return F.matrix(ent)


def h4_antipode(F):
    """S(1) = 1, S(g) = g, S(x) = -gx, S(gx) = x on the basis 1, g, x, gx."""
    return F.matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])


# -- bialgebras ----------------------------------------------------------------

def test_small_bialgebras_pass(field):
    for H in small_bialgebras(field):
        assert check_bialgebra(H).ok, H.name


def test_h4_passes(h4):
    assert check_bialgebra(h4).ok
    with pytest.raises(ValueError):
        sweedler_h4(__import__("coringlab.exact_linalg", fromlist=["GF"]).GF(2))


def test_broken_comultiplication_fails(field):
    H = cyclic_group_bialgebra(field, 2)
    # Delta(g) = g (x) 1
    D = H.comult.tolist()
    D[3][1], D[2][1] = 0, 1
    bad = Bialgebra(H.algebra, field.matrix(D), H.counit, "bad")
    rep = check_bialgebra(bad)
    assert not rep.ok
    assert rep.first_failure().name in {"coassociativity", "left counit", "right counit"}
    # g -> g (x) 1 is still multiplicative, so only the counit law breaks
    assert bimonad_compat_check(bad, "tensor", (1,)).ok
    doubled = Bialgebra(H.algebra, H.comult.scale(2), H.counit, "2Delta")
    assert not bimonad_compat_check(doubled, "tensor", (1,)).ok


# -- entwinings and corings ------------------------------------------------------

def test_psi_examples(field, h4):
    E = build_psi(trivial_bialgebra(field))
    assert E.psi == field.identity(1)
    assert build_psi(cyclic_group_bialgebra(field, 2)).psi == grouplike_psi_r(field, 2)
    assert build_psi(cyclic_group_bialgebra(field, 3)).psi == grouplike_psi_r(field, 3)
    assert check_entwining(build_psi(h4, "l")).ok


def test_every_bialgebra_entwines(field):
    for H in small_bialgebras(field):
        for flavor in ("r", "l"):
            assert check_entwining(build_psi(H, flavor)).ok, (H.name, flavor)
            assert check_coring(entwined_coring(build_psi(H, flavor))).ok, (H.name, flavor)


def test_twist_entwining_commutative(field):
    B = group_algebra(field, 3)
    C = grouplike_coalgebra(field, 2)
    for flavor in ("r", "l"):
        assert check_entwining(twist_entwining(B, C, flavor)).ok


def test_non_entwining_fails(field):
    H = cyclic_group_bialgebra(field, 2)
    E = build_psi(H)
    bad = EntwiningMap(E.psi.scale(0), E.B, E.C, "r")
    assert failed_names(check_entwining(bad)) >= {"unit", "counit"}


def test_entwined_corings(field, h4):
    C = entwined_coring(build_psi(trivial_bialgebra(field)))
    assert C.dim == 1 and check_coring(C).ok
    C = hopf_coring(cyclic_group_bialgebra(field, 2))
    assert C.dim == 4 and check_coring(C).ok
    C = hopf_coring(h4, "l")
    assert C.dim == 16 and check_coring(C).ok


# -- Hopf modules and Hopf contramodules -------------------------------------------

def test_hopf_modules(field):
    for H in small_bialgebras(field):
        P = HopfModule(H, regular_right(H), H.comult, H.name)
        N, rep = hopf_module_convert(P)
        assert rep.ok, H.name
    H = cyclic_group_bialgebra(field, 2)
    assert hopf_module_convert(free_hopf_module(H, 2))[1].ok


def test_one_dimensional_module_is_not_hopf(field):
    # every Hopf module over kC2 is free over kC2, so dimension 1 is impossible
    H = cyclic_group_bialgebra(field, 2)
    P = HopfModule(H, trivial_module(H, 1), kron(field.identity(1), H.unit), "k")
    N, rep = hopf_module_convert(P)
    assert N is None and failed_names(rep) == {"pentagon"}
    assert hopf_module_convert(HopfModule(trivial_bialgebra(field), trivial_module(trivial_bialgebra(field), 1),
                                          field.identity(1), "k"))[1].ok


def test_flipped_coaction_fails(h4):
    # h -> h2 (x) h1 keeps the counit law but is coassociative only for Delta^cop, not Delta
    P = HopfModule(h4, regular_right(h4), h4.tw @ h4.comult, "flipped")
    N, rep = hopf_module_convert(P)
    assert N is None and failed_names(rep) == {"coassociativity", "pentagon"}
    assert hopf_module_convert(HopfModule(h4, regular_right(h4), h4.comult, "H"))[1].ok


def test_hopf_contramodules(field):
    H = cyclic_group_bialgebra(field, 2)
    out, rep = hopf_contramodule_check(H, hom_module(H, 1), hom_contra_action(H, 1))
    assert rep.ok and out is not None
    K = trivial_bialgebra(field)
    out, rep = hopf_contramodule_check(K, trivial_module(K, 2), field.identity(2))
    assert rep.ok
    bad = hom_contra_action(H, 1).scale(0)
    out, rep = hopf_contramodule_check(H, hom_module(H, 1), bad)
    assert out is None and "contramodule: unit" in failed_names(rep)


# -- distributive laws and bimonads --------------------------------------------

def test_distributive_laws(field, h4):
    K = trivial_bialgebra(field)
    H = cyclic_group_bialgebra(field, 2)
    for flavor in ("r", "l"):
        assert distributive_law_probe(K, flavor).ok
        assert distributive_law_probe(H, flavor, (1, 2, 2)).ok
        assert distributive_law_probe(h4, flavor, (1,)).ok


def test_bimonad_compat(field):
    for H in (trivial_bialgebra(field), cyclic_group_bialgebra(field, 2)):
        for side in ("tensor", "hom"):
            assert bimonad_compat_check(H, side, (1, 2)).ok


# -- antipodes and gamma -------------------------------------------------------

def test_antipodes(field, h4):
    r = find_antipode(cyclic_group_bialgebra(field, 2))
    assert r.found and r.S == field.identity(2) and r.report.ok
    r = find_antipode(idempotent_monoid_bialgebra(field))
    assert not r.found and r.info["augmented_rank"] > r.info["rank"]
    r = find_antipode(h4)
    assert r.found and r.S == h4_antipode(QQ) and r.report.ok


def test_antipode_consequences_and_inversion(field):
    for H in small_bialgebras(field)[:-1] + [s3_bialgebra(field)]:
        r = find_antipode(H)
        assert r.found and r.report.ok, H.name
    r = find_antipode(s3_bialgebra(field))
    assert r.report.get("S permutes the group basis by inversion").ok


def test_gamma(field):
    g = gamma_map(trivial_bialgebra(field))
    assert g.gamma == field.identity(1)
    H = cyclic_group_bialgebra(field, 2)
    g = gamma_map(H)
    e = field.basis_vector
    assert g.invertible and g.gamma @ e(4, 1 * 2 + 1) == e(4, 1 * 2 + 0)
    M = idempotent_monoid_bialgebra(field)
    g = gamma_map(M)
    assert g.rank == 3 and not g.invertible
    assert g.gamma @ e(4, 1 * 2 + 0) == g.gamma @ e(4, 1 * 2 + 1) == e(4, 1 * 2 + 1)


# -- coring isomorphism and cointegral ---------------------------------------------

def test_hopf_coring_isomorphism(field, h4):
    for H in (trivial_bialgebra(field), cyclic_group_bialgebra(field, 2)):
        r2l, l2r, rep = hopf_coring_isomorphism(H)
        assert rep.ok and r2l.shape == (H.dim ** 2, H.dim ** 2)
    r2l, l2r, rep = hopf_coring_isomorphism(h4)
    assert rep.ok and r2l.shape == (16, 16)
    with pytest.raises(ValueError, match="no antipode"):
        hopf_coring_isomorphism(idempotent_monoid_bialgebra(field))


def test_hopf_cointegral(field, h4):
    delta, rep = hopf_cointegral(trivial_bialgebra(field))
    assert rep.ok
    H = cyclic_group_bialgebra(field, 2)
    delta, rep = hopf_cointegral(H)
    assert rep.ok
    C = hopf_coring(H)
    e = field.basis_vector
    one_g = e(4, 0 * 2 + 1)
    assert delta @ C.T2.proj @ kron(one_g, one_g) == e(2, 0)
    assert hopf_cointegral(h4)[1].ok


# -- fundamental theorems and the battery ------------------------------------------

def test_fundamental_theorem(field):
    rep = fundamental_theorem_probe(trivial_bialgebra(field))
    assert rep.ok and rep.data["verdicts"] == {"h": True, "i": True}
    rep = fundamental_theorem_probe(cyclic_group_bialgebra(field, 2))
    assert rep.ok and rep.data["verdicts"] == {"h": True, "i": True}
    rep = fundamental_theorem_probe(idempotent_monoid_bialgebra(field))
    assert rep.data["verdicts"] == {"h": False, "i": False}
    assert all("rank" in c.witness or "dim_L" in c.witness for c in rep.checks if c.verdict == "fail")


@pytest.mark.parametrize("build, hopf", [(lambda F: cyclic_group_bialgebra(F, 2), True),
                                         (lambda F: cyclic_group_bialgebra(F, 3), True),
                                         (idempotent_monoid_bialgebra, False),
                                         (trivial_bialgebra, True)])
def test_battery(field, build, hopf):
    rep = hopf_characterisation_battery(build(field))
    assert rep.ok
    assert rep.data["hopf"] is hopf
    assert set(rep.data["verdicts"].values()) == {hopf}
