"""Bialgebras, entwinings, the two Hopf corings and the Hopf characterisation battery.

A bialgebra H lives over the ground field k.  The two entwinings

    psi_r(a (x) b) = b1 (x) a b2        (C (x) B -> B (x) C)
    psi_l(a (x) b) = a1 b (x) a2        (B (x) C -> C (x) B)

produce the H-corings H(x)^r H and H(x)^l H.  Functor-level checks work with
the endofunctors - (x) H and Hom(H, -) on finite-dimensional k-spaces; both
send a map phi to kron(phi, I_H) in our coordinates (lexicographic tensors,
row-major Hom), so only the natural transformations differ between the two.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from .algebra_bimodule import (Algebra, HomSpace, Module, Tensor, check_algebra, ground,
                               is_bilinear, is_right_linear, vector_space)
from .comod_contramod import (Comodule, Contramodule, check_cointegral, check_comodule,
                              check_contramodule, comodule_hom_space, induced_contramodule,
                              regular_bicomodule)
from .exact_linalg import (Field, Matrix, flatten, hstack, is_bijective, kernel, kron,
                           factor_permutation, solve, twist, unflatten, vstack)
from .report import Report, first_difference, scalar_json
from .ring_coring import Coring, check_coring


# ---------------------------------------------------------------------------
# bialgebras

@dataclass(frozen=True, eq=False)
class Bialgebra:
    """Algebra data plus comult: H -> H (x) H and counit: H -> k.

    ``group`` optionally records a group table on the basis (group[i][j] is
    the index of e_i e_j) so that antipodes can be compared with inversion.
    """

    algebra: Algebra
    comult: Matrix
    counit: Matrix
    name: str = ""
    group: tuple | None = None

    def __post_init__(self):
        n = self.algebra.dim
        if self.comult.shape != (n * n, n) or self.counit.shape != (1, n):
            raise ValueError(f"malformed bialgebra {self.name!r}: comult {self.comult.shape}, "
                             f"counit {self.counit.shape}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def mu(self) -> Matrix:
        return self.algebra.mult

    @property
    def unit(self) -> Matrix:
        return self.algebra.unit

    @cached_property
    def I(self) -> Matrix:
        return self.field.identity(self.dim)

    @cached_property
    def tw(self) -> Matrix:
        return twist(self.field, self.dim, self.dim)

    @cached_property
    def coalgebra(self) -> Coring:
        F, n = self.field, self.dim
        k = ground(F)
        carrier = Module(k, k, n, F.identity(n), F.identity(n), self.name)
        return Coring(carrier, self.comult, self.counit, self.name)

    @cached_property
    def mu3(self) -> Matrix:
        """(a, b, c) |-> abc."""
        return self.mu @ kron(self.mu, self.I)

    @cached_property
    def delta2(self) -> Matrix:
        """a |-> a1 (x) a2 (x) a3."""
        return kron(self.comult, self.I) @ self.comult

    @classmethod
    def from_constants(cls, F: Field, mult, unit, comult, counit, name: str = "", group=None):
        """mult[i][j] = coords of e_i e_j; comult[i] = n x n coefficient array of Delta(e_i)."""
        A = Algebra.from_constants(F, mult, unit, name)
        n = A.dim
        cols = [[comult[i][j][l] for j in range(n) for l in range(n)] for i in range(n)]
        D = F.matrix([[cols[i][r] for i in range(n)] for r in range(n * n)])
        return cls(A, D, F.matrix([list(counit)]), name, group)


def bialgebra_laws(H: Bialgebra) -> dict:
    mu, u, D, e, I = H.mu, H.unit, H.comult, H.counit, H.I
    F = H.field
    psi = build_psi(H, "r").psi
    one = F.identity(1)
    return {
        "coassociativity": lambda: (kron(D, I) @ D, kron(I, D) @ D),
        "left counit": lambda: (kron(e, I) @ D, I),
        "right counit": lambda: (kron(I, e) @ D, I),
        "compatibility Delta mu = (mu (x) I)(I (x) psi_r)(Delta (x) I)": lambda: (
            D @ mu, kron(mu, I) @ kron(I, psi) @ kron(D, I)),
        "eps multiplicative": lambda: (e @ mu, kron(e, e)),
        "eps(1) = 1": lambda: (e @ u, one),
        "Delta(1) = 1 (x) 1": lambda: (D @ u, kron(u, u)),
    }


def check_bialgebra(H: Bialgebra) -> Report:
    rep = Report(f"check bialgebra {H.name}")
    rep.extend(check_algebra(H.algebra), "algebra: ")
    for k, law in bialgebra_laws(H).items():
        rep.law(k, law)
    return rep


# ---------------------------------------------------------------------------
# example bialgebras

def _cyclic_table(n: int) -> tuple:
    return tuple(tuple((i + j) % n for j in range(n)) for i in range(n))


def _s3_table() -> tuple:
    import itertools
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    return tuple(tuple(idx[tuple(p[q[x]] for x in range(3))] for q in perms) for p in perms)


def group_bialgebra(F: Field, table: Sequence[Sequence[int]], name: str = "") -> Bialgebra:
    """kG with grouplike basis; ``table`` is the multiplication table, identity first."""
    n = len(table)
    if any(table[0][j] != j or table[j][0] != j for j in range(n)):
        raise ValueError("the identity element must come first in the group table")
    mult = [[[1 if table[i][j] == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    comult = [[[1 if (j == i and l == i) else 0 for l in range(n)] for j in range(n)] for i in range(n)]
    return Bialgebra.from_constants(F, mult, [1] + [0] * (n - 1), comult, [1] * n,
                                    name or f"kG{n}", tuple(tuple(r) for r in table))


def cyclic_group_bialgebra(F: Field, n: int) -> Bialgebra:
    return group_bialgebra(F, _cyclic_table(n), f"kC{n}")


def s3_bialgebra(F: Field) -> Bialgebra:
    return group_bialgebra(F, _s3_table(), "kS3")


def dual_group_bialgebra(F: Field, table: Sequence[Sequence[int]], name: str = "") -> Bialgebra:
    """k^G: delta_g delta_h = [g = h] delta_g, Delta(delta_g) = sum_{ab = g} delta_a (x) delta_b."""
    n = len(table)
    mult = [[[1 if (i == j == k) else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    comult = [[[1 if table[a][b] == g else 0 for b in range(n)] for a in range(n)] for g in range(n)]
    return Bialgebra.from_constants(F, mult, [1] * n, comult, [1] + [0] * (n - 1), name or f"k^G{n}")


def sweedler_h4(F: Field) -> Bialgebra:
    """Basis 1, g, x, gx; g^2 = 1, x^2 = 0, xg = -gx; Delta g = g (x) g, Delta x = x (x) 1 + g (x) x."""
    if F.characteristic == 2:
        raise ValueError("Sweedler's algebra needs characteristic different from 2")
    # basis index 2b + a stands for g^a x^b
    def mono(i):
        return i % 2, i // 2

    mult = []
    for i in range(4):
        row = []
        for j in range(4):
            (a, b), (c, d) = mono(i), mono(j)
            v = [0] * 4
            if b + d < 2:
                v[2 * (b + d) + (a + c) % 2] = (-1) ** (b * c)
            row.append(v)
        mult.append(row)
    z = [[0] * 4 for _ in range(4)]
    comult = [[r[:] for r in z] for _ in range(4)]
    comult[0][0][0] = 1                      # 1 (x) 1
    comult[1][1][1] = 1                      # g (x) g
    comult[2][2][0] = 1                      # x (x) 1
    comult[2][1][2] = 1                      # g (x) x
    comult[3][3][1] = 1                      # gx (x) g
    comult[3][0][3] = 1                      # 1 (x) gx
    return Bialgebra.from_constants(F, mult, [1, 0, 0, 0], comult, [1, 1, 0, 0], "H4")


def idempotent_monoid_bialgebra(F: Field) -> Bialgebra:
    """k{1, e}, e^2 = e, both basis elements grouplike."""
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 1]]]
    comult = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    return Bialgebra.from_constants(F, mult, [1, 0], comult, [1, 1], "k{1,e}")


def trivial_bialgebra(F: Field) -> Bialgebra:
    return Bialgebra.from_constants(F, [[[1]]], [1], [[[1]]], [1], "k")


# ---------------------------------------------------------------------------
# entwinings

@dataclass(frozen=True, eq=False)
class EntwiningMap:
    """flavor "r": psi: C (x) B -> B (x) C; flavor "l": psi: B (x) C -> C (x) B."""

    psi: Matrix
    B: Algebra
    C: Coring
    flavor: str = "r"
    name: str = ""

    def __post_init__(self):
        if self.flavor not in ("r", "l"):
            raise ValueError("flavor must be 'r' or 'l'")
        d = self.B.dim * self.C.dim
        if self.psi.shape != (d, d):
            raise ValueError(f"entwining map has shape {self.psi.shape}, expected {(d, d)}")
        if self.C.base.dim != 1:
            raise ValueError("entwinings are taken with a k-coalgebra")


def build_psi(H: Bialgebra, flavor: str = "r") -> EntwiningMap:
    I, mu, D, tw = H.I, H.mu, H.comult, H.tw
    if flavor == "r":
        psi = kron(I, mu) @ kron(tw, I) @ kron(I, D)        # a (x) b |-> b1 (x) a b2
    elif flavor == "l":
        psi = kron(mu, I) @ kron(I, tw) @ kron(D, I)        # a (x) b |-> a1 b (x) a2
    else:
        raise ValueError("flavor must be 'r' or 'l'")
    return EntwiningMap(psi, H.algebra, H.coalgebra, flavor, f"psi_{flavor}({H.name})")


def twist_entwining(B: Algebra, C: Coring, flavor: str = "r") -> EntwiningMap:
    F = B.field
    psi = twist(F, C.dim, B.dim) if flavor == "r" else twist(F, B.dim, C.dim)
    return EntwiningMap(psi, B, C, flavor, "twist")


def entwining_laws(E: EntwiningMap) -> dict:
    F = E.B.field
    b, c = E.B.dim, E.C.dim
    Ib, Ic = F.identity(b), F.identity(c)
    mu, u = E.B.mult, E.B.unit
    D, e = E.C.delta, E.C.eps
    psi = E.psi
    if E.flavor == "r":
        return {
            "multiplication": lambda: (psi @ kron(Ic, mu), kron(mu, Ic) @ kron(Ib, psi) @ kron(psi, Ib)),
            "unit": lambda: (psi @ kron(Ic, u), kron(u, Ic)),
            "comultiplication": lambda: (kron(Ib, D) @ psi, kron(psi, Ic) @ kron(Ic, psi) @ kron(D, Ib)),
            "counit": lambda: (kron(Ib, e) @ psi, kron(e, Ib)),
        }
    return {
        "multiplication": lambda: (psi @ kron(mu, Ic), kron(Ic, mu) @ kron(psi, Ib) @ kron(Ib, psi)),
        "unit": lambda: (psi @ kron(u, Ic), kron(Ic, u)),
        "comultiplication": lambda: (kron(D, Ib) @ psi, kron(Ic, psi) @ kron(psi, Ic) @ kron(Ib, D)),
        "counit": lambda: (kron(e, Ib) @ psi, kron(Ib, e)),
    }


def check_entwining(E: EntwiningMap) -> Report:
    rep = Report(f"check entwining {E.name}")
    for k, law in entwining_laws(E).items():
        rep.law(k, law)
    return rep


def entwined_coring(E: EntwiningMap, name: str = "") -> Coring:
    """The B-coring B (x) C (flavor r) or C (x) B (flavor l) of an entwining."""
    B, C = E.B, E.C
    F = B.field
    b, c = B.dim, C.dim
    Ib, Ic = F.identity(b), F.identity(c)
    mu, u = B.mult, B.unit
    if E.flavor == "r":
        # d . (a (x) x) . e = d a psi(x (x) e)
        lact = kron(mu, Ic)
        ract = kron(mu, Ic) @ kron(Ib, E.psi)
        M = Module(B, B, b * c, lact, ract, name or f"B(x)^r C")
        T2 = Tensor([M, M])
        delta = T2.proj @ kron(Ib, Ic, u, Ic) @ kron(Ib, C.delta)
        eps = kron(Ib, C.eps)
    else:
        # d . (x (x) a) . e = psi(d (x) x) a e
        lact = kron(Ic, mu) @ kron(E.psi, Ib)
        ract = kron(Ic, mu)
        M = Module(B, B, b * c, lact, ract, name or f"C(x)^l B")
        T2 = Tensor([M, M])
        delta = T2.proj @ kron(Ic, u, Ic, Ib) @ kron(C.delta, Ib)
        eps = kron(C.eps, Ib)
    out = Coring(M, delta, eps, name or M.name)
    out.__dict__["T2"] = T2
    return out


def hopf_coring(H: Bialgebra, flavor: str = "r") -> Coring:
    """H(x)^r H or H(x)^l H; cached on H since the tensor data is costly for larger H."""
    key = f"_hopf_coring_{flavor}"
    if key not in H.__dict__:
        H.__dict__[key] = entwined_coring(build_psi(H, flavor), f"{H.name}(x)^{flavor}{H.name}")
    return H.__dict__[key]


def grouplike_comodule(H: Bialgebra, flavor: str = "r") -> Comodule:
    """H as a left comodule over H(x)^flavor H through the grouplike 1 (x) 1: a |-> a.(1 (x) 1)."""
    C = hopf_coring(H, flavor)
    F = H.field
    N = Module(H.algebra, ground(F), H.dim, H.mu, H.I, H.name)
    lam = kron(H.I, H.unit) if flavor == "r" else H.comult
    T = Tensor([C.carrier, N])
    rho = T.proj @ kron(lam, H.unit)
    return Comodule(C, N, rho, "left", f"{H.name} via 1(x)1")


# ---------------------------------------------------------------------------
# Hopf modules and Hopf contramodules

@dataclass(frozen=True, eq=False)
class HopfModule:
    """A right H-module with a right H-coaction coact: M -> M (x) H."""

    H: Bialgebra
    module: Module
    coact: Matrix
    name: str = ""

    @property
    def dim(self) -> int:
        return self.module.dim


def free_hopf_module(H: Bialgebra, v: int) -> HopfModule:
    """V (x) H with action I (x) mu and coaction I (x) Delta."""
    F = H.field
    Iv = F.identity(v)
    M = Module(ground(F), H.algebra, v * H.dim, F.identity(v * H.dim), kron(Iv, H.mu), f"k^{v}(x)H")
    return HopfModule(H, M, kron(Iv, H.comult), M.name)


def trivial_module(H: Bialgebra, v: int) -> Module:
    """k^v with H acting through the counit."""
    F = H.field
    return Module(ground(F), H.algebra, v, F.identity(v), kron(F.identity(v), H.counit), f"k^{v}")


def regular_right(H: Bialgebra) -> Module:
    F = H.field
    return Module(ground(F), H.algebra, H.dim, F.identity(H.dim), H.mu, H.name)


def diagonal_hopf_module(H: Bialgebra, N: Module) -> HopfModule:
    """N (x) H with (n (x) h) b = n b1 (x) h b2 and coaction I (x) Delta.

    For N = k^v with the counit action this is the free Hopf module k^v (x) H.
    """
    F, n, d = H.field, H.dim, N.dim
    In = N.identity()
    # (n, h, b) -> (n, h, b1, b2) -> (n, b1, h, b2) -> (n b1, h b2)
    spread = kron(In, H.I, H.comult)
    perm = factor_permutation([d, n, n, n], [0, 2, 1, 3])
    ract = kron(N.ract, H.mu) @ spread.select(rows=perm)
    M = Module(ground(F), H.algebra, d * n, F.identity(d * n), ract, f"{N.name}(x)H")
    return HopfModule(H, M, kron(In, H.comult), M.name)


def hopf_module_laws(P: HopfModule) -> dict:
    H, M, a = P.H, P.module, P.coact
    Im, I = M.identity(), H.I
    psi = build_psi(H, "r").psi
    return {
        "coassociativity": lambda: (kron(a, I) @ a, kron(Im, H.comult) @ a),
        "counit": lambda: (kron(Im, H.counit) @ a, Im),
        "pentagon": lambda: (a @ M.ract, kron(M.ract, I) @ kron(Im, psi) @ kron(a, I)),
    }


def hopf_to_comodule(P: HopfModule, C: Coring | None = None) -> Comodule:
    """m |-> m0 (x)_H (1 (x) m1) into M (x)_H (H(x)^r H)."""
    H = P.H
    C = C or hopf_coring(H, "r")
    out = Comodule(C, P.module, H.field.zeros(0, 0), "right", P.name)
    rho = out.T.proj @ kron(P.module.identity(), H.unit, H.I) @ P.coact
    res = Comodule(C, P.module, rho, "right", P.name)
    res.__dict__["T"] = out.T
    return res


def comodule_to_hopf(N: Comodule, H: Bialgebra) -> HopfModule:
    """Inverse of hopf_to_comodule: m (x) (a (x) b) |-> m a (x) b."""
    coact = kron(N.module.ract, H.I) @ N.T.sec @ N.rho
    return HopfModule(H, N.module, coact, N.name)


def hopf_module_convert(P: HopfModule, C: Coring | None = None):
    """Validate a Hopf module and convert it to an H(x)^r H-comodule and back.  Returns (Comodule | None, Report)."""
    H = P.H
    rep = Report(f"Hopf module {P.name}")
    for k, law in hopf_module_laws(P).items():
        rep.law(k, law)
    if not rep.ok:
        return None, rep
    N = hopf_to_comodule(P, C)
    rep.extend(check_comodule(N), "comodule: ")
    back = comodule_to_hopf(N, H)
    rep.law("round trip (module, coaction) -> comodule -> (module, coaction)", lambda: (back.coact, P.coact))
    again = hopf_to_comodule(back, N.coring)
    rep.law("round trip comodule -> (module, coaction) -> comodule", lambda: (again.rho, N.rho))
    return N, rep


def hom_module(H: Bialgebra, v: int) -> Module:
    """Hom(H, k^v) as a right H-module, (f.b)(x) = f(b x); coordinates are row-major."""
    return diagonal_hom_module(H, trivial_module(H, v))


def diagonal_hom_module(H: Bialgebra, N: Module) -> Module:
    """Hom(H, N) with (f.b)(x) = f(b1 x) b2 (this is f(b x) when N has the counit action)."""
    F, n = H.field, H.dim
    d = N.dim * n
    ops = [_linear_on_hom(H, N, b) for b in range(n)]
    ract = hstack([ops[b].column(f) for f in range(d) for b in range(n)], field=F, rows=d)
    return Module(ground(F), H.algebra, d, F.identity(d), ract, f"Hom(H,{N.name})")


def hom_contra_action(H: Bialgebra, v: int) -> Matrix:
    """[Delta, k^v] through currying: h |-> [c |-> h(c1)(c2)]."""
    return hom_side(H).m(v)


def _linear_on_hom(H: Bialgebra, M: Module, b: int) -> Matrix:
    """f |-> sum f(b1 -) b2 on Hom_k(H, M)."""
    F, n, m = H.field, H.dim, M.dim
    D = H.comult.column(b).entries()
    out = F.zeros(m * n, m * n)
    for p in range(n):
        for q in range(n):
            c = D[p * n + q]
            if c == 0:
                continue
            post = kron(M.R(H.algebra.e(q)), F.identity(n))
            pre = kron(F.identity(m), H.algebra.lmul(H.algebra.e(p)).T)
            out = out + (post @ pre).scale(c)
    return out


def hopf_contramodule_check(H: Bialgebra, M: Module, alpha: Matrix, C: Coring | None = None):
    """Contramodule axioms, the linearity condition alpha(f) b = alpha(f(b1 -) b2) and
    conversion to a contramodule of H(x)^l H.  Returns (Contramodule | None, Report)."""
    F, n, m = H.field, H.dim, M.dim
    rep = Report(f"Hopf contramodule {M.name}")
    if alpha.shape != (m, m * n):
        raise ValueError("contra-action has the wrong shape")
    Mk = vector_space(F, m, M.name)
    rep.extend(check_contramodule(Contramodule(H.coalgebra, Mk, alpha, M.name)), "contramodule: ")
    for b in range(n):
        rep.law(f"alpha(f) b = alpha(f(b1 -) b2) at b = e{b}",
                lambda b=b: (M.R(H.algebra.e(b)) @ alpha, alpha @ _linear_on_hom(H, M, b)))
    if not rep.ok:
        return None, rep
    C = C or hopf_coring(H, "l")
    HC = HomSpace(C.carrier, M)
    # xi: Hom_k(H, M) -> Hom_H(H (x)^l H, M), f |-> [c (x) b |-> f(c) b]
    cols = []
    for s in range(m * n):
        f = unflatten(F.basis_vector(m * n, s), m, n)
        cols.append(HC.coords_checked(M.ract @ kron(f, H.I)))
    xi = hstack(cols, field=F, rows=HC.dim)
    rep.flag("Hom_H(H(x)^l H, M) = Hom_k(H, M)", is_bijective(xi), {"rank": xi.rank(), "shape": list(xi.shape)})
    res = hstack([flatten(HC.basis_map(s) @ kron(H.I, H.unit)) for s in range(HC.dim)], field=F, rows=m * n)
    varrho = alpha @ res
    out = Contramodule(C, M, varrho, M.name)
    out.__dict__["HC"] = HC
    rep.extend(check_contramodule(out), "H(x)^l H-contramodule: ")
    rep.law("round trip alpha -> varrho -> alpha", lambda: (varrho @ xi, alpha))
    rep.law("round trip varrho -> alpha -> varrho", lambda: ((varrho @ xi) @ res, varrho))
    return out, rep


# ---------------------------------------------------------------------------
# functor calculus on finite-dimensional k-spaces
#
# Objects are dimensions v (the space k^v).  Both - (x) H and Hom(H, -) send
# v to v n and phi to kron(phi, I_n).  A natural transformation is a function
# v |-> its component matrix.

NatTrans = Callable[[int], Matrix]


@dataclass(eq=False)
class EndoData:
    """Monad (m, i) and comonad (d, e) on one endofunctor, plus a swap tau on its square."""

    H: Bialgebra
    side: str
    m: NatTrans
    i: NatTrans
    d: NatTrans
    e: NatTrans
    tau: NatTrans
    nat_from: Callable[[Matrix], NatTrans]      # s: H -> H  |->  the induced transformation F -> F

    def obj(self, v: int) -> int:
        return v * self.H.dim

    def fmap(self, phi: Matrix) -> Matrix:
        return kron(phi, self.H.I)


def tensor_side(H: Bialgebra) -> EndoData:
    F = H.field
    I = lambda v: F.identity(v)
    return EndoData(H, "tensor",
                    m=lambda v: kron(I(v), H.mu), i=lambda v: kron(I(v), H.unit),
                    d=lambda v: kron(I(v), H.comult), e=lambda v: kron(I(v), H.counit),
                    tau=lambda v: kron(I(v), H.tw),
                    nat_from=lambda s: (lambda v: kron(I(v), s)))


def hom_side(H: Bialgebra) -> EndoData:
    """Hom(H, -) with product [Delta,-], unit [eps,-], coproduct [mu,-], counit [iota,-], tau the argument swap."""
    F = H.field
    I = lambda v: F.identity(v)
    tw = H.tw
    return EndoData(H, "hom",
                    m=lambda v: kron(I(v), H.comult.T @ tw), i=lambda v: kron(I(v), H.counit.T),
                    d=lambda v: kron(I(v), tw @ H.mu.T), e=lambda v: kron(I(v), H.unit.T),
                    tau=lambda v: kron(I(v), tw),
                    nat_from=lambda s: (lambda v: kron(I(v), s.T)))


def _probe_law(rep: Report, name: str, lhs: Matrix, rhs: Matrix):
    rep.law(name, lambda: (lhs, rhs))


def bimonad_identity(E: EndoData, v: int):
    """(lhs, rhs) of mF o FFm o F tau F o dFF o Fd = d o m at k^v."""
    n = E.H.dim
    G = E.fmap
    lhs = E.m(n * v) @ G(G(E.m(v))) @ G(E.tau(n * v)) @ E.d(n * n * v) @ G(E.d(v))
    return lhs, E.d(v) @ E.m(v)


def bimonad_compat_check(H: Bialgebra, side: str = "tensor", probes: Sequence[int] = (1, 2)) -> Report:
    rep = Report(f"bimonad compatibility ({side}) for {H.name}")
    if side == "tensor":
        # the tau-bimonad identity for - (x) H is the bialgebra compatibility diagram
        psi = build_psi(H, "r").psi
        I = H.I
        rep.law("Delta mu = (mu (x) I)(I (x) psi_r)(Delta (x) I)",
                lambda: (H.comult @ H.mu, kron(H.mu, I) @ kron(I, psi) @ kron(H.comult, I)))
        E = tensor_side(H)
    elif side == "hom":
        E = hom_side(H)
    else:
        raise ValueError("side must be 'tensor' or 'hom'")
    for v in probes:
        lhs, rhs = bimonad_identity(E, v)
        _probe_law(rep, f"mF FFm FtauF dFF Fd = d m at k^{v}", lhs, rhs)
        G = E.fmap
        _probe_law(rep, f"e monad morphism at k^{v}", E.e(v) @ E.m(v), E.e(v) @ G(E.e(v)))
        _probe_law(rep, f"e o i = id at k^{v}", E.e(v) @ E.i(v), E.H.field.identity(v))
        _probe_law(rep, f"i comonad morphism at k^{v}", E.d(v) @ E.i(v), G(E.i(v)) @ E.i(v))
    return rep


def solve_monad_antipode(E: EndoData):
    """Solve m o SF o d = i o e = m o FS o d at k for S induced by s: H -> H.  Returns s or None."""
    H = E.H
    F, n = H.field, H.dim
    rhs = E.i(1) @ E.e(1)
    cols = []
    for p in range(n):
        for q in range(n):
            s = F.from_entries(n, n, [1 if (r == p and c == q) else 0 for r in range(n) for c in range(n)])
            S = E.nat_from(s)
            c1 = E.m(1) @ S(n) @ E.d(1)
            c2 = E.m(1) @ E.fmap(S(1)) @ E.d(1)
            cols.append(vstack([flatten(c1), flatten(c2)]))
    A = hstack(cols, field=F)
    res = solve(A, vstack([flatten(rhs), flatten(rhs)]))
    if not res.feasible:
        return None, {"rank": res.rank, "augmented_rank": res.augmented_rank}
    return unflatten(res.solution, n, n), {"rank": res.rank, "kernel_dim": res.kernel.dim}


def hopf_monad_antipode_report(E: EndoData, probes: Sequence[int] = (1, 2)) -> Report:
    rep = Report(f"Hopf monad antipode ({E.side}) for {E.H.name}")
    s, info = solve_monad_antipode(E)
    rep.data["solve"] = info
    if s is None:
        rep.failed("antipode transformation exists", {"reason": "linear system infeasible", **info})
        return rep
    rep.passed("antipode transformation exists")
    S = E.nat_from(s)
    n = E.H.dim
    for v in probes:
        ie = E.i(v) @ E.e(v)
        _probe_law(rep, f"m SF d = i e at k^{v}", E.m(v) @ S(n * v) @ E.d(v), ie)
        _probe_law(rep, f"m FS d = i e at k^{v}", E.m(v) @ E.fmap(S(v)) @ E.d(v), ie)
    rep.data["s"] = [[scalar_json(x) for x in r] for r in s.tolist()]
    return rep


def hom_gamma(H: Bialgebra, v: int) -> Matrix:
    """[gamma, -] at k^v, assembled as [Delta, [H,-]] o [H, [mu, -]]."""
    E = hom_side(H)
    return E.m(H.dim * v) @ E.fmap(E.d(v))


# ---------------------------------------------------------------------------
# distributive laws

def _lambda_comonad(H: Bialgebra) -> Matrix:
    """f (x) b |-> [x |-> f(x1) (x) b x2] as a map (z, b0) -> (b, x) on the H-indices."""
    F, n = H.field, H.dim
    D = H.comult.tolist()
    mu = H.mu.tolist()
    ent = [0] * (n ** 4)
    for z in range(n):
        for b0 in range(n):
            col = z * n + b0
            for b in range(n):
                for x in range(n):
                    ent[(b * n + x) * n * n + col] = sum(D[z * n + q][x] * mu[b][b0 * n + q] for q in range(n))
    return F.from_entries(n * n, n * n, ent)


def _lambda_monad(H: Bialgebra) -> Matrix:
    """f (x) b |-> [x |-> f(b1 x) (x) b2]."""
    F, n = H.field, H.dim
    D = H.comult.tolist()
    mu = H.mu.tolist()
    ent = [0] * (n ** 4)
    for z in range(n):
        for b0 in range(n):
            col = z * n + b0
            for q in range(n):
                for x in range(n):
                    ent[(q * n + x) * n * n + col] = sum(D[p * n + q][b0] * mu[z][p * n + x] for p in range(n))
    return F.from_entries(n * n, n * n, ent)


def distributive_law_probe(H: Bialgebra, flavor: str = "r", probes: Sequence[int] | None = None) -> Report:
    """flavor r: comonad law Hom(H,-) (x) H -> Hom(H, - (x) H); flavor l: the monad law."""
    F, n = H.field, H.dim
    probes = tuple(dict.fromkeys(probes if probes is not None else (1, 2, n)))
    T, P = tensor_side(H), hom_side(H)
    G = T.fmap
    I = lambda v: F.identity(v)
    rep = Report(f"distributive law ({flavor}) for {H.name}")
    if flavor == "r":
        L = _lambda_comonad(H)
        lam = lambda v: kron(I(v), L)
        for v in probes:
            w = n * v
            _probe_law(rep, f"R dS o lam = lamS o S lam o dS R at k^{v}",
                       G(T.d(v)) @ lam(v), lam(w) @ G(lam(v)) @ T.d(w))
            _probe_law(rep, f"dR S o lam = R lam o lamR o S dR at k^{v}",
                       P.d(w) @ lam(v), G(lam(v)) @ lam(w) @ G(P.d(v)))
            _probe_law(rep, f"R eS o lam = eS R at k^{v}", G(T.e(v)) @ lam(v), T.e(w))
            _probe_law(rep, f"eR S o lam = S eR at k^{v}", P.e(w) @ lam(v), G(P.e(v)))
    elif flavor == "l":
        L = _lambda_monad(H)
        lam = lambda v: kron(I(v), L)
        for v in probes:
            w = n * v
            _probe_law(rep, f"lam o Q mP = mP Q o P lam o lam P at k^{v}",
                       lam(v) @ G(P.m(v)), P.m(w) @ G(lam(v)) @ lam(w))
            _probe_law(rep, f"lam o mQ P = P mQ o lam Q o Q lam at k^{v}",
                       lam(v) @ T.m(w), G(T.m(v)) @ lam(w) @ G(lam(v)))
            _probe_law(rep, f"lam o Q uP = uP Q at k^{v}", lam(v) @ G(P.i(v)), P.i(w))
            _probe_law(rep, f"lam o uQ P = P uQ at k^{v}", lam(v) @ T.i(w), G(T.i(v)))
    else:
        raise ValueError("flavor must be 'r' or 'l'")
    return rep


# ---------------------------------------------------------------------------
# antipode, gamma and the coring isomorphism

@dataclass(eq=False)
class AntipodeResult:
    S: Matrix | None
    info: dict
    report: Report

    @property
    def found(self) -> bool:
        return self.S is not None


def antipode_laws(H: Bialgebra, S: Matrix) -> dict:
    mu, D, I = H.mu, H.comult, H.I
    ie = H.unit @ H.counit
    return {
        "mu (I (x) S) Delta = iota eps": lambda: (mu @ kron(I, S) @ D, ie),
        "mu (S (x) I) Delta = iota eps": lambda: (mu @ kron(S, I) @ D, ie),
    }


def antipode_consequences(H: Bialgebra, S: Matrix) -> dict:
    mu, D, tw = H.mu, H.comult, H.tw
    return {
        "S(ab) = S(b) S(a)": lambda: (S @ mu, mu @ kron(S, S) @ tw),
        "Delta S = twist (S (x) S) Delta": lambda: (D @ S, tw @ kron(S, S) @ D),
        "S(1) = 1": lambda: (S @ H.unit, H.unit),
        "eps S = eps": lambda: (H.counit @ S, H.counit),
    }


def _antipode_system(H: Bialgebra):
    F, n = H.field, H.dim
    cols = []
    for p in range(n):
        for q in range(n):
            E = F.from_entries(n, n, [1 if (r == p and c == q) else 0 for r in range(n) for c in range(n)])
            cols.append(vstack([flatten(H.mu @ kron(H.I, E) @ H.comult),
                                flatten(H.mu @ kron(E, H.I) @ H.comult)]))
    ie = flatten(H.unit @ H.counit)
    return hstack(cols, field=F), vstack([ie, ie])


def find_antipode(H: Bialgebra) -> AntipodeResult:
    """Solve both convolution conditions at once; uniqueness and anti-map properties are checked, not assumed."""
    n = H.dim
    rep = Report(f"antipode for {H.name}")
    A, b = _antipode_system(H)
    res = solve(A, b)
    info = {"unknowns": n * n, "rank": res.rank, "augmented_rank": res.augmented_rank}
    if not res.feasible:
        rep.data.update(info)
        rep.passed("system infeasible: no antipode", "infeasibility certificate: rank < augmented rank")
        return AntipodeResult(None, info, rep)
    S = unflatten(res.solution, n, n)
    info["kernel_dim"] = res.kernel.dim
    rep.data.update(info)
    for k, law in antipode_laws(H, S).items():
        rep.law(k, law)
    rep.flag("unique", res.kernel.dim == 0, {"kernel_dim": res.kernel.dim})
    for k, law in antipode_consequences(H, S).items():
        rep.law(k, law, "consequence")
    if H.group is not None:
        inv = [next(j for j in range(n) if H.group[i][j] == 0) for i in range(n)]
        P = H.field.from_entries(n, n, [1 if r == inv[c] else 0 for r in range(n) for c in range(n)])
        rep.law("S permutes the group basis by inversion", lambda: (S, P))
    return AntipodeResult(S, info, rep)


@dataclass(eq=False)
class GammaResult:
    gamma: Matrix
    rank: int
    inverse: Matrix | None

    @property
    def invertible(self) -> bool:
        return self.inverse is not None


def gamma_map(H: Bialgebra) -> GammaResult:
    """gamma = (I (x) mu)(Delta (x) I): a (x) b |-> a1 (x) a2 b."""
    g = kron(H.I, H.mu) @ kron(H.comult, H.I)
    r = g.rank()
    return GammaResult(g, r, g.inverse() if r == g.rows else None)


def _need_antipode(H: Bialgebra, S: Matrix | None) -> Matrix:
    if S is None:
        res = find_antipode(H)
        if not res.found:
            raise ValueError(f"{H.name} has no antipode")
        S = res.S
    return S


def hopf_coring_isomorphism(H: Bialgebra, S: Matrix | None = None):
    """H(x)^r H <-> H(x)^l H.  Returns (r_to_l, l_to_r, Report)."""
    from .galois import coring_morphism_report
    S = _need_antipode(H, S)
    F, n, I = H.field, H.dim, H.I
    five = [n] * 5
    SS = kron(I, S, I, S, I)
    # a (x) b |-> a1 S(b2) (x) a2 S(b1) b3
    r2l = kron(H.mu, H.mu3) @ SS @ kron(H.comult, H.delta2).select(rows=factor_permutation(five, [0, 3, 1, 2, 4]))
    # a (x) b |-> a1 S(a3) b1 (x) S(a2) b2
    l2r = kron(H.mu3, H.mu) @ SS @ kron(H.delta2, H.comult).select(rows=factor_permutation(five, [0, 2, 3, 1, 4]))
    Cr, Cl = hopf_coring(H, "r"), hopf_coring(H, "l")
    rep = Report(f"Hopf coring isomorphism for {H.name}")
    Id = F.identity(n * n)
    rep.law("l_to_r o r_to_l = I", lambda: (l2r @ r2l, Id))
    rep.law("r_to_l o l_to_r = I", lambda: (r2l @ l2r, Id))
    rep.extend(coring_morphism_report(r2l, Cr, Cl), "r_to_l: ")
    rep.extend(coring_morphism_report(l2r, Cl, Cr), "l_to_r: ")
    return r2l, l2r, rep


def hopf_cointegral(H: Bialgebra, S: Matrix | None = None):
    """delta((a (x) b) (x)_H (1 (x) c)) = a S(b) c on H(x)^r H.  Returns (delta, Report)."""
    S = _need_antipode(H, S)
    C = hopf_coring(H, "r")
    I = H.I
    # (a (x) b) (x)_H (c (x) d) = (a c1 (x) b c2) (x)_H (1 (x) d)  |->  eps(c) a S(b) d
    dk = H.mu3 @ kron(I, S, H.counit, I)
    rep = Report(f"Hopf cointegral for {H.name}")
    rep.flag("formula balanced over H", (dk @ kernel(C.T2.proj).basis).is_zero())
    delta = dk @ C.T2.sec
    rep.extend(check_cointegral(C, delta), "certified: ")
    return delta, rep


# ---------------------------------------------------------------------------
# fundamental theorems

def hopf_maps_from_H(P: HopfModule):
    """Hopf-module maps H -> P as a subspace of flattened Hom_k(H, M)."""
    H, M = P.H, P.module
    F, n, m = H.field, H.dim, M.dim
    cols = []
    for s in range(m * n):
        f = unflatten(F.basis_vector(m * n, s), m, n)
        lin = f @ H.mu - M.ract @ kron(f, H.I)
        col = P.coact @ f - kron(f, H.I) @ H.comult
        cols.append(vstack([flatten(lin), flatten(col)]))
    return kernel(hstack(cols, field=F))


def hopf_contramodule_maps(H: Bialgebra, M: Module, aM: Matrix, N: Module, aN: Matrix):
    """H-linear contramodule maps M -> N for Hopf contramodules, as a subspace of flattened Hom_k(M, N)."""
    F, n = H.field, H.dim
    m, d = M.dim, N.dim
    cols = []
    for s in range(m * d):
        f = unflatten(F.basis_vector(m * d, s), d, m)
        parts = [flatten(f @ M.R(H.algebra.e(b)) - N.R(H.algebra.e(b)) @ f) for b in range(n)]
        parts.append(flatten(f @ aM - aN @ kron(f, H.I)))
        cols.append(vstack(parts))
    return kernel(hstack(cols, field=F))


def _hopf_module_probes(H: Bialgebra, probes):
    return [free_hopf_module(H, v) for v in probes] + [diagonal_hopf_module(H, regular_right(H))]


def _part_h(H: Bialgebra, probes, rep: Report) -> bool:
    F, n = H.field, H.dim
    ok = True
    for v in probes:
        P = free_hopf_module(H, v)
        K = hopf_maps_from_H(P)
        # unit v |-> [h |-> v (x) h]
        vecs = [flatten(kron(F.basis_vector(v, j), H.I)) for j in range(v)]
        inside = all(K.contains(x) for x in vecs)
        eta = hstack([K.coords(x) for x in vecs], field=F, rows=K.dim) if inside else None
        unit_ok = inside and is_bijective(eta)
        rep.flag(f"(h) unit k^{v} -> Hom_Hopf(H, k^{v}(x)H) bijective", unit_ok,
                 {"dim_V": v, "dim_hom": K.dim, "unit_lands_in_hopf_maps": inside,
                  "rank": eta.rank() if inside else None})
        ok &= unit_ok
    for P in _hopf_module_probes(H, probes):
        _, r = hopf_module_convert(P)
        rep.extend(r, f"(h) {P.name}: ")
        K = hopf_maps_from_H(P)
        m = P.dim
        counit = hstack([unflatten(K.basis.column(s), m, n).column(h) for s in range(K.dim) for h in range(n)],
                        field=F, rows=m)
        c_ok = is_bijective(counit)
        rep.flag(f"(h) counit Hom_Hopf(H, {P.name}) (x) H -> {P.name} bijective", c_ok,
                 {"rank": counit.rank(), "shape": list(counit.shape), "dim_hom": K.dim})
        ok &= c_ok
    return ok


def _coinvariant_quotient(H: Bialgebra, M: Module, aM: Matrix):
    """pi: M -> L(M) with Hopf contramodule maps M -> Hom(H, V) = Hom_k(L(M), V)."""
    F = H.field
    K1 = hom_module(H, 1)
    a1 = hom_contra_action(H, 1)
    S = hopf_contramodule_maps(H, M, aM, K1, a1)
    ev1 = H.unit.T
    if S.dim == 0:
        return F.zeros(0, M.dim)
    Phi = vstack([ev1 @ unflatten(S.basis.column(s), H.dim, M.dim) for s in range(S.dim)])
    R, piv = Phi.rref()
    return R.select(rows=range(len(piv)))


def _part_i(H: Bialgebra, probes, rep: Report, S: Matrix | None) -> bool:
    F, n = H.field, H.dim
    ok = True
    # counit L(Hom(H, V)) -> V induced by evaluation at 1
    for v in probes:
        M = hom_module(H, v)
        a = hom_contra_action(H, v)
        pi = _coinvariant_quotient(H, M, a)
        sol = solve_rows(pi, kron(F.identity(v), H.unit.T))
        c_ok = sol is not None and is_bijective(sol)
        rep.flag(f"(i) counit L(Hom(H,k^{v})) -> k^{v} bijective", c_ok,
                 {"dim_L": pi.rows, "dim_V": v, "descends": sol is not None})
        ok &= c_ok
    # unit M -> Hom(H, L(M)), m |-> [x |-> pi(m x)], at free and diagonal Hopf contramodules
    objects = [(hom_module(H, v), v) for v in probes] + [(diagonal_hom_module(H, regular_right(H)), None)]
    for M, v in objects:
        d = M.dim // n
        a = hom_side(H).m(d)
        Pl, r = hopf_contramodule_check(H, M, a)
        rep.extend(r, f"(i) {M.name}: ")
        if Pl is None:
            ok = False
            continue
        pi = _coinvariant_quotient(H, M, a)
        l = pi.rows
        rows = [(pi @ M.R(H.algebra.e(x))).select(rows=[w]) for w in range(l) for x in range(n)]
        eta = vstack(rows, field=F, cols=M.dim) if rows else F.zeros(0, M.dim)
        is_map = l == 0 or hopf_contramodule_maps(H, M, a, hom_module(H, l), hom_contra_action(H, l)).contains(
            flatten(eta))
        unit_ok = is_map and is_bijective(eta)
        rep.flag(f"(i) unit {M.name} -> Hom(H, L({M.name})) bijective Hopf contramodule map", unit_ok,
                 {"dim_L": l, "rank": eta.rank(), "shape": list(eta.shape), "is_map": is_map})
        ok &= unit_ok
        if v is not None:
            if S is not None:
                rep.extend(beta_iso_report(H, v, S, Pl), f"(i) beta at k^{v}: ")
            else:
                rep.unsupported(f"(i) beta at k^{v}", "needs an antipode")
    return ok


def solve_rows(pi: Matrix, target: Matrix):
    """X with X pi = target, or None."""
    from .exact_linalg import solve_matrix
    if pi.rows == 0:
        return target.field.zeros(target.rows, 0) if target.is_zero() else None
    X = solve_matrix(pi.T, target.T)
    return None if X is None else X.T


def beta_iso_report(H: Bialgebra, v: int, S: Matrix, Pl: Contramodule) -> Report:
    """beta(Phi) = (I (x) eps) Phi Delta from Hom^{H(x)^l H}(H(x)^l H, k^v (x) H) to Hom(H, k^v)."""
    F, n = H.field, H.dim
    rep = Report("beta")
    r2l, _, _ = hopf_coring_isomorphism(H, S)
    Cl = Pl.coring
    Nr = hopf_to_comodule(free_hopf_module(H, v))
    Tl = Tensor([Nr.module, Cl.carrier])
    rho = Tl.proj @ kron(Nr.module.identity(), r2l) @ Nr.rho_k
    Nl = Comodule(Cl, Nr.module, rho, "right", f"k^{v}(x)H")
    Nl.__dict__["T"] = Tl
    rep.extend(check_comodule(Nl), "transported comodule: ")
    E = induced_contramodule(regular_bicomodule(Cl), Nl)
    maps = E.maps
    eps_v = kron(F.identity(v), H.counit)
    beta = hstack([flatten(eps_v @ maps.basis_map(s) @ H.comult) for s in range(maps.dim)],
                  field=F, rows=v * n)
    rep.flag("bijective", is_bijective(beta), {"rank": beta.rank(), "shape": list(beta.shape)})
    rep.flag("right H-linear", is_right_linear(beta, E.module, Pl.module))
    rep.law("contramodule map", lambda: (beta @ E.alpha, Pl.alpha @ E.HC.postcompose(beta, Pl.HC)))
    return rep


def fundamental_theorem_probe(H: Bialgebra, probes: Sequence[int] | None = None) -> Report:
    """(h) - (x) H and (i) Hom(H, -): unit/counit bijectivity on probes ("equivalence verified on probes")."""
    n = H.dim
    probes = tuple(dict.fromkeys(probes if probes is not None else (1, 2, n)))
    rep = Report(f"fundamental theorems for {H.name}")
    anti = find_antipode(H)
    vh = _part_h(H, probes, rep)
    vi = _part_i(H, probes, rep, anti.S)
    rep.data["verdicts"] = {"h": vh, "i": vi}
    rep.data["notes"] = "equivalence verified on probes"
    return rep


# ---------------------------------------------------------------------------
# the characterisation battery

def hopf_characterisation_battery(H: Bialgebra, probes: Sequence[int] | None = None,
                                  galois_probes=None) -> Report:
    """All equivalent Hopf conditions, each computed on its own; the verdicts must agree.

    A condition that does not hold is recorded as a verdict, not as a failed
    check; the report fails only on internal inconsistency or a split verdict.
    """
    from .galois import fgp_galois_agreement
    n = H.dim
    probes = tuple(probes) if probes is not None else (1, 2)
    rep = Report(f"Hopf characterisation battery for {H.name}")
    rep.extend(check_bialgebra(H), "bialgebra: ")
    subs: dict = {}
    verdicts = {}

    anti = find_antipode(H)
    subs["a"] = anti.report
    verdicts["a"] = anti.found
    g = gamma_map(H)
    verdicts["b"] = g.invertible
    subs["b"] = Report("gamma", data={"rank": g.rank, "size": n * n})
    for key, E in (("e", tensor_side(H)), ("g", hom_side(H))):
        compat = bimonad_compat_check(H, E.side, probes)
        ap = hopf_monad_antipode_report(E, probes)
        sub = Report(f"({key})")
        sub.extend(compat)
        sub.extend(ap)
        subs[key] = sub
        rep.flag(f"({key}) bimonad identity", compat.ok, compat.first_failure() and compat.first_failure().witness)
        verdicts[key] = compat.ok and ap.ok
    fb = [is_bijective(hom_gamma(H, v)) for v in probes]
    verdicts["f"] = all(fb)
    rep.flag("(f) [gamma,-] agrees with gamma", all(b == g.invertible for b in fb),
             {"hom_gamma_bijective": fb, "gamma_invertible": g.invertible})
    ft = fundamental_theorem_probe(H, probes)
    subs["h"] = subs["i"] = ft
    verdicts["h"] = ft.data["verdicts"]["h"]
    verdicts["i"] = ft.data["verdicts"]["i"]
    for key, flavor in (("j", "r"), ("k", "l")):
        N = grouplike_comodule(H, flavor)
        ga = fgp_galois_agreement(N, galois_probes)
        subs[key] = ga
        rep.flag(f"({key}) Galois conditions agree", ga.get("unanimous").ok, ga.get("unanimous").witness)
        vs = ga.data["verdicts"]
        verdicts[key] = all(vs.values())
    for key in sorted(verdicts):
        rep.passed(f"({key}) evaluated", "holds" if verdicts[key] else "does not hold")
    rep.data["verdicts"] = verdicts
    unanimous = len(set(verdicts.values())) == 1
    rep.data["hopf"] = verdicts["a"] if unanimous else None
    dump = None
    if not unanimous:
        dump = {"verdicts": verdicts,
                "subreports": {k: [c.to_json() for c in r.checks if c.verdict == "fail"] for k, r in subs.items()}}
    rep.flag("unanimous", unanimous, dump, "a split verdict is a library bug")
    return rep
