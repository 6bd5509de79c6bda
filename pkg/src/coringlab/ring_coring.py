"""A-rings and A-corings, their (co)monads on right A-modules, adjunction data and mates.

Conventions
-----------
* [C, X] = Hom_A(C, X) for right A-modules, with right action (f a)(c) = f(a c).
* currying Hom_A(M (x)_A N, X) -> Hom_A(M, Hom_A(N, X)) sends g to h with h(m)(n) = g(m (x) n).
* the monad of a coring is ([C,-], [Delta,-], [eps,-]); the comonad of an A-ring B
  is ([B,-], curry o [mu,-], [iota,-]).
* convolution on C* = Hom_A(C, A): (f * g)(c) = f(g(c_1) c_2); on the left dual
  *C = Hom_{A,-}(C, A): (f * g)(c) = g(c_1 f(c_2)).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra_bimodule import (Algebra, HomSpace, Module, Tensor, check_module, direct_sum,
                               ground, is_bilinear, linear_dual, regular, right_module)
from .exact_linalg import Matrix, hstack, is_bijective, kron, vstack
from .report import Report


# ---------------------------------------------------------------------------
# generic helpers used across the package

def curry_matrix(T: Tensor, X: Module, H2: HomSpace | None = None):
    """Matrix of Hom_A(M (x)_A N, X) -> Hom_A(M, Hom_A(N, X)) for T = Tensor([M, N]).

    Returns (H2, inner, outer, matrix) with inner = Hom_A(N, X), outer = Hom_A(M, inner).
    """
    M, N = T.factors
    F = X.field
    H2 = H2 or HomSpace(T.module, X)
    inner = HomSpace(N, X)
    outer = HomSpace(M, inner.module)
    cols = []
    IN = F.identity(N.dim)
    for s in range(H2.dim):
        g = H2.basis_map(s) @ T.proj
        h = hstack([inner.coords(g @ kron(F.basis_vector(M.dim, i), IN)) for i in range(M.dim)],
                   field=F, rows=inner.dim)
        cols.append(outer.coords(h))
    return H2, inner, outer, hstack(cols, field=F, rows=outer.dim)


def uncurry_kmap(inner: HomSpace, h: Matrix) -> Matrix:
    """k-level map M (x)_k N -> X of h: M -> Hom(N, X) given in inner coordinates."""
    return inner.evaluation() @ kron(h, inner.F.identity(inner.M.dim))


def hom_map(H: HomSpace, f: Matrix, H2: HomSpace) -> Matrix:
    """[C, f]: Hom(C, X) -> Hom(C, Y) by postcomposition, H = Hom(C,X), H2 = Hom(C,Y)."""
    return H.postcompose(f, H2)


# ---------------------------------------------------------------------------
# A-rings

@dataclass(frozen=True, eq=False)
class Ring:
    """A-ring (B, mu, iota): carrier an (A,A)-bimodule, mu: B (x)_A B -> B, iota: A -> B."""

    carrier: Module
    mu: Matrix
    iota: Matrix
    name: str = ""

    @property
    def base(self) -> Algebra:
        return self.carrier.left

    @property
    def field(self):
        return self.carrier.field

    @cached_property
    def T2(self) -> Tensor:
        return Tensor([self.carrier, self.carrier])

    @cached_property
    def T3(self) -> Tensor:
        return Tensor([self.carrier] * 3)

    @cached_property
    def mu_k(self) -> Matrix:
        """mu at k-level: B (x)_k B -> B."""
        return self.mu @ self.T2.proj

    def one(self) -> Matrix:
        return self.iota @ self.base.unit

    def as_algebra(self) -> Algebra:
        """Underlying k-algebra (the multiplication read on the k-tensor)."""
        B = self.carrier
        return Algebra(self.field, B.dim, self.mu_k, self.one(), self.name)


def ring_laws(B: Ring) -> dict:
    F = B.field
    C = B.carrier
    A = B.base
    I = C.identity()
    mk = B.mu_k
    T3 = B.T3

    def bil():
        ok_mu = is_bilinear(B.mu, B.T2.module, C)
        ok_iota = is_bilinear(B.iota, regular(A), C)
        return F.vector([int(ok_mu), int(ok_iota)]), F.vector([1, 1])

    return {
        "bilinearity": bil,
        "associativity": lambda: (mk @ kron(mk, I) @ T3.sec, mk @ kron(I, mk) @ T3.sec),
        "left unit": lambda: (mk @ kron(B.one(), I), I),
        "right unit": lambda: (mk @ kron(I, B.one()), I),
    }


def check_a_ring(B: Ring) -> Report:
    rep = Report(f"check ring {B.name}")
    rep.extend(check_module(B.carrier), "carrier: ")
    if B.mu.shape != (B.carrier.dim, B.T2.dim) or B.iota.shape != (B.carrier.dim, B.base.dim):
        raise ValueError("ring structure maps have the wrong shape")
    for k, law in ring_laws(B).items():
        rep.law(k, law)
    return rep


def ring_from_algebra(B: Algebra, A: Algebra, iota: Matrix, name: str = "") -> Ring:
    """A k-algebra B with an algebra map iota: A -> B, viewed as an A-ring."""
    F = B.field
    IB = F.identity(B.dim)
    lact = B.mult @ kron(iota, IB)
    ract = B.mult @ kron(IB, iota)
    carrier = Module(A, A, B.dim, lact, ract, name or B.name)
    T2 = Tensor([carrier, carrier])
    mu = B.mult @ T2.sec
    return Ring(carrier, mu, iota, name or B.name)


def trivial_ring(A: Algebra) -> Ring:
    B = regular(A)
    T2 = Tensor([B, B])
    return Ring(B, A.mult @ T2.sec, A.field.identity(A.dim), A.name)


# ---------------------------------------------------------------------------
# A-corings

@dataclass(frozen=True, eq=False)
class Coring:
    """A-coring (C, Delta, eps); Delta lands in the materialized C (x)_A C."""

    carrier: Module
    delta: Matrix
    eps: Matrix
    name: str = ""

    def __post_init__(self):
        if self.carrier.dim == 0:
            raise ValueError("the zero coring is not allowed")

    @property
    def base(self) -> Algebra:
        return self.carrier.left

    @property
    def field(self):
        return self.carrier.field

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @cached_property
    def T2(self) -> Tensor:
        return Tensor([self.carrier, self.carrier])

    @cached_property
    def T3(self) -> Tensor:
        return Tensor([self.carrier] * 3)

    @cached_property
    def delta_k(self) -> Matrix:
        """A lift of Delta into C (x)_k C."""
        return self.T2.sec @ self.delta

    @cached_property
    def right(self) -> Module:
        """C as a right A-module (left structure forgotten)."""
        return self.carrier.forget_left()

    @cached_property
    def left(self) -> Module:
        return self.carrier.forget_right()


def coring_laws(C: Coring) -> dict:
    F = C.field
    M = C.carrier
    A = C.base
    I = M.identity()
    dk = C.delta_k

    def bil():
        ok_d = is_bilinear(C.delta, M, C.T2.module)
        ok_e = is_bilinear(C.eps, M, regular(A))
        return F.vector([int(ok_d), int(ok_e)]), F.vector([1, 1])

    return {
        "bilinearity": bil,
        "coassociativity": lambda: (C.T3.proj @ kron(dk, I) @ dk, C.T3.proj @ kron(I, dk) @ dk),
        "left counit": lambda: (M.lact @ kron(C.eps, I) @ dk, I),
        "right counit": lambda: (M.ract @ kron(I, C.eps) @ dk, I),
    }


def check_coring(C: Coring) -> Report:
    rep = Report(f"check coring {C.name}")
    rep.extend(check_module(C.carrier), "carrier: ")
    if C.delta.shape != (C.T2.dim, C.dim) or C.eps.shape != (C.base.dim, C.dim):
        raise ValueError("coring structure maps have the wrong shape")
    for k, law in coring_laws(C).items():
        rep.law(k, law)
    return rep


def trivial_coring(A: Algebra) -> Coring:
    M = regular(A)
    T2 = Tensor([M, M])
    # A -> A (x)_A A, a |-> 1 (x) a
    delta = T2.elem(A.unit, A.field.identity(A.dim))
    return Coring(M, delta, A.field.identity(A.dim), A.name)


def coalgebra(F, dim: int, comult, counit, name: str = "") -> Coring:
    """A k-coalgebra from comult[i] = dim x dim array of Delta(e_i) coefficients."""
    k = ground(F)
    M = Module(k, k, dim, F.identity(dim), F.identity(dim), name)
    cols = [[comult[i][j][l] for j in range(dim) for l in range(dim)] for i in range(dim)]
    delta = F.matrix([[cols[i][r] for i in range(dim)] for r in range(dim * dim)])
    eps = F.matrix([list(counit)])
    C = Coring(M, delta, eps, name)
    return C


def grouplike_coalgebra(F, n: int, name: str = "") -> Coring:
    comult = [[[1 if (j == i and l == i) else 0 for l in range(n)] for j in range(n)] for i in range(n)]
    return coalgebra(F, n, comult, [1] * n, name or f"k^{n} grouplike")


def matrix_coalgebra(F, n: int = 2, name: str = "") -> Coring:
    """M_n^c: Delta(e_ij) = sum_k e_ik (x) e_kj, eps(e_ij) = delta_ij (basis e_ij at i*n + j)."""
    d = n * n
    comult = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                comult[i * n + j][i * n + k][k * n + j] = 1
    counit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return coalgebra(F, d, comult, counit, name or f"M_{n}^c")


# ---------------------------------------------------------------------------
# probes

@dataclass(frozen=True, eq=False)
class ProbeFamily:
    modules: tuple

    def __post_init__(self):
        if not self.modules:
            raise ValueError("probe family must be nonempty")

    def __iter__(self):
        return iter(self.modules)

    def __len__(self):
        return len(self.modules)


def default_probes(A: Algebra, carrier: Module | None = None) -> ProbeFamily:
    """{A, A+A, A* = Hom_k(A,k), carrier} as right A-modules."""
    AA = regular(A).forget_left().with_name(A.name or "A")
    mods = [AA, direct_sum(AA, AA, name="A+A"), linear_dual(A)]
    if carrier is not None:
        mods.append(carrier.forget_left())
    return ProbeFamily(tuple(mods))


# ---------------------------------------------------------------------------
# convolution rings

def convolution_ring(C: Coring, side: str = "right") -> Ring:
    """C* = Hom_A(C, A) (side="right") or *C = Hom_{A,-}(C, A) (side="left") with convolution."""
    F = C.field
    A = C.base
    M = C.carrier
    H = HomSpace(M, regular(A), side, f"{C.name}*" if side == "right" else f"*{C.name}")
    D = H.module
    T2 = Tensor([D, D])
    dk = C.delta_k
    Ic = M.identity()
    cols = []
    for s in range(H.dim):
        f = H.basis_map(s)
        for t in range(H.dim):
            g = H.basis_map(t)
            if side == "right":
                prod_ = f @ M.lact @ kron(g, Ic) @ dk
            else:
                prod_ = g @ M.ract @ kron(Ic, f) @ dk
            cols.append(H.coords_checked(prod_))
    mu = hstack(cols, field=F, rows=H.dim) @ T2.sec
    # iota(a) = a eps (right dual) or eps a (left dual)
    icol = []
    for t in range(A.dim):
        a = A.e(t)
        icol.append(H.coords_checked(A.lmul(a) @ C.eps if side == "right" else A.rmul(a) @ C.eps))
    iota = hstack(icol, field=F, rows=H.dim)
    R = Ring(D, mu, iota, H.name)
    R.__dict__["hom"] = H
    return R


# ---------------------------------------------------------------------------
# adjunction (- (x)_A B) -| Hom_A(B, -)

def adjunction_unit(X: Module, B: Module):
    """eta_X: X -> Hom_A(B, X (x)_A B), x |-> [b |-> x (x) b].  Returns (T, H, eta)."""
    F = X.field
    T = Tensor([X, B])
    H = HomSpace(B, T.module)
    Ib = F.identity(B.dim)
    eta = hstack([H.coords_checked(T.proj @ kron(F.basis_vector(X.dim, i), Ib)) for i in range(X.dim)],
                 field=F, rows=H.dim)
    return T, H, eta


def adjunction_counit(N: Module, B: Module):
    """eps_N: Hom_A(B, N) (x)_A B -> N, f (x) b |-> f(b).  Returns (H, T, eps)."""
    H = HomSpace(B, N)
    T = Tensor([H.module, B])
    return H, T, H.evaluation() @ T.sec


def triangle_identities(X: Module, B: Module) -> Report:
    """Both triangle identities of the adjunction at X."""
    F = X.field
    rep = Report(f"triangle identities at {X.name}")
    T, H, eta = adjunction_unit(X, B)
    # (eps_{X(x)B}) o (eta_X (x) B) = id
    HN, TN, epsN = adjunction_counit(T.module, B)
    assert HN.dim == H.dim
    eta_t = TN.proj @ kron(eta, F.identity(B.dim)) @ T.sec
    rep.law("eps L o L eta = id", lambda: (epsN @ eta_t, F.identity(T.dim)))
    # Hom(B, eps_X) o eta_{Hom(B,X)} = id
    H1, T1, eps1 = adjunction_counit(X, B)
    T2_, H2_, eta2 = adjunction_unit(H1.module, B)
    post = H2_.postcompose(eps1, H1)
    rep.law("R eps o eta R = id", lambda: (post @ eta2, F.identity(H1.dim)))
    return rep


# ---------------------------------------------------------------------------
# (co)monad data

@dataclass(eq=False)
class MonadAt:
    """Components of ([C,-], m, u) at one object X."""

    HC: HomSpace        # [C, X]
    HCC: HomSpace       # [C, [C, X]]
    product: Matrix     # HCC -> HC
    unit: Matrix        # X -> HC
    curry: Matrix       # Hom(C (x)_A C, X) -> HCC
    H2: HomSpace        # Hom(C (x)_A C, X)


def monad_unit(C: Coring, X: Module, HC: HomSpace) -> Matrix:
    """[eps, X]: X -> [C, X], x |-> [c |-> x eps(c)]."""
    F = X.field
    return hstack([HC.coords_checked(X.ract @ kron(F.basis_vector(X.dim, i), C.eps)) for i in range(X.dim)],
                  field=F, rows=HC.dim)


def monad_product(C: Coring, HC: HomSpace, HCC: HomSpace) -> Matrix:
    """[Delta, X] after uncurrying: h |-> [c |-> h(c_1)(c_2)]."""
    F = C.field
    dk = C.delta_k
    ev = HC.evaluation()
    cols = []
    for s in range(HCC.dim):
        h = HCC.basis_map(s)
        cols.append(HC.coords_checked(ev @ kron(h, C.carrier.identity()) @ dk))
    return hstack(cols, field=F, rows=HC.dim)


def hom_monad_data(C: Coring, X: Module) -> MonadAt:
    H2, HC, HCC, cur = curry_matrix(C.T2, X)
    prod_ = monad_product(C, HC, HCC)
    return MonadAt(HC, HCC, prod_, monad_unit(C, X, HC), cur, H2)


def delta_precompose(C: Coring, H2: HomSpace, HC: HomSpace) -> Matrix:
    """[Delta, X]: Hom_A(C (x)_A C, X) -> Hom_A(C, X), g |-> g o Delta."""
    F = C.field
    return hstack([HC.coords_checked(H2.basis_map(s) @ C.delta) for s in range(H2.dim)], field=F, rows=HC.dim)


def monad_laws(C: Coring, X: Module) -> Report:
    F = C.field
    rep = Report(f"monad laws of [C,-] at {X.name}")
    d = hom_monad_data(C, X)
    # the product factors as [Delta, X] o curry^{-1}
    rep.law("product = [Delta,X] o uncurry", lambda: (d.product @ d.curry, delta_precompose(C, d.H2, d.HC)))
    rep.flag("currying is bijective", is_bijective(d.curry))
    HCCC = HomSpace(C.carrier, d.HCC.module)            # [C,[C,[C,X]]]
    m_CX = monad_product(C, d.HCC, HCCC)                # m_{[C,X]}
    C_m = HCCC.postcompose(d.product, d.HCC)            # [C, m_X]
    rep.law("associativity", lambda: (d.product @ C_m, d.product @ m_CX))
    u_CX = monad_unit(C, d.HC.module, d.HCC)
    C_u = d.HC.postcompose(d.unit, d.HCC)               # [C, u_X]
    rep.law("left unit", lambda: (d.product @ u_CX, F.identity(d.HC.dim)))
    rep.law("right unit", lambda: (d.product @ C_u, F.identity(d.HC.dim)))
    return rep


@dataclass(eq=False)
class ComonadAt:
    HB: HomSpace        # [B, X]
    HBB: HomSpace       # [B, [B, X]]
    coproduct: Matrix   # HB -> HBB
    counit: Matrix      # HB -> X


def hom_comonad_data(B: Ring, X: Module) -> ComonadAt:
    F = B.field
    H2, HB, HBB, cur = curry_matrix(B.T2, X)
    # Hom(mu, X): HB -> H2, then the currying iso
    hmu = hstack([H2.coords_checked(HB.basis_map(s) @ B.mu) for s in range(HB.dim)], field=F, rows=H2.dim)
    cop = cur @ hmu
    counit = hstack([HB.basis_map(s) @ B.one() for s in range(HB.dim)], field=F, rows=X.dim)
    return ComonadAt(HB, HBB, cop, counit)


def comonad_laws(B: Ring, X: Module) -> Report:
    F = B.field
    rep = Report(f"comonad laws of [B,-] at {X.name}")
    d = hom_comonad_data(B, X)
    d2 = hom_comonad_data(B, d.HB.module)
    B_delta = d.HBB.postcompose(d.coproduct, d2.HBB)     # [B, delta_X]
    rep.law("coassociativity", lambda: (B_delta @ d.coproduct, d2.coproduct @ d.coproduct))
    rep.law("counit (outer)", lambda: (d2.counit @ d.coproduct, F.identity(d.HB.dim)))
    B_eps = d.HBB.postcompose(d.counit, d.HB)
    rep.law("counit (inner)", lambda: (B_eps @ d.coproduct, F.identity(d.HB.dim)))
    return rep


# ---------------------------------------------------------------------------
# Yoneda reduction and mates

def tensor_component(X: Module, B: Module, B2: Module, phi: Matrix):
    """X (x)_A phi: X (x)_A B -> X (x)_A B'."""
    T, T2 = Tensor([X, B]), Tensor([X, B2])
    return T, T2, T2.proj @ kron(X.identity(), phi) @ T.sec


def yoneda_reduce(components: Sequence[tuple], B: Module, B2: Module):
    """Recover phi_A: B -> B' from components [(X, matrix X(x)B -> X(x)B'), ...].

    The first probe must be A itself.  Returns (phi, None) or (phi, witness).
    """
    A = B.left
    X0, c0 = components[0]
    F = B.field
    T0, T0b = Tensor([X0, B]), Tensor([X0, B2])
    # B ~ A (x)_A B: b |-> 1 (x) b ; A (x)_A B' -> B' : a (x) b |-> a b
    to = T0.proj @ kron(A.unit, B.identity())
    back = B2.lact @ T0b.sec
    phi = back @ c0 @ to
    for idx, (X, comp) in enumerate(components):
        _, _, expect = tensor_component(X, B, B2, phi)
        if comp != expect:
            from .report import first_difference
            j = first_difference(comp, expect)
            return phi, {"probe": idx, "name": X.name, "input": j,
                         "given": [str(x) for x in comp.column(j).entries()],
                         "expected": [str(x) for x in expect.column(j).entries()]}
    return phi, None


def hom_component(B: Module, B2: Module, phi: Matrix, X: Module):
    """Hom_A(phi, X): Hom_A(B', X) -> Hom_A(B, X)."""
    H2 = HomSpace(B2, X)
    H = HomSpace(B, X)
    return H2, H, H2.precompose(phi, H)


def mate_via_units(B: Module, B2: Module, phi: Matrix, X: Module) -> Matrix:
    """The mate R eps~ o R f R~ o eta R~ at X for f = - (x) phi; returns Hom(B',X) -> Hom(B,X)."""
    F = X.field
    H2 = HomSpace(B2, X)                         # R~ X
    Y = H2.module
    T, HY, eta = adjunction_unit(Y, B)           # eta_{R~X}: Y -> Hom(B, Y (x) B)
    _, Tb, f_Y = tensor_component(Y, B, B2, phi)  # f_{R~X}: Y (x) B -> Y (x) B'
    Hf = HomSpace(B, Tb.module)
    R_f = HY.postcompose(f_Y, Hf)
    _, Te, eps_t = adjunction_counit(X, B2)      # eps~_X: Hom(B',X) (x) B' -> X
    assert Te.dim == Tb.dim
    H = HomSpace(B, X)
    R_eps = Hf.postcompose(eps_t, H)
    return R_eps @ R_f @ eta


def unmate_via_units(B: Module, B2: Module, mate_at, X: Module) -> Matrix:
    """Recover f_X = eps L~ o L fbar L~ o L eta~ : X (x) B -> X (x) B' from the mate.

    ``mate_at(Y)`` must return the component Hom(B', Y) -> Hom(B, Y).
    """
    F = X.field
    T, H2, eta2 = adjunction_unit(X, B2)           # eta~_X: X -> Hom(B', X (x) B')
    Y = T.module                                   # L~ X = X (x) B'
    fbar = mate_at(Y)                              # Hom(B', Y) -> Hom(B, Y)
    HB, Tc, eps = adjunction_counit(Y, B)          # Hom(B, Y) (x) B -> Y
    Tx = Tensor([X, B])
    T_eta = Tensor([H2.module, B])
    L_eta = T_eta.proj @ kron(eta2, B.identity()) @ Tx.sec
    L_fbar = Tc.proj @ kron(fbar, B.identity()) @ T_eta.sec
    return eps @ L_fbar @ L_eta


def mate_of_bimodule_map(B: Module, B2: Module, phi: Matrix, probes: ProbeFamily) -> Report:
    """Mate of - (x)_A phi at each probe, checked against Hom(phi, -) and the double mate."""
    from .algebra_bimodule import is_bilinear as _bil
    if not _bil(phi, B, B2):
        raise ValueError("phi is not A-bilinear")
    rep = Report("mate of bimodule map")
    comps = []
    for X in probes:
        _, _, direct = hom_component(B, B2, phi, X)
        via = mate_via_units(B, B2, phi, X)
        rep.law(f"mate formula at {X.name}", lambda d=direct, v=via: (v, d))
        back = unmate_via_units(B, B2, lambda Y: hom_component(B, B2, phi, Y)[2], X)
        _, _, f_X = tensor_component(X, B, B2, phi)
        rep.law(f"double mate at {X.name}", lambda b=back, f=f_X: (b, f))
        comps.append(direct)
    rep.data["components"] = comps
    return rep
