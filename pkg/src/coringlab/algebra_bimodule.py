"""Finite-dimensional algebras, bimodules, and the constructions (x)_A and Hom_A.

Every module is stored as a bimodule: a right A-module is a (k, A)-bimodule
with the trivial left action of the ground field k, and dually.  This makes
the residual actions on tensor products and Hom-spaces uniform.

Action matrices follow the lexicographic tensor basis: a left action is a
map A(x)M -> M (dim x dimA*dim), a right action is M(x)A -> M (dim x dim*dimA).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from math import prod
from typing import Sequence

from .exact_linalg import (Field, Matrix, QuotientSpace, Subspace, block_diag, flatten,
                           hstack, kernel, kron, postcompose_matrix, precompose_matrix,
                           quotient_by, solve, span, unflatten, vstack)
from .report import Report, replay


class BaseMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# algebras

@dataclass(frozen=True, eq=False)
class Algebra:
    """Unital algebra by structure constants; ``mult`` is the map A(x)A -> A."""

    field: Field
    dim: int
    mult: Matrix
    unit: Matrix
    name: str = ""

    def __post_init__(self):
        n = self.dim
        if self.mult.shape != (n, n * n) or self.unit.shape != (n, 1):
            raise ValueError(f"malformed algebra {self.name!r}: mult {self.mult.shape}, unit {self.unit.shape}")

    @classmethod
    def from_constants(cls, field: Field, consts, unit, name: str = "") -> "Algebra":
        """consts[i][j] is the coordinate vector of e_i * e_j."""
        n = len(consts)
        cols = []
        for i in range(n):
            if len(consts[i]) != n:
                raise ValueError("structure constants must be n x n x n")
            for j in range(n):
                if len(consts[i][j]) != n:
                    raise ValueError("structure constants must be n x n x n")
                cols.append(list(consts[i][j]))
        mult = field.matrix([[cols[c][k] for c in range(n * n)] for k in range(n)]) if n else field.zeros(0, 0)
        return cls(field, n, mult, field.vector(list(unit)) if n else field.zeros(0, 1), name)

    def constants(self):
        n = self.dim
        m = self.mult.tolist()
        return [[[m[k][i * n + j] for k in range(n)] for j in range(n)] for i in range(n)]

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return self.mult @ kron(a, b)

    def lmul(self, a: Matrix) -> Matrix:
        """x |-> a x."""
        return self.mult @ kron(a, self.field.identity(self.dim))

    def rmul(self, a: Matrix) -> Matrix:
        """x |-> x a."""
        return self.mult @ kron(self.field.identity(self.dim), a)

    def e(self, i: int) -> Matrix:
        return self.field.basis_vector(self.dim, i)

    def opposite(self) -> "Algebra":
        n = self.dim
        perm = [j * n + i for i in range(n) for j in range(n)]
        return Algebra(self.field, n, self.mult.select(cols=perm), self.unit, self.name + "^op")

    def same_as(self, other: "Algebra") -> bool:
        return self is other or (self.field == other.field and self.dim == other.dim
                                 and self.mult == other.mult and self.unit == other.unit)


def algebra_generators(A: Algebra) -> list:
    """A small set of basis vectors generating A as a unital algebra (greedy, cached on A)."""
    if "_generators" in A.__dict__:
        return A.__dict__["_generators"]
    F, n = A.field, A.dim
    gens: list = []
    sub = span(A.unit)
    for i in range(n):
        e = A.e(i)
        if sub.contains(e):
            continue
        gens.append(e)
        # close span(1, gens) under multiplication by the generators
        while True:
            prods = [A.lmul(g) @ sub.basis for g in gens]
            new = span(hstack([sub.basis] + prods))
            if new.dim == sub.dim:
                break
            sub = new
        if sub.dim == n:
            break
    A.__dict__["_generators"] = gens
    return gens


@lru_cache(maxsize=None)
def ground(F: Field) -> Algebra:
    return Algebra(F, 1, F.identity(1), F.identity(1), "k")


def algebra_laws(A: Algebra) -> dict:
    F, n = A.field, A.dim
    I = F.identity(n)
    return {
        "associativity": lambda: (A.mult @ kron(A.mult, I), A.mult @ kron(I, A.mult)),
        "left unit": lambda: (A.mult @ kron(A.unit, I), I),
        "right unit": lambda: (A.mult @ kron(I, A.unit), I),
    }


def check_algebra(A: Algebra) -> Report:
    rep = Report(f"check algebra {A.name}")
    for k, law in algebra_laws(A).items():
        rep.law(k, law)
    return rep


# ---------------------------------------------------------------------------
# modules

@dataclass(frozen=True, eq=False)
class Module:
    """(L, R)-bimodule of dimension ``dim`` with action matrices lact, ract."""

    left: Algebra
    right: Algebra
    dim: int
    lact: Matrix
    ract: Matrix
    name: str = ""

    def __post_init__(self):
        d = self.dim
        if self.lact.shape != (d, self.left.dim * d) or self.ract.shape != (d, d * self.right.dim):
            raise ValueError(f"malformed module {self.name!r}: dim {d}, lact {self.lact.shape}, ract {self.ract.shape}")

    @property
    def field(self) -> Field:
        return self.left.field

    def L(self, a: Matrix) -> Matrix:
        return self.lact @ kron(a, self.field.identity(self.dim))

    def R(self, a: Matrix) -> Matrix:
        return self.ract @ kron(self.field.identity(self.dim), a)

    def L_basis(self) -> list:
        return [self.L(self.left.e(i)) for i in range(self.left.dim)]

    def R_basis(self) -> list:
        return [self.R(self.right.e(i)) for i in range(self.right.dim)]

    def identity(self) -> Matrix:
        return self.field.identity(self.dim)

    def with_name(self, name: str) -> "Module":
        return Module(self.left, self.right, self.dim, self.lact, self.ract, name)

    def forget_left(self) -> "Module":
        k = ground(self.field)
        return Module(k, self.right, self.dim, self.field.identity(self.dim), self.ract, self.name)

    def forget_right(self) -> "Module":
        k = ground(self.field)
        return Module(self.left, k, self.dim, self.lact, self.field.identity(self.dim), self.name)


def right_module(A: Algebra, dim: int, ract: Matrix, name: str = "") -> Module:
    k = ground(A.field)
    return Module(k, A, dim, A.field.identity(dim), ract, name)


def left_module(A: Algebra, dim: int, lact: Matrix, name: str = "") -> Module:
    k = ground(A.field)
    return Module(A, k, dim, lact, A.field.identity(dim), name)


def vector_space(F: Field, dim: int, name: str = "") -> Module:
    k = ground(F)
    return Module(k, k, dim, F.identity(dim), F.identity(dim), name)


def regular(A: Algebra, name: str = "") -> Module:
    """A as an (A, A)-bimodule."""
    return Module(A, A, A.dim, A.mult, A.mult, name or A.name)


def direct_sum(*mods: Module, name: str = "") -> Module:
    L, R = mods[0].left, mods[0].right
    for M in mods:
        if not (M.left.same_as(L) and M.right.same_as(R)):
            raise BaseMismatch("direct sum of modules over different bases")
    F = L.field
    dims = [M.dim for M in mods]
    d = sum(dims)
    # left action on A(x)(M1+...+Mr): build column by column
    lcols, rcols = [], []
    for i in range(L.dim):
        lcols.append(block_diag([M.L(L.e(i)) for M in mods]))
    lact = hstack([lcols[i].column(j) for i in range(L.dim) for j in range(d)], field=F, rows=d)
    Rb = [block_diag([M.R(R.e(t)) for M in mods]) for t in range(R.dim)]
    ract = hstack([Rb[t].column(j) for j in range(d) for t in range(R.dim)], field=F, rows=d)
    return Module(L, R, d, lact, ract, name or "+".join(M.name for M in mods))


def module_laws(M: Module) -> dict:
    F = M.field
    I = M.identity()
    L, R = M.left, M.right
    IL, IR = F.identity(L.dim), F.identity(R.dim)
    return {
        "left associativity": lambda: (M.lact @ kron(IL, M.lact), M.lact @ kron(L.mult, I)),
        "left unit": lambda: (M.lact @ kron(L.unit, I), I),
        "right associativity": lambda: (M.ract @ kron(M.ract, IR), M.ract @ kron(I, R.mult)),
        "right unit": lambda: (M.ract @ kron(I, R.unit), I),
        "actions commute": lambda: (M.ract @ kron(M.lact, IR), M.lact @ kron(IL, M.ract)),
    }


def check_module(M: Module) -> Report:
    rep = Report(f"check module {M.name}")
    for k, law in module_laws(M).items():
        rep.law(k, law)
    return rep


def is_left_linear(f: Matrix, M: Module, N: Module) -> bool:
    return all(f @ M.L(M.left.e(i)) == N.L(N.left.e(i)) @ f for i in range(M.left.dim))


def is_right_linear(f: Matrix, M: Module, N: Module) -> bool:
    return all(f @ M.R(M.right.e(i)) == N.R(N.right.e(i)) @ f for i in range(M.right.dim))


def is_bilinear(f: Matrix, M: Module, N: Module) -> bool:
    return is_left_linear(f, M, N) and is_right_linear(f, M, N)


# ---------------------------------------------------------------------------
# tensor products over A

class Tensor:
    """M_1 (x)_{A_1} M_2 (x) ... (x) M_r materialized as a quotient of the k-tensor.

    Right base of M_t must equal left base of M_{t+1}.  The k-level space is
    the lexicographic tensor of the factors; ``proj`` and ``sec`` pass between
    it and the quotient coordinates.  ``module`` carries the outer actions.
    """

    def __init__(self, factors: Sequence[Module], name: str = ""):
        factors = list(factors)
        if not factors:
            raise ValueError("empty tensor product")
        for a, b in zip(factors, factors[1:]):
            if not a.right.same_as(b.left):
                raise BaseMismatch(f"cannot tensor {a.name!r} with {b.name!r}: base mismatch")
        self.factors = factors
        self.F = factors[0].field
        self.kdims = [M.dim for M in factors]
        self.kdim = prod(self.kdims)
        self.name = name or " (x) ".join(M.name for M in factors)
        F = self.F
        if len(factors) > 2:
            # fold from the left: (M_1 (x) ... (x) M_{r-1}) (x) M_r keeps each
            # relation matrix small compared with the full k-tensor
            inner = Tensor(factors[:-1])
            outer = Tensor([inner.module, factors[-1]])
            d, q = factors[-1].dim, inner.dim
            # proj = outer.proj (inner.proj (x) I_d), sec = (inner.sec (x) I_d) outer.sec,
            # assembled one slice of the last factor at a time
            pblocks, sblocks = [], []
            for j in range(d):
                slice_q = [a * d + j for a in range(q)]
                pblocks.append(outer.proj.select(cols=slice_q) @ inner.proj)
                sblocks.append(inner.sec @ outer.sec.select(rows=slice_q))
            K = inner.kdim
            order = [j * K + i for i in range(K) for j in range(d)]
            self.proj = hstack(pblocks, field=F, rows=outer.dim).select(cols=order)
            self.sec = vstack(sblocks, field=F, cols=outer.dim).select(rows=order)
            self.dim = outer.dim
            return
        if len(factors) == 1:
            self.__dict__["balancing"] = Subspace(self.kdim, F.zeros(self.kdim, 0), ())
            self.proj = self.sec = F.identity(self.kdim)
            self.dim = self.kdim
            return
        Mt, Mn = factors
        A = Mt.right
        # m a (x) n - m (x) a n for a in a generating set of A suffices
        gens = [kron(Mt.R(a), Mn.identity()) - kron(Mt.identity(), Mn.L(a)) for a in algebra_generators(A)]
        if not gens:
            S = Subspace(self.kdim, F.zeros(self.kdim, 0), ())
        else:
            S = span(hstack(gens))
        self.__dict__["balancing"] = S
        q = quotient_by(self.kdim, S)
        self.proj = q.projection
        self.sec = q.section
        self.dim = q.dim

    @cached_property
    def balancing(self) -> Subspace:
        """The subspace of balancing relations, i.e. the kernel of ``proj``."""
        return kernel(self.proj)

    @cached_property
    def module(self) -> Module:
        F = self.F
        first, last = self.factors[0], self.factors[-1]
        rest = prod(self.kdims[1:])
        init = prod(self.kdims[:-1])
        lact = self.proj @ kron(first.lact, F.identity(rest)) @ kron(F.identity(first.left.dim), self.sec)
        ract = self.proj @ kron(F.identity(init), last.ract) @ kron(self.sec, F.identity(last.right.dim))
        return Module(first.left, last.right, self.dim, lact, ract, self.name)

    def elem(self, *vecs: Matrix) -> Matrix:
        return self.proj @ kron(*vecs)

    def induced(self, *maps: Matrix, target: "Tensor | None" = None) -> Matrix:
        """(f_1 (x) ... (x) f_r) at k-level, projected into ``target`` (or returned at k-level)."""
        m = kron(*maps) @ self.sec
        return target.proj @ m if target is not None else m

    def check_well_defined(self, f: Matrix) -> bool:
        """f: k-level -> somewhere descends to the quotient iff it kills the balancing subspace."""
        return (f @ self.balancing.basis).is_zero()


def tensor_over(M: Module, N: Module, name: str = "") -> Tensor:
    return Tensor([M, N], name)


def unit_right(M: Module) -> tuple:
    """(M (x)_A A -> M, M -> M (x)_A A) as explicit mutually inverse matrices."""
    T = Tensor([M, regular(M.right)])
    fwd = M.ract @ T.sec
    bwd = T.elem(M.identity(), M.right.unit)
    return T, fwd, bwd


def unit_left(M: Module) -> tuple:
    T = Tensor([regular(M.left), M])
    fwd = M.lact @ T.sec
    bwd = T.elem(M.left.unit, M.identity())
    return T, fwd, bwd


# ---------------------------------------------------------------------------
# Hom over A

class HomSpace:
    """Hom_A(M, N) as a subspace of flattened Hom_k(M, N).

    side="right": M, N right A-modules (the shared right base); if M is (B,A)
    and N is (D,A) the result is a (D,B)-bimodule, (d f b)(m) = d f(b m).
    side="left": M, N left A-modules; if M is (A,B), N is (A,D) the result is
    a (B,D)-bimodule, (b f d)(m) = f(m b) d.
    """

    def __init__(self, M: Module, N: Module, side: str = "right", name: str = ""):
        if side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")
        base_M = M.right if side == "right" else M.left
        base_N = N.right if side == "right" else N.left
        if not base_M.same_as(base_N):
            raise BaseMismatch(f"Hom over different bases ({M.name!r}, {N.name!r})")
        self.M, self.N, self.side = M, N, side
        self.A = base_M
        self.F = M.field
        self.name = name or f"Hom({M.name},{N.name})"
        m, n = M.dim, N.dim
        acts_M = M.R_basis() if side == "right" else M.L_basis()
        acts_N = N.R_basis() if side == "right" else N.L_basis()
        rows = [precompose_matrix(a, n) - postcompose_matrix(b, m) for a, b in zip(acts_M, acts_N)]
        if rows and m * n:
            self.space: Subspace = kernel(vstack(rows))
        else:
            self.space = Subspace(m * n, self.F.identity(m * n), tuple(range(m * n)))
        self.dim = self.space.dim

    @property
    def basis(self) -> Matrix:
        return self.space.basis

    def to_map(self, c: Matrix) -> Matrix:
        return unflatten(self.basis @ c, self.N.dim, self.M.dim)

    def basis_map(self, s: int) -> Matrix:
        return unflatten(self.basis.column(s), self.N.dim, self.M.dim)

    def coords(self, f: Matrix) -> Matrix:
        return self.space.coords(flatten(f))

    def coords_checked(self, f: Matrix) -> Matrix:
        return self.space.coords_checked(flatten(f))

    def contains(self, f: Matrix) -> bool:
        return self.space.contains(flatten(f))

    def induced_by(self, on_flat: Matrix) -> Matrix:
        """Restrict a linear operator on flattened Hom_k into coordinates of this space."""
        return (on_flat @ self.basis).select(rows=self.space.pivots)

    @cached_property
    def module(self) -> Module:
        F = self.F
        M, N, h = self.M, self.N, self.dim
        m, n = M.dim, N.dim
        if self.side == "right":
            lalg, ralg = N.left, M.left
            lops = [postcompose_matrix(a, m) for a in N.L_basis()]
            rops = [precompose_matrix(a, n) for a in M.L_basis()]
        else:
            lalg, ralg = M.right, N.right
            lops = [precompose_matrix(a, n) for a in M.R_basis()]
            rops = [postcompose_matrix(a, m) for a in N.R_basis()]
        L = [self.induced_by(op) for op in lops]
        R = [self.induced_by(op) for op in rops]
        lact = hstack([L[i].column(s) for i in range(lalg.dim) for s in range(h)], field=F, rows=h)
        ract = hstack([R[t].column(s) for s in range(h) for t in range(ralg.dim)], field=F, rows=h)
        return Module(lalg, ralg, h, lact, ract, self.name)

    def evaluation(self) -> Matrix:
        """k-level evaluation Hom(M,N) (x)_k M -> N in Hom coordinates, f (x) m |-> f(m)."""
        F = self.F
        h, m, n = self.dim, self.M.dim, self.N.dim
        cols = []
        for s in range(h):
            f = self.basis_map(s)
            for t in range(m):
                cols.append(f.column(t))
        return hstack(cols, field=F, rows=n)

    def precompose(self, g: Matrix, other: "HomSpace") -> Matrix:
        """Hom(M,N) -> Hom(M',N), f |-> f o g for g: M' -> M; ``other`` = Hom(M',N)."""
        if not isinstance(other, HomSpace):
            return hstack([other.coords(self.basis_map(s) @ g) for s in range(self.dim)], field=self.F, rows=other.dim)
        return (precompose_matrix(g, self.N.dim) @ self.basis).select(rows=other.space.pivots)

    def postcompose(self, g: Matrix, other: "HomSpace") -> Matrix:
        """Hom(M,N) -> Hom(M,N'), f |-> g o f for g: N -> N'."""
        if not isinstance(other, HomSpace):
            return hstack([other.coords(g @ self.basis_map(s)) for s in range(self.dim)], field=self.F, rows=other.dim)
        return (postcompose_matrix(g, self.M.dim) @ self.basis).select(rows=other.space.pivots)

    def map_from_maps(self, maps: Sequence[Matrix]) -> Matrix:
        """Matrix whose column s is coords of maps[s]."""
        return hstack([self.coords(f) for f in maps], field=self.F, rows=self.dim)


def hom_over(M: Module, N: Module, side: str = "right", name: str = "") -> HomSpace:
    return HomSpace(M, N, side, name)


def hom_to_k(M: Module) -> HomSpace:
    """Hom_k(M, k) of the underlying space."""
    F = M.field
    return HomSpace(vector_space(F, M.dim, M.name), vector_space(F, 1, "k"), "right", f"{M.name}*")


def linear_dual(A: Algebra) -> Module:
    """A* = Hom_k(A, k) as a right A-module, (f a)(x) = f(a x)."""
    F = A.field
    n = A.dim
    # basis: dual basis functionals; (f.a)(x) = f(a x) -> matrix of f.a is f @ lmul(a)
    cols = []
    for s in range(n):
        f = F.basis_vector(n, s).T
        for t in range(n):
            cols.append((f @ A.lmul(A.e(t))).T)
    ract = hstack(cols, field=F, rows=n)
    return right_module(A, n, ract, f"{A.name}*")


# ---------------------------------------------------------------------------
# projectivity and duals

@dataclass(frozen=True, eq=False)
class DualBasisWitness:
    elements: list      # vectors in M
    functionals: list   # 1 x dim M ... stored as dimA x dimM matrices (A-valued maps)
    side: str

    def check(self, M: Module) -> bool:
        A = M.left if self.side == "left" else M.right
        F = M.field
        for j in range(M.dim):
            m = F.basis_vector(M.dim, j)
            acc = F.zeros(M.dim, 1)
            for e, f in zip(self.elements, self.functionals):
                a = f @ m
                acc = acc + (M.L(a) @ e if self.side == "left" else M.R(a) @ e)
            if acc != m:
                return False
        return True


def free_module(A: Algebra, r: int, side: str) -> Module:
    reg = regular(A)
    one = reg.forget_right() if side == "left" else reg.forget_left()
    return direct_sum(*([one] * r)) if r else Module(ground(A.field), ground(A.field), 0,
                                                      A.field.zeros(0, 0), A.field.zeros(0, 0))


def is_fg_projective(M: Module, side: str = "left"):
    """Decide projectivity over the ``side`` base by solving for an A-linear section.

    Returns (verdict, DualBasisWitness | None, details).
    """
    F = M.field
    A = M.left if side == "left" else M.right
    Mo = M.forget_right() if side == "left" else M.forget_left()
    r = M.dim
    if r == 0:
        return True, DualBasisWitness([], [], side), {}
    Fr = free_module(A, r, side)
    # pi: A^r -> M, (a_1..a_r) |-> sum a_i m_i (left) or m_i a_i (right)
    cols = []
    for i in range(r):
        mi = F.basis_vector(r, i)
        for t in range(A.dim):
            a = A.e(t)
            cols.append(Mo.L(a) @ mi if side == "left" else Mo.R(a) @ mi)
    pi = hstack(cols)
    H = HomSpace(Mo, Fr, side)
    # pi o s = id: linear in the coordinates of s
    lhs = postcompose_matrix(pi, r) @ H.basis
    res = solve(lhs, flatten(F.identity(r)))
    details = {"unknowns": H.dim, "rank": res.rank, "augmented_rank": res.augmented_rank}
    if not res.feasible:
        return False, None, details
    s = H.to_map(res.solution)
    funcs = [s.select(rows=range(i * A.dim, (i + 1) * A.dim)) for i in range(r)]
    elems = [F.basis_vector(r, i) for i in range(r)]
    w = DualBasisWitness(elems, funcs, side)
    assert w.check(M), "dual basis identity failed"
    return True, w, details


def dual_module(N: Module, side: str = "left") -> HomSpace:
    """*N = Hom_A(N, A) for a left A-module N (side="left"), a right A-module via g(n)a.

    For side="right", N* = Hom_A(N, A) for a right module N, a left module via a g(n).
    """
    A = N.left if side == "left" else N.right
    return HomSpace(N, regular(A), side, f"*{N.name}" if side == "left" else f"{N.name}*")


# ---------------------------------------------------------------------------
# sub- and quotient modules, bimodule maps

def submodule(M: Module, S: Subspace, name: str = "") -> tuple:
    """Restrict the actions of M to an invariant subspace S.  Returns (module, inclusion)."""
    F = M.field
    h = S.dim
    Ls = [S.coords_checked(M.L(M.left.e(i)) @ S.basis) for i in range(M.left.dim)]
    Rs = [S.coords_checked(M.R(M.right.e(t)) @ S.basis) for t in range(M.right.dim)]
    lact = hstack([Ls[i].column(s) for i in range(M.left.dim) for s in range(h)], field=F, rows=h)
    ract = hstack([Rs[t].column(s) for s in range(h) for t in range(M.right.dim)], field=F, rows=h)
    return Module(M.left, M.right, h, lact, ract, name or M.name), S.basis


def quotient_module(M: Module, S: Subspace, name: str = "") -> tuple:
    """M / S for an invariant subspace S.  Returns (module, projection, section)."""
    F = M.field
    Q = quotient_by(M.dim, S)
    P, sec = Q.projection, Q.section
    h = Q.dim
    for a in M.L_basis() + M.R_basis():
        if not (P @ a @ S.basis).is_zero():
            raise ValueError("subspace is not a submodule")
    Ls = [P @ M.L(M.left.e(i)) @ sec for i in range(M.left.dim)]
    Rs = [P @ M.R(M.right.e(t)) @ sec for t in range(M.right.dim)]
    lact = hstack([Ls[i].column(s) for i in range(M.left.dim) for s in range(h)], field=F, rows=h)
    ract = hstack([Rs[t].column(s) for s in range(h) for t in range(M.right.dim)], field=F, rows=h)
    return Module(M.left, M.right, h, lact, ract, name or M.name), P, sec


class MapSpace:
    """A subspace of Hom_A(M, N), given by an echelon subspace K of the parent coordinates."""

    def __init__(self, parent: "HomSpace", K: Subspace, name: str = ""):
        self.parent, self.K = parent, K
        self.M, self.N = parent.M, parent.N
        self.F = parent.F
        self.dim = K.dim
        self.name = name or parent.name
        self.basis = parent.basis @ K.basis

    def basis_map(self, s: int) -> Matrix:
        return unflatten(self.basis.column(s), self.N.dim, self.M.dim)

    def to_map(self, c: Matrix) -> Matrix:
        return unflatten(self.basis @ c, self.N.dim, self.M.dim)

    def coords(self, f: Matrix) -> Matrix:
        return self.K.coords(self.parent.coords(f))

    def coords_checked(self, f: Matrix) -> Matrix:
        return self.K.coords_checked(self.parent.coords_checked(f))

    def contains(self, f: Matrix) -> bool:
        return self.parent.contains(f) and self.K.contains(self.parent.coords(f))

    def same_space(self, other) -> bool:
        return span(self.basis) == span(other.basis) if self.dim else other.dim == 0

    def evaluation(self) -> Matrix:
        F = self.F
        cols = []
        for s in range(self.dim):
            f = self.basis_map(s)
            for t in range(self.M.dim):
                cols.append(f.column(t))
        return hstack(cols, field=F, rows=self.N.dim)

    @cached_property
    def module(self) -> Module:
        return submodule(self.parent.module, self.K, self.name)[0]

    def postcompose(self, g: Matrix, other) -> Matrix:
        return hstack([other.coords(g @ self.basis_map(s)) for s in range(self.dim)], field=self.F, rows=other.dim)

    def precompose(self, g: Matrix, other) -> Matrix:
        return hstack([other.coords(self.basis_map(s) @ g) for s in range(self.dim)], field=self.F, rows=other.dim)


def restrict_maps(H: "HomSpace", constraint, name: str = "") -> MapSpace:
    """Subspace of a HomSpace cut out by a linear constraint f |-> matrix (== 0)."""
    F = H.F
    if H.dim == 0:
        return MapSpace(H, Subspace(0, F.zeros(0, 0), ()), name)
    cols = [flatten(constraint(H.basis_map(s))) for s in range(H.dim)]
    return MapSpace(H, kernel(hstack(cols)), name)


def full_maps(H: "HomSpace") -> MapSpace:
    F = H.F
    return MapSpace(H, Subspace(H.dim, F.identity(H.dim), tuple(range(H.dim))), H.name)


def bimodule_maps(M: Module, N: Module, name: str = "") -> MapSpace:
    """(L,R)-bimodule maps M -> N."""
    H = HomSpace(M, N, "right")
    Ls = list(zip(M.L_basis(), N.L_basis()))
    return restrict_maps(H, lambda f: vstack([f @ a - b @ f for a, b in Ls], field=M.field, cols=M.dim), name)
