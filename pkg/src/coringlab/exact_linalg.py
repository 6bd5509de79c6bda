"""Exact scalars and dense matrices over Q and F_p.

Linear maps follow the column convention: a map k^n -> k^m is an m x n
matrix whose column j is the image of e_j.  Tensor bases are ordered
lexicographically, (i, j) -> i * dim(W) + j, so ``tensor_map`` is the
Kronecker product.  Hom(k^n, k^m) is identified with k^(m*n) by flattening
matrices row-major (``flatten`` / ``unflatten``).

The elimination kernels are delegated to python-flint (fmpq_mat, nmod_mat);
everything here is exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import flint


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """Either Q (p == 0) or F_p for a prime p that fits a machine word."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if self.p < 2 or self.p >= 2 ** 63 or not flint.fmpz(self.p).is_prime():
                raise FieldError(f"modulus not prime: {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self):
        return "Q" if self.p == 0 else f"F_{self.p}"

    def describe(self) -> dict:
        return {"type": "Q"} if self.p == 0 else {"type": "Fp", "p": self.p}

    # scalars -----------------------------------------------------------
    def scalar(self, x):
        """Coerce an int, Fraction or "a/b" string into a canonical scalar.

        Rationals come back as reduced ``Fraction``; residues as ints in [0, p).
        """
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, (flint.fmpq, flint.nmod)):
            x = _py(x)
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def _raw(self, x):
        x = self.scalar(x)
        if self.p == 0:
            return flint.fmpq(x.numerator, x.denominator)
        return x

    def inv(self, x):
        x = self.scalar(x)
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.p == 0:
            return 1 / x
        return pow(x, -1, self.p)

    def half(self):
        return self.inv(2)

    # matrices ---------------------------------------------------------
    def _mat(self, m: int, n: int, raw_entries):
        if self.p == 0:
            return flint.fmpq_mat(m, n, raw_entries) if raw_entries is not None else flint.fmpq_mat(m, n)
        if raw_entries is None:
            return flint.nmod_mat(m, n, self.p)
        return flint.nmod_mat(m, n, raw_entries, self.p)

    def zeros(self, m: int, n: int) -> "Matrix":
        return Matrix(self, m, n, self._mat(m, n, None))

    def identity(self, n: int) -> "Matrix":
        return self.selection(n, range(n))

    def selection(self, n: int, cols: Sequence[int]) -> "Matrix":
        """The n x len(cols) matrix whose t-th column is e_{cols[t]}."""
        cols = list(cols)
        m = self._mat(n, len(cols), None)
        one = self._raw(1)
        for t, j in enumerate(cols):
            m[j, t] = one
        return Matrix(self, n, len(cols), m)

    def matrix(self, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else 0
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix rows")
        return self.from_entries(m, n, [x for r in rows for x in r])

    def from_entries(self, m: int, n: int, entries: Sequence) -> "Matrix":
        if len(entries) != m * n:
            raise ValueError(f"expected {m * n} entries, got {len(entries)}")
        return Matrix(self, m, n, self._mat(m, n, [self._raw(x) for x in entries]))

    def vector(self, xs: Sequence) -> "Matrix":
        return self.from_entries(len(xs), 1, list(xs))

    def basis_vector(self, n: int, i: int) -> "Matrix":
        ent = [0] * n
        ent[i] = 1
        return self.from_entries(n, 1, ent)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        a, b = s.split("/", 1)
        if int(b) == 0:
            raise FieldError("zero denominator")
        return Fraction(int(a), int(b))
    return Fraction(int(s))


def _py(x):
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.nmod):
        return int(x)
    return x


class Matrix:
    """Immutable dense matrix over a Field (wraps a flint matrix)."""

    __slots__ = ("field", "rows", "cols", "_m", "_e")

    def __init__(self, field: Field, rows: int, cols: int, raw):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._m = raw
        self._e = None

    # basic protocol ----------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __repr__(self):
        return f"Matrix<{self.field!r}>({self.rows}x{self.cols}, {self.tolist()})"

    def __getitem__(self, ij):
        i, j = ij
        return _py(self._m[i, j])

    def entries(self) -> list:
        if self.rows == 0 or self.cols == 0:
            return []
        return [_py(x) for x in self._m.entries()]

    def _raw_entries(self) -> list:
        if self.rows == 0 or self.cols == 0:
            return []
        if self._e is None:
            self._e = self._m.entries()
        return self._e

    def tolist(self) -> list:
        e = self.entries()
        return [e[i * self.cols:(i + 1) * self.cols] for i in range(self.rows)]

    def _wrap(self, m, n, raw):
        return Matrix(self.field, m, n, raw)

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.field != self.field:
            raise ValueError("field mismatch")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return self.field.zeros(self.rows, other.cols)
        return self._wrap(self.rows, other.cols, self._m * other._m)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"dimension mismatch {self.shape} + {other.shape}")
        if self.rows == 0 or self.cols == 0:
            return self
        return self._wrap(self.rows, self.cols, self._m + other._m)

    def __neg__(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return self
        return self._wrap(self.rows, self.cols, -self._m)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return self
        return self._wrap(self.rows, self.cols, self._m * self.field._raw(c))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        if self.rows == 0 or self.cols == 0:
            return True
        return self._m == other._m

    __hash__ = None

    @property
    def T(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return self.field.zeros(self.cols, self.rows)
        return self._wrap(self.cols, self.rows, self._m.transpose())

    def is_zero(self) -> bool:
        if self.rows == 0 or self.cols == 0:
            return True
        return self._m == self.field._mat(self.rows, self.cols, None)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == self.field.identity(self.rows)

    # slicing ------------------------------------------------------------
    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "Matrix":
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        cols = list(cols)
        if self._e is None and 4 * len(rows) * len(cols) < self.rows * self.cols:
            m = self._m
            return _sparse(self.field, len(rows), len(cols),
                           ((a, b, m[i, j]) for a, i in enumerate(rows) for b, j in enumerate(cols)))
        e = self._raw_entries()
        n = self.cols
        return _sparse(self.field, len(rows), len(cols),
                       ((a, b, e[i * n + j]) for a, i in enumerate(rows) for b, j in enumerate(cols)))

    def column(self, j: int) -> "Matrix":
        return self.select(cols=[j])

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    # elimination -------------------------------------------------------
    def rref(self):
        """Return (R, pivots) with R the reduced row echelon form."""
        if self.rows == 0 or self.cols == 0:
            return self, []
        R, r = self._m.rref()
        # pivots increase strictly, so one pass over the columns finds them all
        piv = []
        j = 0
        for i in range(int(r)):
            while R[i, j] == 0:
                j += 1
            piv.append(j)
            j += 1
        return self._wrap(self.rows, self.cols, R), piv

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(self._m.rank())

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        if self.rows == 0:
            return self
        return self._wrap(self.rows, self.rows, self._m.inv())


# ---------------------------------------------------------------------------
# assembling matrices

def _sparse(F: Field, m: int, n: int, items) -> Matrix:
    """Matrix from (row, col, raw value) triples; zero values may be included and are skipped."""
    M = F._mat(m, n, None)
    for i, j, x in items:
        if x != 0:
            M[i, j] = x
    return Matrix(F, m, n, M)


def hstack(blocks: Sequence[Matrix], field: Field | None = None, rows: int | None = None) -> Matrix:
    blocks = list(blocks)
    if not blocks:
        assert field is not None and rows is not None
        return field.zeros(rows, 0)
    F = blocks[0].field
    m = blocks[0].rows
    if any(b.rows != m for b in blocks):
        raise ValueError("hstack row mismatch")
    n = sum(b.cols for b in blocks)

    def items():
        c0 = 0
        for b in blocks:
            e, bc = b._raw_entries(), b.cols
            for k, x in enumerate(e):
                if x != 0:
                    yield k // bc, c0 + k % bc, x
            c0 += bc
    return _sparse(F, m, n, items())


def vstack(blocks: Sequence[Matrix], field: Field | None = None, cols: int | None = None) -> Matrix:
    blocks = list(blocks)
    if not blocks:
        assert field is not None and cols is not None
        return field.zeros(0, cols)
    F = blocks[0].field
    n = blocks[0].cols
    if any(b.cols != n for b in blocks):
        raise ValueError("vstack column mismatch")
    m = sum(b.rows for b in blocks)

    def items():
        r0 = 0
        for b in blocks:
            for k, x in enumerate(b._raw_entries()):
                if x != 0:
                    yield r0 + k // n, k % n, x
            r0 += b.rows
    return _sparse(F, m, n, items())


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    F = blocks[0].field
    m = sum(b.rows for b in blocks)
    n = sum(b.cols for b in blocks)

    def items():
        r0 = c0 = 0
        for b in blocks:
            bc = b.cols
            for k, x in enumerate(b._raw_entries()):
                if x != 0:
                    yield r0 + k // bc, c0 + k % bc, x
            r0 += b.rows
            c0 += bc
    return _sparse(F, m, n, items())


def tensor_map(f: Matrix, g: Matrix) -> Matrix:
    """f (x) g on lexicographic tensor bases, i.e. the Kronecker product."""
    F = f.field
    if g.field != F:
        raise ValueError("field mismatch")
    m, n = f.rows * g.rows, f.cols * g.cols
    if m == 0 or n == 0:
        return F.zeros(m, n)
    fe, ge = f._raw_entries(), g._raw_entries()
    gr, gc = g.rows, g.cols
    gnz = [(k // gc, k % gc, b) for k, b in enumerate(ge) if b != 0]
    M = F._mat(m, n, None)
    fc = f.cols
    for t, a in enumerate(fe):
        if a == 0:
            continue
        r0, c0 = (t // fc) * gr, (t % fc) * gc
        for k, l, b in gnz:
            M[r0 + k, c0 + l] = a * b
    return Matrix(F, m, n, M)


def kron(*ms: Matrix) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = tensor_map(out, m)
    return out


# ---------------------------------------------------------------------------
# Hom-space coordinates

def hom_coords(m: int, n: int):
    """Index contract for Hom(k^n, k^m) = k^(m*n): entry (i, j) sits at i*n + j."""
    return lambda i, j: i * n + j


def flatten(f: Matrix) -> Matrix:
    return Matrix(f.field, f.rows * f.cols, 1, f.field._mat(f.rows * f.cols, 1, f._raw_entries() or None)) \
        if f.rows * f.cols else f.field.zeros(0, 1)


def unflatten(v: Matrix, m: int, n: int) -> Matrix:
    if v.rows != m * n or v.cols != 1:
        raise ValueError("flattened vector has wrong length")
    if m * n == 0:
        return v.field.zeros(m, n)
    return Matrix(v.field, m, n, v.field._mat(m, n, v._raw_entries()))


def precompose_matrix(h: Matrix, target_dim: int) -> Matrix:
    """Matrix of F |-> F o h on flattened Hom(k^a, k^t) -> Hom(k^b, k^t), h: k^b -> k^a."""
    return tensor_map(h.field.identity(target_dim), h.T)


def postcompose_matrix(g: Matrix, source_dim: int) -> Matrix:
    """Matrix of F |-> g o F on flattened Hom spaces with fixed source of dimension source_dim."""
    return tensor_map(g, g.field.identity(source_dim))


# ---------------------------------------------------------------------------
# subspaces, solving, quotients

@dataclass(frozen=True, eq=False)
class Subspace:
    """Column span with an echelon basis: basis.select(rows=pivots) is the identity."""

    ambient_dim: int
    basis: Matrix
    pivots: tuple = dc_field(default=())

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def field(self) -> Field:
        return self.basis.field

    def coords(self, v: Matrix) -> Matrix:
        """Coordinates of v (assumed to lie in the subspace) in the echelon basis."""
        return v.select(rows=self.pivots)

    def coords_checked(self, v: Matrix) -> Matrix:
        c = self.coords(v)
        if self.basis @ c != v:
            raise ValueError("vector not in subspace")
        return c

    def contains(self, v: Matrix) -> bool:
        return self.basis @ self.coords(v) == v

    def contains_space(self, other: "Subspace") -> bool:
        return self.contains(other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        # echelon data depends on the constructor (span vs kernel), so compare as sets
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and (self.dim == 0 or self.contains_space(other)))

    __hash__ = None


def span(vectors: Matrix) -> Subspace:
    """Subspace spanned by the columns of ``vectors``."""
    F, N = vectors.field, vectors.rows
    if vectors.cols == 0 or N == 0:
        return Subspace(N, F.zeros(N, 0), ())
    R, piv = vectors.T.rref()
    basis = R.select(rows=range(len(piv))).T
    return Subspace(N, basis, tuple(piv))


def image(A: Matrix) -> Subspace:
    return span(A)


def rank(A: Matrix) -> int:
    return A.rank()


def kernel(A: Matrix) -> Subspace:
    F, n = A.field, A.cols
    if n == 0:
        return Subspace(0, F.zeros(0, 0), ())
    if A.rows == 0:
        return Subspace(n, F.identity(n), tuple(range(n)))
    R, piv = A.rref()
    free = [j for j in range(n) if j not in set(piv)]
    e = R._raw_entries()
    vecs = []
    for j in free:
        v = [0] * n
        v[j] = 1
        for i, p in enumerate(piv):
            v[p] = -e[i * n + j]
        vecs.extend(v)
    if not free:
        return Subspace(n, F.zeros(n, 0), ())
    K = Matrix(F, len(free), n, F._mat(len(free), n, vecs)).T
    # the kernel basis is already echelon on the free coordinates
    return Subspace(n, K, tuple(free))


@dataclass(frozen=True, eq=False)
class SolveResult:
    solution: Matrix | None
    kernel: Subspace
    rank: int
    augmented_rank: int

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def solve(A: Matrix, b: Matrix) -> SolveResult:
    """Solve A x = b exactly.  Returns one solution (free variables zero) and ker A."""
    if b.rows != A.rows or b.cols != 1:
        raise ValueError(f"dimension mismatch: A is {A.shape}, b is {b.shape}")
    F, n = A.field, A.cols
    K = kernel(A)
    r = A.rank()
    aug = hstack([A, b])
    ra = aug.rank()
    if ra != r:
        return SolveResult(None, K, r, ra)
    if n == 0:
        return SolveResult(F.zeros(0, 1), K, r, ra)
    R, piv = aug.rref()
    e = R._raw_entries()
    x = [0] * n
    for i, p in enumerate(piv):
        x[p] = e[i * (n + 1) + n]
    return SolveResult(F.from_entries(n, 1, [_py(t) for t in x]), K, r, ra)


def solve_matrix(A: Matrix, B: Matrix):
    """Solve A X = B column by column; returns X or None."""
    cols = []
    for j in range(B.cols):
        s = solve(A, B.column(j))
        if not s.feasible:
            return None
        cols.append(s.solution)
    return hstack(cols, field=A.field, rows=A.cols)


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    """k^N / S with projection (q x N) and section (N x q), projection @ section = I."""

    ambient_dim: int
    projection: Matrix
    section: Matrix
    divided: Subspace

    @property
    def dim(self) -> int:
        return self.projection.rows


def quotient_by(ambient_dim: int, S: Subspace) -> QuotientSpace:
    F = S.field
    N = ambient_dim
    piv = list(S.pivots)
    pset = set(piv)
    rest = [j for j in range(N) if j not in pset]
    q = len(rest)
    # residual of v after clearing pivot coordinates with the echelon basis of S
    # e_j (non-pivot) -> e_j ;  e_p_i -> -(row i of S^T) restricted to non-pivots
    if q == 0:
        return QuotientSpace(N, F.zeros(0, N), F.zeros(N, 0), S)
    Bt = S.basis.T._raw_entries() if S.dim else []
    pos = {j: t for t, j in enumerate(rest)}
    zero = F._raw(0)
    out = [zero] * (q * N)
    for j in rest:
        out[pos[j] * N + j] = F._raw(1)
    for i, p in enumerate(piv):
        for j in rest:
            x = Bt[i * N + j]
            if x != 0:
                out[pos[j] * N + p] = -x
    P = Matrix(F, q, N, F._mat(q, N, out))
    sec = F.selection(N, rest)
    return QuotientSpace(N, P, sec, S)


# ---------------------------------------------------------------------------
# small predicates

def is_injective(f: Matrix) -> bool:
    return f.rank() == f.cols


def is_surjective(f: Matrix) -> bool:
    return f.rank() == f.rows


def is_bijective(f: Matrix) -> bool:
    return f.rows == f.cols and f.rank() == f.cols


def left_inverse(f: Matrix) -> Matrix | None:
    """Some g with g @ f = I, or None when f is not injective."""
    if not is_injective(f):
        return None
    g = solve_matrix(f.T, f.field.identity(f.cols))
    return g.T


def right_inverse(f: Matrix) -> Matrix | None:
    if not is_surjective(f):
        return None
    return solve_matrix(f, f.field.identity(f.rows))


def direct_sum_basis(*dims: int) -> list:
    out, off = [], 0
    for d in dims:
        out.append(range(off, off + d))
        off += d
    return out


def as_vector(F: Field, xs: Iterable) -> Matrix:
    return F.vector(list(xs))


def factor_permutation(dims: Sequence[int], order: Sequence[int]) -> list:
    """Row indices r so that X.select(rows=r) permutes the tensor factors of X's rows by ``order``."""
    dims = list(dims)
    if sorted(order) != list(range(len(dims))):
        raise ValueError("order must be a permutation of the factor positions")
    strides = [1] * len(dims)
    for t in range(len(dims) - 2, -1, -1):
        strides[t] = strides[t + 1] * dims[t + 1]
    out = []
    for idx in itertools.product(*[range(dims[o]) for o in order]):
        out.append(sum(i * strides[o] for i, o in zip(idx, order)))
    return out


def permute_factors(F: Field, dims: Sequence[int], order: Sequence[int]) -> Matrix:
    """Matrix of V_0 (x) ... (x) V_r -> V_order[0] (x) ... (x) V_order[r] permuting tensor factors."""
    N = 1
    for d in dims:
        N *= d
    # row r of the result is row perm[r] of the identity
    return F.selection(N, factor_permutation(dims, order)).T


def twist(F: Field, m: int, n: int) -> Matrix:
    """V (x) W -> W (x) V with dim V = m, dim W = n."""
    return permute_factors(F, [m, n], [1, 0])
