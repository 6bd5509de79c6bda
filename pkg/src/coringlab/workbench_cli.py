"""JSON workspaces, the builtin example library and the ``hopflab`` driver.

Workspace files store every structure map at the level of plain k-tensors:
comultiplications land in C (x)_k C, coactions in M (x)_k C, ring products
start from B (x)_k B and contra-actions start from Hom_k(C, M) (flattened
row-major).  On load they are projected to (or restricted from) the
materialized tensor and Hom spaces, so a file never depends on the quotient
bases chosen internally.  Rationals are strings "a" or "a/b"; F_p scalars are
integers in [0, p).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra_bimodule import Algebra, HomSpace, Module, Tensor, check_algebra, check_module, ground, regular, vector_space
from .bialgebra_hopf import (Bialgebra, EntwiningMap, bialgebra_laws, build_psi, check_bialgebra, check_entwining,
                             cyclic_group_bialgebra, dual_group_bialgebra, entwined_coring, entwining_laws,
                             find_antipode, fundamental_theorem_probe, gamma_map, grouplike_comodule,
                             hopf_characterisation_battery, idempotent_monoid_bialgebra, s3_bialgebra, sweedler_h4)
from .algebra_bimodule import algebra_laws, module_laws
from .comod_contramod import (Bicomodule, Comodule, Contramodule, bicomodule_laws, check_bicomodule, check_comodule,
                              check_contramodule, check_cointegral, cofree_comodule, comodule_laws, contramodule_laws,
                              contratensor, direct_unit_counit_checks, find_cointegral, free_contramodule,
                              regular_bicomodule, regular_comodule, verify_coseparable_equivalence)
from .exact_linalg import QQ, Field, FieldError, GF, Matrix, parse_rational
from .galois import GaloisContext, can_monad_report, context_from_left_comodule
from .report import FAIL, Report, matrix_json, replay, scalar_json
from .ring_coring import (Coring, ProbeFamily, Ring, check_a_ring, check_coring, coring_laws, matrix_coalgebra,
                          ring_laws, trivial_coring)

COLLECTIONS = ("algebras", "bimodules", "rings", "corings", "comodules", "contramodules",
               "bicomodules", "bialgebras", "entwinings", "probes")
KINDS = {"algebra": "algebras", "bimodule": "bimodules", "ring": "rings", "coring": "corings",
         "comodule": "comodules", "contramodule": "contramodules", "bicomodule": "bicomodules",
         "bialgebra": "bialgebras", "entwining": "entwinings", "probes": "probes"}
DEFAULT_PROBE_BUDGET = 2
SUMMARY_LIMIT = 12


class WorkspaceError(Exception):
    """Input error; ``code`` is one of the stable codes listed in ERROR_CODES."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


ERROR_CODES = ("syntax-error", "zero-denominator", "modulus-not-prime", "invalid-scalar", "unresolved-reference",
               "dimension-mismatch", "duplicate-name", "schema", "unbalanced", "unknown-example",
               "unsupported-field", "usage")


# ---------------------------------------------------------------------------
# workspace

@dataclass
class Workspace:
    field: Field
    algebras: dict = dc_field(default_factory=dict)
    bimodules: dict = dc_field(default_factory=dict)
    rings: dict = dc_field(default_factory=dict)
    corings: dict = dc_field(default_factory=dict)
    comodules: dict = dc_field(default_factory=dict)
    contramodules: dict = dc_field(default_factory=dict)
    bicomodules: dict = dc_field(default_factory=dict)
    bialgebras: dict = dc_field(default_factory=dict)
    entwinings: dict = dc_field(default_factory=dict)
    probes: dict = dc_field(default_factory=dict)

    def collection(self, kind: str) -> dict:
        if kind not in KINDS:
            raise WorkspaceError("usage", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
        return getattr(self, KINDS[kind])

    def get(self, kind: str, name: str | None):
        coll = self.collection(kind)
        if name is None:
            if len(coll) != 1:
                raise WorkspaceError("usage", f"workspace has {len(coll)} {KINDS[kind]}; name one of {sorted(coll)}")
            return next(iter(coll.values()))
        if name not in coll:
            raise WorkspaceError("unresolved-reference", f"no {kind} named {name!r}")
        return coll[name]

    def algebra(self, name: str) -> Algebra:
        if name in self.algebras:
            return self.algebras[name]
        if name == "k":
            return ground(self.field)
        raise WorkspaceError("unresolved-reference", f"no algebra named {name!r}")


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise WorkspaceError("duplicate-name", f"duplicate key {k!r}")
        out[k] = v
    return out


class _Reader:
    """Converts JSON data into objects; ``path`` strings locate errors."""

    def __init__(self, F: Field):
        self.F = F

    def scalar(self, x, path: str):
        F = self.F
        if F.is_rational:
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise WorkspaceError("invalid-scalar", f"{path}: rational scalars are strings 'a' or 'a/b', got {x!r}")
            try:
                return parse_rational(x) if isinstance(x, str) else Fraction(x)
            except FieldError as e:
                raise WorkspaceError("zero-denominator", f"{path}: zero denominator in {x!r}") from e
            except ValueError as e:
                raise WorkspaceError("invalid-scalar", f"{path}: not a rational number: {x!r}") from e
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < F.p:
            raise WorkspaceError("invalid-scalar", f"{path}: F_{F.p} scalars are integers in [0, {F.p}), got {x!r}")
        return x

    def vector(self, xs, n: int, path: str) -> list:
        if not isinstance(xs, list):
            raise WorkspaceError("schema", f"{path}: expected an array")
        if len(xs) != n:
            raise WorkspaceError("dimension-mismatch", f"{path}: expected length {n}, got {len(xs)}")
        return [self.scalar(x, f"{path}[{i}]") for i, x in enumerate(xs)]

    def matrix(self, rows, m: int, n: int, path: str) -> Matrix:
        if not isinstance(rows, list):
            raise WorkspaceError("schema", f"{path}: expected an array of rows")
        if len(rows) != m:
            raise WorkspaceError("dimension-mismatch", f"{path}: expected {m} rows, got {len(rows)}")
        ent = []
        for i, r in enumerate(rows):
            ent.extend(self.vector(r, n, f"{path}[{i}]"))
        return self.F.from_entries(m, n, ent)

    def cube(self, arr, n: int, inner: int, path: str) -> Matrix:
        """arr[i][j] is a length-``inner`` vector; returns the (inner x n*n) matrix with column i*n + j."""
        if not isinstance(arr, list) or len(arr) != n:
            raise WorkspaceError("dimension-mismatch", f"{path}: expected {n} x {n} x {inner} array")
        cols = []
        for i, row in enumerate(arr):
            if not isinstance(row, list) or len(row) != n:
                raise WorkspaceError("dimension-mismatch", f"{path}[{i}]: expected {n} entries")
            for j, v in enumerate(row):
                cols.append(self.vector(v, inner, f"{path}[{i}][{j}]"))
        return self.F.from_entries(inner, n * n, [cols[c][r] for r in range(inner) for c in range(n * n)])

    def comult(self, arr, n: int, path: str) -> Matrix:
        """arr[i] is the n x n coefficient array of Delta(e_i) on e_j (x) e_l; returns the (n*n x n) matrix."""
        if not isinstance(arr, list) or len(arr) != n:
            raise WorkspaceError("dimension-mismatch", f"{path}: expected {n} arrays of shape {n} x {n}")
        cols = [self.matrix(a, n, n, f"{path}[{i}]").entries() for i, a in enumerate(arr)]
        return self.F.from_entries(n * n, n, [cols[i][r] for r in range(n * n) for i in range(n)])


def _fields(d, path: str, required: tuple, optional: tuple = ()) -> dict:
    if not isinstance(d, dict):
        raise WorkspaceError("schema", f"{path}: expected an object")
    for k in required:
        if k not in d:
            raise WorkspaceError("schema", f"{path}: missing field {k!r}")
    extra = set(d) - set(required) - set(optional)
    if extra:
        raise WorkspaceError("schema", f"{path}: unknown field(s) {sorted(extra)}")
    return d


def _ref(coll: dict, name, kind: str, path: str):
    if not isinstance(name, str) or name not in coll:
        raise WorkspaceError("unresolved-reference", f"{path}: no {kind} named {name!r}")
    return coll[name]


def _construct(path: str, fn, *args):
    try:
        return fn(*args)
    except WorkspaceError:
        raise
    except ValueError as e:
        raise WorkspaceError("dimension-mismatch", f"{path}: {e}") from e


def parse_field(d) -> Field:
    _fields(d, "field", ("type",), ("p",))
    if d["type"] == "Q":
        return QQ
    if d["type"] == "Fp":
        p = d.get("p")
        if isinstance(p, bool) or not isinstance(p, int):
            raise WorkspaceError("schema", "field.p must be an integer")
        try:
            return GF(p)
        except FieldError as e:
            raise WorkspaceError("modulus-not-prime", f"modulus not prime: {p}") from e
    raise WorkspaceError("schema", f"field.type must be 'Q' or 'Fp', got {d['type']!r}")


def parse_workspace(text: str) -> Workspace:
    """Parse workspace JSON text.  Raises WorkspaceError with a stable code."""
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as e:
        raise WorkspaceError("syntax-error", f"line {e.lineno} column {e.colno}: {e.msg}") from e
    return workspace_from_data(data)


def workspace_from_data(data) -> Workspace:
    _fields(data, "workspace", ("field",), COLLECTIONS)
    F = parse_field(data["field"])
    ws = Workspace(F)
    rd = _Reader(F)
    sec = {k: data.get(k, {}) for k in COLLECTIONS}
    for k, v in sec.items():
        if not isinstance(v, dict):
            raise WorkspaceError("schema", f"{k}: expected an object of named entries")

    for name, d in sec["algebras"].items():
        p = f"algebras.{name}"
        _fields(d, p, ("dim", "mult", "unit"))
        n = _dim(d["dim"], p)
        mult = rd.cube(d["mult"], n, n, p + ".mult")
        unit = F.vector(rd.vector(d["unit"], n, p + ".unit")) if n else F.zeros(0, 1)
        ws.algebras[name] = _construct(p, Algebra, F, n, mult, unit, name)

    for name, d in sec["bimodules"].items():
        p = f"bimodules.{name}"
        _fields(d, p, ("left", "right", "dim"), ("lact", "ract"))
        L, R = ws.algebra(_str(d["left"], p + ".left")), ws.algebra(_str(d["right"], p + ".right"))
        n = _dim(d["dim"], p)
        lact = _action(rd, d.get("lact"), L, n, n, L.dim * n, p + ".lact")
        ract = _action(rd, d.get("ract"), R, n, n, n * R.dim, p + ".ract")
        ws.bimodules[name] = _construct(p, Module, L, R, n, lact, ract, name)

    for name, d in sec["rings"].items():
        p = f"rings.{name}"
        _fields(d, p, ("carrier", "mult", "unit"))
        M = _ref(ws.bimodules, d["carrier"], "bimodule", p + ".carrier")
        _same_base(M, p)
        T2 = Tensor([M, M])
        mult = rd.cube(d["mult"], M.dim, M.dim, p + ".mult")
        if not (mult @ T2.balancing.basis).is_zero():
            raise WorkspaceError("unbalanced", f"{p}.mult is not balanced over {M.left.name or 'the base'}")
        iota = rd.matrix(d["unit"], M.dim, M.left.dim, p + ".unit")
        B = _construct(p, Ring, M, mult @ T2.sec, iota, name)
        B.__dict__["T2"] = T2
        ws.rings[name] = B

    for name, d in sec["corings"].items():
        p = f"corings.{name}"
        _fields(d, p, ("carrier", "comult", "counit"))
        M = _ref(ws.bimodules, d["carrier"], "bimodule", p + ".carrier")
        _same_base(M, p)
        if M.dim == 0:
            raise WorkspaceError("dimension-mismatch", f"{p}: the zero coring is not allowed")
        T2 = Tensor([M, M])
        dk = rd.comult(d["comult"], M.dim, p + ".comult")
        eps = rd.matrix(d["counit"], M.left.dim, M.dim, p + ".counit")
        C = _construct(p, Coring, M, T2.proj @ dk, eps, name)
        C.__dict__["T2"] = T2
        ws.corings[name] = C

    for name, d in sec["bialgebras"].items():
        p = f"bialgebras.{name}"
        _fields(d, p, ("algebra", "comult", "counit"), ("group",))
        A = ws.algebra(_str(d["algebra"], p + ".algebra"))
        n = A.dim
        D = rd.comult(d["comult"], n, p + ".comult")
        eps = F.matrix([rd.vector(d["counit"], n, p + ".counit")]) if n else F.zeros(1, 0)
        group = None
        if "group" in d:
            g = d["group"]
            if not (isinstance(g, list) and len(g) == n and all(isinstance(r, list) and len(r) == n and
                                                                all(isinstance(x, int) and 0 <= x < n for x in r)
                                                                for r in g)):
                raise WorkspaceError("dimension-mismatch", f"{p}.group: expected an {n} x {n} table of indices")
            group = tuple(tuple(r) for r in g)
        ws.bialgebras[name] = _construct(p, Bialgebra, A, D, eps, name, group)

    for name, d in sec["entwinings"].items():
        p = f"entwinings.{name}"
        _fields(d, p, ("algebra", "coalgebra", "flavor", "psi"))
        B = ws.algebra(_str(d["algebra"], p + ".algebra"))
        C = _ref(ws.corings, d["coalgebra"], "coring", p + ".coalgebra")
        if d["flavor"] not in ("r", "l"):
            raise WorkspaceError("schema", f"{p}.flavor must be 'r' or 'l'")
        n = B.dim * C.dim
        psi = rd.matrix(d["psi"], n, n, p + ".psi")
        ws.entwinings[name] = _construct(p, EntwiningMap, psi, B, C, d["flavor"], name)

    for name, d in sec["comodules"].items():
        p = f"comodules.{name}"
        _fields(d, p, ("coring", "module", "side", "coaction"))
        C = _ref(ws.corings, d["coring"], "coring", p + ".coring")
        M = _ref(ws.bimodules, d["module"], "bimodule", p + ".module")
        side = d["side"]
        if side not in ("right", "left"):
            raise WorkspaceError("schema", f"{p}.side must be 'right' or 'left'")
        base = M.right if side == "right" else M.left
        if not base.same_as(C.base):
            raise WorkspaceError("dimension-mismatch", f"{p}: module and coring live over different bases")
        T = Tensor([M, C.carrier]) if side == "right" else Tensor([C.carrier, M])
        rk = rd.matrix(d["coaction"], M.dim * C.dim, M.dim, p + ".coaction")
        N = _construct(p, Comodule, C, M, T.proj @ rk, side, name)
        N.__dict__["T"] = T
        ws.comodules[name] = N

    for name, d in sec["contramodules"].items():
        p = f"contramodules.{name}"
        _fields(d, p, ("coring", "module", "action"))
        C = _ref(ws.corings, d["coring"], "coring", p + ".coring")
        M = _ref(ws.bimodules, d["module"], "bimodule", p + ".module")
        if not M.right.same_as(C.base):
            raise WorkspaceError("dimension-mismatch", f"{p}: module and coring live over different bases")
        HC = HomSpace(C.carrier, M, name=f"[C,{name}]")
        ak = rd.matrix(d["action"], M.dim, M.dim * C.dim, p + ".action")
        P = _construct(p, Contramodule, C, M, ak @ HC.basis, name)
        P.__dict__["HC"] = HC
        ws.contramodules[name] = P

    for name, d in sec["bicomodules"].items():
        p = f"bicomodules.{name}"
        _fields(d, p, ("left", "right"))
        Nl = _ref(ws.comodules, d["left"], "comodule", p + ".left")
        Nr = _ref(ws.comodules, d["right"], "comodule", p + ".right")
        if Nl.side != "left" or Nr.side != "right" or Nl.module is not Nr.module:
            raise WorkspaceError("dimension-mismatch",
                                 f"{p}: needs a left and a right comodule on the same bimodule")
        ws.bicomodules[name] = Bicomodule(Nl, Nr, name)

    for name, d in sec["probes"].items():
        p = f"probes.{name}"
        _fields(d, p, ("modules",))
        if not isinstance(d["modules"], list) or not d["modules"]:
            raise WorkspaceError("schema", f"{p}.modules must be a nonempty array")
        mods = tuple(_ref(ws.bimodules, m, "bimodule", f"{p}.modules[{i}]") for i, m in enumerate(d["modules"]))
        ws.probes[name] = ProbeFamily(mods)
    return ws


def _dim(x, path):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise WorkspaceError("schema", f"{path}.dim must be a nonnegative integer")
    return x


def _str(x, path):
    if not isinstance(x, str):
        raise WorkspaceError("schema", f"{path}: expected a name")
    return x


def _same_base(M: Module, path: str):
    if not M.left.same_as(M.right):
        raise WorkspaceError("dimension-mismatch", f"{path}: carrier must be a bimodule over a single algebra")


def _action(rd: _Reader, rows, A: Algebra, n: int, m: int, cols: int, path: str) -> Matrix:
    if rows is None:
        if A.dim != 1:
            raise WorkspaceError("schema", f"{path}: required unless the acting algebra is k")
        return rd.F.identity(n)
    return rd.matrix(rows, m, cols, path)


# ---------------------------------------------------------------------------
# serialization

class _Names:
    def __init__(self, ws: Workspace):
        self.ws = ws
        self.ids = {c: {id(v): k for k, v in getattr(ws, c).items()} for c in COLLECTIONS}

    def of(self, coll: str, obj) -> str:
        name = self.ids[coll].get(id(obj))
        if name is not None:
            return name
        if coll == "algebras" and obj.same_as(ground(self.ws.field)) and "k" not in self.ws.algebras:
            return "k"
        raise ValueError(f"object {getattr(obj, 'name', obj)!r} is not registered in {coll}")


def _mat_rows(m: Matrix) -> list:
    return [[scalar_json(x) for x in r] for r in m.tolist()] if m.cols else [[] for _ in range(m.rows)]


def _cube(mult: Matrix, n: int) -> list:
    """Inverse of _Reader.cube for a (inner x n*n) matrix."""
    cols = mult.T.tolist() if mult.rows else [[] for _ in range(n * n)]
    return [[[scalar_json(x) for x in cols[i * n + j]] for j in range(n)] for i in range(n)]


def _comult(D: Matrix, n: int) -> list:
    e = D.tolist()
    return [[[scalar_json(e[j * n + l][i]) for l in range(n)] for j in range(n)] for i in range(n)]


def workspace_to_data(ws: Workspace) -> dict:
    nm = _Names(ws)
    out: dict = {"field": ws.field.describe()}
    coll: dict = {}
    coll["algebras"] = {k: {"dim": A.dim, "mult": _cube(A.mult, A.dim),
                            "unit": [scalar_json(x) for x in A.unit.entries()]}
                        for k, A in ws.algebras.items()}
    coll["bimodules"] = {k: {"left": nm.of("algebras", M.left), "right": nm.of("algebras", M.right), "dim": M.dim,
                             "lact": _mat_rows(M.lact), "ract": _mat_rows(M.ract)}
                         for k, M in ws.bimodules.items()}
    coll["rings"] = {k: {"carrier": nm.of("bimodules", B.carrier), "mult": _cube(B.mu_k, B.carrier.dim),
                         "unit": _mat_rows(B.iota)} for k, B in ws.rings.items()}
    coll["corings"] = {k: {"carrier": nm.of("bimodules", C.carrier), "comult": _comult(C.delta_k, C.dim),
                           "counit": _mat_rows(C.eps)} for k, C in ws.corings.items()}
    coll["comodules"] = {k: {"coring": nm.of("corings", N.coring), "module": nm.of("bimodules", N.module),
                             "side": N.side, "coaction": _mat_rows(N.rho_k)} for k, N in ws.comodules.items()}
    cm = {}
    for k, P in ws.contramodules.items():
        # reading off echelon pivots is a left inverse of Hom_A(C, M) -> Hom_k(C, M)
        ak = P.alpha @ P.field.selection(P.HC.space.ambient_dim, P.HC.space.pivots).T
        cm[k] = {"coring": nm.of("corings", P.coring), "module": nm.of("bimodules", P.module),
                 "action": _mat_rows(ak)}
    coll["contramodules"] = cm
    coll["bicomodules"] = {k: {"left": nm.of("comodules", N.left), "right": nm.of("comodules", N.right)}
                           for k, N in ws.bicomodules.items()}
    bi = {}
    for k, H in ws.bialgebras.items():
        d = {"algebra": nm.of("algebras", H.algebra), "comult": _comult(H.comult, H.dim),
             "counit": [scalar_json(x) for x in H.counit.entries()]}
        if H.group is not None:
            d["group"] = [list(r) for r in H.group]
        bi[k] = d
    coll["bialgebras"] = bi
    coll["entwinings"] = {k: {"algebra": nm.of("algebras", E.B), "coalgebra": nm.of("corings", E.C),
                              "flavor": E.flavor, "psi": _mat_rows(E.psi)} for k, E in ws.entwinings.items()}
    coll["probes"] = {k: {"modules": [nm.of("bimodules", M) for M in P]} for k, P in ws.probes.items()}
    for c in COLLECTIONS:
        if coll[c]:
            out[c] = {k: coll[c][k] for k in sorted(coll[c])}
    return out


def serialize_workspace(ws: Workspace) -> str:
    return json.dumps(workspace_to_data(ws), indent=1) + "\n"


def normalize(text: str) -> str:
    return serialize_workspace(parse_workspace(text))


# ---------------------------------------------------------------------------
# validation and law tables

def check_object(kind: str, obj) -> Report:
    if kind == "algebra":
        return check_algebra(obj)
    if kind == "bimodule":
        return check_module(obj)
    if kind == "ring":
        return check_a_ring(obj)
    if kind == "coring":
        return check_coring(obj)
    if kind == "comodule":
        return check_comodule(obj)
    if kind == "contramodule":
        return check_contramodule(obj)
    if kind == "bicomodule":
        return check_bicomodule(obj)
    if kind == "bialgebra":
        return check_bialgebra(obj)
    if kind == "entwining":
        return check_entwining(obj)
    if kind == "probes":
        rep = Report("check probe family")
        for M in obj:
            rep.extend(check_module(M), f"{M.name}: ")
        return rep
    raise WorkspaceError("usage", f"unknown kind {kind!r}")


def _prefixed(prefix: str, laws: dict) -> dict:
    return {prefix + k: v for k, v in laws.items()}


def laws_for(kind: str, obj) -> dict:
    """The law thunks behind check_object, keyed by the names that appear in witnesses."""
    if kind == "algebra":
        return algebra_laws(obj)
    if kind == "bimodule":
        return module_laws(obj)
    if kind == "ring":
        return {**_prefixed("carrier: ", module_laws(obj.carrier)), **ring_laws(obj)}
    if kind == "coring":
        return {**_prefixed("carrier: ", module_laws(obj.carrier)), **coring_laws(obj)}
    if kind == "comodule":
        return comodule_laws(obj)
    if kind == "contramodule":
        return contramodule_laws(obj)
    if kind == "bicomodule":
        return bicomodule_laws(obj)
    if kind == "bialgebra":
        return {**_prefixed("algebra: ", algebra_laws(obj.algebra)), **bialgebra_laws(obj)}
    if kind == "entwining":
        return entwining_laws(obj)
    if kind == "probes":
        out = {}
        for M in obj:
            out.update(_prefixed(f"{M.name}: ", module_laws(M)))
        return out
    raise WorkspaceError("usage", f"unknown kind {kind!r}")


def replay_witness(kind: str, obj, witness: dict) -> bool:
    """True iff the witnessed law failure reproduces on ``obj``."""
    return replay(laws_for(kind, obj), witness)


def validate_workspace(ws: Workspace) -> Report:
    rep = Report("validate workspace")
    for kind, coll in KINDS.items():
        for name in sorted(getattr(ws, coll)):
            rep.extend(check_object(kind, getattr(ws, coll)[name]), f"{kind} {name}: ")
    return rep


# ---------------------------------------------------------------------------
# builtin examples

BUILTINS = ("kC2", "kC3", "kS3", "dual_kC2", "sweedler4", "matrix2c", "monoid_idem", "trivial_coring")

_DESCRIPTIONS = {
    "kC2": "group algebra of the cyclic group of order 2 (Hopf)",
    "kC3": "group algebra of the cyclic group of order 3 (Hopf)",
    "kS3": "group algebra of the symmetric group S3 (Hopf, noncommutative)",
    "dual_kC2": "dual of kC2: functions on C2 with pointwise product (Hopf)",
    "sweedler4": "Sweedler's 4-dimensional Hopf algebra (needs characteristic not 2)",
    "matrix2c": "matrix coalgebra M_2^c with regular comodules and a free contramodule",
    "monoid_idem": "monoid algebra of {1, e}, e^2 = e (bialgebra without antipode)",
    "trivial_coring": "the trivial coring A over A = kC2",
}


def _bialgebra_fragment(H: Bialgebra, name: str) -> Workspace:
    ws = Workspace(H.field)
    ws.algebras[name] = H.algebra
    ws.bialgebras[name] = H
    C = H.coalgebra
    ws.bimodules[name] = C.carrier
    ws.corings[name] = C
    for fl in ("r", "l"):
        E = build_psi(H, fl)
        ws.entwinings[f"{name}_{fl}"] = EntwiningMap(E.psi, H.algebra, C, fl, f"{name}_{fl}")
    return ws


def _proto_example(name: str, F: Field) -> Workspace:
    if name == "kC2":
        return _bialgebra_fragment(cyclic_group_bialgebra(F, 2), name)
    if name == "kC3":
        return _bialgebra_fragment(cyclic_group_bialgebra(F, 3), name)
    if name == "kS3":
        return _bialgebra_fragment(s3_bialgebra(F), name)
    if name == "dual_kC2":
        return _bialgebra_fragment(dual_group_bialgebra(F, ((0, 1), (1, 0))), name)
    if name == "sweedler4":
        if F.characteristic == 2:
            raise WorkspaceError("unsupported-field", "sweedler4 needs characteristic not 2")
        return _bialgebra_fragment(sweedler_h4(F), name)
    if name == "monoid_idem":
        return _bialgebra_fragment(idempotent_monoid_bialgebra(F), name)
    if name == "matrix2c":
        ws = Workspace(F)
        C = matrix_coalgebra(F, 2)
        k1, k2 = vector_space(F, 1, "k1"), vector_space(F, 2, "k2")
        ws.bimodules.update({name: C.carrier, "k1": k1, "k2": k2})
        ws.corings[name] = C
        R, L = regular_comodule(C, "right"), regular_comodule(C, "left")
        ws.comodules.update({f"{name}_right": R, f"{name}_left": L})
        ws.bicomodules[name] = Bicomodule(L, R, name)
        P = free_contramodule(C, k1)
        ws.bimodules["[C,k1]"] = P.module
        ws.contramodules["[C,k1]"] = P
        ws.probes["default"] = ProbeFamily((k1, k2))
        return ws
    if name == "trivial_coring":
        ws = Workspace(F)
        A = cyclic_group_bialgebra(F, 2).algebra
        C = trivial_coring(A)
        ws.algebras["A"] = A
        ws.bimodules["A"] = C.carrier
        ws.corings[name] = C
        return ws
    raise WorkspaceError("unknown-example", f"unknown example {name!r}; choose from {', '.join(BUILTINS)}")


def builtin_example(name: str, field: Field = QQ) -> Workspace:
    """The named fragment, rebuilt through the file format so names and bases match a loaded file."""
    return parse_workspace(serialize_workspace(_proto_example(name, field)))


def emit_example(name: str, field: Field = QQ) -> str:
    return serialize_workspace(_proto_example(name, field))


def parse_field_spec(s: str) -> Field:
    s = s.strip()
    if s in ("Q", "QQ"):
        return QQ
    digits = s[1:] if s[:1] == "F" else s
    if not digits.isdigit():
        raise WorkspaceError("usage", f"field must be Q or F<p>, got {s!r}")
    try:
        return GF(int(digits))
    except FieldError as e:
        raise WorkspaceError("modulus-not-prime", f"modulus not prime: {digits}") from e


def load_workspace(ref: str) -> Workspace:
    """A file path, '-' for stdin, or 'examples:NAME[@FIELD]' (FIELD = Q or F<p>)."""
    if ref.startswith("examples:"):
        spec = ref[len("examples:"):]
        name, _, fld = spec.partition("@")
        return builtin_example(name, parse_field_spec(fld) if fld else QQ)
    try:
        text = sys.stdin.read() if ref == "-" else open(ref, encoding="utf-8").read()
    except OSError as e:
        raise WorkspaceError("usage", f"cannot read {ref!r}: {e.strerror}") from e
    return parse_workspace(text)


# ---------------------------------------------------------------------------
# negative corpus: deliberately corrupted variants of the builtins

def _with_entry(M: Matrix, i: int, j: int, delta) -> Matrix:
    F = M.field
    E = F.from_entries(M.rows, M.cols, [delta if (r == i and c == j) else 0
                                        for r in range(M.rows) for c in range(M.cols)])
    return M + E


def corrupted_examples(F: Field = QQ) -> dict:
    """name -> (kind, object); every entry must fail its checker with a replayable witness."""
    out = {}
    kC2 = cyclic_group_bialgebra(F, 2)
    # Delta(g) = g (x) 1
    D = F.matrix([[1, 0], [0, 0], [0, 1], [0, 0]])
    out["kC2 with Delta(g) = g(x)1"] = ("bialgebra", Bialgebra(kC2.algebra, D, kC2.counit, "kC2 bad comult"))
    kC3 = cyclic_group_bialgebra(F, 3)
    out["kC3 with eps(g) = 0"] = ("bialgebra", Bialgebra(kC3.algebra, kC3.comult,
                                                          F.matrix([[1, 0, 1]]), "kC3 bad counit"))
    S3 = s3_bialgebra(F)
    badmul = _with_entry(S3.algebra.mult, 0, 1 * 6 + 2, 1)
    out["kS3 with a perturbed product"] = ("algebra", Algebra(F, 6, badmul, S3.algebra.unit, "kS3 bad mult"))
    mon = idempotent_monoid_bialgebra(F)
    out["monoid_idem with Delta(e) = e(x)1"] = ("bialgebra", Bialgebra(
        mon.algebra, F.matrix([[1, 0], [0, 1], [0, 0], [0, 0]]), mon.counit, "monoid bad comult"))
    if F.characteristic != 2:
        H4 = sweedler_h4(F)
        out["sweedler4 with eps(x) = 1"] = ("bialgebra", Bialgebra(H4.algebra, H4.comult,
                                                                    F.matrix([[1, 1, 1, 0]]), "H4 bad counit"))
        E = build_psi(H4, "r")
        out["sweedler4 psi_r scaled by 2"] = ("entwining", EntwiningMap(E.psi.scale(2), E.B, E.C, "r", "2 psi_r"))
    E = build_psi(kC2, "l")
    out["kC2 psi_l replaced by the twist"] = ("entwining", EntwiningMap(
        build_psi(kC2, "r").psi, E.B, E.C, "l", "wrong-flavor psi"))
    M2 = matrix_coalgebra(F, 2)
    out["matrix2c with eps = 1 everywhere"] = ("coring", Coring(M2.carrier, M2.delta,
                                                               F.matrix([[1, 1, 1, 1]]), "M2c bad counit"))
    Rm = regular_comodule(M2, "right")
    out["matrix2c regular comodule with a transposed coaction"] = (
        "comodule", Comodule(M2, Rm.module, Rm.T.proj @ Rm.rho_k.select(rows=_swap_pairs(4)), "right", "bad coaction"))
    A = kC2.algebra
    Ct = trivial_coring(A)
    out["trivial_coring with Delta doubled"] = ("coring", Coring(Ct.carrier, Ct.delta.scale(2), Ct.eps, "2 Delta"))
    reg = regular(A)
    out["kC2 regular bimodule with a wrong right action"] = ("bimodule", Module(
        A, A, 2, reg.lact, F.matrix([[1, 0, 1, 0], [0, 1, 0, 1]]), "bad ract"))
    P = free_contramodule(M2, vector_space(F, 1, "k1"))
    bad = Contramodule(M2, P.module, P.alpha.scale(2) if F.characteristic != 2 else P.alpha.scale(0), "bad alpha")
    bad.__dict__["HC"] = P.HC
    out["matrix2c free contramodule with a rescaled action"] = ("contramodule", bad)
    return out


def _swap_pairs(d: int) -> list:
    """Row order of the twist on k^d (x) k^d."""
    return [j * d + i for i in range(d) for j in range(d)]


# ---------------------------------------------------------------------------
# rendering

def _fmt(x) -> str:
    return str(x)


def render_matrix(m: Matrix, indent: str = "    ") -> list:
    if m.rows > SUMMARY_LIMIT or m.cols > SUMMARY_LIMIT:
        return [f"{indent}{m.rows}x{m.cols} matrix, rank {m.rank()} (full data with --json)"]
    if m.rows == 0 or m.cols == 0:
        return [f"{indent}{m.rows}x{m.cols} matrix"]
    rows = [[_fmt(x) for x in r] for r in m.tolist()]
    labels = [f"e{j}" for j in range(m.cols)]
    w = max(max(len(x) for r in rows for x in r), max(len(s) for s in labels))
    rl = max(len(f"e{i}") for i in range(m.rows))
    lines = [indent + " " * (rl + 2) + " ".join(s.rjust(w) for s in labels)]
    for i, r in enumerate(rows):
        lines.append(indent + f"e{i}".ljust(rl) + " [" + " ".join(x.rjust(w) for x in r) + " ]")
    return lines


def _render_value(key: str, v, indent: str) -> list:
    if isinstance(v, Matrix):
        return [f"{indent}{key}:"] + render_matrix(v, indent + "  ")
    if isinstance(v, dict) and set(v) == {"rows", "cols", "entries"}:
        r, c = v["rows"], v["cols"]
        if r > SUMMARY_LIMIT or c > SUMMARY_LIMIT:
            return [f"{indent}{key}: {r}x{c} matrix (full data with --json)"]
        return [f"{indent}{key}: {r}x{c} " + json.dumps(v["entries"])]
    if isinstance(v, dict):
        out = [f"{indent}{key}:"]
        for k2, v2 in v.items():
            out.extend(_render_value(str(k2), v2, indent + "  "))
        return out
    if isinstance(v, (list, tuple)) and len(v) > SUMMARY_LIMIT ** 2:
        return [f"{indent}{key}: list of {len(v)} entries (full data with --json)"]
    return [f"{indent}{key}: {_plain(v)}"]


def _plain(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(str(_plain(x)) for x in v) + "]"
    return v


def render_text(rep: Report) -> str:
    lines = [rep.command]
    for c in rep.checks:
        tag = {"pass": "pass", "fail": "FAIL", "unsupported": "n/a "}[c.verdict]
        lines.append(f"  {tag}  {c.name}" + (f"  ({c.notes})" if c.notes else ""))
        if c.witness is not None and c.verdict == FAIL:
            lines.extend(_render_value("witness", c.witness, "        "))
    if rep.data:
        lines.append("data:")
        for k, v in rep.data.items():
            lines.extend(_render_value(k, v, "  "))
    lines.append(f"verdict: {rep.verdict}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands

def probe_budget() -> int | None:
    raw = os.environ.get("HOPFLAB_PROBES")
    if raw is None or raw == "":
        return None
    if not raw.isdigit() or not 1 <= int(raw) <= 8:
        raise WorkspaceError("usage", f"HOPFLAB_PROBES must be an integer in 1..8, got {raw!r}")
    return int(raw)


def _int_probes(ws: Workspace, spec: str | None, default):
    """Probe dimensions for the k-vector-space probes of the bialgebra commands."""
    if spec is None:
        b = probe_budget()
        return default if b is None else tuple(range(1, b + 1))
    if spec in ws.probes:
        mods = ws.probes[spec]
        if any(M.left.dim != 1 or M.right.dim != 1 for M in mods):
            raise WorkspaceError("usage", f"probe family {spec!r} must consist of vector spaces here")
        return tuple(M.dim for M in mods)
    parts = spec.split(",")
    if not all(p.strip().isdigit() and int(p) >= 1 for p in parts):
        raise WorkspaceError("usage", f"--probes expects a probe family name or positive integers, got {spec!r}")
    return tuple(int(p) for p in parts)


def _coring_or_entwined(ws: Workspace, name: str | None) -> Coring:
    if name is not None and name not in ws.corings and name in ws.entwinings:
        return entwined_coring(ws.entwinings[name], name)
    return ws.get("coring", name)


def _context(ws: Workspace, name: str | None, flavor: str) -> GaloisContext:
    if name is not None:
        if name in ws.bicomodules:
            return GaloisContext(ws.bicomodules[name], None, (), name)
        if name in ws.comodules:
            N = ws.comodules[name]
            if N.side != "left":
                raise WorkspaceError("usage", f"comodule {name!r} is a right comodule; a Galois context needs a left one")
            return context_from_left_comodule(N, name=name)
        if name in ws.bialgebras:
            return context_from_left_comodule(grouplike_comodule(ws.bialgebras[name], flavor), name=name)
        raise WorkspaceError("unresolved-reference", f"no bicomodule, left comodule or bialgebra named {name!r}")
    for coll in (ws.bicomodules, ws.bialgebras):
        if len(coll) == 1:
            return _context(ws, next(iter(coll)), flavor)
    raise WorkspaceError("usage", "name a Galois context (bicomodule, left comodule or bialgebra)")


def cmd_check(ws, a) -> Report:
    obj = ws.get(a.kind, a.name)
    rep = check_object(a.kind, obj)
    rep.command = f"check {a.kind} {a.name or ''}".rstrip()
    return rep


def cmd_solve(ws, a) -> Report:
    if a.what == "antipode":
        H = ws.get("bialgebra", a.name)
        res = find_antipode(H)
        rep = res.report
        if res.found:
            rep.passed("antipode exists")
            rep.data["S"] = res.S
        else:
            rep.failed("antipode exists", {"reason": "convolution equations infeasible", **res.info})
        return rep
    C = _coring_or_entwined(ws, a.name)
    res = find_cointegral(C)
    rep = Report(f"cointegral for {C.name}")
    rep.data.update(res.info)
    if not res.found:
        rep.failed("cointegral exists", {"reason": "linear system infeasible", **res.info})
        return rep
    rep.passed("cointegral exists")
    rep.extend(check_cointegral(C, res.delta), "certified: ")
    rep.data["delta"] = res.delta
    return rep


def cmd_galois(ws, a) -> Report:
    if a.what == "gamma":
        H = ws.get("bialgebra", a.name)
        g = gamma_map(H)
        rep = Report(f"gamma for {H.name}")
        rep.flag("gamma bijective", g.invertible, {"rank": g.rank, "size": g.gamma.rows})
        rep.data["gamma"] = g.gamma
        return rep
    ctx = _context(ws, a.name, a.flavor)
    return can_monad_report(ctx, _module_probes(ws, a.probes, ctx.C.base))


def _module_probes(ws: Workspace, spec: str | None, A: Algebra):
    if spec is None:
        return None
    if spec not in ws.probes:
        raise WorkspaceError("unresolved-reference", f"no probe family named {spec!r}")
    fam = ws.probes[spec]
    if any(not M.right.same_as(A) for M in fam):
        raise WorkspaceError("dimension-mismatch", f"probe family {spec!r} is not made of right modules over the base")
    return fam


def cmd_contratensor(ws, a) -> Report:
    M = ws.get("contramodule", a.contramodule)
    if a.comodule in ws.bicomodules:
        N = ws.bicomodules[a.comodule]
        Nl = N.left
    else:
        N = Nl = ws.get("comodule", a.comodule)
        if Nl.side != "left":
            raise WorkspaceError("usage", f"comodule {a.comodule!r} must be a left comodule")
    if Nl.coring is not M.coring:
        raise WorkspaceError("dimension-mismatch", "contramodule and comodule are over different corings")
    ct = contratensor(M, N)
    rep = Report(f"contratensor {M.name} (x) {Nl.name}")
    rep.extend(check_module(ct.module), "quotient module: ")
    if ct.comodule is not None:
        rep.extend(check_comodule(ct.comodule), "induced comodule: ")
    rep.data.update({"tensor_dim": ct.tensor.dim, "relations_dim": ct.relations.dim, "dim": ct.dim})
    return rep


def cmd_equiv(ws, a) -> Report:
    C = _coring_or_entwined(ws, a.name)
    if a.probes is not None and a.probes in ws.probes:
        Xs = list(ws.probes[a.probes])
    else:
        dims = _int_probes(ws, a.probes, (1, 2))
        Xs = [vector_space(C.field, d, f"k{d}") if C.base.dim == 1 else _free_right(C.base, d) for d in dims]
    comods = [regular_comodule(C, "right")] + [cofree_comodule(C, X) for X in Xs]
    ci = find_cointegral(C)
    if not ci.found:
        rep = Report(f"coseparable equivalence for {C.name}")
        rep.failed("cointegral exists", {"reason": "linear system infeasible", **ci.info})
        rep.extend(direct_unit_counit_checks(C, comods))
        return rep
    return verify_coseparable_equivalence(C, comods)


def _free_right(A: Algebra, d: int) -> Module:
    from .algebra_bimodule import direct_sum
    R = regular(A).forget_left()
    return direct_sum(*([R] * d), name=f"A^{d}") if d > 1 else R.with_name("A")


def cmd_hopf(ws, a) -> Report:
    H = ws.get("bialgebra", a.name)
    rep = hopf_characterisation_battery(H, _int_probes(ws, a.probes, (1, 2)))
    v = rep.data.get("hopf")
    rep.data["summary"] = {True: "unanimous yes", False: "unanimous no", None: "split"}[v]
    return rep


def cmd_fundamental(ws, a) -> Report:
    H = ws.get("bialgebra", a.name)
    return fundamental_theorem_probe(H, _int_probes(ws, a.probes, None))


def cmd_report(ws, a) -> Report:
    rep = Report("report")
    rep.extend(validate_workspace(ws))
    probes = _int_probes(ws, a.probes, (1, 2))
    for name in sorted(ws.bialgebras):
        H = ws.bialgebras[name]
        res = find_antipode(H)
        rep.passed(f"bialgebra {name}: antipode solved", "found" if res.found else "none exists")
        if res.found:
            rep.extend(res.report, f"bialgebra {name}: antipode: ")
        rep.extend(hopf_characterisation_battery(H, probes), f"bialgebra {name}: battery: ")
    for name in sorted(ws.corings):
        C = ws.corings[name]
        res = find_cointegral(C)
        rep.passed(f"coring {name}: cointegral solved", "found" if res.found else "none exists")
        if res.found:
            rep.extend(check_cointegral(C, res.delta), f"coring {name}: cointegral: ")
    return rep


def cmd_replay(ws, a) -> Report:
    obj = ws.get(a.kind, a.name)
    try:
        text = sys.stdin.read() if a.witness == "-" else open(a.witness, encoding="utf-8").read()
        w = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise WorkspaceError("usage", f"cannot read witness: {e}") from e
    if isinstance(w, dict) and "witness" in w:
        w = w["witness"]
    if not isinstance(w, dict) or "law" not in w:
        raise WorkspaceError("usage", "witness must be an object with a 'law' field")
    laws = laws_for(a.kind, obj)
    if w["law"] not in laws:
        raise WorkspaceError("unresolved-reference", f"no law named {w['law']!r} for {a.kind}")
    rep = Report(f"replay {w['law']} on {a.kind} {a.name or ''}".rstrip())
    reproduced = replay(laws, w)
    rep.flag(w["law"], not reproduced, w, "failure reproduced" if reproduced else "law holds at the witnessed input")
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--no-validate", action="store_true", help="skip checking every object on load")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field from --json output")
    p = argparse.ArgumentParser(prog="hopflab", description="exact coring and Hopf algebra workbench",
                                parents=[common])
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", parents=[common], help="run the structural checker on one object")
    c.add_argument("ws")
    c.add_argument("kind", choices=sorted(KINDS))
    c.add_argument("name", nargs="?")

    s = sub.add_parser("solve", parents=[common], help="solve for an antipode or a cointegral")
    s.add_argument("what", choices=["antipode", "cointegral"])
    s.add_argument("ws")
    s.add_argument("name", nargs="?")

    g = sub.add_parser("galois", parents=[common], help="gamma map or canonical map of a Galois context")
    g.add_argument("what", choices=["gamma", "can"])
    g.add_argument("ws")
    g.add_argument("name", nargs="?")
    g.add_argument("--flavor", choices=["r", "l"], default="r")
    g.add_argument("--probes")

    t = sub.add_parser("contratensor", parents=[common], help="contratensor product of a contramodule and a comodule")
    t.add_argument("ws")
    t.add_argument("contramodule")
    t.add_argument("comodule")

    e = sub.add_parser("equiv", parents=[common], help="coseparable equivalence at probes")
    e.add_argument("what", choices=["coseparable"])
    e.add_argument("ws")
    e.add_argument("name", nargs="?")
    e.add_argument("--probes")

    h = sub.add_parser("hopf", parents=[common], help="Hopf characterisation battery")
    h.add_argument("what", choices=["battery"])
    h.add_argument("ws")
    h.add_argument("name", nargs="?")
    h.add_argument("--probes")

    f = sub.add_parser("fundamental", parents=[common], help="fundamental theorems on probes")
    f.add_argument("ws")
    f.add_argument("name", nargs="?")
    f.add_argument("--probes")

    x = sub.add_parser("examples", parents=[common], help="list or emit builtin examples")
    x.add_argument("what", choices=["list", "emit"])
    x.add_argument("name", nargs="?")
    x.add_argument("--field", default="Q", help="Q or F<p>")

    r = sub.add_parser("report", parents=[common], help="full battery over every object")
    r.add_argument("ws")
    r.add_argument("--probes")

    w = sub.add_parser("replay", parents=[common], help="replay a law witness (file or '-') on an object")
    w.add_argument("ws")
    w.add_argument("kind", choices=sorted(KINDS))
    w.add_argument("name", nargs="?")
    w.add_argument("--witness", required=True)
    return p


_COMMANDS = {"check": cmd_check, "solve": cmd_solve, "galois": cmd_galois, "contratensor": cmd_contratensor,
             "equiv": cmd_equiv, "hopf": cmd_hopf, "fundamental": cmd_fundamental, "report": cmd_report,
             "replay": cmd_replay}


@dataclass
class Outcome:
    code: int
    report: Report | None
    text: str


def run_command(argv) -> Outcome:
    """Run one CLI invocation without touching sys.exit; ``text`` is what would be printed."""
    parser = build_parser()
    try:
        a = parser.parse_args(list(argv))
    except SystemExit as e:
        return Outcome(2 if e.code else 0, None, "")
    echo = "hopflab " + " ".join(argv)
    t0 = time.perf_counter()
    try:
        if a.cmd == "examples":
            if a.what == "list":
                rep = Report("examples list", data={"examples": {n: _DESCRIPTIONS[n] for n in BUILTINS}})
                if a.json:
                    return Outcome(0, rep, rep.dumps(timing=False) + "\n")
                return Outcome(0, rep, "".join(f"{n:15s} {_DESCRIPTIONS[n]}\n" for n in BUILTINS))
            if a.name is None:
                raise WorkspaceError("usage", "examples emit needs a name")
            text = emit_example(a.name, parse_field_spec(a.field))
            return Outcome(0, Report(f"examples emit {a.name}"), text)
        ws = load_workspace(a.ws)
        if not a.no_validate and a.cmd not in ("check", "report", "replay"):
            v = validate_workspace(ws)
            if not v.ok:
                v.command = echo
                v.timing = time.perf_counter() - t0
                return Outcome(1, v, _emit(v, a))
        rep = _COMMANDS[a.cmd](ws, a)
    except WorkspaceError as err:
        rep = Report(echo)
        rep.failed("input", {"code": err.code, "message": err.message})
        text = rep.dumps(timing=False) + "\n" if a.json else f"error [{err.code}]: {err.message}\n"
        return Outcome(2, rep, text)
    rep.timing = time.perf_counter() - t0
    rep.command = echo
    return Outcome(0 if rep.ok else 1, rep, _emit(rep, a))


def _emit(rep: Report, a) -> str:
    if a.json:
        return rep.dumps(timing=not a.no_timing) + "\n"
    return render_text(rep)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    out = run_command(argv)
    stream = sys.stderr if out.code == 2 and "--json" not in argv else sys.stdout
    stream.write(out.text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
