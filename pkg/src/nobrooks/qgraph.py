"""Quantum graphs: a vertex dimension ``n`` plus a Hermitian basis of the edge space.

The edge space is an operator system (closed under adjoints, containing the
identity).  It is stored as an ordered, real-linearly independent list of
Hermitian matrices whose first element is the identity, so the valence is
``len(edge_basis) - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .matspace import (DEFAULT_TOL, DimensionError, HermitianMatrix, Subspace,
                       decode_matrix, encode_matrix, xdot)
from .surd import ExactnessError, Surd


@dataclass(frozen=True)
class QuantumGraph:
    n: int
    edge_basis: tuple
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def valence(self) -> int:
        return len(self.edge_basis) - 1

    @property
    def m(self) -> int:
        return self.valence

    @property
    def exact(self) -> bool:
        return all(A.exact for A in self.edge_basis)

    def as_float(self) -> "QuantumGraph":
        if not any(A.exact for A in self.edge_basis):
            return self
        return QuantumGraph(self.n, tuple(A.as_float() for A in self.edge_basis),
                            dict(self.metadata))

    def is_diagonal(self) -> bool:
        return all(A.is_diagonal() for A in self.edge_basis)

    def __repr__(self):
        tag = self.metadata.get("kind", "")
        return f"QuantumGraph(n={self.n}, m={self.valence}{', ' + tag if tag else ''})"


def make_graph(n: int, edges: Sequence[HermitianMatrix], metadata: dict | None = None,
               tol: float = DEFAULT_TOL) -> QuantumGraph:
    """Graph spanned by the identity and ``edges`` (dependent ones are dropped)."""
    exact = all(A.exact for A in edges)
    ident = HermitianMatrix.identity(n, exact=exact)
    for A in edges:
        if A.n != n:
            raise DimensionError(f"edge operator of size {A.n} in a graph of dimension {n}")
    basis = independent_subset([ident, *edges], tol)
    return QuantumGraph(n, tuple(basis), dict(metadata or {}))


# ---------------------------------------------------------------------------
# linear independence

def independent_subset(mats: Sequence[HermitianMatrix], tol: float = DEFAULT_TOL) -> list:
    """Greedy scan keeping each matrix that is independent of those kept so far.

    Exact inputs are reduced exactly when their entries are rational;
    otherwise everything is converted to floats first.
    """
    idx, mats = independent_indices(mats, tol)
    return [mats[i] for i in idx]


def independent_indices(mats: Sequence[HermitianMatrix], tol: float = DEFAULT_TOL):
    """Indices kept by the greedy scan, plus the (possibly float-converted) inputs."""
    mats = list(mats)
    if mats and all(A.exact for A in mats):
        try:
            return _independent_exact(mats), mats
        except ExactnessError:
            pass
    mats = [A.as_float() for A in mats]
    kept, qs = [], []
    for k, A in enumerate(mats):
        v = np.asarray(A.real_vector(), float)
        nrm = np.linalg.norm(v)
        if nrm == 0:
            continue
        w = v / nrm
        for _ in range(2):
            for q in qs:
                w = w - q * (q @ w)
        r = np.linalg.norm(w)
        if r > tol:
            qs.append(w / r)
            kept.append(k)
    return kept, mats


def _independent_exact(mats: Sequence[HermitianMatrix]) -> list:
    if all(A.is_diagonal() for A in mats):
        vecs = [[A.entry(i, i).fraction() for i in range(A.n)] for A in mats]
    else:
        vecs = [A.real_vector() for A in mats]
    kept, rows, pivots = [], [], []
    for k, v in enumerate(vecs):
        v = list(v)
        for row, p in zip(rows, pivots):
            if v[p]:
                f = v[p] / row[p]
                v = [a - f * b for a, b in zip(v, row)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is not None:
            rows.append(v)
            pivots.append(nz)
            kept.append(k)
    return kept


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    ok: bool
    n: int
    m: int
    problems: list

    def raise_if_bad(self) -> None:
        if not self.ok:
            raise ValueError("; ".join(self.problems))


def validate(G: QuantumGraph, tol: float = DEFAULT_TOL) -> ValidationReport:
    problems = []
    for k, A in enumerate(G.edge_basis):
        if A.n != G.n:
            problems.append(f"basis[{k}] has size {A.n}, expected {G.n}")
            continue
        if not A.exact:
            a = A.to_numpy()
            if np.abs(a - a.conj().T).max(initial=0.0) > tol * max(1.0, np.abs(a).max(initial=0.0)):
                problems.append(f"basis[{k}] is not Hermitian")
    if not G.edge_basis:
        problems.append("edge basis is empty")
    elif not G.edge_basis[0].equals(HermitianMatrix.identity(G.n, exact=G.edge_basis[0].exact), tol):
        problems.append("basis[0] is not the identity")
    if not problems:
        kept, _ = independent_indices(list(G.edge_basis), tol)
        if len(kept) != len(G.edge_basis):
            bad = next(k for k in range(len(G.edge_basis)) if k not in kept)
            problems.append(f"basis is linearly dependent (first dependent index {bad})")
    return ValidationReport(not problems, G.n, G.valence, problems)


# ---------------------------------------------------------------------------
# constructions

def induced_subgraph(G: QuantumGraph, S: Subspace, tol: float = DEFAULT_TOL) -> QuantumGraph:
    """Compress every edge operator to ``S`` and keep an independent subset."""
    if S.dim == 0:
        raise ValueError("induced subgraph on the zero subspace")
    if S.ambient_dim != G.n:
        raise DimensionError("subspace lives in a different dimension")
    exact = G.exact and S.exact
    if not exact:
        S = S.as_float()
        G = G.as_float()
    comp = [A.compress(S) for A in G.edge_basis[1:]]
    ident = HermitianMatrix.identity(S.dim, exact=exact)
    basis = independent_subset([ident, *comp], tol)
    meta = dict(G.metadata)
    meta["induced_from"] = G.n
    return QuantumGraph(S.dim, tuple(basis), meta)


def _unit(n: int, entries: dict) -> HermitianMatrix:
    return HermitianMatrix.from_entries(n, entries)


def from_classical(adjacency, diagonal: bool = False) -> QuantumGraph:
    """Quantum graph of a classical graph (self loops implicit).

    The edge space is spanned by the identity and, for every edge ``{a, b}``,
    the Hermitian pair ``E_ab + E_ba`` and ``i(E_ab - E_ba)``.  With this
    choice the span of a set of standard basis vectors is a code exactly when
    the vertex set is independent.

    ``diagonal=True`` also adds every diagonal unit ``E_aa``, giving the full
    space of matrices with the graph's zero pattern.  That space is a valid
    quantum graph, but its codes are all one-dimensional, so independent sets
    are not recovered from it.
    """
    adj = [[bool(x) for x in row] for row in adjacency]
    q = len(adj)
    for a in range(q):
        if len(adj[a]) != q:
            raise DimensionError("adjacency is not square")
        for b in range(q):
            if adj[a][b] != adj[b][a]:
                raise ValueError(f"adjacency is not symmetric at ({a},{b})")
    cands = [_unit(q, {(a, a): 1}) for a in range(q)] if diagonal else []
    for a in range(q):
        for b in range(a + 1, q):
            if adj[a][b]:
                cands.append(_unit(q, {(a, b): 1, (b, a): 1}))
                cands.append(_unit(q, {(a, b): (0, 1), (b, a): (0, -1)}))
    if not cands:
        return QuantumGraph(q, (HermitianMatrix.identity(q),), {"kind": "classical"})
    return make_graph(q, cands, {"kind": "classical"})


def kron(A: HermitianMatrix, B: HermitianMatrix) -> HermitianMatrix:
    if A.exact and B.exact:
        data = {}
        for (i, j), a in A.items():
            for (k, l), b in B.items():
                data[(i * B.n + k, j * B.n + l)] = a * b
        return HermitianMatrix(A.n * B.n, data, True)
    return HermitianMatrix.from_array(np.kron(A.to_numpy(), B.to_numpy()))


def tensor_product(G: QuantumGraph, H: QuantumGraph, tol: float = DEFAULT_TOL) -> QuantumGraph:
    cands = [kron(A, B) for A in G.edge_basis for B in H.edge_basis]
    basis = independent_subset(cands, tol)
    return QuantumGraph(G.n * H.n, tuple(basis), {"kind": "tensor"})


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (M + M.conj().T) / 2


def random_graph(n: int, m: int, seed: int) -> QuantumGraph:
    """Identity plus ``m`` random Hermitian matrices.

    Draws use ``numpy.random.default_rng(seed)`` (PCG64): for each matrix an
    ``n x n`` block of real standard normals, then an imaginary block, then
    ``(M + M^*)/2``.
    """
    if not 0 <= m <= n * n - 1:
        raise ValueError(f"valence {m} out of range 0..{n * n - 1}")
    rng = np.random.default_rng(seed)
    mats = [HermitianMatrix.from_array(random_hermitian(n, rng)) for _ in range(m)]
    G = make_graph(n, mats, {"kind": "random", "seed": seed})
    if G.valence != m:
        raise ArithmeticError("random draw was degenerate")
    return G


# ---------------------------------------------------------------------------
# slopes

@dataclass(frozen=True)
class SlopeReport:
    slopes: tuple           # one per edge basis element
    residual: float         # max Frobenius norm of U*AU - eps I
    worst: int              # index of the edge element attaining the residual
    exact_zero: bool | None  # exact mode: residual is exactly zero


def compressions(G: QuantumGraph, S: Subspace) -> list:
    if S.ambient_dim != G.n:
        raise DimensionError("subspace lives in a different dimension")
    if G.exact and S.exact:
        return [A.compress(S) for A in G.edge_basis]
    Gf, Sf = G.as_float(), S.as_float()
    return [A.compress(Sf) for A in Gf.edge_basis]


def slope(G: QuantumGraph, S: Subspace) -> SlopeReport:
    """Slopes ``tr(U* A U)/k`` and the deviation of each compression from a scalar."""
    k = S.dim
    if k == 0:
        raise ValueError("slope of the zero subspace")
    comps = compressions(G, S)
    slopes, resids, zero = [], [], True
    for C in comps:
        if C.exact:
            eps = Surd.of(0)
            for i in range(k):
                eps = eps + C.entry(i, i)
            eps = eps / k
            acc = 0.0
            entries = dict(C.items())
            for (i, j), v in entries.items():
                d = v - eps if i == j else v
                if d:
                    zero = False
                    acc += abs(complex(d)) ** 2
            for i in range(k):
                if (i, i) not in entries and eps:
                    zero = False
                    acc += abs(complex(eps)) ** 2
            slopes.append(eps.fraction() if eps.is_rational() else eps)
            resids.append(acc ** 0.5)
        else:
            c = C.to_numpy()
            eps = float(np.real(np.trace(c))) / k
            slopes.append(eps)
            resids.append(float(np.linalg.norm(c - eps * np.eye(k))))
    worst = int(np.argmax(resids)) if resids else 0
    exact = G.exact and S.exact
    return SlopeReport(tuple(slopes), float(resids[worst]), worst, zero if exact else None)


# ---------------------------------------------------------------------------
# JSON

def graph_to_json(G: QuantumGraph) -> dict:
    # underscore keys are caches (e.g. the content hash) and never serialized
    meta = {k: v for k, v in G.metadata.items()
            if not k.startswith("_") and isinstance(v, (str, int, float, bool))}
    return {"n": G.n, "edge_basis": [encode_matrix(A) for A in G.edge_basis], "metadata": meta}


def graph_from_json(obj: dict) -> QuantumGraph:
    n = int(obj["n"])
    basis = tuple(decode_matrix(a) for a in obj["edge_basis"])
    if any(A.n != n for A in basis):
        raise DimensionError("edge operator size does not match n")
    meta = {k: v for k, v in dict(obj.get("metadata", {})).items() if not str(k).startswith("_")}
    G = QuantumGraph(n, basis, meta)
    validate(G).raise_if_bad()
    return G
