"""Error-detecting codes and colorings: verification, construction, certificates.

A subspace ``C`` with orthonormal basis ``U`` is a code of ``G`` when
``U* A U`` is a scalar multiple of the identity for every edge operator
``A``.  A coloring is a list of codes whose projections sum to the identity.

Construction follows the greedy-plus-Tverberg route: pick orthonormal vectors
that are mutually invisible to every edge operator, read off the diagonal
values ``c_ij = <v_j|A_i|v_j>`` as points in ``R^m``, split them into blocks
with a common convex combination, and take one unit vector per block with
amplitudes ``sqrt(d_j)``.  Colorings repeat this on the orthogonal complement.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .matspace import (DEFAULT_TOL, HermitianMatrix, Subspace, canonical_basis, commutes,
                       complement, decode_subspace, encode_real, encode_subspace, gram_exact,
                       spectrum, decode_real)
from .qgraph import (QuantumGraph, SlopeReport, graph_from_json, graph_to_json,
                     induced_subgraph, slope)
from .surd import ExactnessError, Surd
from .tverberg import TverbergPartition, tverberg_partition

SCHEMA = "nobrooks.certificate/1"

# Colorings of exact graphs keep ambient vectors exact up to this dimension;
# beyond it the ambient frame is carried in floats (the per-step algebra stays
# exact either way).
EXACT_FRAME_LIMIT = 256

# Relative singular-value cutoff for the greedy elimination.  Erring towards
# a larger rank only removes extra dimensions, which never breaks the
# ``t >= ceil(n/(m+1))`` count, so this sits near round-off rather than at the
# verification tolerance.
RANK_TOL = 1e-12


class CodeRejected(ValueError):
    def __init__(self, index: int, residual: float, detail: str = ""):
        self.index = index
        self.residual = residual
        super().__init__(f"edge element {index} has residual {residual:.3e}{detail}")


class ColoringRejected(ValueError):
    pass


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class CodeCertificate:
    subspace: Subspace
    slopes: SlopeReport
    graph_ref: str
    tolerance: float
    construction: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def residual(self) -> float:
        return self.slopes.residual

    @property
    def exact(self) -> bool:
        return self.slopes.exact_zero is not None


@dataclass(frozen=True)
class ColoringCertificate:
    codes: tuple
    graph_ref: str
    tolerance: float
    identity_residual: float

    @property
    def size(self) -> int:
        return len(self.codes)

    @property
    def dims(self) -> list[int]:
        return [c.dim for c in self.codes]


def graph_ref(G: QuantumGraph) -> str:
    """Content hash of the graph's canonical JSON."""
    if "_hash" in G.metadata:
        return G.metadata["_hash"]
    blob = json.dumps(graph_to_json(G), sort_keys=True, separators=(",", ":"))
    h = "sha256:" + hashlib.sha256(blob.encode()).hexdigest()
    G.metadata["_hash"] = h
    return h


# ---------------------------------------------------------------------------
# verification

def verify_code(G: QuantumGraph, S: Subspace, tol: float = DEFAULT_TOL,
                ref: str | None = None) -> CodeCertificate:
    """Accept ``S`` as a code of ``G`` or raise :class:`CodeRejected`.

    ``ref`` overrides the graph's content hash (hashing is skipped).
    """
    if S.dim == 0:
        raise ValueError("the zero subspace is not a code")
    rep = slope(G, S)
    if rep.exact_zero is not None:
        if not rep.exact_zero:
            raise CodeRejected(rep.worst, rep.residual, " (exact check)")
    elif rep.residual > tol:
        raise CodeRejected(rep.worst, rep.residual)
    return CodeCertificate(S, rep, graph_ref(G) if ref is None else ref, tol)


def identity_residual(subspaces: Sequence[Subspace], n: int) -> tuple[float, bool | None]:
    """``||sum P - I||_F`` and, when everything is exact, whether it is exactly 0."""
    if all(S.exact for S in subspaces):
        vecs = [v for S in subspaces for v in S.vectors]
        g = gram_exact(vecs)
        acc, zero = 0.0, True
        for a in range(len(vecs)):
            if g.get((a, a), Surd()) != 1:
                zero = False
                acc += abs(complex(g.get((a, a), Surd())) - 1) ** 2
        for (a, b), x in g.items():
            if a != b:
                zero = False
                acc += abs(complex(x)) ** 2
        return acc ** 0.5, zero
    U = np.hstack([S.matrix() for S in subspaces]) if subspaces else np.zeros((n, 0))
    return float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[1]))), None


def verify_coloring(G: QuantumGraph, subspaces: Sequence[Subspace],
                    tol: float = DEFAULT_TOL, ref: str | None = None) -> ColoringCertificate:
    """Accept a family of codes whose projections sum to the identity."""
    subspaces = list(subspaces)
    if not subspaces:
        raise ColoringRejected("empty coloring")
    dims = sum(S.dim for S in subspaces)
    if dims != G.n:
        raise ColoringRejected(f"dimensions sum to {dims}, not {G.n}")
    certs = []
    h = graph_ref(G) if ref is None else ref
    for k, S in enumerate(subspaces):
        try:
            certs.append(verify_code(G, S, tol, ref=h))
        except CodeRejected as e:
            raise ColoringRejected(f"color {k}: {e}") from e
    res, zero = identity_residual(subspaces, G.n)
    if zero is False or (zero is None and res > tol):
        raise ColoringRejected(f"projections do not sum to the identity (residual {res:.3e})")
    return ColoringCertificate(tuple(certs), h, tol, res)


# ---------------------------------------------------------------------------
# lemma checks on produced objects

def isotropic_violations(G: QuantumGraph, cert: CodeCertificate, tol: float = DEFAULT_TOL) -> list[int]:
    """Edge indices where ``dim C`` exceeds the number of eigenvalues ``>= eps(A)``."""
    bad = []
    for i, (A, eps) in enumerate(zip(G.edge_basis, cert.slopes.slopes)):
        if A.exact and A.is_diagonal() and not isinstance(eps, float):
            count = sum(1 for lam in A.diagonal() if lam >= eps)
        else:
            vals = spectrum(A.as_float())
            scale = max(1.0, abs(vals[0]), abs(vals[-1]))
            count = sum(1 for lam in vals if lam >= float(eps) - tol * scale)
        if cert.dim > count:
            bad.append(i)
    return bad


def trace_gaps(G: QuantumGraph, coloring: ColoringCertificate) -> list:
    """Per edge element: mean eigenvalue minus dimension-weighted mean slope.

    Exact zeros when every piece is exact, floats otherwise.
    """
    out = []
    n = G.n
    all_exact = all(c.exact for c in coloring.codes) and G.exact
    for i, A in enumerate(G.edge_basis):
        if all_exact:
            tr = Surd.of(0)
            for k in range(n):
                tr = tr + A.entry(k, k)
            acc = Surd.of(0)
            for c in coloring.codes:
                acc = acc + Surd.of(c.slopes.slopes[i]) * c.dim
            gap = (tr - acc) / n
            out.append(gap.fraction() if gap.is_rational() else gap)
        else:
            tr = float(A.as_float().trace())
            acc = sum(c.dim * float(c.slopes.slopes[i]) for c in coloring.codes)
            out.append((tr - acc) / n)
    return out


# ---------------------------------------------------------------------------
# construction

@dataclass(frozen=True)
class GreedyVectors:
    vectors: Subspace
    coeffs: tuple          # coeffs[i][j] = <v_j|E_i|v_j>
    consumed: tuple        # dimensions removed at each greedy step

    @property
    def t(self) -> int:
        return self.vectors.dim


def greedy_vectors(G: QuantumGraph, tol: float = RANK_TOL) -> GreedyVectors:
    """Orthonormal ``v_j`` with ``<v_j|E|v_k> = 0`` for ``j != k`` and every edge ``E``.

    Each step takes the first basis vector ``v`` of what remains and removes
    ``span{A v : A in the edge basis}``.  Exact graphs must be diagonal, where
    this returns the standard basis.
    """
    n = G.n
    if G.exact:
        if not G.is_diagonal():
            raise ExactnessError("exact greedy selection needs a diagonal graph")
        coeffs = tuple(tuple(A.diagonal()) for A in G.edge_basis)
        return GreedyVectors(Subspace.full(n, exact=True), coeffs, tuple([1] * n))
    mats = [A.to_numpy() for A in G.edge_basis]
    R = np.eye(n, dtype=complex)
    vecs, consumed = [], []
    while R.shape[1] > 0:
        v = R[:, 0].copy()
        vecs.append(v)
        X = R.conj().T @ np.stack([a @ v for a in mats], axis=1)
        norms = np.linalg.norm(X, axis=0)
        X = X[:, norms > 0] / norms[norms > 0]
        U, s, _ = np.linalg.svd(X, full_matrices=False)
        rank = max(1, int(np.sum(s > tol * s[0])))
        consumed.append(rank)
        k = R.shape[1]
        if rank >= k:
            break
        Q = U[:, :rank]
        local = canonical_basis(np.eye(k) - Q @ Q.conj().T, tol, rank=k - rank)
        R = R @ local
    V = np.stack(vecs, axis=1)
    coeffs = tuple(tuple(float(np.real(np.vdot(V[:, j], a @ V[:, j]))) for j in range(V.shape[1]))
                   for a in mats)
    return GreedyVectors(Subspace(n, V, False, check=False), coeffs, tuple(consumed))


def _mutual_eigenvectors(G: QuantumGraph, tol: float) -> Subspace:
    """Common eigenbasis of commuting float operators via a generic combination."""
    rng = np.random.default_rng(0)
    n = G.n
    acc = np.zeros((n, n), dtype=complex)
    for A in G.edge_basis[1:]:
        a = A.to_numpy()
        acc += rng.uniform(1.0, 2.0) * a / max(np.linalg.norm(a, 2), 1e-300)
    w, V = np.linalg.eigh(acc)
    V = V[:, ::-1]
    # fix phases deterministically: largest-magnitude entry real positive
    for j in range(n):
        i = int(np.argmax(np.abs(V[:, j]) > 0.5 * np.abs(V[:, j]).max()))
        V[:, j] *= np.conj(V[i, j]) / abs(V[i, j])
    return Subspace(n, V, False, check=False)


def _order_by_coeffs(coeffs: Sequence[Sequence], t: int) -> list[int]:
    """Order vectors by (best rank over edge elements, first element achieving it).

    Ranks are 0 for the largest value in a row, ties broken by index.  The
    identity row is skipped.  For the tropical family this is the relabeling
    order, so diagonal and conjugated realizations line up.
    """
    rows = coeffs[1:]
    if not rows:
        return list(range(t))
    rank = []
    for row in rows:
        order = sorted(range(t), key=lambda j: -row[j])
        rk = [0] * t
        for pos, j in enumerate(order):
            rk[j] = pos
        rank.append(rk)
    def key(j):
        best = min(rk[j] for rk in rank)
        return best, next(i for i, rk in enumerate(rank) if rk[j] == best), j
    return sorted(range(t), key=key)


def _code_from_partition(vectors: Subspace, part: TverbergPartition, order: list[int]) -> Subspace:
    n = vectors.ambient_dim
    if vectors.exact:
        out = []
        for blk, ws in zip(part.parts, part.weights):
            u = {}
            for j, w in zip(blk, ws):
                if w:
                    src = vectors.column(order[j])
                    amp = Surd.sqrt(w)
                    for i, x in src.items():
                        u[i] = u.get(i, Surd()) + amp * x
            out.append(u)
        return Subspace(n, out, True, check=False)
    V = vectors.matrix()
    cols = []
    for blk, ws in zip(part.parts, part.weights):
        u = np.zeros(n, dtype=complex)
        for j, w in zip(blk, ws):
            if w:
                u += np.sqrt(float(w)) * V[:, order[j]]
        cols.append(u)
    return Subspace(n, np.stack(cols, axis=1), False, check=False)


def _resolve_mode(G: QuantumGraph, mode: str) -> str:
    if mode not in ("auto", "exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    exact_ok = G.exact and G.is_diagonal()
    if mode == "exact" and not exact_ok:
        raise ExactnessError("exact construction needs an exact diagonal graph")
    if mode == "auto":
        return "exact" if exact_ok else "float"
    return mode


def build_code(G: QuantumGraph, mode: str = "auto", budget: int | None = None,
               tol: float = DEFAULT_TOL, tverberg_method: str = "auto",
               ref: str | None = None) -> CodeCertificate:
    """Construct and verify a code of dimension at least ``ceil(n/(m+1)^2)``.

    Commuting edge operators use their common eigenbasis (so ``t = n`` and the
    dimension is at least ``ceil(n/(m+1))``); otherwise, or when that code
    fails verification, greedy vectors are used.
    ``budget`` replaces ``m`` when sizing the partition (colorings pass the
    parent graph's valence); it must be at least the graph's valence.
    """
    mode = _resolve_mode(G, mode)
    H = G if mode == "exact" else G.as_float()
    m = H.valence
    mb = m if budget is None else budget
    if mb < m:
        raise ValueError("budget below the graph's valence")
    if mode == "exact":
        routes = ["exact"]
    elif all(commutes(A, B, tol) for i, A in enumerate(H.edge_basis[1:], 1)
             for B in H.edge_basis[i + 1:]):
        routes = ["commutative", "greedy"]
    else:
        routes = ["greedy"]
    for route in routes:
        if route == "exact":
            vectors = Subspace.full(H.n, exact=True)
            coeffs = [A.diagonal() for A in H.edge_basis]
        elif route == "commutative":
            vectors = _mutual_eigenvectors(H, tol)
            V = vectors.matrix()
            coeffs = [[float(np.real(np.vdot(V[:, j], A.to_numpy() @ V[:, j]))) for j in range(H.n)]
                      for A in H.edge_basis]
        else:
            gv = greedy_vectors(H)
            vectors, coeffs = gv.vectors, [list(c) for c in gv.coeffs]
        t = vectors.dim
        order = _order_by_coeffs(coeffs, t)
        r = -(-t // (mb + 1))
        T = (mb + 1) * (r - 1) + 1
        pts = [[Fraction(coeffs[i][order[j]]) for i in range(1, m + 1)] for j in range(T)]
        part = tverberg_partition(pts, r, method=tverberg_method)
        C = _code_from_partition(vectors, part, order)
        try:
            cert = verify_code(H, C, tol, ref="")
        except CodeRejected:
            # nearly commuting operators: the approximate common eigenbasis
            # was not good enough, so retry with exact greedy elimination
            if route == routes[-1]:
                raise
            continue
        break
    info = {"route": route, "t": t, "r": r, "points_used": T, "witness": part.witness,
            "partition": part, "mode": mode}
    return CodeCertificate(cert.subspace, cert.slopes, graph_ref(G) if ref is None else ref,
                           tol, info)


def greedy_coloring(G: QuantumGraph, mode: str = "auto", tol: float = DEFAULT_TOL,
                    budget: int | None = None) -> ColoringCertificate:
    """Color by repeatedly building a code on the induced complement.

    Every step sizes its partition with the valence of ``G`` itself, so each
    code takes at most ``ceil(p/(m+1))`` and at least ``ceil(p/(m+1)^2)`` of
    the ``p`` remaining dimensions.  In ``auto`` mode the steps stay exact
    while the induced graphs stay diagonal and switch to floats afterwards.
    """
    if mode not in ("auto", "exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    mb = G.valence if budget is None else budget
    H = G.as_float() if mode == "float" else G
    frame = Subspace.full(G.n, exact=H.exact and G.n <= EXACT_FRAME_LIMIT)
    colors = []
    while True:
        step_mode = "exact" if (H.exact and H.is_diagonal()) else "float"
        if mode == "exact" and step_mode == "float":
            raise ExactnessError("induced subgraph left the exact diagonal setting")
        if step_mode == "float":
            H = H.as_float()
            frame = frame.as_float()
        cert = build_code(H, mode=step_mode, budget=mb, tol=tol, ref="")
        C = cert.subspace
        colors.append(frame.lift(C))
        if C.dim == H.n:
            break
        comp = complement(C, tol)
        frame = frame.lift(comp)
        H = induced_subgraph(H, comp, tol)
    target = G if all(S.exact for S in colors) else G.as_float()
    out = verify_coloring(target, colors, tol, ref=graph_ref(G))
    return ColoringCertificate(out.codes, out.graph_ref, tol, out.identity_residual)


def min_color_dimension(coloring: ColoringCertificate | Sequence) -> int:
    dims = coloring.dims if isinstance(coloring, ColoringCertificate) else [
        c.dim if hasattr(c, "dim") else int(c) for c in coloring]
    if not dims:
        raise ValueError("empty coloring")
    return min(dims)


def largest_code(certs: Sequence[CodeCertificate]) -> CodeCertificate:
    if not certs:
        raise ValueError("no certificates")
    best = certs[0]
    for c in certs[1:]:
        if c.dim > best.dim:
            best = c
    return best


# ---------------------------------------------------------------------------
# certificates on disk

def _slopes_json(rep: SlopeReport) -> list:
    return [encode_real(x) for x in rep.slopes]


def _digest(body: dict) -> str:
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


def certificate_to_json(G: QuantumGraph, cert, embed_graph: bool = True) -> dict:
    codes = [cert] if isinstance(cert, CodeCertificate) else list(cert.codes)
    body = {
        "schema": SCHEMA,
        "kind": "code" if isinstance(cert, CodeCertificate) else "coloring",
        "graph_hash": graph_ref(G),
        "subspaces": [encode_subspace(c.subspace) for c in codes],
        "slopes": [_slopes_json(c.slopes) for c in codes],
        "residuals": [c.residual for c in codes],
        "residual": max(c.residual for c in codes),
        "exact": all(c.exact for c in codes),
        "tolerance": cert.tolerance,
    }
    if embed_graph:
        body["graph"] = graph_to_json(G)
    body["digest"] = _digest(body)
    return body


@dataclass
class VerifyReport:
    ok: bool
    kind: str
    failures: list
    n: int = 0
    colors: int = 0
    dims: list = field(default_factory=list)


def _same_real(a, b, exact: bool, tol: float) -> bool:
    if exact:
        if isinstance(a, float) or isinstance(b, float):
            return False
        return Surd.of(a) == Surd.of(b)
    return abs(float(a) - float(b)) <= tol


def verify_certificate(obj: dict, graph: QuantumGraph | None = None) -> VerifyReport:
    """Re-check a certificate using only matrix algebra and the verifiers above.

    Nothing from the construction path is used.  Any disagreement between the
    stored fields and a fresh computation, or a broken digest, is a failure.
    """
    failures = []
    kind = obj.get("kind", "?") if isinstance(obj, dict) else "?"
    try:
        if obj.get("schema") != SCHEMA:
            failures.append(f"unknown schema {obj.get('schema')!r}")
        body = {k: v for k, v in obj.items() if k != "digest"}
        if obj.get("digest") != _digest(body):
            failures.append("digest mismatch")
        if kind not in ("code", "coloring"):
            failures.append(f"unknown kind {kind!r}")
        if graph is None:
            if "graph" not in obj:
                raise CertificateError("certificate has no embedded graph; pass one")
            graph = graph_from_json(obj["graph"])
        if graph_ref(graph) != obj.get("graph_hash"):
            failures.append("graph hash mismatch")
        tol = float(obj["tolerance"])
        if not tol > 0:
            failures.append("tolerance must be positive")
            tol = DEFAULT_TOL
        exact = obj.get("exact")
        if not isinstance(exact, bool):
            failures.append("exact flag missing")
        subspaces = [decode_subspace(s, tol) for s in obj["subspaces"]]
        if kind == "code" and len(subspaces) != 1:
            failures.append("code certificate must hold one subspace")
        if exact and not all(S.exact for S in subspaces):
            failures.append("exact certificate holds float vectors")
        G_use = graph if all(S.exact for S in subspaces) else graph.as_float()
        if kind == "coloring":
            cert = verify_coloring(G_use, subspaces, tol)
            certs = list(cert.codes)
        else:
            certs = [verify_code(G_use, subspaces[0], tol)]
        stored_slopes = obj["slopes"]
        stored_res = obj["residuals"]
        if len(stored_slopes) != len(certs) or len(stored_res) != len(certs):
            failures.append("slope/residual lists do not match the subspaces")
        for k, c in enumerate(certs):
            if k >= len(stored_slopes):
                break
            got = [decode_real(x) for x in stored_slopes[k]]
            if len(got) != len(c.slopes.slopes):
                failures.append(f"color {k}: wrong number of slopes")
                continue
            for i, (a, b) in enumerate(zip(got, c.slopes.slopes)):
                if not _same_real(a, b, c.exact, tol):
                    failures.append(f"color {k}: slope {i} differs from recomputation")
            if k < len(stored_res) and abs(float(stored_res[k]) - c.residual) > tol:
                failures.append(f"color {k}: residual field differs from recomputation")
        if abs(float(obj["residual"]) - max(c.residual for c in certs)) > tol:
            failures.append("residual field differs from recomputation")
        if exact is True and not all(c.exact for c in certs):
            failures.append("exact flag set on a float certificate")
        if exact is False and all(c.exact for c in certs):
            failures.append("exact flag cleared on an exact certificate")
        n = graph.n
        return VerifyReport(not failures, kind, failures, n, len(certs), [c.dim for c in certs])
    except (CodeRejected, ColoringRejected) as e:
        failures.append(f"verification failed: {e}")
    except (KeyError, TypeError, ValueError, ArithmeticError, IndexError, AttributeError) as e:
        failures.append(f"malformed certificate: {type(e).__name__}: {e}")
    return VerifyReport(False, kind, failures)
