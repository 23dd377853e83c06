"""The commuting family ``Q_{n,m}`` with tropical spectra and cyclic eigenvector ranks.

Every edge operator ``A_i`` shares the eigenbasis ``w_1..w_n``.  ``A_i`` gives
``w_p`` the eigenvalue of rank ``rank[i][p]`` from a common schedule
``lambda_1 > ... > lambda_n`` whose consecutive ratios exceed ``n^2``.  Row
``i+1`` of the rank table is row ``i`` rotated by ``floor(n/m)`` (plus one for
the first ``n mod m`` rows), and the eigenvectors are then relabelled so that
positions ``(k-1)m+1 .. km`` each reach rank ``k-1`` somewhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .codes import CodeCertificate, ColoringCertificate, _mutual_eigenvectors
from .matspace import DEFAULT_TOL, HermitianMatrix, Subspace, commutes, spectrum
from .qgraph import QuantumGraph, make_graph
from .slog import slog


@dataclass(frozen=True)
class RankTable:
    rows: tuple  # rows[i][p] = 0-based rank of eigenvector p under A_{i+1}

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def m(self) -> int:
        return len(self.rows)

    def strings(self) -> list[str]:
        """Digit strings (one per matrix); needs n <= 10."""
        if self.n > 10:
            raise ValueError("digit strings only exist for n <= 10")
        return ["".join(str(x) for x in row) for row in self.rows]

    def joined(self) -> str:
        return "/".join(self.strings())

    def problems(self) -> list[str]:
        out = []
        n, m = self.n, self.m
        for i, row in enumerate(self.rows):
            if sorted(row) != list(range(n)):
                out.append(f"row {i} is not a permutation")
        for p in range(n):
            k = p // m
            if not any(row[p] == k for row in self.rows):
                out.append(f"position {p} never reaches rank {k}")
        return out


@dataclass(frozen=True)
class TropicalSpec:
    n: int
    m: int
    schedule: tuple          # lambda_1 > ... > lambda_n, exact
    shifts: tuple            # rotation from row i to row i+1, i = 1..m
    pre: RankTable
    relabel: tuple           # relabel[new position] = old position
    ranks: RankTable = field(repr=False)


def default_schedule(n: int) -> list[Fraction]:
    base = n * n + 1
    return [Fraction(1, base ** j) for j in range(n)]


def shift_sizes(n: int, m: int) -> list[int]:
    base, extra = divmod(n, m)
    return [base + (1 if i <= extra else 0) for i in range(1, m + 1)]


def build_spec(n: int, m: int, schedule: Sequence | None = None) -> TropicalSpec:
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    if schedule is None:
        lam = default_schedule(n)
    else:
        lam = [Fraction(x) for x in schedule]
        if len(lam) != n:
            raise ValueError("schedule length must be n")
        if any(x <= 0 for x in lam) or any(b >= a for a, b in zip(lam, lam[1:])):
            raise ValueError("schedule must be positive and strictly decreasing")
    shifts = shift_sizes(n, m)
    rows = [list(range(n))]
    for s in shifts[:-1]:
        rows.append([(v - s) % n for v in rows[-1]])

    def key(p):
        best = min(r[p] for r in rows)
        return best, next(i for i, r in enumerate(rows) if r[p] == best)

    order = sorted(range(n), key=key)
    post = tuple(tuple(r[p] for p in order) for r in rows)
    return TropicalSpec(n, m, tuple(lam), tuple(shifts),
                        RankTable(tuple(tuple(r) for r in rows)), tuple(order), RankTable(post))


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Haar unitary from the QR of a seeded complex Gaussian with phase fix."""
    rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def eigenframe(spec: TropicalSpec, mode: str = "diagonal", seed: int = 0) -> np.ndarray:
    """Columns are the mutual eigenvectors ``w_1..w_n`` in relabelled order."""
    if mode == "diagonal":
        return np.eye(spec.n, dtype=complex)
    if mode == "conjugated":
        return random_unitary(spec.n, seed)
    raise ValueError(f"unknown mode {mode!r}")


def realize(spec: TropicalSpec, mode: str = "diagonal", seed: int = 0) -> QuantumGraph:
    """Identity plus ``A_i = sum_p lambda_{rank[i][p]+1} w_p w_p^*``.

    ``diagonal`` keeps exact rationals in the standard basis; ``conjugated``
    rotates by a seeded random unitary and works in floats.
    """
    lam = spec.schedule
    meta = {"kind": "tropical", "n": spec.n, "m": spec.m, "mode": mode}
    if mode == "diagonal":
        mats = [HermitianMatrix.diag([lam[k] for k in row], exact=True) for row in spec.ranks.rows]
    elif mode == "conjugated":
        meta["seed"] = seed
        U = random_unitary(spec.n, seed)
        mats = []
        for row in spec.ranks.rows:
            d = np.array([float(lam[k]) for k in row])
            a = (U * d) @ U.conj().T
            mats.append(HermitianMatrix.from_array((a + a.conj().T) / 2))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    G = make_graph(spec.n, mats, meta)
    if G.valence != spec.m:
        raise ArithmeticError("realization lost independence")
    return G


def tropical_family(n: int, m: int, mode: str = "diagonal", seed: int = 0) -> QuantumGraph:
    return realize(build_spec(n, m), mode, seed)


# ---------------------------------------------------------------------------
# defining predicates

@dataclass
class PropertyReport:
    tropical: bool
    cyclical: bool
    commutative: bool
    problems: list

    @property
    def ok(self) -> bool:
        return self.tropical and self.cyclical and self.commutative


def _spectrum_desc(A: HermitianMatrix) -> list:
    if A.exact and A.is_diagonal():
        return sorted(A.diagonal(), reverse=True)
    return spectrum(A.as_float())


def _common_ranks(G: QuantumGraph, tol: float) -> tuple[list[list[int]], list[int]]:
    """Rank table of a commuting graph read off its mutual eigenvectors.

    Also returns, per row, how many leading ranks are resolvable (all of them
    in exact mode; those above ``tol`` times the top eigenvalue in floats).
    """
    n = G.n
    if G.exact and G.is_diagonal():
        vals = [A.diagonal() for A in G.edge_basis[1:]]
        resolved = [n] * len(vals)
    else:
        Gf = G.as_float()
        V = _mutual_eigenvectors(Gf, tol).matrix()
        vals = [[float(np.real(np.vdot(V[:, p], A.to_numpy() @ V[:, p]))) for p in range(n)]
                for A in Gf.edge_basis[1:]]
        resolved = [sum(1 for x in row if x > tol * max(row)) for row in vals]
    out = []
    for row in vals:
        order = sorted(range(n), key=lambda p: -row[p])
        rk = [0] * n
        for pos, p in enumerate(order):
            rk[p] = pos
        out.append(rk)
    return out, resolved


def _is_cyclical(rows: list[list[int]], resolved: list[int], n: int, m: int) -> bool:
    """Each row is the previous one rotated by the balanced shift size."""
    shifts = shift_sizes(n, m)
    for i in range(m - 1):
        s = shifts[i]
        for p in range(n):
            if rows[i][p] >= resolved[i] or rows[i + 1][p] >= resolved[i + 1]:
                continue
            if rows[i + 1][p] != (rows[i][p] - s) % n:
                return False
    return True


def check_properties(G: QuantumGraph, tol: float = DEFAULT_TOL) -> PropertyReport:
    """Test commutativity, the ``n^2`` eigenvalue gaps and the cyclic rank pattern.

    For float graphs only eigenvalues resolvable above ``tol * ||A||`` enter
    the gap test.
    """
    n, m = G.n, G.valence
    problems = []
    mats = G.edge_basis[1:]
    comm = all(commutes(A, B, tol) for i, A in enumerate(mats) for B in mats[i + 1:])
    if not comm:
        problems.append("edge operators do not commute")
    trop = True
    for i, A in enumerate(mats, 1):
        vals = _spectrum_desc(A)
        if A.exact and A.is_diagonal():
            if vals[-1] <= 0:
                trop = False
                problems.append(f"A_{i} is not positive definite")
            for j, (a, b) in enumerate(zip(vals, vals[1:]), 1):
                if not b * n * n < a:
                    trop = False
                    problems.append(f"A_{i}: lambda_{j + 1} >= lambda_{j}/n^2")
                    break
        else:
            floor = tol * max(abs(vals[0]), 1e-300)
            seen = [v for v in vals if v > floor]
            if len(seen) < len(vals) and any(v < -floor for v in vals):
                trop = False
                problems.append(f"A_{i} has a negative eigenvalue")
            for j, (a, b) in enumerate(zip(seen, seen[1:]), 1):
                if not b * n * n < a * (1 + tol):
                    trop = False
                    problems.append(f"A_{i}: lambda_{j + 1} >= lambda_{j}/n^2")
                    break
    cyc = False
    if comm and m >= 1:
        rows, resolved = _common_ranks(G, tol)
        cyc = _is_cyclical(rows, resolved, n, m)
        if not cyc:
            problems.append("ranks are not balanced cyclic shifts")
    elif m == 0:
        cyc = True
    return PropertyReport(trop, cyc, comm, problems)


def alpha_upper(n: int, m: int) -> int:
    return -(-n // (m + 1))


def chi_lower(n: int, m: int) -> int:
    return slog(n, m + 1)


# ---------------------------------------------------------------------------
# lemma checks

@dataclass
class LemmaReport:
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "LemmaReport") -> "LemmaReport":
        for k, v in other.checked.items():
            self.checked[k] = self.checked.get(k, 0) + v
        self.violations.extend(other.violations)
        return self


def _frame_from_graph(spec: TropicalSpec, G: QuantumGraph) -> np.ndarray:
    mode = G.metadata.get("mode", "diagonal")
    return eigenframe(spec, mode, G.metadata.get("seed", 0))


def _float_mats(G: QuantumGraph) -> list[np.ndarray]:
    return [A.to_numpy() for A in G.as_float().edge_basis[1:]]


def check_rayleigh(spec: TropicalSpec, G: QuantumGraph, S: Subspace,
                   tol: float = DEFAULT_TOL) -> LemmaReport:
    """``lambda_max(P A_i P) >= lambda_{i,j} <w_{i,j}|P|w_{i,j}>`` for every i, j."""
    rep = LemmaReport()
    W = _frame_from_graph(spec, G)
    U = S.matrix()
    weights = np.sum(np.abs(W.conj().T @ U) ** 2, axis=1)  # <w_p|P|w_p>
    for i, a in enumerate(_float_mats(G)):
        C = U.conj().T @ a @ U
        top = float(np.linalg.eigvalsh((C + C.conj().T) / 2)[-1])
        for p in range(spec.n):
            lam = float(spec.schedule[spec.ranks.rows[i][p]])
            rep.checked["rayleigh"] = rep.checked.get("rayleigh", 0) + 1
            if lam * weights[p] > top + tol * max(1.0, lam):
                rep.violations.append(("rayleigh", i + 1, spec.ranks.rows[i][p] + 1,
                                       top, lam * weights[p]))
    return rep


def check_basis(spec: TropicalSpec, G: QuantumGraph, S: Subspace,
                tol: float = DEFAULT_TOL) -> LemmaReport:
    """Some ``k <= dim(S^perp)+1`` has ``<w_k|P|w_k> >= 1/(dim(S^perp)+1)``."""
    rep = LemmaReport({"basis": 1})
    if S.dim == 0:
        return rep
    W = _frame_from_graph(spec, G)
    U = S.matrix()
    c = spec.n - S.dim
    weights = np.sum(np.abs(W[:, :c + 1].conj().T @ U) ** 2, axis=1)
    if weights.max() < 1.0 / (c + 1) - tol:
        rep.violations.append(("basis", c, float(weights.max())))
    return rep


def check_code_bound(spec: TropicalSpec, cert: CodeCertificate) -> LemmaReport:
    """``dim C <= ceil((dim C^perp + 1)/m)``."""
    d = cert.dim
    bound = -(-(spec.n - d + 1) // spec.m)
    rep = LemmaReport({"tropical": 1})
    if d > bound:
        rep.violations.append(("tropical", d, bound))
    return rep


def check_coloring_bound(spec: TropicalSpec, coloring: ColoringCertificate) -> LemmaReport:
    """For each tail of the coloring, some remaining color is small.

    The colors from step ``k`` onward color the graph induced on their span
    ``S``; one of them has dimension at most ``ceil((dim S^perp + 1)/m)``.
    """
    rep = LemmaReport()
    dims = coloring.dims
    used = 0
    for k in range(len(dims)):
        bound = -(-(used + 1) // spec.m)
        rep.checked["cyclical"] = rep.checked.get("cyclical", 0) + 1
        if min(dims[k:]) > bound:
            rep.violations.append(("cyclical", k, min(dims[k:]), bound))
        used += dims[k]
    return rep


def lemma_suite(spec: TropicalSpec, G: QuantumGraph, evidence, tol: float = DEFAULT_TOL) -> LemmaReport:
    """Run every inequality that applies to ``evidence``.

    A subspace gets the Rayleigh and basis checks; a code certificate also gets
    the code-size bound; a coloring gets the per-color checks plus the
    coloring bound.
    """
    rep = LemmaReport()
    if isinstance(evidence, ColoringCertificate):
        for c in evidence.codes:
            rep.merge(lemma_suite(spec, G, c, tol))
        rep.merge(check_coloring_bound(spec, evidence))
        return rep
    if isinstance(evidence, CodeCertificate):
        rep.merge(check_code_bound(spec, evidence))
        S = evidence.subspace
    else:
        S = evidence
    rep.merge(check_rayleigh(spec, G, S, tol))
    rep.merge(check_basis(spec, G, S, tol))
    return rep


def random_subspace(n: int, k: int, rng: np.random.Generator) -> Subspace:
    Z = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    Q, _ = np.linalg.qr(Z)
    return Subspace(n, Q, False, check=False)
