"""Channels, their confusability structure, and the named codes used as cross-checks.

Classical side: stochastic matrices, threshold relations, confusability
graphs with brute-force and sandwich invariants, strong products, and the
repetition and Hamming(7,4) codes.  Quantum side: Kraus channels, the quantum
graph spanned by selected Kraus operators, Pauli error bases, the nine-qubit
Shor code and the quantum Hamming counting check.

Bit strings are little-endian: vertex ``a`` has bit ``i`` equal to
``(a >> i) & 1``, and string position ``i`` shows bit ``i``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .codes import CodeCertificate, verify_code
from .matspace import DEFAULT_TOL, HermitianMatrix, Subspace
from .qgraph import QuantumGraph, make_graph
from .surd import Surd

ALPHA_CAP = 25
CHI_CAP = 20


class ResourceCap(RuntimeError):
    """A brute-force search was asked to go beyond its hard size limit."""


def bits_of(a: int, N: int) -> str:
    return "".join(str((a >> i) & 1) for i in range(N))


def int_of(bits: str) -> int:
    return sum(1 << i for i, c in enumerate(bits) if c == "1")


# ---------------------------------------------------------------------------
# classical channels and graphs

@dataclass(frozen=True)
class StochasticMatrix:
    """Column-stochastic ``q x q`` matrix; ``entries[a][b]`` is P(receive a | send b)."""
    entries: tuple

    def __post_init__(self):
        q = len(self.entries)
        if any(len(r) != q for r in self.entries):
            raise ValueError("matrix is not square")
        for a in range(q):
            for b in range(q):
                if self.entries[a][b] < 0:
                    raise ValueError(f"negative entry at ({a},{b})")
        for b in range(q):
            s = sum(self.entries[a][b] for a in range(q))
            if abs(s - 1) > 1e-12:
                raise ValueError(f"column {b} sums to {s}")

    @property
    def q(self) -> int:
        return len(self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])


def bitflip_channel(N: int, P) -> StochasticMatrix:
    """``M[a][b] = P^k (1-P)^(N-k)`` with ``k`` the Hamming distance of a and b.

    Pass a Fraction for exact entries.
    """
    if N < 1:
        raise ValueError("need at least one bit")
    if not 0 <= P <= 1:
        raise ValueError("flip probability must lie in [0, 1]")
    q = 1 << N
    powers = [P ** k * (1 - P) ** (N - k) for k in range(N + 1)]
    return StochasticMatrix(tuple(tuple(powers[bin(a ^ b).count("1")] for b in range(q))
                                  for a in range(q)))


def relation_from_channel(M: StochasticMatrix, threshold) -> frozenset:
    """Pairs ``(a, b)`` with ``M[a][b] >= threshold``."""
    return frozenset((a, b) for a in range(M.q) for b in range(M.q)
                     if M.entries[a][b] >= threshold)


@dataclass(frozen=True)
class ClassicalGraph:
    """Simple graph on ``range(n)``; self loops are implicit and never stored."""
    n: int
    edges: frozenset  # pairs (a, b) with a < b

    @staticmethod
    def from_edges(n: int, edges: Iterable) -> "ClassicalGraph":
        out = set()
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) out of range")
            if a != b:
                out.add((min(a, b), max(a, b)))
        return ClassicalGraph(n, frozenset(out))

    @staticmethod
    def from_adjacency(adj) -> "ClassicalGraph":
        n = len(adj)
        for a in range(n):
            for b in range(n):
                if bool(adj[a][b]) != bool(adj[b][a]):
                    raise ValueError(f"adjacency is not symmetric at ({a},{b})")
        return ClassicalGraph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)
                                             if adj[a][b]])

    def neighbors(self) -> list[set]:
        nb = [set() for _ in range(self.n)]
        for a, b in self.edges:
            nb[a].add(b)
            nb[b].add(a)
        return nb

    def masks(self) -> list[int]:
        out = [0] * self.n
        for a, b in self.edges:
            out[a] |= 1 << b
            out[b] |= 1 << a
        return out

    def degrees(self) -> list[int]:
        return [len(s) for s in self.neighbors()]

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def adjacency(self) -> list[list[int]]:
        adj = [[0] * self.n for _ in range(self.n)]
        for a, b in self.edges:
            adj[a][b] = adj[b][a] = 1
        return adj

    def is_independent(self, S: Iterable[int]) -> bool:
        S = set(S)
        return not any(a in S and b in S for a, b in self.edges)


def confusability_graph(relation: Iterable, q: int) -> ClassicalGraph:
    """Symmetrize the relation and drop the diagonal."""
    return ClassicalGraph.from_edges(q, [(a, b) for a, b in relation if a != b])


def cycle_graph(q: int) -> ClassicalGraph:
    return ClassicalGraph.from_edges(q, [(i, (i + 1) % q) for i in range(q)])


def complete_graph(q: int) -> ClassicalGraph:
    return ClassicalGraph.from_edges(q, itertools.combinations(range(q), 2))


def path_graph(q: int) -> ClassicalGraph:
    return ClassicalGraph.from_edges(q, [(i, i + 1) for i in range(q - 1)])


def hamming_distance_graph(N: int, d: int = 1) -> ClassicalGraph:
    """Bit strings of length N joined when their distance is between 1 and d."""
    q = 1 << N
    return ClassicalGraph.from_edges(q, [(a, b) for a in range(q) for b in range(a + 1, q)
                                         if bin(a ^ b).count("1") <= d])


def graph_square(G: ClassicalGraph) -> ClassicalGraph:
    """Join vertices at distance at most two."""
    nb = G.neighbors()
    edges = set(G.edges)
    for v in range(G.n):
        for a in nb[v]:
            for b in nb[v]:
                if a < b:
                    edges.add((a, b))
    return ClassicalGraph(G.n, frozenset(edges))


def strong_product(G: ClassicalGraph, H: ClassicalGraph) -> ClassicalGraph:
    """Vertex ``(a, b)`` is ``a * H.n + b``; adjacent when each coordinate is equal or adjacent."""
    ga, ha = G.masks(), H.masks()
    edges = []
    for a1 in range(G.n):
        for b1 in range(H.n):
            for a2 in range(a1, G.n):
                if a2 != a1 and not (ga[a1] >> a2) & 1:
                    continue
                for b2 in range(H.n):
                    if (a1, b1) >= (a2, b2):
                        continue
                    if b2 == b1 or (ha[b1] >> b2) & 1:
                        edges.append((a1 * H.n + b1, a2 * H.n + b2))
    return ClassicalGraph.from_edges(G.n * H.n, edges)


def independence_exact(G: ClassicalGraph, cap: int = ALPHA_CAP) -> int:
    return len(max_independent_set(G, cap))


def max_independent_set(G: ClassicalGraph, cap: int = ALPHA_CAP) -> list[int]:
    """Largest independent set by branch and bound on bitmasks."""
    if G.n > cap:
        raise ResourceCap(f"exact independence is capped at {cap} vertices (got {G.n})")
    nb = G.masks()
    best = [0, 0]

    def rec(cand: int, chosen: int, size: int):
        if cand == 0:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + bin(cand).count("1") <= best[0]:
            return
        v = (cand & -cand).bit_length() - 1
        rec(cand & ~nb[v] & ~(1 << v), chosen | (1 << v), size + 1)
        rec(cand & ~(1 << v), chosen, size)

    rec((1 << G.n) - 1, 0, 0)
    return [v for v in range(G.n) if (best[1] >> v) & 1]


def greedy_independent(G: ClassicalGraph, order: Sequence[int] | None = None) -> list[int]:
    """Maximal independent set scanning vertices in order (index order by default)."""
    nb = G.neighbors()
    blocked, out = set(), []
    for v in (range(G.n) if order is None else order):
        if v not in blocked:
            out.append(v)
            blocked |= nb[v]
            blocked.add(v)
    return out


def covering_bound(G: ClassicalGraph) -> int:
    """``ceil(|G| / (max degree + 1))``, a lower bound on independence."""
    return -(-G.n // (G.max_degree + 1))


def packing_bound(G: ClassicalGraph) -> int:
    """``floor(|G| / (min degree + 1))``: no set with disjoint closed neighbourhoods is larger."""
    return G.n // (G.min_degree + 1)


@dataclass(frozen=True)
class Sandwich:
    lower: int
    upper: int
    witness: tuple

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def square_independence(G: ClassicalGraph, witness: Sequence[int] | None = None) -> Sandwich:
    """Independence number of ``G^2`` bracketed by a witness and the packing bound.

    Independent sets of the square are sets with pairwise disjoint closed
    neighbourhoods in ``G`` (error-correcting codes), so their size is at most
    ``|G| / (min degree + 1)``.  The witness defaults to the greedy set in
    index order, which for Hamming spaces is the lexicographic code.
    """
    sq = graph_square(G)
    S = list(greedy_independent(sq) if witness is None else witness)
    if not sq.is_independent(S):
        raise ValueError("witness is not independent in the square")
    return Sandwich(len(S), packing_bound(G), tuple(S))


def greedy_coloring_classical(G: ClassicalGraph) -> list[list[int]]:
    """First-fit coloring in index order; uses at most ``max degree + 1`` colors."""
    nb = G.neighbors()
    color = {}
    for v in range(G.n):
        taken = {color[u] for u in nb[v] if u in color}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    k = max(color.values(), default=-1) + 1
    return [[v for v in range(G.n) if color[v] == c] for c in range(k)]


def chromatic_exact(G: ClassicalGraph, cap: int = CHI_CAP) -> int:
    if G.n > cap:
        raise ResourceCap(f"exact chromatic number is capped at {cap} vertices (got {G.n})")
    if G.n == 0:
        return 0
    nb = G.neighbors()
    order = sorted(range(G.n), key=lambda v: -len(nb[v]))

    def colorable(k: int) -> bool:
        color = {}

        def rec(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            used = {color[u] for u in nb[v] if u in color}
            top = max(color.values(), default=-1)
            for c in range(min(k, top + 2)):
                if c not in used:
                    color[v] = c
                    if rec(i + 1):
                        return True
                    del color[v]
            return False

        return rec(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def capacity_lower(G: ClassicalGraph, k: int) -> float:
    """``alpha(G^k)^(1/k)`` for the k-fold strong power (k <= 2)."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > 2:
        raise ResourceCap("strong powers beyond k = 2 are not supported")
    H = G if k == 1 else strong_product(G, G)
    return independence_exact(H) ** (1.0 / k)


# ---------------------------------------------------------------------------
# classical codes

def _bits(x) -> list[int]:
    if isinstance(x, str):
        if set(x) - {"0", "1"}:
            raise ValueError(f"not a bit string: {x!r}")
        return [int(c) for c in x]
    return [int(b) & 1 for b in x]


def _fmt(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits)


def hamming74_encode(message) -> str:
    """Four data bits into seven, parity at positions 1, 2 and 4 (1-indexed)."""
    d = _bits(message)
    if len(d) != 4:
        raise ValueError("Hamming(7,4) encodes exactly 4 bits")
    word = [0] * 8  # index 0 unused
    for pos, bit in zip((3, 5, 6, 7), d):
        word[pos] = bit
    for p in (1, 2, 4):
        word[p] = sum(word[k] for k in range(1, 8) if k & p and k != p) % 2
    return _fmt(word[1:])


def hamming74_syndrome(word) -> str:
    """Parity checks for positions 4, 2, 1: the binary location of a single flip."""
    w = [0] + _bits(word)
    if len(w) != 8:
        raise ValueError("Hamming(7,4) words have 7 bits")
    checks = {p: sum(w[k] for k in range(1, 8) if k & p) % 2 for p in (1, 2, 4)}
    return f"{checks[4]}{checks[2]}{checks[1]}"


def hamming74_decode(word) -> tuple[str, str]:
    """Correct at most one flip; returns (data bits, syndrome)."""
    w = [0] + _bits(word)
    syn = hamming74_syndrome(word)
    loc = int(syn, 2)
    if loc:
        w[loc] ^= 1
    return _fmt([w[3], w[5], w[6], w[7]]), syn


def repetition3_encode(message) -> str:
    """Send the message three times in a row."""
    return _fmt(_bits(message) * 3)


def repetition3_decode(word) -> str:
    w = _bits(word)
    if len(w) % 3:
        raise ValueError("length is not a multiple of 3")
    k = len(w) // 3
    return _fmt([1 if w[i] + w[i + k] + w[i + 2 * k] >= 2 else 0 for i in range(k)])


# ---------------------------------------------------------------------------
# quantum channels

@dataclass(frozen=True)
class KrausChannel:
    n: int
    ops: tuple

    def __post_init__(self):
        acc = np.zeros((self.n, self.n), dtype=complex)
        for M in self.ops:
            M = np.asarray(M, dtype=complex)
            if M.shape != (self.n, self.n):
                raise ValueError("Kraus operator has the wrong shape")
            acc += M.conj().T @ M
        if np.abs(acc - np.eye(self.n)).max(initial=0.0) > 1e-10:
            raise ValueError("Kraus operators do not satisfy sum M*M = I")

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return sum(M @ rho @ np.asarray(M).conj().T for M in self.ops)


def pauli_matrix(c: str) -> np.ndarray:
    return {"I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex)}[c]


def bitflip_kraus(P: float) -> KrausChannel:
    return KrausChannel(2, (np.sqrt(1 - P) * np.eye(2), np.sqrt(P) * pauli_matrix("X")))


def graph_from_kraus(channel: KrausChannel, selected: Sequence[int] | None = None,
                     tol: float = DEFAULT_TOL) -> QuantumGraph:
    """Span of the identity and the Hermitian parts ``M + M*``, ``i(M - M*)``.

    Candidates are scaled so their largest entry has modulus one.
    """
    idx = range(len(channel.ops)) if selected is None else selected
    cands = []
    for k in idx:
        M = np.asarray(channel.ops[k], dtype=complex)
        for H in (M + M.conj().T, 1j * (M - M.conj().T)):
            top = np.abs(H).max(initial=0.0)
            if top > tol:
                cands.append(HermitianMatrix.from_array(H / top))
    return make_graph(channel.n, cands, {"kind": "kraus"}, tol)


def transition_probability(channel: KrausChannel, a: int, b: int) -> float:
    """``sum_i |<a|M_i|b>|^2``."""
    return float(sum(abs(np.asarray(M)[a, b]) ** 2 for M in channel.ops))


def transition_matrix(channel: KrausChannel) -> np.ndarray:
    return sum(np.abs(np.asarray(M)) ** 2 for M in channel.ops)


def relation_support(G: QuantumGraph, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Boolean pattern of entries that some edge operator can reach."""
    acc = np.zeros((G.n, G.n), dtype=bool)
    for A in G.edge_basis:
        acc |= np.abs(A.to_numpy()) > tol
    return acc


# ---------------------------------------------------------------------------
# Pauli strings

_PHASES = (1, 1j, -1, -1j)


@dataclass(frozen=True)
class PauliString:
    """``i^phase * X^x Z^z`` on ``n`` qubits (bit q of x/z acts on qubit q)."""
    n: int
    x: int
    z: int
    phase: int = 0

    @staticmethod
    def from_label(label: str) -> "PauliString":
        x = z = 0
        phase = 0
        for q, c in enumerate(label):
            if c in "XY":
                x |= 1 << q
            if c in "ZY":
                z |= 1 << q
            if c == "Y":
                phase += 1  # Y = i X Z
            elif c not in "IXZ":
                raise ValueError(f"bad Pauli letter {c!r}")
        return PauliString(len(label), x, z, phase % 4)

    @property
    def label(self) -> str:
        out = []
        for q in range(self.n):
            xb, zb = (self.x >> q) & 1, (self.z >> q) & 1
            out.append("IZXY"[xb * 2 + zb])
        return "".join(out)

    @property
    def weight(self) -> int:
        return bin(self.x | self.z).count("1")

    @property
    def coefficient(self) -> complex:
        """Scalar in front of the tensor product of the labelled letters."""
        y = bin(self.x & self.z).count("1")
        return _PHASES[(self.phase - y) % 4]

    def is_hermitian(self) -> bool:
        return self.coefficient in (1, -1)

    def __mul__(self, other: "PauliString") -> "PauliString":
        # X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1 & x2|} X^(x1^x2) Z^(z1^z2)
        sign = 2 * (bin(self.z & other.x).count("1") % 2)
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z,
                           (self.phase + other.phase + sign) % 4)

    def adjoint(self) -> "PauliString":
        # (X^x Z^z)^* = Z^z X^x = (-1)^{|x & z|} X^x Z^z
        sign = 2 * (bin(self.x & self.z).count("1") % 2)
        return PauliString(self.n, self.x, self.z, (-self.phase + sign) % 4)

    def apply(self, vecs: np.ndarray) -> np.ndarray:
        """Apply to the columns of ``vecs`` (shape ``2^n`` or ``2^n x k``)."""
        dim = 1 << self.n
        idx = np.arange(dim)
        zsign = 1 - 2 * (np.array([bin(i & self.z).count("1") & 1 for i in range(dim)]))
        v = np.asarray(vecs)
        w = (zsign.reshape((-1,) + (1,) * (v.ndim - 1)) * v)
        out = np.empty_like(w, dtype=complex)
        out[idx ^ self.x] = w
        return _PHASES[self.phase] * out

    def matrix(self) -> np.ndarray:
        if self.n > 10:
            raise ValueError("dense Pauli matrices are limited to 10 qubits")
        return self.apply(np.eye(1 << self.n, dtype=complex))

    def exact_matrix(self) -> HermitianMatrix:
        """Sparse exact form (Hermitian strings only)."""
        if not self.is_hermitian():
            raise ValueError("not a Hermitian Pauli string")
        c = _PHASES[self.phase]
        data = {}
        for j in range(1 << self.n):
            s = -1 if bin(j & self.z).count("1") & 1 else 1
            v = c * s
            data[(j ^ self.x, j)] = Surd.of(int(v.real), int(v.imag))
        return HermitianMatrix(1 << self.n, data, True)


def pauli_errors(n_qubits: int, max_weight: int) -> list[PauliString]:
    """Hermitian Pauli strings with at most ``max_weight`` non-identity letters.

    Ordered by weight, then by qubit positions, then by letters X, Y, Z.
    """
    if not 1 <= n_qubits <= 10:
        raise ValueError("pauli_errors supports 1..10 qubits")
    if not 0 <= max_weight <= 2:
        raise ValueError("pauli_errors supports weights 0..2")
    out = [PauliString(n_qubits, 0, 0)]
    for w in range(1, max_weight + 1):
        for qubits in itertools.combinations(range(n_qubits), w):
            for letters in itertools.product("XYZ", repeat=w):
                lab = ["I"] * n_qubits
                for q, c in zip(qubits, letters):
                    lab[q] = c
                out.append(PauliString.from_label("".join(lab)))
    return out


def pauli_graph(strings: Sequence[PauliString]) -> QuantumGraph:
    """Exact quantum graph spanned by distinct Hermitian Pauli strings.

    Distinct strings are orthogonal in the trace inner product, so no
    independence filtering is needed; the identity must come first.
    """
    seen = set()
    for P in strings:
        if (P.x, P.z) in seen:
            raise ValueError(f"duplicate Pauli string {P.label}")
        seen.add((P.x, P.z))
    if not strings or strings[0].x or strings[0].z:
        raise ValueError("the identity must be listed first")
    basis = tuple(P.exact_matrix() for P in strings)
    return QuantumGraph(1 << strings[0].n, basis, {"kind": "pauli", "qubits": strings[0].n})


# ---------------------------------------------------------------------------
# Shor code and the quantum Hamming count

def shor_codewords(scaled: bool = False) -> np.ndarray:
    """Columns ``|0_L>, |1_L>``; ``scaled`` multiplies by ``2 sqrt 2`` (integer entries)."""
    ghz = {0: np.zeros(8), 1: np.zeros(8)}
    ghz[0][0], ghz[0][7] = 1, 1
    ghz[1][0], ghz[1][7] = 1, -1
    cols = []
    for s in (0, 1):
        v = np.kron(np.kron(ghz[s], ghz[s]), ghz[s])
        cols.append(v if scaled else v / (2 * np.sqrt(2)))
    return np.stack(cols, axis=1)


def shor_subspace() -> Subspace:
    amp = Surd.sqrt(Fraction(1, 8))
    W = shor_codewords(scaled=True)
    vecs = [{i: amp * int(W[i, s]) for i in range(512) if W[i, s]} for s in (0, 1)]
    return Subspace(512, vecs, True)


def compression_2x2(P: PauliString, W: np.ndarray) -> np.ndarray:
    return W.conj().T @ P.apply(W)


@dataclass
class ShorReport:
    certificate: CodeCertificate
    products_checked: int
    product_residual: float
    single_flip_residual: dict = field(default_factory=dict)


def shor_code(tol: float = 1e-9) -> ShorReport:
    """Verify the nine-qubit code against every product ``E* F`` of weight-1 Paulis.

    Each product is applied to the integer-scaled codewords, so the 2x2
    compressions are computed without rounding.  The certificate itself is an
    exact check over the graph spanned by all Hermitian Pauli strings of
    weight at most two, which is the span of those products.
    """
    errors = pauli_errors(9, 1)
    W = shor_codewords(scaled=True)
    worst = 0.0
    count = 0
    for E in errors:
        for F in errors:
            C = compression_2x2(E.adjoint() * F, W) / 8
            eps = np.trace(C) / 2
            worst = max(worst, float(np.linalg.norm(C - eps * np.eye(2))))
            count += 1
    flips = {}
    for q in range(9):
        X = PauliString.from_label("I" * q + "X" + "I" * (8 - q))
        C = compression_2x2(X, W) / 8
        flips[q] = float(np.linalg.norm(C - np.trace(C) / 2 * np.eye(2)))
    G = pauli_graph(pauli_errors(9, 2))
    cert = verify_code(G, shor_subspace(), tol)
    return ShorReport(cert, count, worst, flips)


@dataclass
class HammingReport:
    dim_R: int
    dim_R0: int
    dim_C: int
    dim_H: int
    holds: bool
    degenerate: bool
    gram: list = field(repr=False, default_factory=list)

    @property
    def product(self) -> int:
        return self.dim_R0 * self.dim_C


def _exact_rank(rows: list[list[Surd]]) -> int:
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def quantum_hamming_check(errors: Sequence, code, tol: float = DEFAULT_TOL) -> HammingReport:
    """Gram matrix ``eps(E_i* E_j)`` on a code, its rank, and the counting bound.

    ``errors`` are Pauli strings or square arrays; ``code`` is a Subspace or
    a matrix with orthonormal columns.  Pauli errors on integer-scaled
    codewords (``shor_codewords(scaled=True)`` with ``scale=8``) are handled
    exactly by passing ``code=(W, scale)``.
    """
    if isinstance(code, tuple):
        W, scale = code
        W = np.asarray(W)
        exact = True
    else:
        W = code.matrix() if isinstance(code, Subspace) else np.asarray(code, dtype=complex)
        scale = 1
        exact = False
    k = W.shape[1]
    dim_H = W.shape[0]

    def op_apply(E, V):
        return E.apply(V) if isinstance(E, PauliString) else np.asarray(E) @ V

    def op_adj(E):
        return E.adjoint() if isinstance(E, PauliString) else np.asarray(E).conj().T

    gram = [[None] * len(errors) for _ in errors]
    for i, E in enumerate(errors):
        for j, F in enumerate(errors):
            if isinstance(E, PauliString) and isinstance(F, PauliString):
                C = W.conj().T @ (E.adjoint() * F).apply(W)
            else:
                C = W.conj().T @ op_apply(op_adj(E), op_apply(F, W))
            eps = np.trace(C) / k
            if np.linalg.norm(C - eps * np.eye(k)) > tol * max(1, scale):
                raise ValueError(f"not a code for the product of errors {i} and {j}")
            gram[i][j] = eps / scale
    if exact:
        rows = [[Surd.of(Fraction(int(round(g.real * scale)), scale),
                         Fraction(int(round(g.imag * scale)), scale)) for g in row] for row in gram]
        rank = _exact_rank(rows)
    else:
        rank = int(np.linalg.matrix_rank(np.array(gram, dtype=complex), tol=tol))
    return HammingReport(len(errors), rank, k, dim_H, rank * k <= dim_H, rank < len(errors), gram)


def pauli_hamming_numbers(n_qubits: int, dim_C: int) -> tuple[int, int]:
    """``((3n+1) dim C, 2^n)``: the nondegenerate counting bound for weight-1 errors."""
    return (3 * n_qubits + 1) * dim_C, 2 ** n_qubits
