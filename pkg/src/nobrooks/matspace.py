"""Hermitian matrices, subspaces and spectra over two numeric backends.

Exact values are :class:`~nobrooks.surd.Surd` scalars held in sparse
``{(i, j): value}`` maps; floating values are dense numpy arrays.  Exact
vectors are sparse ``{index: Surd}`` dicts.  Everything here is immutable by
convention and side-effect free.

The exact backend covers what the tropical constructions need: diagonal
matrices, compressions onto subspaces whose basis vectors have disjoint
supports, and their complements.  Anything else raises
:class:`ExactnessError` and the caller converts to floats explicitly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .surd import ExactnessError, Surd

DEFAULT_TOL = 1e-9


class NotHermitianError(ValueError):
    def __init__(self, i: int, j: int, detail: str = ""):
        self.pair = (i, j)
        super().__init__(f"entries ({i},{j}) and ({j},{i}) are not conjugate{detail}")


class DimensionError(ValueError):
    pass


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Rational, Surd)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# exact sparse vectors

def xvec(n: int, entries: dict) -> dict:
    """Normalise a sparse exact vector (drops zeros, coerces to Surd)."""
    out = {}
    for i, v in entries.items():
        if not 0 <= i < n:
            raise DimensionError(f"index {i} outside dimension {n}")
        v = Surd.of(v)
        if v:
            out[i] = v
    return out


def xdot(u: dict, v: dict) -> Surd:
    """``<u|v>``, conjugate-linear in ``u``."""
    if len(u) > len(v):
        acc = Surd()
        for i, b in v.items():
            a = u.get(i)
            if a is not None:
                acc = acc + a.conjugate() * b
        return acc
    acc = Surd()
    for i, a in u.items():
        b = v.get(i)
        if b is not None:
            acc = acc + a.conjugate() * b
    return acc


def xvec_to_numpy(n: int, v: dict) -> np.ndarray:
    out = np.zeros(n, dtype=complex)
    for i, x in v.items():
        out[i] = complex(x)
    return out


# ---------------------------------------------------------------------------
# matrices

class HermitianMatrix:
    """A Hermitian ``n x n`` matrix, exact (sparse Surd) or float (dense)."""

    __slots__ = ("n", "exact", "_data", "_diag")

    def __init__(self, n: int, data, exact: bool):
        self.n = n
        self.exact = exact
        self._data = data
        self._diag = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_array(cls, arr, tol: float = DEFAULT_TOL) -> "HermitianMatrix":
        """Float matrix from a square array; rejects non-Hermitian input."""
        a = np.asarray(arr, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {a.shape}")
        scale = max(1.0, float(np.abs(a).max(initial=0.0)))
        bad = np.abs(a - a.conj().T) > tol * scale
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise NotHermitianError(min(i, j), max(i, j))
        a = (a + a.conj().T) / 2
        a.setflags(write=False)
        return cls(a.shape[0], a, False)

    @classmethod
    def from_entries(cls, n: int, entries) -> "HermitianMatrix":
        """Exact matrix from ``{(i, j): value}`` or a nested list of values.

        Values may be ints, Fractions, Surds or ``(re, im)`` pairs of rationals.
        """
        if not isinstance(entries, dict):
            rows = list(entries)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise DimensionError("entry table is not n x n")
            entries = {(i, j): rows[i][j] for i in range(n) for j in range(n)}
        data = {}
        for (i, j), v in entries.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionError(f"entry ({i},{j}) outside dimension {n}")
            if isinstance(v, tuple):
                v = Surd.of(*v)
            v = Surd.of(v)
            if v:
                data[(i, j)] = v
        for (i, j), v in data.items():
            w = data.get((j, i), Surd())
            if v != w.conjugate():
                raise NotHermitianError(min(i, j), max(i, j))
        return cls(n, data, True)

    @classmethod
    def diag(cls, values: Sequence, exact: bool | None = None) -> "HermitianMatrix":
        values = list(values)
        if exact is None:
            exact = all(_is_exact_scalar(v) for v in values)
        if exact:
            data = {}
            for i, v in enumerate(values):
                v = Surd.of(v)
                if not v.is_real():
                    raise NotHermitianError(i, i, " (diagonal must be real)")
                if v:
                    data[(i, i)] = v
            return cls(len(values), data, True)
        return cls.from_array(np.diag(np.asarray(values, dtype=float)))

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "HermitianMatrix":
        if exact:
            return cls(n, {(i, i): Surd.of(1) for i in range(n)}, True)
        return cls.from_array(np.eye(n))

    # -- access -------------------------------------------------------------
    def entry(self, i: int, j: int):
        if self.exact:
            return self._data.get((i, j), Surd())
        return complex(self._data[i, j])

    def items(self):
        """Nonzero exact entries ``((i, j), value)``."""
        if not self.exact:
            raise ExactnessError("items() is only defined for exact matrices")
        return self._data.items()

    def to_numpy(self) -> np.ndarray:
        if not self.exact:
            return self._data
        out = np.zeros((self.n, self.n), dtype=complex)
        for (i, j), v in self._data.items():
            out[i, j] = complex(v)
        return out

    def as_float(self) -> "HermitianMatrix":
        if not self.exact:
            return self
        return HermitianMatrix.from_array(self.to_numpy())

    def is_diagonal(self) -> bool:
        if self.exact:
            return all(i == j for i, j in self._data)
        d = self._data
        return not np.any(d - np.diag(np.diag(d)))

    def diagonal(self) -> list:
        """Diagonal entries (Fractions or Surds when exact, floats otherwise)."""
        if self._diag is None:
            if self.exact:
                vals = []
                for i in range(self.n):
                    v = self._data.get((i, i), Surd())
                    vals.append(v.fraction() if v.is_rational() else v)
                self._diag = vals
            else:
                self._diag = [float(x) for x in np.real(np.diag(self._data))]
        return list(self._diag)

    def trace(self):
        if self.exact:
            acc = Surd()
            for i in range(self.n):
                acc = acc + self._data.get((i, i), Surd())
            return acc.fraction() if acc.is_rational() else acc
        return float(np.real(np.trace(self._data)))

    def norm(self) -> float:
        """Operator norm (float estimate in exact mode)."""
        a = self.to_numpy()
        if self.n == 0:
            return 0.0
        if self.is_diagonal():
            return float(np.abs(np.diag(a)).max())
        return float(np.linalg.norm(a, 2))

    def apply(self, v):
        """``A v`` for an exact sparse vector or a float array."""
        if self.exact and isinstance(v, dict):
            out: dict = {}
            if self.is_diagonal():
                for j, x in v.items():
                    a = self._data.get((j, j))
                    if a is not None:
                        out[j] = a * x
                return {i: x for i, x in out.items() if x}
            for (i, j), a in self._data.items():
                x = v.get(j)
                if x is not None:
                    out[i] = out.get(i, Surd()) + a * x
            return {i: x for i, x in out.items() if x}
        if isinstance(v, dict):
            v = xvec_to_numpy(self.n, v)
        return self.to_numpy() @ np.asarray(v, dtype=complex)

    def compress(self, basis: "Subspace") -> "HermitianMatrix":
        """``B* A B`` expressed in the coordinates of ``basis``."""
        if basis.ambient_dim != self.n:
            raise DimensionError("subspace and matrix dimensions differ")
        if self.exact and basis.exact:
            vecs = basis.vectors
            images = [self.apply(v) for v in vecs]
            k = len(vecs)
            data = {}
            # index vectors by coordinate to find overlapping supports quickly
            owners: dict[int, list[int]] = {}
            for a, v in enumerate(vecs):
                for i in v:
                    owners.setdefault(i, []).append(a)
            for b, w in enumerate(images):
                touched = {a for i in w for a in owners.get(i, ())}
                for a in touched:
                    x = xdot(vecs[a], w)
                    if x:
                        data[(a, b)] = x
            return HermitianMatrix(k, data, True)
        B = basis.matrix()
        return HermitianMatrix.from_array(B.conj().T @ self.to_numpy() @ B)

    def real_vector(self) -> list:
        """Real coordinates: diagonal, then Re/Im of the strict upper triangle.

        Exact mode returns Fractions and requires rational entries.
        """
        n = self.n
        if self.exact:
            out = []
            for i in range(n):
                out.append(self.entry(i, i).rational()[0])
            for i in range(n):
                for j in range(i + 1, n):
                    re, im = self.entry(i, j).rational()
                    out.extend((re, im))
            return out
        a = self._data
        iu = np.triu_indices(n, 1)
        up = a[iu]
        # off-diagonal entries count twice in the Frobenius inner product
        s = np.sqrt(2.0)
        return np.concatenate([np.real(np.diag(a)), s * np.real(up), s * np.imag(up)])

    def __matmul__(self, other: "HermitianMatrix"):
        """Plain matrix product (not Hermitian in general); returns numpy or dict."""
        if self.exact and other.exact:
            rows: dict[int, list] = {}
            for (k, j), b in other._data.items():
                rows.setdefault(k, []).append((j, b))
            out: dict = {}
            for (i, k), a in self._data.items():
                for j, b in rows.get(k, ()):
                    out[(i, j)] = out.get((i, j), Surd()) + a * b
            return {key: v for key, v in out.items() if v}
        return self.to_numpy() @ other.to_numpy()

    def equals(self, other: "HermitianMatrix", tol: float = DEFAULT_TOL) -> bool:
        if self.n != other.n:
            return False
        if self.exact and other.exact:
            keys = set(self._data) | set(other._data)
            return all(self.entry(*k) == other.entry(*k) for k in keys)
        return bool(np.allclose(self.to_numpy(), other.to_numpy(), atol=tol, rtol=0))

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"HermitianMatrix(n={self.n}, {kind})"


def commutes(A: HermitianMatrix, B: HermitianMatrix, tol: float = DEFAULT_TOL) -> bool:
    if A.exact and B.exact:
        if A.is_diagonal() and B.is_diagonal():
            return True
        ab, ba = A @ B, B @ A
        keys = set(ab) | set(ba)
        return all(ab.get(k, Surd()) == ba.get(k, Surd()) for k in keys)
    a, b = A.to_numpy(), B.to_numpy()
    scale = np.linalg.norm(a) * np.linalg.norm(b)
    return float(np.linalg.norm(a @ b - b @ a)) <= tol * scale


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Span of an ordered orthonormal list of vectors.

    Float subspaces keep an ``n x k`` array of columns; exact ones keep a tuple
    of sparse vectors.
    """

    __slots__ = ("ambient_dim", "exact", "_basis")

    def __init__(self, ambient_dim: int, basis, exact: bool, check: bool = True,
                 tol: float = DEFAULT_TOL):
        self.ambient_dim = ambient_dim
        self.exact = exact
        if exact:
            basis = tuple(xvec(ambient_dim, v) for v in basis)
        else:
            basis = np.asarray(basis, dtype=complex).reshape(ambient_dim, -1)
            basis.setflags(write=False)
        self._basis = basis
        if check:
            self._check(tol)

    def _check(self, tol: float) -> None:
        if self.exact:
            g = gram_exact(self._basis)
            k = len(self._basis)
            for (a, b), v in g.items():
                if v != (1 if a == b else 0):
                    raise ValueError(f"basis vectors {a},{b} are not orthonormal")
            if len([1 for a in range(k) if (a, a) in g]) != k:
                raise ValueError("zero vector in basis")
        else:
            B = self._basis
            err = np.abs(B.conj().T @ B - np.eye(B.shape[1])).max(initial=0.0)
            if err > tol:
                raise ValueError(f"basis is not orthonormal (error {err:.2e})")

    # -- constructors -------------------------------------------------------
    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int], exact: bool = True) -> "Subspace":
        """Span of the standard basis vectors ``e_i`` for ``i`` in ``indices``."""
        idx = list(indices)
        if exact:
            return cls(n, [{i: Surd.of(1)} for i in idx], True, check=False)
        B = np.zeros((n, len(idx)), dtype=complex)
        for c, i in enumerate(idx):
            B[i, c] = 1
        return cls(n, B, False, check=False)

    @classmethod
    def full(cls, n: int, exact: bool = True) -> "Subspace":
        return cls.coordinate(n, range(n), exact)

    @classmethod
    def zero(cls, n: int, exact: bool = False) -> "Subspace":
        return cls(n, [] if exact else np.zeros((n, 0)), exact, check=False)

    @classmethod
    def span(cls, vectors, n: int | None = None, tol: float = DEFAULT_TOL) -> "Subspace":
        """Float span of arbitrary vectors (columns or a list), orthonormalised."""
        V = np.asarray(vectors, dtype=complex)
        if V.ndim == 1:
            V = V[:, None]
        elif n is None or V.shape[0] != n:
            V = V.T if n is not None and V.shape[1] == n else V
        n = V.shape[0]
        if V.shape[1] == 0:
            return cls.zero(n)
        P = _range_projector(V, tol)
        return cls(n, canonical_basis(P, tol), False, check=False)

    # -- access -------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._basis) if self.exact else self._basis.shape[1]

    @property
    def vectors(self) -> tuple:
        if not self.exact:
            raise ExactnessError("vectors is only defined for exact subspaces")
        return self._basis

    def matrix(self) -> np.ndarray:
        """``n x k`` float array of basis columns."""
        if not self.exact:
            return self._basis
        B = np.zeros((self.ambient_dim, self.dim), dtype=complex)
        for c, v in enumerate(self._basis):
            for i, x in v.items():
                B[i, c] = complex(x)
        return B

    def as_float(self) -> "Subspace":
        if not self.exact:
            return self
        return Subspace(self.ambient_dim, self.matrix(), False, check=False)

    def column(self, k: int):
        return self._basis[k] if self.exact else self._basis[:, k]

    def lift(self, inner: "Subspace") -> "Subspace":
        """Map a subspace given in this subspace's coordinates to ambient ones."""
        if inner.ambient_dim != self.dim:
            raise DimensionError("inner subspace lives in a different dimension")
        if self.exact and inner.exact:
            out = []
            for u in inner.vectors:
                acc: dict = {}
                for j, c in u.items():
                    for i, x in self._basis[j].items():
                        acc[i] = acc.get(i, Surd()) + c * x
                out.append({i: x for i, x in acc.items() if x})
            return Subspace(self.ambient_dim, out, True, check=False)
        return Subspace(self.ambient_dim, self.matrix() @ inner.matrix(), False, check=False)

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim}, {kind})"


def gram_exact(vectors: Sequence[dict]) -> dict:
    """Nonzero entries of the Gram matrix of sparse exact vectors."""
    owners: dict[int, list[int]] = {}
    for a, v in enumerate(vectors):
        for i in v:
            owners.setdefault(i, []).append(a)
    out = {}
    for a, v in enumerate(vectors):
        partners = {b for i in v for b in owners[i] if b >= a}
        for b in partners:
            x = xdot(v, vectors[b])
            if x:
                out[(a, b)] = x
                if a != b:
                    out[(b, a)] = x.conjugate()
    return out


def _range_projector(V: np.ndarray, tol: float) -> np.ndarray:
    U, s, _ = np.linalg.svd(V, full_matrices=False)
    if s.size == 0:
        return np.zeros((V.shape[0], V.shape[0]), dtype=complex)
    r = int(np.sum(s > tol * max(1.0, s[0])))
    Q = U[:, :r]
    return Q @ Q.conj().T


def canonical_basis(P: np.ndarray, tol: float = DEFAULT_TOL, rank: int | None = None) -> np.ndarray:
    """Deterministic orthonormal basis of the range of projector ``P``.

    Gram-Schmidt over the projections ``P e_0, P e_1, ...`` in order, skipping
    those that are (nearly) dependent on the vectors already kept.  This is
    the lexicographic tie-breaking rule used by :func:`eigh`.
    """
    n = P.shape[0]
    if rank is None:
        rank = int(round(float(np.real(np.trace(P)))))
    out = np.zeros((n, rank), dtype=complex)
    k = 0
    for j in range(n):
        if k == rank:
            break
        w = P[:, j].copy()
        if k:
            Q = out[:, :k]
            w -= Q @ (Q.conj().T @ w)
            w -= Q @ (Q.conj().T @ w)
        nrm = np.linalg.norm(w)
        if nrm > 1e-6:
            # a short projection carries relatively large round-off; one more
            # pass through P and the kept vectors removes it
            w = P @ (w / nrm)
            if k:
                w -= Q @ (Q.conj().T @ w)
            out[:, k] = w / np.linalg.norm(w)
            k += 1
    if k < rank:
        raise ArithmeticError("projector rank does not match its trace")
    return out


# ---------------------------------------------------------------------------
# spectra

@dataclass(frozen=True)
class Eigh:
    values: tuple          # descending
    vectors: Subspace      # column k pairs with values[k]


def spectrum(A: HermitianMatrix) -> list:
    """Eigenvalues, descending (exact for diagonal exact matrices)."""
    if A.exact:
        if not A.is_diagonal():
            raise ExactnessError("exact spectra are only computed for diagonal matrices")
        return sorted(A.diagonal(), reverse=True)
    return [float(x) for x in np.linalg.eigvalsh(A.to_numpy())[::-1]]


def eigh(A: HermitianMatrix, tol: float = DEFAULT_TOL) -> Eigh:
    """Eigen-decomposition with eigenvalues descending and a fixed tie rule.

    Exact input must be diagonal; equal eigenvalues then keep index order,
    which is what Gram-Schmidt of standard-basis projections gives.
    """
    n = A.n
    if A.exact:
        if not A.is_diagonal():
            raise ExactnessError("exact eigh is only available for diagonal matrices")
        d = A.diagonal()
        order = sorted(range(n), key=lambda i: d[i], reverse=True)
        # sorted is stable, so ties stay in index order
        return Eigh(tuple(d[i] for i in order), Subspace.coordinate(n, order, exact=True))
    a = A.to_numpy()
    w, V = np.linalg.eigh(a)
    w, V = w[::-1], V[:, ::-1]
    scale = max(1.0, float(np.abs(w).max(initial=0.0)))
    cols = np.zeros((n, n), dtype=complex)
    i = 0
    while i < n:
        j = i + 1
        while j < n and w[j - 1] - w[j] <= tol * scale:
            j += 1
        Q = V[:, i:j]
        cols[:, i:j] = canonical_basis(Q @ Q.conj().T, rank=j - i)
        i = j
    return Eigh(tuple(float(x) for x in w), Subspace(n, cols, False, check=False))


def rayleigh(A: HermitianMatrix, x):
    """``<x|A|x> / <x|x>``; exact for exact inputs."""
    if isinstance(x, dict):
        if not x:
            raise ValueError("Rayleigh quotient of the zero vector")
        if A.exact:
            num = xdot(x, A.apply(x))
            den = xdot(x, x)
            q = num / den
            return q.fraction() if q.is_rational() else q.real()
        x = xvec_to_numpy(A.n, x)
    x = np.asarray(x, dtype=complex)
    nx = float(np.vdot(x, x).real)
    if nx == 0:
        raise ValueError("Rayleigh quotient of the zero vector")
    return float(np.vdot(x, A.to_numpy() @ x).real) / nx


# ---------------------------------------------------------------------------
# subspace operations

def project(S: Subspace) -> HermitianMatrix:
    if S.exact:
        data: dict = {}
        for u in S.vectors:
            for i, a in u.items():
                for j, b in u.items():
                    data[(i, j)] = data.get((i, j), Surd()) + a * b.conjugate()
        return HermitianMatrix(S.ambient_dim, {k: v for k, v in data.items() if v}, True)
    B = S.matrix()
    return HermitianMatrix.from_array(B @ B.conj().T)


def complement(S: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """Orthogonal complement.

    Exact mode requires basis vectors with pairwise disjoint supports and
    single-term entries; within each support the complement is spanned by
    Helmert-type vectors, whose entries stay square roots of rationals.
    """
    n = S.ambient_dim
    if S.exact:
        return _complement_exact(S)
    if S.dim == 0:
        return Subspace.full(n, exact=False)
    B = S.matrix()
    P = np.eye(n) - B @ B.conj().T
    return Subspace(n, canonical_basis(P, tol, rank=n - S.dim), False, check=False)


def _complement_exact(S: Subspace) -> Subspace:
    n = S.ambient_dim
    used: dict[int, int] = {}
    for a, u in enumerate(S.vectors):
        for i, x in u.items():
            if i in used:
                raise ExactnessError("exact complement needs disjoint supports")
            if len(x.terms) != 1:
                raise ExactnessError("exact complement needs single-term entries")
            used[i] = a
    pieces: list[tuple[int, int, dict]] = []
    for i in range(n):
        if i not in used:
            pieces.append((i, 0, {i: Surd.of(1)}))
    for u in S.vectors:
        idx = sorted(u)
        d = [u[i].abs2().fraction() for i in idx]
        D = Fraction(0)
        for k, i in enumerate(idx):
            Dprev, D = D, D + d[k]
            if k == 0:
                continue
            # h_k = sum_{j<k} u_j sqrt(d_k/(D_{k-1} D_k)) e_j - u_k sqrt(D_{k-1}/(d_k D_k)) e_k
            f = Surd.sqrt(d[k] / (Dprev * D))
            g = Surd.sqrt(Dprev / (d[k] * D))
            h = {j: u[j] * f for j in idx[:k]}
            h[i] = -(u[i] * g)
            pieces.append((idx[0], k, h))
    pieces.sort(key=lambda p: (p[0], p[1]))
    return Subspace(n, [p[2] for p in pieces], True, check=False)


def is_coordinate_subspace(S: Subspace) -> bool:
    return S.exact and all(len(v) == 1 for v in S.vectors)


def intersect(S1: Subspace, S2: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    if S1.ambient_dim != S2.ambient_dim:
        raise DimensionError("subspaces live in different dimensions")
    n = S1.ambient_dim
    if S1.exact and S2.exact:
        if not (is_coordinate_subspace(S1) and is_coordinate_subspace(S2)):
            raise ExactnessError("exact intersection is only implemented for coordinate subspaces")
        a = {next(iter(v)) for v in S1.vectors}
        b = {next(iter(v)) for v in S2.vectors}
        return Subspace.coordinate(n, sorted(a & b), exact=True)
    B1 = S1.matrix()
    if S1.dim == 0 or S2.dim == 0:
        return Subspace.zero(n)
    B2 = S2.matrix()
    M = B1 - B2 @ (B2.conj().T @ B1)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    s = np.concatenate([s, np.zeros(Vh.shape[0] - s.size)])
    null = Vh[s <= tol * max(1.0, float(s.max(initial=0.0))) + tol].conj().T
    if null.shape[1] == 0:
        return Subspace.zero(n)
    W = B1 @ null
    P = W @ W.conj().T
    return Subspace(n, canonical_basis(P, tol, rank=W.shape[1]), False, check=False)


# ---------------------------------------------------------------------------
# JSON encoding

# Python refuses decimal conversion of integers beyond a few thousand digits;
# larger ones are written as hexadecimal strings ("0x...") instead.
_DECIMAL_BITS = 12000


def _int_str(k: int) -> str:
    return str(k) if k.bit_length() <= _DECIMAL_BITS else hex(k)


def _str_int(s: str) -> int:
    if not isinstance(s, str):
        raise ValueError(f"integer fields are strings, got {s!r}")
    t = s.lstrip("-")
    return int(s, 16) if t.startswith("0x") else int(s)


def encode_real(x):
    if isinstance(x, Surd):
        if x.is_rational():
            return encode_real(x.fraction())
        if not x.is_real():
            raise ValueError("encode_real got a complex value")
        return {"surd": [[encode_real(a), _int_str(k)] for k, (a, _) in sorted(x.terms.items())]}
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        q = Fraction(x)
        return {"num": _int_str(q.numerator), "den": _int_str(q.denominator)}
    return float(x)


def decode_real(obj):
    if isinstance(obj, dict):
        if "surd" in obj:
            acc = Surd()
            for coef, k in obj["surd"]:
                k = _str_int(k)
                if k < 1:
                    raise ValueError("radicand must be positive")
                acc = acc + Surd({k: (Fraction(decode_real(coef)), Fraction(0))})
            return acc
        num, den = _str_int(obj["num"]), _str_int(obj["den"])
        if den <= 0:
            raise ValueError("denominator must be positive")
        if math.gcd(num, den) != 1:
            # one spelling per value, so the digest pins the value down
            raise ValueError(f"fraction {num}/{den} is not in lowest terms")
        return Fraction(num, den)
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ValueError(f"not a real scalar: {obj!r}")
    return float(obj)


def encode_complex(z):
    if isinstance(z, Surd):
        return [encode_real(z.real()), encode_real(z.imag())]
    if isinstance(z, (int, Rational)):
        return [encode_real(z), encode_real(0)]
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(pair):
    if not isinstance(pair, list) or len(pair) != 2:
        raise ValueError(f"complex scalar must be a [re, im] pair, got {pair!r}")
    re, im = decode_real(pair[0]), decode_real(pair[1])
    if isinstance(re, float) and isinstance(im, float):
        return complex(re, im)
    if isinstance(re, float) or isinstance(im, float):
        raise ValueError("mixed exact/float scalar")
    return Surd.of(re) + Surd.of(im) * Surd.of(0, 1)


DENSE_LIMIT = 64


def encode_matrix(A: HermitianMatrix) -> dict:
    n = A.n
    if A.exact:
        if n <= DENSE_LIMIT:
            return {"n": n, "entries": [[encode_complex(A.entry(i, j)) for j in range(n)]
                                        for i in range(n)]}
        return {"n": n, "sparse": [[i, j, *encode_complex(v)]
                                   for (i, j), v in sorted(A.items())]}
    a = A.to_numpy()
    if n <= DENSE_LIMIT:
        return {"n": n, "entries": [[[float(a[i, j].real), float(a[i, j].imag)]
                                     for j in range(n)] for i in range(n)]}
    nz = np.argwhere(a != 0)
    return {"n": n, "sparse": [[int(i), int(j), float(a[i, j].real), float(a[i, j].imag)]
                               for i, j in nz]}


def decode_matrix(obj: dict) -> HermitianMatrix:
    n = int(obj["n"])
    if "entries" in obj:
        rows = obj["entries"]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("entry table is not n x n")
        vals = [[decode_complex(p) for p in row] for row in rows]
    else:
        vals = {}
        for i, j, re, im in obj["sparse"]:
            vals[(int(i), int(j))] = decode_complex([re, im])
    flat = vals.values() if isinstance(vals, dict) else [v for r in vals for v in r]
    if any(isinstance(v, complex) for v in flat):
        a = np.zeros((n, n), dtype=complex)
        if isinstance(vals, dict):
            for (i, j), v in vals.items():
                a[i, j] = complex(v)
        else:
            a[:] = [[complex(v) for v in r] for r in vals]
        return HermitianMatrix.from_array(a)
    return HermitianMatrix.from_entries(n, vals)


def encode_vector(v, n: int) -> list | dict:
    if isinstance(v, dict):
        if n <= DENSE_LIMIT:
            return [encode_complex(v.get(i, Surd())) for i in range(n)]
        return {"dim": n, "sparse": [[i, *encode_complex(x)] for i, x in sorted(v.items())]}
    v = np.asarray(v, dtype=complex)
    if n <= DENSE_LIMIT:
        return [[float(x.real), float(x.imag)] for x in v]
    nz = np.flatnonzero(v)
    return {"dim": n, "sparse": [[int(i), float(v[i].real), float(v[i].imag)] for i in nz]}


def decode_vector(obj, n: int):
    if isinstance(obj, dict):
        if int(obj["dim"]) != n:
            raise ValueError("vector dimension mismatch")
        items = {int(i): decode_complex([re, im]) for i, re, im in obj["sparse"]}
    else:
        if len(obj) != n:
            raise ValueError("vector dimension mismatch")
        items = {i: decode_complex(p) for i, p in enumerate(obj)}
    if any(isinstance(x, complex) for x in items.values()):
        out = np.zeros(n, dtype=complex)
        for i, x in items.items():
            out[i] = complex(x)
        return out
    return {i: x for i, x in items.items() if x}


def encode_subspace(S: Subspace) -> dict:
    n = S.ambient_dim
    return {"ambient_dim": n, "basis": [encode_vector(S.column(k), n) for k in range(S.dim)]}


def decode_subspace(obj: dict, tol: float = DEFAULT_TOL) -> Subspace:
    n = int(obj["ambient_dim"])
    vecs = [decode_vector(v, n) for v in obj["basis"]]
    if not vecs:
        return Subspace.zero(n)
    if all(isinstance(v, dict) for v in vecs):
        return Subspace(n, vecs, True, check=True)
    cols = np.stack([xvec_to_numpy(n, v) if isinstance(v, dict) else v for v in vecs], axis=1)
    return Subspace(n, cols, False, check=True, tol=tol)
