from __future__ import annotations

import copy
import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nobrooks.codes import (
    CodeRejected, ColoringRejected, _digest, build_code, certificate_to_json,
    greedy_coloring, greedy_vectors, isotropic_violations, largest_code,
    min_color_dimension, trace_gaps, verify_certificate, verify_code, verify_coloring,
)
from nobrooks.matspace import HermitianMatrix, Subspace
from nobrooks.qgraph import QuantumGraph, from_classical, random_graph
from nobrooks.slog import slog
from nobrooks.tropical import build_spec, realize

P3 = from_classical([[0, 1, 0], [1, 0, 1], [0, 1, 0]])


def trivial(n):
    return QuantumGraph(n, (HermitianMatrix.identity(n),))


def greedy_oracle_bound(n, m):
    return -(-n // (m + 1))


# -- verification ------------------------------------------------------------------

def test_one_dimensional_subspaces_are_codes():
    G = random_graph(4, 3, 2)
    for seed in range(5):
        v = np.random.default_rng(seed).normal(size=(4, 1))
        assert verify_code(G, Subspace.span(v, 4)).dim == 1


def test_p3_codes():
    with pytest.raises(CodeRejected) as err:
        verify_code(P3, Subspace.coordinate(3, [0, 1]))
    assert err.value.index >= 1
    cert = verify_code(P3, Subspace.coordinate(3, [0, 2]))
    assert cert.slopes.slopes[0] == 1 and cert.residual == 0


def test_coloring_examples():
    G = random_graph(3, 2, 0)
    assert verify_coloring(G, [Subspace.coordinate(3, [i], exact=False) for i in range(3)]).size == 3
    c = verify_coloring(P3, [Subspace.coordinate(3, [0, 2]), Subspace.coordinate(3, [1])])
    assert c.dims == [2, 1] and c.identity_residual == 0
    with pytest.raises(ColoringRejected):
        verify_coloring(P3, [Subspace.coordinate(3, [0, 2])])


def test_coloring_rejects_overlap():
    s = 1 / np.sqrt(2)
    S = Subspace(3, np.array([[s], [0], [s]]), False)
    with pytest.raises(ColoringRejected):
        verify_coloring(trivial(3), [S, Subspace.coordinate(3, [0, 1], exact=False)])


# -- greedy vectors -------------------------------------------------------------------

def test_greedy_vectors_trivial_graph():
    gv = greedy_vectors(trivial(5).as_float())
    assert gv.t == 5
    assert np.allclose(gv.vectors.matrix(), np.eye(5))


def test_greedy_vectors_commutative():
    G = realize(build_spec(8, 2), "conjugated", seed=1)
    from nobrooks.codes import _mutual_eigenvectors
    V = _mutual_eigenvectors(G, 1e-9)
    assert V.dim == 8


@pytest.mark.parametrize("seed", range(10))
def test_greedy_vectors_random(seed):
    G = random_graph(8, 1, seed)
    gv = greedy_vectors(G)
    assert gv.t >= 4
    V = gv.vectors.matrix()
    assert np.allclose(V.conj().T @ V, np.eye(gv.t), atol=1e-10)
    for A in G.edge_basis:
        M = V.conj().T @ A.to_numpy() @ V
        assert np.allclose(M - np.diag(np.diag(M)), 0, atol=1e-9)
    assert all(c <= G.valence + 1 for c in gv.consumed)
    assert sum(gv.consumed) == 8


@settings(max_examples=30)
@given(st.integers(2, 10), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_greedy_vector_count_bound(n, m, seed):
    m = min(m, n * n - 1)
    gv = greedy_vectors(random_graph(n, m, seed))
    assert gv.t >= greedy_oracle_bound(n, m)
    assert all(c <= m + 1 for c in gv.consumed)


# -- build_code ---------------------------------------------------------------------

def test_build_code_trivial_graph():
    cert = build_code(trivial(6))
    assert cert.dim == 6 and cert.exact


@pytest.mark.parametrize("n,m", [(10, 3), (12, 2), (7, 1), (24, 6)])
def test_build_code_tropical_is_optimal(n, m):
    G = realize(build_spec(n, m))
    cert = build_code(G)
    assert cert.dim == greedy_oracle_bound(n, m)
    assert cert.slopes.exact_zero
    # the slopes are the common point of the Tverberg blocks
    assert list(cert.slopes.slopes[1:]) == list(cert.construction["witness"])


@pytest.mark.parametrize("seed", range(5))
def test_build_code_random_12_2(seed):
    cert = build_code(random_graph(12, 2, seed))
    assert cert.dim >= 2 and cert.residual <= 1e-8


@pytest.mark.parametrize("n", range(2, 7))
def test_build_code_conjugated_matches_diagonal(n):
    for m in range(1, n):
        spec = build_spec(n, m)
        a = build_code(realize(spec))
        b = build_code(realize(spec, "conjugated", seed=n + m))
        assert a.dim == b.dim
        assert b.construction["route"] == "commutative"
        for x, y in zip(a.slopes.slopes, b.slopes.slopes):
            assert abs(float(x) - y) <= 1e-8 * abs(float(x))


@pytest.mark.parametrize("n,m", [(10, 3), (12, 2), (16, 5)])
def test_build_code_conjugated_dimension_only(n, m):
    # eigenvalues below double precision make the chosen partition differ,
    # but the dimension does not depend on it
    spec = build_spec(n, m)
    assert build_code(realize(spec)).dim == build_code(realize(spec, "conjugated", seed=1)).dim


def test_build_code_isotropic_counts():
    for G in (realize(build_spec(9, 2)), random_graph(9, 2, 3)):
        cert = build_code(G)
        assert isotropic_violations(G, cert) == []


# -- greedy_coloring ---------------------------------------------------------------

def test_coloring_trivial_graph():
    assert greedy_coloring(trivial(4)).size == 1


@pytest.mark.parametrize("n", [2, 3, 5, 8, 13, 16, 31, 32, 33])
def test_coloring_valence_one_is_log(n):
    c = greedy_coloring(realize(build_spec(n, 1)))
    assert c.size == math.floor(math.log2(n)) + 1


def test_coloring_p3():
    # 3 -> 2 -> 1 -> 0, so the greedy bound allows three colors here
    assert slog(3, 4) == 3
    c = greedy_coloring(P3)
    assert 2 <= c.size <= 3
    # the classical 2-coloring is also a valid quantum coloring
    assert verify_coloring(P3, [Subspace.coordinate(3, [0, 2]), Subspace.coordinate(3, [1])]).size == 2


@pytest.mark.parametrize("n,m", [(10, 3), (12, 2), (9, 4)])
def test_coloring_trace_means(n, m):
    G = realize(build_spec(n, m))
    c = greedy_coloring(G)
    assert all(abs(float(g)) <= 1e-9 for g in trace_gaps(G, c))
    Gc = realize(build_spec(n, m), "conjugated", seed=2)
    cc = greedy_coloring(Gc)
    scale = max(abs(A.trace()) for A in Gc.edge_basis) / n
    assert all(abs(g) <= 1e-9 * max(1.0, scale) for g in trace_gaps(Gc, cc))


def test_trace_means_exact_coloring():
    G = realize(build_spec(7, 2))
    c = verify_coloring(G, [Subspace.coordinate(7, [i]) for i in range(7)])
    assert trace_gaps(G, c) == [0, 0, 0]
    c = verify_coloring(P3, [Subspace.coordinate(3, [0, 2]), Subspace.coordinate(3, [1])])
    assert all(g == 0 for g in trace_gaps(P3, c))


@settings(max_examples=15)
@given(st.integers(2, 9), st.integers(1, 2), st.integers(0, 1000))
def test_coloring_random_graph_is_valid(n, m, seed):
    m = min(m, n * n - 1)
    G = random_graph(n, m, seed)
    c = greedy_coloring(G)
    assert sum(c.dims) == n
    assert c.size <= slog(n, (m + 1) ** 2)


# -- selectors ---------------------------------------------------------------------------

def test_min_color_dimension():
    assert min_color_dimension([3, 3, 2, 1, 1]) == 1
    assert min_color_dimension([4]) == 4
    with pytest.raises(ValueError):
        min_color_dimension([])


def test_largest_code_tie_rule():
    a = verify_code(P3, Subspace.coordinate(3, [0, 2]))
    b = verify_code(P3, Subspace.coordinate(3, [2, 0]))
    c = verify_code(P3, Subspace.coordinate(3, [1]))
    assert largest_code([c, a, b]) is a
    assert largest_code([c]) is c
    with pytest.raises(ValueError):
        largest_code([])


# -- certificates ------------------------------------------------------------------------

def roundtrip(obj):
    return json.loads(json.dumps(obj))


def rehash(obj):
    body = {k: v for k, v in obj.items() if k != "digest"}
    obj["digest"] = _digest(body)
    return obj


@pytest.mark.parametrize("G", [realize(build_spec(10, 3)), random_graph(6, 2, 1),
                               realize(build_spec(9, 2), "conjugated", seed=3)])
def test_certificates_round_trip(G):
    code = certificate_to_json(G, build_code(G))
    col = certificate_to_json(G, greedy_coloring(G))
    for obj in (code, col):
        rep = verify_certificate(roundtrip(obj))
        assert rep.ok, rep.failures


def test_certificate_against_external_graph():
    G = realize(build_spec(8, 2))
    obj = certificate_to_json(G, build_code(G), embed_graph=False)
    assert verify_certificate(roundtrip(obj), graph=G).ok
    assert not verify_certificate(roundtrip(obj)).ok
    assert not verify_certificate(roundtrip(obj), graph=realize(build_spec(8, 3))).ok


def test_semantic_tampering_caught_even_with_fresh_digest():
    G = realize(build_spec(10, 3))
    base = roundtrip(certificate_to_json(G, greedy_coloring(G)))
    cases = []
    t = copy.deepcopy(base); t["residual"] = 0.5; cases.append(t)
    t = copy.deepcopy(base); t["exact"] = not t["exact"]; cases.append(t)
    t = copy.deepcopy(base); t["slopes"][0][1] = {"num": "1", "den": "7"}; cases.append(t)
    t = copy.deepcopy(base); t["subspaces"].pop(); cases.append(t)
    t = copy.deepcopy(base); t["subspaces"][0]["basis"][0][0] = [{"num": "0", "den": "1"}] * 2; cases.append(t)
    t = copy.deepcopy(base); t["graph_hash"] = "sha256:" + "0" * 64; cases.append(t)
    t = copy.deepcopy(base); t["kind"] = "code"; cases.append(t)
    t = copy.deepcopy(base); t["graph"]["edge_basis"].pop(); cases.append(t)
    for t in cases:
        rep = verify_certificate(rehash(t))
        assert not rep.ok


def test_cached_hash_is_not_trusted_from_json():
    G = realize(build_spec(6, 2))
    obj = json.loads(json.dumps(certificate_to_json(G, build_code(G))))
    assert not any(k.startswith("_") for k in obj["graph"]["metadata"])
    # rescale one edge basis element and refresh the digest: the graph hash
    # stored in the certificate no longer matches the embedded graph
    obj["graph"]["edge_basis"][1]["entries"][5][5][0]["den"] = "7"
    obj["digest"] = _digest({k: v for k, v in obj.items() if k != "digest"})
    assert not verify_certificate(obj).ok
