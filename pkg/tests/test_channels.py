from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nobrooks.channels import (
    ClassicalGraph, KrausChannel, PauliString, ResourceCap, bitflip_channel, bitflip_kraus,
    capacity_lower, chromatic_exact, complete_graph, confusability_graph, covering_bound,
    cycle_graph, graph_from_kraus, graph_square, greedy_coloring_classical,
    greedy_independent, hamming74_decode, hamming74_encode, hamming74_syndrome,
    hamming_distance_graph, independence_exact, packing_bound, path_graph, pauli_errors,
    pauli_hamming_numbers, quantum_hamming_check, relation_from_channel, relation_support,
    repetition3_decode, repetition3_encode, shor_code, shor_codewords, square_independence,
    strong_product, transition_matrix, transition_probability,
)
from nobrooks.matspace import HermitianMatrix, Subspace
from nobrooks.qgraph import from_classical, slope


def alpha_brute(G: ClassicalGraph) -> int:
    for k in range(G.n, 0, -1):
        if any(G.is_independent(S) for S in itertools.combinations(range(G.n), k)):
            return k
    return 0


graphs = st.integers(1, 8).flatmap(lambda q: st.builds(
    lambda es: ClassicalGraph.from_edges(q, [(a, b) for a, b in es if a != b]),
    st.lists(st.tuples(st.integers(0, q - 1), st.integers(0, q - 1)), max_size=16)))


# -- classical channels ------------------------------------------------------------

def test_bitflip_examples():
    assert bitflip_channel(1, 0).to_numpy().tolist() == [[1, 0], [0, 1]]
    assert np.allclose(bitflip_channel(1, 0.1).to_numpy(), [[0.9, 0.1], [0.1, 0.9]])
    assert np.allclose(bitflip_channel(2, 0.5).to_numpy(), 0.25)
    with pytest.raises(ValueError):
        bitflip_channel(0, 0.1)
    with pytest.raises(ValueError):
        bitflip_channel(2, 1.5)


@given(st.integers(1, 5), st.fractions(0, 1, max_denominator=20))
def test_bitflip_is_exactly_stochastic(N, P):
    M = bitflip_channel(N, P)
    for b in range(M.q):
        assert sum(M.entries[a][b] for a in range(M.q)) == 1


def test_threshold_examples():
    M = bitflip_channel(3, Fraction(1, 20))
    assert confusability_graph(relation_from_channel(M, 2), 8).edges == frozenset()
    G = confusability_graph(relation_from_channel(M, Fraction(1, 20) * Fraction(19, 20) ** 2), 8)
    assert G.edges == hamming_distance_graph(3).edges
    assert G.degrees() == [3] * 8
    assert confusability_graph(relation_from_channel(M, 0), 8).edges == complete_graph(8).edges


def test_confusability_symmetrizes():
    G = confusability_graph({(0, 1), (2, 2)}, 3)
    assert G.edges == frozenset({(0, 1)})


# -- graph operations ------------------------------------------------------------------

def test_square_examples():
    assert graph_square(path_graph(3)).edges == complete_graph(3).edges
    assert graph_square(ClassicalGraph.from_edges(4, [])).edges == frozenset()
    assert graph_square(cycle_graph(5)).edges == complete_graph(5).edges


def test_independence_examples():
    assert independence_exact(cycle_graph(5)) == 2
    assert independence_exact(complete_graph(6)) == 1
    with pytest.raises(ResourceCap):
        independence_exact(ClassicalGraph.from_edges(26, []))


def test_hamming_square_sandwich():
    G = hamming_distance_graph(7)
    sw = square_independence(G)
    assert (sw.lower, sw.upper) == (16, 16) and sw.exact
    assert sw.upper == 2 ** 7 // (7 + 1)
    # the witness is the set of Hamming(7,4) codewords up to bit order
    assert len(set(sw.witness)) == 16


@settings(max_examples=80)
@given(graphs)
def test_independence_matches_brute_force(G):
    a = independence_exact(G)
    assert a == alpha_brute(G)
    S = greedy_independent(G)
    assert G.is_independent(S) and covering_bound(G) <= len(S) <= a
    # a set of the square has disjoint closed neighbourhoods
    assert alpha_brute(graph_square(G)) <= packing_bound(G)


def test_coloring_examples():
    matching = ClassicalGraph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
    assert len(greedy_coloring_classical(matching)) == 2
    assert len(greedy_coloring_classical(complete_graph(4))) == 4
    assert len(greedy_coloring_classical(cycle_graph(5))) <= 3
    assert chromatic_exact(cycle_graph(5)) == 3
    with pytest.raises(ResourceCap):
        chromatic_exact(ClassicalGraph.from_edges(21, []))


@settings(max_examples=60)
@given(graphs)
def test_greedy_coloring_bound(G):
    classes = greedy_coloring_classical(G)
    assert len(classes) <= G.max_degree + 1
    assert sorted(v for c in classes for v in c) == list(range(G.n))
    assert all(G.is_independent(c) for c in classes)
    assert chromatic_exact(G) <= len(classes)


def test_strong_product_examples():
    C5 = cycle_graph(5)
    P = strong_product(C5, C5)
    code = [5 * i + (2 * i) % 5 for i in range(5)]
    assert P.is_independent(code)
    assert independence_exact(P) == 5
    assert abs(capacity_lower(C5, 2) - math.sqrt(5)) <= 1e-12
    assert independence_exact(strong_product(complete_graph(3), complete_graph(3))) == 1


@settings(max_examples=30)
@given(st.integers(1, 5).flatmap(lambda q: st.builds(
    lambda es: ClassicalGraph.from_edges(q, [(a, b) for a, b in es if a != b]),
    st.lists(st.tuples(st.integers(0, q - 1), st.integers(0, q - 1)), max_size=8))))
def test_capacity_bounds(G):
    a = independence_exact(G)
    assert capacity_lower(G, 1) == a
    assert capacity_lower(G, 2) >= a - 1e-12


@settings(max_examples=40)
@given(st.integers(1, 7).flatmap(lambda q: st.builds(
    lambda es: ClassicalGraph.from_edges(q, [(a, b) for a, b in es if a != b]),
    st.lists(st.tuples(st.integers(0, q - 1), st.integers(0, q - 1)), max_size=14))))
def test_quantum_codes_reproduce_independence(G):
    Q = from_classical(G.adjacency())
    best = max(k for k in range(1, G.n + 1)
               for S in itertools.combinations(range(G.n), k)
               if slope(Q, Subspace.coordinate(G.n, S)).exact_zero)
    assert best == independence_exact(G)


# -- classical codes ---------------------------------------------------------------

def test_hamming74_examples():
    assert hamming74_encode("0101") == "0100101"
    word = hamming74_encode("0101")
    flipped = word[:2] + ("1" if word[2] == "0" else "0") + word[3:]
    assert hamming74_decode(flipped) == ("0101", "011")


def test_hamming74_all_single_flips():
    for m in range(16):
        msg = format(m, "04b")
        word = hamming74_encode(msg)
        assert hamming74_syndrome(word) == "000"
        for pos in range(7):
            w = list(word)
            w[pos] = "1" if w[pos] == "0" else "0"
            data, syn = hamming74_decode("".join(w))
            assert data == msg and int(syn, 2) == pos + 1


def test_hamming74_codewords_form_the_square_code():
    words = {hamming74_encode(format(m, "04b")) for m in range(16)}
    G = graph_square(hamming_distance_graph(7))
    assert G.is_independent([int(w, 2) for w in words])


def test_repetition_examples():
    assert repetition3_encode("01") == "010101"
    assert repetition3_decode("011101") == "01"
    for m in range(8):
        msg = format(m, "03b")
        word = repetition3_encode(msg)
        assert repetition3_decode(word) == msg
        for pos in range(9):
            w = list(word)
            w[pos] = "1" if w[pos] == "0" else "0"
            assert repetition3_decode("".join(w)) == msg


# -- quantum channels ------------------------------------------------------------------

def test_kraus_validation():
    with pytest.raises(ValueError):
        KrausChannel(2, (np.eye(2), np.eye(2)))
    ch = bitflip_kraus(0.3)
    rho = np.array([[1, 0], [0, 0]], dtype=complex)
    assert np.allclose(ch.apply(rho), [[0.7, 0], [0, 0.3]])


def test_graph_from_kraus_examples():
    assert graph_from_kraus(KrausChannel(2, (np.eye(2),))).valence == 0
    G = graph_from_kraus(bitflip_kraus(0.2))
    assert G.valence == 1
    assert np.allclose(G.edge_basis[1].to_numpy(), [[0, 1], [1, 0]])


@pytest.mark.parametrize("P", [0.0, 0.1, 0.5])
def test_transition_probability_matches_support(P):
    ch = bitflip_kraus(P)
    T = transition_matrix(ch)
    assert np.allclose(T.sum(axis=0), 1)
    assert transition_probability(ch, 0, 1) == pytest.approx(P)
    S = relation_support(graph_from_kraus(ch))
    assert np.all(S[T > 1e-12])


def test_random_kraus_channels_trace_preserving():
    rng = np.random.default_rng(8)
    for _ in range(20):
        n, k = int(rng.integers(2, 5)), int(rng.integers(1, 4))
        Z = rng.normal(size=(k * n, n)) + 1j * rng.normal(size=(k * n, n))
        Q = np.linalg.qr(Z)[0]
        ch = KrausChannel(n, tuple(Q[i * n:(i + 1) * n] for i in range(k)))
        acc = sum(M.conj().T @ M for M in ch.ops)
        assert np.abs(acc - np.eye(n)).max() <= 1e-10


# -- Pauli strings ------------------------------------------------------------------------

def test_pauli_counts():
    assert [P.label for P in pauli_errors(1, 1)] == ["I", "X", "Y", "Z"]
    assert len(pauli_errors(5, 1)) == 16 == 3 * 5 + 1
    assert [P.label for P in pauli_errors(2, 0)] == ["II"]
    assert len(pauli_errors(4, 2)) == 1 + 12 + 9 * 6
    with pytest.raises(ValueError):
        pauli_errors(11, 1)


@pytest.mark.parametrize("label", ["X", "Y", "Z", "XZ", "YIZ", "ZZY"])
def test_pauli_matrix_matches_kron(label):
    from nobrooks.channels import pauli_matrix
    P = PauliString.from_label(label)
    M = np.array([[1]], dtype=complex)
    # qubit 0 is the least significant bit, so it is the rightmost factor
    for c in label:
        M = np.kron(pauli_matrix(c), M)
    assert np.allclose(P.matrix(), M)
    assert P.is_hermitian()
    assert np.allclose(P.matrix() @ P.matrix().conj().T, np.eye(2 ** len(label)))
    assert P.exact_matrix().equals(HermitianMatrix.from_array(M))


def test_pauli_products_close_in_weight_two_span():
    ones = pauli_errors(4, 1)
    twos = {(P.x, P.z) for P in pauli_errors(4, 2)}
    for E in ones:
        for F in ones:
            prod = E.adjoint() * F
            assert (prod.x, prod.z) in twos
            assert np.allclose(prod.matrix(), E.matrix().conj().T @ F.matrix())


@given(st.text("IXYZ", min_size=1, max_size=4), st.text("IXYZ", min_size=1, max_size=4))
def test_pauli_multiplication_matches_matrices(a, b):
    k = max(len(a), len(b))
    A, B = PauliString.from_label(a.ljust(k, "I")), PauliString.from_label(b.ljust(k, "I"))
    assert np.allclose((A * B).matrix(), A.matrix() @ B.matrix())


# -- Shor code and the counting bound -------------------------------------------------------

def test_shor_codewords_normalized():
    W = shor_codewords()
    assert np.allclose(W.conj().T @ W, np.eye(2))


@pytest.fixture(scope="module")
def shor():
    return shor_code()


def test_shor_detection(shor):
    assert shor.products_checked == 28 * 28
    assert shor.product_residual <= 1e-9
    assert shor.single_flip_residual[2] == 0
    assert shor.certificate.dim == 2 and shor.certificate.slopes.exact_zero


def test_shor_hamming_check():
    rep = quantum_hamming_check(pauli_errors(9, 1), (shor_codewords(scaled=True), 8))
    assert rep.product <= 512 and rep.holds and rep.degenerate
    assert rep.dim_R == 28 and rep.dim_R0 < 28


def test_trivial_relation_equality():
    rep = quantum_hamming_check([np.eye(4)], np.eye(4))
    assert (rep.dim_R0, rep.dim_C, rep.dim_H) == (1, 4, 4) and rep.product == 4
    assert not rep.degenerate


def test_hamming_check_rejects_non_codes():
    with pytest.raises(ValueError):
        quantum_hamming_check(pauli_errors(2, 1), np.eye(4)[:, :2])


def test_five_qubit_arithmetic():
    assert pauli_hamming_numbers(5, 2) == (32, 32)
