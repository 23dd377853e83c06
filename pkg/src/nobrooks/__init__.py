"""Quantum graphs, error-detecting codes and colorings, and the tropical family Q_{n,m}."""
from __future__ import annotations

from .codes import (CodeCertificate, ColoringCertificate, build_code, certificate_to_json,
                    greedy_coloring, greedy_vectors, verify_certificate, verify_code,
                    verify_coloring)
from .matspace import HermitianMatrix, Subspace
from .qgraph import QuantumGraph, from_classical, make_graph, random_graph, slope
from .slog import slog, slog_table, slog_trace
from .tropical import build_spec, realize, tropical_family

__version__ = "0.1.0"
