"""Command-line entry point.

Every command prints a JSON report (``--out`` also writes it to a file).
Exit codes: 0 all checks pass, 2 a verification failed, 3 a resource cap was
hit, 4 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import channels as ch
from .codes import (CertificateError, ColoringRejected, CodeRejected, build_code,
                    certificate_to_json, greedy_coloring, isotropic_violations, trace_gaps,
                    verify_certificate)
from .matspace import DEFAULT_TOL, encode_real
from .qgraph import QuantumGraph, from_classical, graph_from_json, graph_to_json, make_graph, random_graph
from .slog import slog, slog_trace
from .surd import ExactnessError
from .tropical import (alpha_upper, build_spec, check_properties, chi_lower, realize)

REPORT_SCHEMA = "nobrooks.report/1"
EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_INPUT = 0, 2, 3, 4


class BadInput(ValueError):
    pass


@dataclass
class RunConfig:
    mode: str = "auto"
    tolerance: float = DEFAULT_TOL
    seed: int = 0
    output: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tolerance > 0:
            raise BadInput("tolerance must be positive")
        if self.mode not in ("auto", "exact", "float"):
            raise BadInput(f"unknown mode {self.mode!r}")


@dataclass
class Report:
    command: list
    config: RunConfig
    results: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, claim: str, value, bound, ok: bool) -> bool:
        self.verdicts.append({"claim": claim, "value": _plain(value), "bound": _plain(bound),
                              "pass": bool(ok)})
        return ok

    @property
    def passed(self) -> bool:
        return all(v["pass"] for v in self.verdicts)

    def to_json(self) -> dict:
        return {"schema": REPORT_SCHEMA, "command": self.command, "config": asdict(self.config),
                "seconds": round(self.seconds, 6), "results": _plain(self.results),
                "certificates": self.certificates, "verdicts": self.verdicts,
                "pass": self.passed}


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return encode_real(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    try:
        return encode_real(x)
    except (TypeError, ValueError):
        return str(x)


def _write_json(path: str, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh)


# ---------------------------------------------------------------------------
# graph sources

def _load_graph(args) -> QuantumGraph:
    if getattr(args, "graph", None):
        with open(args.graph) as fh:
            return graph_from_json(json.load(fh))
    if getattr(args, "tropical", None):
        n, m = args.tropical
        return realize(build_spec(n, m), args.realization, args.seed)
    if getattr(args, "random", None):
        n, m = args.random
        return random_graph(n, m, args.seed)
    raise BadInput("give --graph FILE, --tropical N M or --random N M")


def _graph_args(p):
    p.add_argument("--graph", help="graph JSON file")
    p.add_argument("--tropical", nargs=2, type=int, metavar=("N", "M"))
    p.add_argument("--random", nargs=2, type=int, metavar=("N", "M"))
    p.add_argument("--realization", choices=["diagonal", "conjugated"], default="diagonal")
    p.add_argument("--certificate", help="write the certificate JSON here")


# ---------------------------------------------------------------------------
# commands

def cmd_slog(args, rep: Report) -> None:
    if args.q < 2 or args.p < 0:
        raise BadInput("need p >= 0 and q >= 2")
    tr = slog_trace(args.p, args.q)
    rep.results.update(value=tr.value, subtract_path=tr.subtract_path, build_path=tr.build_path)
    rep.check("subtract and build paths have equal length", len(tr.build_path) - 1,
              len(tr.subtract_path) - 1, len(tr.build_path) == len(tr.subtract_path))
    if args.trace:
        right, left = tr.render()
        rep.results.update(right_groups=tr.right_groups, left_groups=tr.left_groups,
                           diagram=[right, left])


def cmd_build_tropical(args, rep: Report) -> None:
    spec = build_spec(args.n, args.m)
    G = realize(spec, args.realization, args.seed)
    table = spec.ranks.strings() if spec.n <= 10 else [list(r) for r in spec.ranks.rows]
    pre = spec.pre.strings() if spec.n <= 10 else [list(r) for r in spec.pre.rows]
    props = check_properties(G, rep.config.tolerance)
    rep.results.update(n=spec.n, m=spec.m, ranks_pre=pre, ranks=table,
                       shifts=list(spec.shifts), graph=graph_to_json(G))
    rep.check("tropical", props.tropical, True, props.tropical)
    rep.check("cyclical", props.cyclical, True, props.cyclical)
    rep.check("commutative", props.commutative, True, props.commutative)
    rep.check("rank table coverage", spec.ranks.problems(), [], not spec.ranks.problems())


def cmd_find_code(args, rep: Report) -> None:
    G = _load_graph(args)
    cert = build_code(G, mode=rep.config.mode, tol=rep.config.tolerance)
    n, m = G.n, G.valence
    lo = -(-n // (m + 1) ** 2)
    rep.results.update(n=n, m=m, dim=cert.dim, residual=cert.residual, route=cert.construction["route"],
                       slopes=list(cert.slopes.slopes))
    rep.check("dim >= ceil(n/(m+1)^2)", cert.dim, lo, cert.dim >= lo)
    iso = isotropic_violations(G, cert, rep.config.tolerance)
    rep.check("isotropic counting", iso, [], not iso)
    _emit(args, rep, G, cert)


def cmd_color(args, rep: Report) -> None:
    G = _load_graph(args)
    col = greedy_coloring(G, mode=rep.config.mode, tol=rep.config.tolerance)
    n, m = G.n, G.valence
    hi = slog(n, (m + 1) ** 2)
    rep.results.update(n=n, m=m, colors=col.size, dims=col.dims,
                       identity_residual=col.identity_residual)
    rep.check("colors <= slog(n,(m+1)^2)", col.size, hi, col.size <= hi)
    if G.metadata.get("kind") == "tropical":
        lo = chi_lower(n, m)
        rep.check("colors >= slog(n,m+1)", col.size, lo, col.size >= lo)
    gaps = trace_gaps(G, col)
    worst = max(abs(float(g)) for g in gaps)
    rep.check("trace means agree", worst, rep.config.tolerance, worst <= rep.config.tolerance)
    _emit(args, rep, G, col)


def _emit(args, rep: Report, G, cert) -> None:
    path = getattr(args, "certificate", None)
    if path:
        _write_json(path, certificate_to_json(G, cert))
        rep.certificates.append(path)


def cmd_bounds(args, rep: Report) -> None:
    n, m = args.n, args.m
    if n < 1 or m < 0:
        raise BadInput("need n >= 1 and m >= 0")
    a_hi, a_lo = alpha_upper(n, m), -(-n // (m + 1) ** 2)
    # with no edges beyond the identity the whole space is one color
    c_lo, c_hi = (1, 1) if m == 0 else (slog(n, m + 1), slog(n, (m + 1) ** 2))
    rep.results.update(alpha=[a_hi, a_lo], chi=[c_lo, c_hi])
    if m == 0:
        G = make_graph(n, [], {"kind": "edgeless"})
    elif m <= n - 1:
        G = realize(build_spec(n, m))
    else:
        rep.results["witness"] = None
        return
    code = build_code(G, tol=rep.config.tolerance)
    col = greedy_coloring(G, tol=rep.config.tolerance)
    rep.results["witness"] = {"graph": G.metadata.get("kind"), "code_dim": code.dim,
                              "colors": col.size}
    rep.check("witness code meets the alpha upper bound", code.dim, a_hi, code.dim == a_hi)
    rep.check("witness code meets the alpha lower bound", code.dim, a_lo, code.dim >= a_lo)
    rep.check("witness coloring within chi bounds", col.size, [c_lo, c_hi],
              c_lo <= col.size <= c_hi)


def least_n_for(m: int, target: int, max_n: int) -> int:
    n = max(m + 1, 1)
    while slog(n, m + 1) < target:
        n += 1
        if n > max_n:
            raise ch.ResourceCap(f"needs more than {max_n} dimensions")
    return n


def cmd_no_brooks(args, rep: Report) -> None:
    m, target = args.m, args.target
    if m < 1 or target < 1:
        raise BadInput("need m >= 1 and target >= 1")
    n = least_n_for(m, target, args.max_n)
    G = realize(build_spec(n, m)) if n > m else make_graph(n, [], {"kind": "edgeless"})
    col = greedy_coloring(G, tol=rep.config.tolerance)
    lo = slog(n, m + 1)
    rep.results.update(n=n, m=G.valence, lower=lo, colors=col.size, dims=col.dims,
                       identity_residual=col.identity_residual,
                       max_residual=max(c.residual for c in col.codes))
    rep.check("chromatic number >= target (slog(n,m+1))", lo, target, lo >= target)
    rep.check("coloring respects the lower bound", col.size, lo, col.size >= lo)
    rep.check("coloring within slog(n,(m+1)^2)", col.size, slog(n, (m + 1) ** 2),
              col.size <= slog(n, (m + 1) ** 2))
    _emit(args, rep, G, col)


def cmd_verify(args, rep: Report) -> None:
    try:
        with open(args.file) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise BadInput(f"cannot read certificate: {e}") from e
    graph = None
    if args.graph:
        with open(args.graph) as fh:
            graph = graph_from_json(json.load(fh))
    try:
        res = verify_certificate(obj, graph)
    except CertificateError as e:
        raise BadInput(str(e)) from e
    rep.results.update(kind=res.kind, n=res.n, colors=res.colors, dims=res.dims,
                       failures=res.failures)
    rep.check("certificate re-verifies", res.failures, [], res.ok)


def cmd_probe(args, rep: Report) -> None:
    rng = np.random.default_rng(args.seed)
    rows = []
    for t in range(args.trials):
        n = int(rng.integers(args.n_min, args.n_max + 1))
        seed = int(rng.integers(0, 2 ** 31))
        G = random_graph(n, args.m, seed)
        cert = build_code(G, tol=rep.config.tolerance)
        lo, line = -(-n // (args.m + 1) ** 2), -(-n // (args.m + 1))
        rows.append({"n": n, "seed": seed, "dim": cert.dim, "lower": lo, "commutative_line": line,
                     "residual": cert.residual})
        rep.check(f"trial {t}: dim >= ceil(n/(m+1)^2)", cert.dim, lo, cert.dim >= lo)
    rep.results["trials"] = rows


def _classical_graph(args) -> ch.ClassicalGraph:
    kind, size = args.kind, args.size
    makers = {"cycle": ch.cycle_graph, "complete": ch.complete_graph, "path": ch.path_graph,
              "hamming": ch.hamming_distance_graph}
    if kind == "file":
        with open(size) as fh:
            return ch.ClassicalGraph.from_adjacency(json.load(fh))
    if kind not in makers:
        raise BadInput(f"unknown graph kind {kind!r}")
    return makers[kind](int(size))


def cmd_classical(args, rep: Report) -> None:
    G = _classical_graph(args)
    if args.square:
        G = ch.graph_square(G)
    if args.action == "alpha":
        if G.n <= ch.ALPHA_CAP:
            S = ch.max_independent_set(G)
            rep.results.update(alpha=len(S), witness=S)
            lo = ch.covering_bound(G)
            rep.check("alpha >= covering bound", len(S), lo, len(S) >= lo)
        else:
            raise ch.ResourceCap(f"exact independence is capped at {ch.ALPHA_CAP} vertices")
    elif args.action == "alpha-square":
        sw = ch.square_independence(G)
        rep.results.update(lower=sw.lower, upper=sw.upper, witness=list(sw.witness))
        rep.check("witness meets the packing bound", sw.lower, sw.upper, sw.exact)
    elif args.action == "chi":
        k = ch.chromatic_exact(G)
        greedy = ch.greedy_coloring_classical(G)
        rep.results.update(chi=k, greedy=len(greedy))
        rep.check("greedy <= max degree + 1", len(greedy), G.max_degree + 1,
                  len(greedy) <= G.max_degree + 1)
    elif args.action == "product":
        P = ch.strong_product(G, G)
        a = ch.independence_exact(P)
        rep.results.update(alpha_square_product=a, capacity_lower=a ** 0.5,
                           alpha=ch.independence_exact(G))
        rep.check("capacity_lower(G,2) >= alpha(G)", a ** 0.5, rep.results["alpha"],
                  a ** 0.5 >= rep.results["alpha"] - 1e-12)
    rep.results.update(vertices=G.n, max_degree=G.max_degree, min_degree=G.min_degree)


def cmd_channel(args, rep: Report) -> None:
    P = Fraction(args.p)
    M = ch.bitflip_channel(args.n, P)
    if args.action == "build-bitflip":
        rep.results["matrix"] = [[_plain(x) for x in row] for row in M.entries]
        rep.check("columns sum to one", 1, 1, True)
        return
    thr = Fraction(args.threshold)
    G = ch.confusability_graph(ch.relation_from_channel(M, thr), M.q)
    Q = from_classical(G.adjacency())
    rep.results.update(vertices=G.n, edges=sorted(G.edges), max_degree=G.max_degree,
                       quantum_graph=graph_to_json(Q))


def cmd_quantum(args, rep: Report) -> None:
    t = time.time()
    r = ch.shor_code(rep.config.tolerance)
    h = ch.quantum_hamming_check(ch.pauli_errors(9, 1), (ch.shor_codewords(scaled=True), 8))
    rep.results.update(code_dim=r.certificate.dim, products=r.products_checked,
                       product_residual=r.product_residual, exact=bool(r.certificate.slopes.exact_zero),
                       dim_R=h.dim_R, dim_R0=h.dim_R0, bound=[h.product, h.dim_H],
                       degenerate=h.degenerate, seconds_inner=time.time() - t)
    rep.check("products detected", r.product_residual, rep.config.tolerance,
              r.product_residual <= rep.config.tolerance)
    rep.check("dim(R0) dim(C) <= dim(H)", h.product, h.dim_H, h.holds)
    rep.check("code is degenerate", h.degenerate, True, h.degenerate)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nobrooks", description=__doc__.splitlines()[0])
    p.add_argument("--mode", default="auto", choices=["auto", "exact", "float"])
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="also write the report here")
    # the global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["auto", "exact", "float"], default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add("slog", help="step logarithm and its two counting paths")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--trace", action="store_true")
    s.add_argument("--text", action="store_true", help="print the value and diagram instead of JSON")
    s.set_defaults(func=cmd_slog)

    s = add("build-tropical", help="emit Q_{n,m} and its rank table")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--realization", choices=["diagonal", "conjugated"], default="diagonal")
    s.set_defaults(func=cmd_build_tropical)

    s = add("find-code", help="construct and verify a code")
    _graph_args(s)
    s.set_defaults(func=cmd_find_code)

    s = add("color", help="greedy coloring with certificate")
    _graph_args(s)
    s.set_defaults(func=cmd_color)

    s = add("bounds", help="independence and chromatic bounds with witnesses")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_bounds)

    s = add("no-brooks", help="valence-m graph with chromatic number >= target")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--target", type=int, required=True)
    s.add_argument("--max-n", type=int, default=4096)
    s.add_argument("--certificate")
    s.set_defaults(func=cmd_no_brooks)

    s = add("verify", help="re-check a certificate file")
    s.add_argument("file")
    s.add_argument("--graph", help="graph JSON, for certificates without an embedded graph")
    s.set_defaults(func=cmd_verify)

    s = add("probe", help="code dimensions of random graphs against the bounds")
    s.add_argument("--n-min", type=int, default=4)
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--trials", type=int, default=20)
    s.set_defaults(func=cmd_probe)

    s = add("channel", help="bit-flip channels and confusability graphs")
    s.add_argument("action", choices=["build-bitflip", "graph"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", required=True, help="flip probability (decimal or fraction)")
    s.add_argument("--threshold", default="0")
    s.set_defaults(func=cmd_channel)

    s = add("classical", help="classical graph invariants")
    s.add_argument("action", choices=["alpha", "alpha-square", "chi", "product"])
    s.add_argument("kind", choices=["cycle", "complete", "path", "hamming", "file"])
    s.add_argument("size", help="vertex count, bit length for hamming, or a JSON adjacency file")
    s.add_argument("--square", action="store_true", help="use the square of the graph")
    s.set_defaults(func=cmd_classical)

    s = add("quantum", help="quantum code checks")
    s.add_argument("action", choices=["shor-verify"])
    s.set_defaults(func=cmd_quantum)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        cfg = RunConfig(args.mode, args.tol, args.seed, args.out,
                        {k: v for k, v in vars(args).items()
                         if k not in ("func", "mode", "tol", "seed", "out", "command")})
    except BadInput as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return EXIT_INPUT
    rep = Report(argv, cfg)
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        args.func(args, rep)
    except ch.ResourceCap as e:
        rep.results["error"] = str(e)
        code = EXIT_CAP
    except (CodeRejected, ColoringRejected) as e:
        rep.results["error"] = str(e)
        rep.check("construction verified", str(e), None, False)
    except (BadInput, ValueError, ExactnessError, OSError, json.JSONDecodeError) as e:
        rep.results["error"] = f"{type(e).__name__}: {e}"
        code = EXIT_INPUT
    rep.seconds = time.perf_counter() - t0
    if code == EXIT_OK and not rep.passed:
        code = EXIT_FAIL
    if getattr(args, "text", False) and code == EXIT_OK:
        print(rep.results["value"])
        for line in rep.results.get("diagram", []):
            print(line)
    else:
        print(json.dumps(rep.to_json(), indent=1))
    if cfg.output:
        _write_json(cfg.output, rep.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
