"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 unsupported
operation, 4 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    edge_forest_bound,
    family_spectrum,
    floor_bound,
    min_eigenvalue,
    ratio_bound,
    spectral_forest_bound,
)
from .certify import TauCertificate, certify_tau, classify_maximum_forests, verify_certificate
from .constructions import DEFAULT_SCAN_RANGE, FULL_SCAN_RANGE, paley_two_add_scan, scan_field
from .families import (
    FamilyGraph,
    IncidenceStructure,
    OrthogonalArray,
    field_for_order,
    gq_noncollinearity_graph,
    make_family,
    oa_block_complement_graph,
)
from .graph import Graph, eta, regularity
from .graph_io import SCHEMA, from_dimacs, graph_from_dict, graph_hash, graph_to_dict, to_dimacs
from .search import SearchBudget, max_independent_set, max_induced_forest

EXIT_OK, EXIT_MISMATCH, EXIT_BAD_INPUT, EXIT_UNSUPPORTED, EXIT_BUDGET = 0, 1, 2, 3, 4

# CLI family names -> internal family tags
FAMILY_ALIASES = {
    "kneser": "kneser",
    "q-kneser": "q_kneser",
    "paley": "paley",
    "paley-complement": "paley_complement",
    "hamming": "hamming_tensor",
    "oa-complement": "oa_complement",
    "gq": "gq_noncollinearity",
}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


# -- family arguments ------------------------------------------------------------


def _add_family_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("family parameters")
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--p", type=int, help="field characteristic")
    g.add_argument("--d", type=int, default=None, help="field degree")
    g.add_argument("--q", type=int, help="field order (prime power)")
    g.add_argument("--q2", type=int, help="Paley graph order")
    g.add_argument("--modulus", type=str, help="comma-separated coefficients, constant term first")
    g.add_argument("--oa-file", type=str, help="orthogonal array JSON")
    g.add_argument("--gq-file", type=str, help="incidence structure JSON")


def _parse_modulus(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise CliError(f"bad modulus {text!r}; expected comma-separated integers") from None


def _field_args(args, order_attr: str = "q") -> dict:
    modulus = _parse_modulus(args.modulus)
    if args.p is not None:
        F = field_for_order(args.p ** (args.d or 1), modulus)
        if F.p != args.p:
            raise CliError(f"{args.p} is not prime")
    else:
        order = getattr(args, order_attr)
        if order is None:
            raise CliError(f"give --p/--d or --{order_attr}")
        F = field_for_order(order, modulus)
    return {"p": F.p, "d": F.d, "modulus": list(F.modulus)}


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise CliError(f"missing {', '.join(missing)}")


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}") from None


def family_from_args(name: str, args) -> FamilyGraph:
    if name not in FAMILY_ALIASES:
        raise CliError(f"unknown family {name!r}; choose from {', '.join(FAMILY_ALIASES)}")
    tag = FAMILY_ALIASES[name]
    if tag == "kneser":
        _require(args, "n", "k")
        params = {"n": args.n, "k": args.k}
    elif tag == "q_kneser":
        _require(args, "n", "k")
        params = {"n": args.n, "k": args.k, **_field_args(args)}
    elif tag in ("paley", "paley_complement"):
        params = _field_args(args, "q2")
    elif tag == "hamming_tensor":
        _require(args, "m", "n")
        params = {"m": args.m, "n": args.n}
    elif tag == "oa_complement":
        if args.oa_file:
            O = OrthogonalArray.from_dict(_read_json(args.oa_file))
            return oa_block_complement_graph(O)
        _require(args, "m", "n")
        params = {"m": args.m, "n": args.n}
    else:
        if args.gq_file:
            return gq_noncollinearity_graph(IncidenceStructure.from_dict(_read_json(args.gq_file)))
        params = _field_args(args)
    return make_family(tag, params)


def family_record(fg: FamilyGraph) -> dict:
    return {"family": fg.family, "params": fg.params}


# -- graph files -------------------------------------------------------------------


def serialize(g: Graph, record: dict | None, fmt: str) -> str:
    if fmt == "dimacs":
        comment = None
        if record is not None:
            comment = f"family {json.dumps(record, sort_keys=True, separators=(',', ':'))}"
        return to_dimacs(g, comment)
    data = graph_to_dict(g)
    if record is not None:
        data.update(record)
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def parse_graph_text(text: str) -> tuple[Graph, dict | None, str]:
    """Graph, optional family record and detected format."""
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        record = {"family": data["family"], "params": data["params"]} if "family" in data else None
        return graph_from_dict(data), record, "json"
    g, comments = from_dimacs(text)
    record = None
    for c in comments:
        if c.startswith("family "):
            record = json.loads(c[len("family "):])
    return g, record, "dimacs"


def load_graph(path: str) -> tuple[Graph, dict | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    try:
        g, record, _ = parse_graph_text(text)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot parse {path}: {exc}") from None
    return g, record


# -- reports ---------------------------------------------------------------------------


def render_number(x) -> dict:
    """Exact rational (when available) alongside a decimal rendering."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        exact = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return {"exact": exact, "decimal": round(float(x), 9)}
    return {"exact": None, "decimal": round(float(x), 9)}


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("ACYCLIC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliError(f"ACYCLIC_THREADS must be an integer, got {env!r}") from None
    return 1


def _budget(args) -> SearchBudget:
    return SearchBudget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)


def _solve_summary(res) -> dict:
    return {
        "value": res.value,
        "witness": list(res.witness),
        "optimal": res.optimal,
        "nodes": res.nodes_explored,
        "seconds": round(res.time, 3),
    }


def analyze(g: Graph, fg: FamilyGraph | None, record: dict | None, args) -> dict:
    want_bounds = args.bounds or not (args.alpha or args.tau or args.certify)
    k = regularity(g)
    report: dict = {
        "schema": SCHEMA,
        "provenance": {"tool": "acyclic", "version": __version__, "source": "computed"},
        "graph": {
            "identity": record if record is not None else {"hash": graph_hash(g)},
            "hash": graph_hash(g),
            "n": g.n,
            "edges": g.edge_count,
            "valency": k,
        },
    }
    timings = {}
    if want_bounds:
        if k is None:
            raise CliError("bounds need a regular graph", EXIT_UNSUPPORTED)
        if k == 0 or k == g.n - 1:
            raise CliError("bounds need a graph that is neither edgeless nor complete", EXIT_UNSUPPORTED)
        t0 = time.monotonic()
        spec = family_spectrum(fg) if fg is not None else min_eigenvalue(g)
        sb = spectral_forest_bound(g.n, k, spec.lambda_min)
        report["spectrum"] = {
            "k": render_number(spec.k),
            "lambda2": None if spec.lambda2 is None else render_number(spec.lambda2),
            "lambda_min": render_number(spec.lambda_min),
            "exact": spec.exact,
        }
        rb = ratio_bound(g.n, k, spec.lambda_min)
        bounds = {
            "ratio": {**render_number(rb), "floor": floor_bound(rb)},
            "spectral_forest": {
                "decimal": round(sb.value, 9),
                "exact_form": None if not sb.exact else {
                    "A": render_number(sb.A)["exact"], "D": render_number(sb.D)["exact"],
                    "B": render_number(sb.B)["exact"],
                },
                "floor": sb.floor(),
            },
            "noncanonical": 2 + 2 * eta(g).value,
        }
        if k >= 2:
            eb = edge_forest_bound(g.n, k, 1)
            bounds["edge_forest"] = {**render_number(eb), "floor": floor_bound(eb)}
        report["bounds"] = bounds
        timings["bounds"] = round(time.monotonic() - t0, 3)
    budget = _budget(args)
    solvers = {}
    if args.alpha:
        solvers["alpha"] = _solve_summary(max_independent_set(g, budget))
    if args.tau:
        anchor = 0 if fg is not None and fg.vertex_transitive else None
        solvers["tau"] = _solve_summary(max_induced_forest(g, budget, anchor=anchor, seed=args.seed))
    if solvers:
        report["solvers"] = solvers
    if args.certify:
        t0 = time.monotonic()
        if k is None:
            raise CliError("certification needs a regular graph", EXIT_UNSUPPORTED)
        if fg is not None and fg.coclique_witness is not None:
            cert = certify_tau(fg, budget)
        else:
            cert = classify_maximum_forests(g, budget, graph_id=record or {"hash": graph_hash(g)})
        if not cert.graph_id:
            cert.graph_id = record or {"hash": graph_hash(g)}
        report["certificate"] = cert.to_dict()
        if "tau" not in solvers and cert.tau is not None:
            report["tau"] = cert.tau
        timings["certificate"] = round(time.monotonic() - t0, 3)
    report["timings"] = timings
    return report


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands -----------------------------------------------------------------------


def cmd_gen(args) -> int:
    fg = family_from_args(args.family, args)
    text = serialize(fg.graph, family_record(fg), args.format)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {fg.name}: {fg.graph.n} vertices, {fg.graph.edge_count} edges -> {args.out}",
              file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    if (args.input is None) == (args.family is None):
        raise CliError("give exactly one of --input or --family")
    if args.input is not None:
        g, record = load_graph(args.input)
        fg = None
        if record is not None:
            try:
                fg = make_family(record["family"], record["params"])
            except (ValueError, KeyError):
                fg = None
            if fg is not None and fg.graph.rows != g.rows:
                fg = None  # the file's graph wins over its family tag
    else:
        fg = family_from_args(args.family, args)
        g, record = fg.graph, family_record(fg)
    report = analyze(g, fg, record, args)
    _dump(report, args.out)
    return EXIT_OK


def cmd_scan_paley(args) -> int:
    if args.qmax < 3:
        raise CliError("--qmax must be at least 3")
    pool = FULL_SCAN_RANGE if args.full_range else DEFAULT_SCAN_RANGE
    if not args.full_range and args.qmax > max(DEFAULT_SCAN_RANGE):
        raise CliError(f"q above {max(DEFAULT_SCAN_RANGE)} needs --full-range")
    if args.full_range and args.qmax > 29:
        print("warning: the full range runs for a long time", file=sys.stderr)
    qs = [q for q in pool if q <= args.qmax]
    outdir = Path(args.outdir) if args.outdir else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)

    def progress(r):
        print(f"q={r.q} sets={r.sets_examined} pairs={r.pairs_examined} hits={len(r.hits)} "
              f"{'complete' if r.complete else 'incomplete'} {r.elapsed:.1f}s", file=sys.stderr, flush=True)

    reports = paley_two_add_scan(qs, max_seconds=args.max_seconds, threads=_threads(args), progress=progress)
    incomplete = False
    for r in reports:
        labels = scan_field(r.q).labels
        data = {"schema": SCHEMA, "provenance": {"tool": "acyclic", "version": __version__,
                                                 "source": "paley two-vertex scan"},
                "graph_note": "P'(q^2) is isomorphic to P(q^2): Paley graphs are self-complementary",
                **r.to_dict(labels)}
        if outdir is not None:
            (outdir / f"scan_q{r.q}.json").write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
        status = "complete" if r.complete else "incomplete"
        incomplete |= not r.complete
        print(f"q={r.q} sets={r.sets_examined} pairs={r.pairs_examined} hits={len(r.hits)} status={status}")
    skipped = qs[len(reports):]
    for q in skipped:
        print(f"q={q} status=incomplete (not started)")
    return EXIT_BUDGET if incomplete or skipped else EXIT_OK


def cmd_verify_reproduction(args) -> int:
    from .reproduce import run_checks

    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise CliError("--only takes comma-separated check numbers") from None

    def progress(res):
        print(res.line(), flush=True)
        if not res.passed:
            print(f"     expected: {res.expected}\n     computed: {res.computed}", flush=True)
            for d in res.details[:10]:
                print(f"     {d}", flush=True)

    results = run_checks(args.tier, only=only, progress=progress)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    if args.json:
        _dump({"schema": SCHEMA, "tier": args.tier, "results": [r.to_dict() for r in results]}, args.json)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_verify_certificate(args) -> int:
    data = _read_json(args.certificate)
    if "certificate" in data:
        data = data["certificate"]
    try:
        cert = TauCertificate.from_dict(data)
    except (TypeError, KeyError) as exc:
        raise CliError(f"malformed certificate: {exc}") from None
    if args.graph:
        g, record = load_graph(args.graph)
        gid = record or {}
    else:
        gid = cert.graph_id
    if "family" not in gid:
        raise CliError("certificate names no family; pass --graph")
    try:
        fg = make_family(gid["family"], gid["params"])
    except (ValueError, KeyError) as exc:
        raise CliError(f"cannot regenerate graph: {exc}") from None
    problems = verify_certificate(cert, fg, rerun_search=not args.no_rerun)
    for hash_key, value in data.get("hashes", {}).items():
        recomputed = TauCertificate.to_dict(cert)["hashes"].get(hash_key)
        if recomputed != value:
            problems.append(f"hash mismatch for {hash_key}")
    if problems:
        for p in problems:
            print(f"FAIL {p}")
        return EXIT_MISMATCH
    print(f"OK {fg.name}: tau={cert.tau} all_maximum_canonical={cert.all_maximum_canonical}")
    return EXIT_OK


# -- entry point -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acyclic", description="Acyclic number workbench")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--threads", type=int, default=None, help="worker cap (default: $ACYCLIC_THREADS or 1)")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a family graph")
    p.add_argument("family", choices=sorted(FAMILY_ALIASES))
    _add_family_args(p)
    p.add_argument("--format", choices=("dimacs", "json"), default="dimacs")
    p.add_argument("--out", type=str)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="bounds, solvers and certificates")
    p.add_argument("--input", type=str, help="DIMACS or JSON graph file")
    p.add_argument("--family", type=str, choices=sorted(FAMILY_ALIASES))
    _add_family_args(p)
    p.add_argument("--alpha", action="store_true")
    p.add_argument("--tau", action="store_true")
    p.add_argument("--bounds", action="store_true")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--max-nodes", type=int, default=10**8)
    p.add_argument("--max-seconds", type=float, default=600.0)
    p.add_argument("--out", type=str)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scan-paley", help="two-vertex additions to maximum cocliques of P'(q^2)")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--full-range", action="store_true", help="allow every odd prime power up to 67")
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--outdir", type=str)
    p.set_defaults(func=cmd_scan_paley)

    p = sub.add_parser("verify-paper", help="run the reproduction checks")
    p.add_argument("tier", choices=("fast", "full"))
    p.add_argument("--only", type=str, help="comma-separated check numbers")
    p.add_argument("--json", type=str, help="write results to this file")
    p.set_defaults(func=cmd_verify_reproduction)

    p = sub.add_parser("verify-certificate", help="re-check a stored certificate")
    p.add_argument("certificate", type=str)
    p.add_argument("--graph", type=str, help="graph file carrying a family record")
    p.add_argument("--no-rerun", action="store_true", help="skip re-running anchored searches")
    p.set_defaults(func=cmd_verify_certificate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
