"""Command-line entry point.

Every subcommand prints one JSON report (or CSV for ``bench --csv``) on
standard output.  Reports are deterministic apart from ``timing_ms``.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import approx, center, classify, oracle
from .generators import GENERATORS, NAMED, GenSpec, SplitMix64, gen_named, generate
from .graph import BfsCache, Graph, GraphError, distance_matrix, load_graph
from .invariants import CLASS_ALPHA, SUITES, run_suite

SCHEMA = 1
EXIT_OK = 0
EXIT_VERIFY_FAILED = 2
EXIT_CLASSIFICATION = 3
EXIT_USAGE = 64
EXIT_NOINPUT = 66

BENCH_COLUMNS = ["graph_id", "n", "m", "alpha", "rad", "diam", "e(c_approx)", "deficit"]
BENCH_CLASSES = ("chordal", "distance_hereditary", "ptolemaic", "alpha1_blocks")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class ArgParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting with status 2."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Run:
    argv: list[str]
    args: argparse.Namespace
    timing: dict[str, float] = field(default_factory=dict)
    input_info: dict | None = None
    graph: Graph | None = None
    profile: classify.MetricProfile | None = None
    alpha: int | None = None
    alpha_source: str | None = None
    caveats: list[str] = field(default_factory=list)
    bfs_count: int = 0

    def phase(self, name: str):
        return _Phase(self, name)

    def guarantee(self, gid: str, statement: str, additive: int | None = None) -> dict:
        return {"id": gid, "statement": statement, "additive": additive, "i": self.alpha, "i_source": self.alpha_source}


class _Phase:
    def __init__(self, run: Run, name: str):
        self.run, self.name = run, name

    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        elapsed = (time.perf_counter() - self.start) * 1000.0
        self.run.timing[self.name] = round(self.run.timing.get(self.name, 0.0) + elapsed, 3)
        return False


# input and classification -------------------------------------------------


def _load(run: Run) -> Graph:
    args = run.args
    with run.phase("load"):
        if args.named:
            try:
                g = gen_named(args.named)
            except (KeyError, classify.PatternUnavailable) as exc:
                raise InputError(str(exc)) from exc
            run.input_info = {"named": args.named, "sha256": hashlib.sha256(g.to_text().encode()).hexdigest()}
        elif args.input:
            try:
                data = Path(args.input).read_bytes()
            except OSError as exc:
                raise InputError(f"cannot read {args.input}: {exc.strerror or exc}") from exc
            try:
                g = load_graph(data.decode("utf-8"))
            except (UnicodeDecodeError, GraphError) as exc:
                raise InputError(f"{args.input}: {exc}") from exc
            run.input_info = {"path": args.input, "sha256": hashlib.sha256(data).hexdigest()}
        else:
            raise UsageError("an input graph is required (--input FILE or --named NAME)")
    run.input_info.update(n=g.n, m=g.m)
    run.graph = g
    return g


def _classify(run: Run, g: Graph, force: bool = False) -> None:
    """Fill in the alpha index: asserted by flag, else measured when small enough."""
    if run.args.alpha is not None:
        run.alpha, run.alpha_source = run.args.alpha, "asserted"
        return
    if g.n > classify.CLASSIFIER_LIMIT and not force:
        run.caveats.append(f"classifier skipped (n > {classify.CLASSIFIER_LIMIT}); pass --alpha to claim guarantees")
        return
    with run.phase("classify"):
        run.profile = classify.profile(g)
    run.alpha, run.alpha_source = run.profile.alpha_index, "measured"


def _alpha_terms(i: int) -> dict[str, float]:
    return {
        "mdp_middle": 2 * i + 1,
        "mdp_pair_diam": 3 * i + 2,
        "sweep_middle": 4 * i + (i + 1) / 2 + 2,
        "lower_deficit": 3 * i + 2,
        "tree_mdp": 4 * i + 3,
        "tree_sweep": 7 * i + 5,
    }


# subcommands ---------------------------------------------------------------


def cmd_profile(run: Run) -> dict:
    g = _load(run)
    _classify(run, g, force=True)
    return {"profile": run.profile.to_json() if run.profile else None}


def cmd_ecc(run: Run) -> tuple[dict, list[dict]]:
    g = _load(run)
    method = run.args.method
    if method == "exact":
        with run.phase("oracle"):
            rep = oracle.exact_eccentricities(g)
        run.bfs_count = g.n
        return rep.to_json(), []
    _classify(run, g)
    cache = BfsCache(g)
    mode = run.args.mode or "mdp"
    with run.phase("sweep"):
        if method == "approx":
            rad = approx.approx_radius(g, mode, cache)
            diam = approx.approx_diameter(g, mode, cache)
            payload = {"radius": rad.to_json(), "diameter": diam.to_json()}
        else:
            pair = approx.mutually_distant_pair(g, 0, cache)
            payload = approx.ecc_lower_bounds(g, *pair.final_pair, cache).to_json()
            payload["sweep"] = pair.to_json()
    run.bfs_count = cache.count
    guarantees = []
    if run.alpha is not None:
        t = _alpha_terms(run.alpha)
        if method == "lower":
            guarantees.append(run.guarantee("pair-lower-bound", "e(v) - lower(v) <= 3i+2 for every v", t["lower_deficit"]))
        elif mode == "mdp":
            guarantees.append(run.guarantee("mdp-middle-radius", "e(center) <= rad + 2i+1", t["mdp_middle"]))
            guarantees.append(run.guarantee("mdp-pair-diameter", "d_lower >= diam - (3i+2)", t["mdp_pair_diam"]))
        else:
            guarantees.append(run.guarantee("sweep-middle-radius", "e(center) <= rad + 4i + (i+1)/2 + 2", t["sweep_middle"]))
            guarantees.append(run.guarantee("sweep-end-diameter", "d_lower >= diam - (3i+2)", t["mdp_pair_diam"]))
    return payload, guarantees


def _delta_precondition(run: Run, g: Graph) -> None:
    if run.alpha_source != "measured":
        return
    if run.alpha > 1:
        raise center.ClassificationViolation(f"alpha_index is {run.alpha}, the delta search needs at most 1")
    if not run.profile.triangle_condition:
        raise center.ClassificationViolation("triangle condition fails, the delta search needs it")


def cmd_center(run: Run) -> tuple[dict, list[dict]]:
    g = _load(run)
    algo = run.args.algo or run.args.algorithm
    if algo is None:
        raise UsageError("center needs an algorithm: alpha1, alpha1-delta, rad-plus-1 or oracle")
    if algo == "oracle":
        with run.phase("oracle"):
            info = oracle.center_info(g)
        run.bfs_count = g.n
        return info.to_json(), []
    _classify(run, g)
    if algo == "alpha1-delta":
        _delta_precondition(run, g)
    cache = BfsCache(g)
    finder = {
        "alpha1": center.find_central_alpha1,
        "alpha1-delta": center.find_central_alpha1_delta,
        "rad-plus-1": center.find_rad_plus_1,
    }[algo]
    with run.phase("search"):
        result = finder(g, cache)
    run.bfs_count = cache.count
    guarantees = []
    if run.alpha is not None and run.alpha > 1:
        run.caveats.append("guarantee requires alpha_1")
    elif run.alpha is not None:
        if algo == "rad-plus-1":
            guarantees.append(run.guarantee("descent-rad-plus-1", "e(vertex) <= rad + 1", 1))
        else:
            guarantees.append(run.guarantee(f"{algo}-central", "e(vertex) == rad", 0))
    return result.to_json(with_trace=run.args.trace), guarantees


def cmd_tree(run: Run) -> tuple[dict, list[dict]]:
    g = _load(run)
    _classify(run, g)
    strategy = run.args.strategy
    cache = BfsCache(g)
    with run.phase("tree"):
        if strategy == "mdp":
            tree = approx.build_ecc_tree(g, "mdp_middle", cache=cache)
        elif strategy == "sweep":
            tree = approx.build_ecc_tree(g, "sweep_middle", cache=cache)
        else:
            tree = center.ecc_tree_alpha1(g, cache=cache)
    run.bfs_count = cache.count
    guarantees = []
    if run.alpha is not None:
        t = _alpha_terms(run.alpha)
        if strategy == "mdp":
            guarantees.append(run.guarantee("tree-mdp-root", "e_T(v) <= e(v) + 4i+3", t["tree_mdp"]))
        elif strategy == "sweep":
            guarantees.append(run.guarantee("tree-sweep-root", "e_T(v) <= e(v) + 7i+5", t["tree_sweep"]))
        elif run.alpha <= 1:
            guarantees.append(run.guarantee("tree-central-root-alpha1", "e_T(v) <= e(v) + 4", 4))
        else:
            run.caveats.append("guarantee requires alpha_1")
    return tree.to_json(), guarantees


def _parse_params(text: str | None) -> dict:
    if not text:
        return {}
    try:
        params = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--params is not valid JSON: {exc}") from exc
    if not isinstance(params, dict):
        raise UsageError("--params must be a JSON object")
    return params


def cmd_gen(run: Run) -> dict:
    args = run.args
    params = _parse_params(args.params)
    if args.cls == "pattern" and "name" not in params:
        raise UsageError("class 'pattern' needs --params '{\"name\": ...}'")
    spec = GenSpec(args.cls, args.n, args.seed, params)
    with run.phase("generate"):
        try:
            made = generate(spec)
        except (TypeError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot generate {args.cls}: {exc}") from exc
    text = made.graph.to_text()
    sidecar = made.sidecar()
    payload = {"sidecar": sidecar, "sha256": hashlib.sha256(text.encode()).hexdigest()}
    if args.output:
        out = Path(args.output)
        out.write_text(text)
        Path(str(out) + ".json").write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
        payload["output"] = str(out)
    else:
        payload["edge_list"] = text
    return payload


def cmd_verify(run: Run) -> tuple[dict, int]:
    args = run.args
    with run.phase("suite"):
        samples, chk = run_suite(args.suite, args.seed, args.count)
    payload = {"suite": args.suite, "seed": args.seed, "count": args.count, "samples": samples, **chk.to_json()}
    return payload, EXIT_VERIFY_FAILED if chk.violations else EXIT_OK


def bench_rows(seed: int, count: int, n_min: int, n_max: int) -> list[dict]:
    rng = SplitMix64(seed)
    rows = []
    for k in range(count):
        child = rng.split(k)
        cls = BENCH_CLASSES[k % len(BENCH_CLASSES)]
        n = n_min + child.below(n_max - n_min + 1)
        sub = child.next()
        g = GENERATORS[cls](n, sub).graph
        if g.n <= classify.CLASSIFIER_LIMIT:
            alpha = classify.alpha_index(g)
        else:
            alpha = CLASS_ALPHA.get(cls)
        ecc = distance_matrix(g).max(axis=1)
        rad, diam = int(ecc.min()), int(ecc.max())
        e_c = approx.approx_radius(g, "mdp").ecc
        rows.append(
            {
                "graph_id": f"{cls}-{k}-{sub}",
                "n": g.n,
                "m": g.m,
                "alpha": alpha,
                "rad": rad,
                "diam": diam,
                "e(c_approx)": e_c,
                "deficit": e_c - rad,
            }
        )
    return rows


def cmd_bench(run: Run) -> dict:
    args = run.args
    if args.n_min < 1 or args.n_max < args.n_min:
        raise UsageError("need 1 <= --n-min <= --n-max")
    with run.phase("bench"):
        rows = bench_rows(args.seed, args.count, args.n_min, args.n_max)
    return {"columns": BENCH_COLUMNS, "rows": rows}


# plumbing ------------------------------------------------------------------


def build_parser() -> ArgParser:
    common = ArgParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="edge-list file: 'n m' header then m lines 'u v'")
    common.add_argument("--named", choices=NAMED, help="use a built-in small graph instead of --input")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int, default=20)
    common.add_argument("--mode", choices=["linear", "mdp"], help="sweep mode for ecc approx")
    common.add_argument(
        "--alpha", "--assert-alpha", dest="alpha", type=int, metavar="I", help="assert the alpha index and skip the classifier"
    )
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    common.add_argument("--trace", action="store_true", help="include per-iteration search state")

    parser = ArgParser(prog="alphametric", description="Metric invariants, eccentricity estimates and center search.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgParser)
    sub.add_parser("profile", parents=[common], help="alpha index, thinness, disk convexity, triangle condition")

    p = sub.add_parser("ecc", parents=[common], help="exact eccentricities, sweep estimates or lower bounds")
    p.add_argument("method", choices=["exact", "approx", "lower"])

    p = sub.add_parser("center", parents=[common], help="find a central or near-central vertex")
    p.add_argument("algorithm", nargs="?", choices=["alpha1", "alpha1-delta", "rad-plus-1", "oracle"])
    p.add_argument("--algo", choices=["alpha1", "alpha1-delta", "rad-plus-1", "oracle"])

    p = sub.add_parser("tree", parents=[common], help="BFS spanning tree with tree eccentricities")
    p.add_argument("strategy", choices=["mdp", "sweep", "alpha1"])

    p = sub.add_parser("gen", parents=[common], help="write a seeded graph and its JSON sidecar")
    classes = sorted(set(GENERATORS) | {"cycle", "path", "grid", "pattern"})
    p.add_argument("--class", dest="cls", required=True, choices=classes)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--params", help="JSON object of class-specific parameters")
    p.add_argument("--output", metavar="FILE", help="edge-list path; the sidecar goes to FILE.json")

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite against the oracle")
    p.add_argument("suite", choices=sorted(SUITES))

    p = sub.add_parser("bench", parents=[common], help="approximation quality over a seeded corpus")
    p.add_argument("--n-min", type=int, default=20)
    p.add_argument("--n-max", type=int, default=200)
    return parser


def _report(run: Run | None, argv: Sequence[str], payload: Any, guarantees: list[dict], error: str | None) -> dict:
    report: dict[str, Any] = {"schema": SCHEMA, "command": list(argv)}
    if run is not None:
        report.update(
            input=run.input_info,
            profile=run.profile.to_json() if run.profile else None,
            alpha={"i": run.alpha, "source": run.alpha_source},
            guarantees=guarantees,
            caveats=run.caveats,
            bfs_count=run.bfs_count,
            timing_ms=run.timing,
        )
    report["result"] = payload
    if error is not None:
        report["error"] = error
    return report


def _emit(report: dict, out) -> None:
    out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _emit_csv(rows: list[dict], out) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    out.write(buf.getvalue())


def run(argv: Sequence[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit(_report(None, argv, None, [], str(exc)), out)
        return EXIT_USAGE

    state = Run(argv, args)
    payload: Any = None
    guarantees: list[dict] = []
    code = EXIT_OK
    try:
        if args.fmt == "csv" and args.command != "bench":
            raise UsageError("--csv is only available for bench")
        if args.command == "profile":
            payload = cmd_profile(state)
        elif args.command == "ecc":
            payload, guarantees = cmd_ecc(state)
        elif args.command == "center":
            payload, guarantees = cmd_center(state)
        elif args.command == "tree":
            payload, guarantees = cmd_tree(state)
        elif args.command == "gen":
            payload = cmd_gen(state)
        elif args.command == "verify":
            payload, code = cmd_verify(state)
        else:
            payload = cmd_bench(state)
            if args.fmt == "csv":
                _emit_csv(payload["rows"], out)
                return EXIT_OK
    except UsageError as exc:
        _emit(_report(state, argv, None, [], str(exc)), out)
        return EXIT_USAGE
    except InputError as exc:
        _emit(_report(state, argv, None, [], str(exc)), out)
        return EXIT_NOINPUT
    except center.ClassificationViolation as exc:
        _emit(_report(state, argv, None, [], f"classification violation: {exc}"), out)
        return EXIT_CLASSIFICATION
    _emit(_report(state, argv, payload, guarantees, None), out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
