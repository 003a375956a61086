"""Command-line front end.

Every subcommand writes its artifacts and a ``manifest.json`` (the run's
arguments, seed, input hashes, artifact hashes and wall time) into
``--out``.  ``replay`` re-runs a manifest and compares artifact hashes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .extremal import (
    ConstraintSet,
    ExactCapExceeded,
    ExtremalResult,
    ManifestError,
    exact_extremal,
    lower_bound_search,
    verify_certificate,
)
from .generators import gnp, random_c4_free
from .geometry import induced_absence_report, pattern_library, pg2, quadrangle_diagonal_test
from .geometry.field import NotPrimePowerError
from .geometry.plane import PlaneAxiomError
from .graph import Graph, components_and_bipartition, degeneracy_order, girth, k_core
from .graph6 import Graph6Error, decode, encode, read_graphs
from .randomized import (
    BipartitePattern,
    SamplerConfig,
    default_prefix_size,
    dependent_random_choice,
    estimate_induced_probability,
)
from .search import Pattern, contains_kss


class UsageError(Exception):
    pass


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class Run:
    def __init__(self, args: argparse.Namespace, argv: list[str]):
        self.args = args
        self.argv = argv
        self.out = Path(args.out)
        self.out.mkdir(parents=True, exist_ok=True)
        self.artifacts: list[Path] = []
        self.inputs: dict[str, str] = {}
        self.t0 = time.perf_counter()

    def input(self, path: str) -> Path:
        p = Path(path)
        if not p.exists():
            raise UsageError(f"input file {path} does not exist")
        self.inputs[str(p)] = _sha256(p)
        return p

    def write(self, name: str, text: str) -> Path:
        p = self.out / name
        p.write_text(text)
        self.artifacts.append(p)
        return p

    def track(self, path: Path) -> None:
        self.artifacts.append(path)

    def finish(self, ok: bool, summary: dict) -> int:
        summary = {"command": self.args.command, "ok": ok, **summary}
        self.write("summary.json", json.dumps(summary, indent=2, sort_keys=True, default=str) + "\n")
        params = {k: v for k, v in vars(self.args).items() if k not in ("func",)}
        manifest = {
            "command": self.args.command,
            "argv": self.argv,
            "parameters": params,
            "seeds": {"seed": self.args.seed},
            "input_hashes": self.inputs,
            "artifacts": {p.name: _sha256(p) for p in self.artifacts},
            "tool_version": __version__,
            "wall_time": time.perf_counter() - self.t0,
            "ok": ok,
        }
        (self.out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")
        return 0 if ok else 1


def _host(args, run: Run) -> Graph:
    if getattr(args, "host", None):
        graphs = read_graphs(run.input(args.host))
        if len(graphs) != 1:
            raise UsageError(f"{args.host} holds {len(graphs)} graphs, expected one")
        return graphs[0]
    if getattr(args, "pg2", None):
        return pg2(args.pg2).graph
    if getattr(args, "gnp", None):
        n, p = args.gnp
        return gnp(int(n), float(p), args.seed)
    raise UsageError("give a host with --host, --pg2 or --gnp")


def _pattern(spec: str, run: Run) -> Pattern:
    p = Path(spec)
    if p.exists():
        return Pattern.load(run.input(spec))
    return pattern_library(spec).pattern


def cmd_gen(args, run: Run) -> int:
    made = {}
    for q in args.pg2 or []:
        plane = pg2(q)
        g6, side = plane.export(run.out / f"pg2_{q}")
        run.track(g6)
        run.track(side)
        made[f"pg2_{q}"] = encode(plane.graph)
    for name in args.pattern or []:
        np_ = pattern_library(name)
        fname = np_.name.replace("(", "").replace(")", "")
        run.write(f"{fname}.g6", np_.pattern.to_text())
        made[np_.name] = encode(np_.graph)
    if args.gnp:
        n, p = args.gnp
        g = gnp(int(n), float(p), args.seed)
        run.write(f"gnp_{int(n)}_{p}_{args.seed}.g6", encode(g) + "\n")
        made["gnp"] = encode(g)
    if args.c4free:
        g = random_c4_free(args.c4free, args.seed)
        run.write(f"c4free_{args.c4free}_{args.seed}.g6", encode(g) + "\n")
        made["c4free"] = encode(g)
    if not made:
        raise UsageError("nothing to generate; use --pg2, --pattern, --gnp or --c4free")
    for k, v in made.items():
        print(f"{k}\t{v}")
    return run.finish(True, {"generated": made})


def cmd_analyze(args, run: Run) -> int:
    graphs = read_graphs(run.input(args.graphs)) if args.graphs else [decode(s) for s in args.graph6]
    if not graphs:
        raise UsageError("no graphs given")
    rows = []
    for g in graphs:
        d = degeneracy_order(g)
        dec = components_and_bipartition(g)
        gi = girth(g)
        cores = {k: len(k_core(g, k)) for k in range(1, d.degeneracy + 2)}
        row = {
            "graph6": encode(g) if g.n <= 62 else None,
            "n": g.n,
            "edges": g.num_edges,
            "degeneracy": d.degeneracy,
            "degeneracy_order": d.order,
            "core_sizes": cores,
            "girth": None if gi == float("inf") else gi,
            "components": len(dec.components),
            "bipartite": dec.bipartite,
            "odd_cycle": dec.odd_cycle,
        }
        if args.kss:
            row["contains_kss"] = contains_kss(g, args.kss) is not None
        rows.append(row)
        print(f"n={g.n} e={g.num_edges} degeneracy={d.degeneracy} girth={row['girth'] or 'inf'} "
              f"components={row['components']} bipartite={dec.bipartite}")
    run.write("analysis.json", json.dumps(rows, indent=2) + "\n")
    return run.finish(True, {"graphs": len(rows)})


def cmd_search(args, run: Run) -> int:
    constraints = ConstraintSet.load(run.input(args.constraints))
    if args.method == "exact":
        result = exact_extremal(args.n, constraints, cap=args.cap, threads=args.threads)
    else:
        warm = None
        if args.warm_start:
            warm = read_graphs(run.input(args.warm_start))[0]
        result = lower_bound_search(args.n, constraints, budget=args.budget, seed=args.seed, warm_start=warm)
    verdict = verify_certificate(result)
    run.write("certificate.json", result.dumps())
    print(f"n={result.n} value={result.value} method={result.method} certificate={encode(result.certificate)}")
    return run.finish(verdict.ok, {"n": result.n, "value": result.value, "method": result.method,
                                   "verified": verdict.ok})


def cmd_embed(args, run: Run) -> int:
    host = _host(args, run)
    pat = _pattern(args.pattern, run)
    bp = BipartitePattern.of(pat.graph)
    if args.drc:
        drc = dependent_random_choice(host, args.r or 2, args.t, trials=args.trials, seed=args.seed)
        if drc is None:
            print("dependent random choice failed")
            return run.finish(False, {"drc": "failed"})
        u1, u2 = int(drc.U1), int(drc.U2)
    else:
        dec = components_and_bipartition(host)
        if not dec.bipartite:
            raise UsageError("host is not bipartite; pass --drc to choose U1, U2")
        a, b = dec.sides()
        u1, u2 = int(a), int(b)
    r = args.r or max(1, degeneracy_order(pat.graph).degeneracy)
    prefix = args.prefix or default_prefix_size(host, u1, u2, r)
    kwargs = {"ordering_mode": args.ordering, "seed": args.seed}
    if args.epsilon:
        kwargs["epsilon"] = Fraction(args.epsilon)
    config = SamplerConfig.for_pattern(pat.graph, prefix, **kwargs)
    forbidden = sorted(pat.forbidden) if pat.forbidden else None
    est = estimate_induced_probability(host, u1, u2, bp, config, args.samples, forbidden=forbidden, r=r,
                                       locality=args.locality, batch_size=args.batch, threads=args.threads)
    est.write_csv(run.out / "samples.csv")
    run.track(run.out / "samples.csv")
    est.write_json(run.out / "estimate.json")
    run.track(run.out / "estimate.json")
    for k, v in est.summary().items():
        if k.endswith("fraction"):
            print(f"{k}\t{v:.6f}")
    return run.finish(True, est.summary())


def cmd_verify(args, run: Run) -> int:
    results = []
    ok = True
    for q in args.plane or []:
        try:
            plane = pg2(q)
            g = plane.graph
            degs = set(g.degrees())
            checks = {
                "axioms": True,
                "regular": degs == {q + 1},
                "bipartite": components_and_bipartition(g).bipartite,
                "vertices": g.n == 2 * (q * q + q + 1),
                "girth6": girth(g) == 6,
                "k22_free": contains_kss(g, 2) is None,
            }
        except PlaneAxiomError as exc:
            checks = {"axioms": False, "error": str(exc)}
        passed = all(v is True for k, v in checks.items() if k != "error")
        ok &= passed
        results.append({"check": "plane", "q": q, "passed": passed, **checks})
        print(f"plane q={q}: {'ok' if passed else 'FAILED'}")
    for q in args.quadrangle or []:
        rep = quadrangle_diagonal_test(q, trials=args.trials, seed=args.seed)
        passed = rep.verdict == rep.expected
        ok &= passed
        text = {"colinear-always": "diagonals always colinear", "never-colinear": "diagonals never colinear",
                "mixed": "diagonals sometimes colinear"}[rep.verdict]
        results.append({"check": "quadrangle", "q": q, "passed": passed, "verdict": rep.verdict,
                        "checked": rep.checked, "colinear": rep.colinear, "exhaustive": rep.exhaustive})
        print(f"quadrangle q={q}: {text} ({rep.colinear}/{rep.checked}, "
              f"{'exhaustive' if rep.exhaustive else 'sampled'})")
    if args.absence:
        patterns = args.patterns or ["heawood_minus"]
        for row in induced_absence_report(args.absence, patterns):
            results.append({"check": "absence", "q": row.q, "pattern": row.pattern,
                            "subgraph_present": row.subgraph_present, "induced_present": row.induced_present})
            print(f"absence q={row.q} {row.pattern}: subgraph={'present' if row.subgraph_present else 'absent'} "
                  f"induced={'present' if row.induced_present else 'absent'}")
    if not results:
        raise UsageError("nothing to verify; use --plane, --quadrangle or --absence")
    run.write("verify.json", json.dumps(results, indent=2) + "\n")
    return run.finish(ok, {"checks": len(results)})


def cmd_certify(args, run: Run) -> int:
    result = ExtremalResult.load(run.input(args.certificate))
    constraints = ConstraintSet.load(run.input(args.constraints)) if args.constraints else None
    verdict = verify_certificate(result, constraints)
    run.write("verdict.json", json.dumps(verdict.to_json(), indent=2) + "\n")
    for c in verdict.checks:
        print(f"{'ok' if c.ok else 'VIOLATED'}\t{c.constraint}" + (f"\twitness={c.witness}" if c.witness else ""))
    for note in verdict.notes:
        print(f"note: {note}")
    return run.finish(verdict.ok, {"verdict": verdict.ok})


def cmd_replay(args, run: Run) -> int:
    manifest = json.loads(run.input(args.manifest).read_text())
    argv = list(manifest["argv"])
    if "--out" in argv:
        i = argv.index("--out")
        argv[i + 1] = str(run.out / "rerun")
    else:
        argv += ["--out", str(run.out / "rerun")]
    code = main(argv)
    fresh = json.loads((run.out / "rerun" / "manifest.json").read_text())
    same = {name: fresh["artifacts"].get(name) == digest
            for name, digest in manifest["artifacts"].items() if name != "summary.json"}
    for name, eq in sorted(same.items()):
        print(f"{'identical' if eq else 'DIFFERS'}\t{name}")
    return run.finish(code == 0 and all(same.values()), {"artifacts": same, "exit_code": code})


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="indturan", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default="out")
    common.add_argument("--threads", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write hosts and patterns as graph6")
    p.add_argument("--pg2", type=int, action="append", metavar="Q")
    p.add_argument("--pattern", action="append", metavar="NAME")
    p.add_argument("--gnp", nargs=2, metavar=("N", "P"))
    p.add_argument("--c4free", type=int, metavar="N")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", parents=[common], help="cores, degeneracy, girth, components")
    p.add_argument("graphs", nargs="?", help="file of graph6 lines")
    p.add_argument("--graph6", action="append", default=[])
    p.add_argument("--kss", type=int, metavar="S", help="also test for K_{s,s}")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", parents=[common], help="extremal search from a constraint manifest")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--constraints", required=True)
    p.add_argument("--method", choices=["exact", "lower_bound"], default="exact")
    p.add_argument("--cap", type=int, default=10)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--warm-start", dest="warm_start")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("embed", parents=[common], help="sampler pipeline to CSV")
    p.add_argument("--host")
    p.add_argument("--pg2", type=int)
    p.add_argument("--gnp", nargs=2, metavar=("N", "P"))
    p.add_argument("--pattern", required=True, help="library name or pattern file")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--prefix", type=int)
    p.add_argument("--epsilon")
    p.add_argument("--ordering", choices=["fixed", "per_step_random"], default="fixed")
    p.add_argument("--locality", type=int)
    p.add_argument("--drc", action="store_true", help="choose U1, U2 by dependent random choice")
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--batch", type=int, default=1000)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", parents=[common], help="geometry battery")
    p.add_argument("--plane", type=int, action="append", metavar="Q")
    p.add_argument("--quadrangle", type=int, action="append", metavar="Q")
    p.add_argument("--absence", type=int, action="append", metavar="Q")
    p.add_argument("--patterns", action="append", metavar="NAME")
    p.add_argument("--trials", type=int, default=500)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", parents=[common], help="re-verify a JSON certificate")
    p.add_argument("certificate")
    p.add_argument("--constraints")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("replay", parents=[common], help="re-run a manifest and compare artifacts")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_replay)
    return ap


def _usage_summary(argv: list[str]) -> None:
    """Write summary.json for a command line argparse rejected."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--out", default="out")
    known, _ = pre.parse_known_args(argv)
    try:
        Path(known.out).mkdir(parents=True, exist_ok=True)
        (Path(known.out) / "summary.json").write_text(
            json.dumps({"command": argv[0] if argv else None, "ok": False, "error": "usage"}, indent=2) + "\n")
    except OSError:
        pass


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code:
            _usage_summary(argv)
        raise
    try:
        run = Run(args, argv)
        return args.func(args, run)
    except (UsageError, ManifestError, Graph6Error, NotPrimePowerError, ExactCapExceeded, ValueError) as exc:
        print(f"indturan {args.command}: error: {exc}", file=sys.stderr)
        try:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            (Path(args.out) / "summary.json").write_text(
                json.dumps({"command": args.command, "ok": False, "error": str(exc)}, indent=2) + "\n")
        except OSError:
            pass
        return 2


if __name__ == "__main__":
    sys.exit(main())
