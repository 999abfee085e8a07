"""``coxrand`` command line: sample, analyze, expect, sweep, catalog.

Exit codes: 0 success, 2 configuration error, 3 search budget exhausted,
4 I/O error.  ``--threads`` only changes speed; output bytes never depend
on it.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import experiments
from .counting import moment_report, resolve_pattern
from .errors import BudgetExceeded, ConfigError, CoxrandError
from .graph import LabelledGraph, ProbabilitySchedule, label_to_json, sample
from .nerve import DEFAULT_FACE_BUDGET, betti_numbers, build_nerve
from .properties import (DEFAULT_CLIQUE_BUDGET, DEFAULT_SEARCH_BUDGET, AffineWitness,
                         JoinWitness, find_zk, is_fc_type, is_hyperbolic, nerve_dimension)
from .recognition import catalog_edges, catalog_types

EXIT_CONFIG, EXIT_BUDGET, EXIT_IO = 2, 3, 4


def _read_json(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from exc


def _write(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _schedule(args, cfg) -> ProbabilitySchedule:
    if args.p:
        return ProbabilitySchedule.parse(args.p)
    if "schedule" in cfg:
        return ProbabilitySchedule.from_json(cfg["schedule"])
    raise ConfigError("no schedule: pass --p LABEL=C[,ALPHA[,BETA]] or --config with a schedule")


def _n_values(args, cfg) -> list[int]:
    if args.n is not None:
        return list(args.n)
    if "n_values" in cfg:
        return [int(n) for n in cfg["n_values"]]
    if "n" in cfg:
        return [int(cfg["n"])]
    raise ConfigError("no n given: pass --n")


def _single_n(args, cfg) -> int:
    ns = _n_values(args, cfg)
    if len(ns) != 1:
        raise ConfigError("this command takes a single --n")
    return ns[0]


def _seed(args, cfg) -> int:
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
    if not 0 <= seed < 1 << 64:
        raise ConfigError("--seed must be an unsigned 64-bit integer")
    return seed


def _format(args, allowed, default):
    fmt = args.format or default
    if fmt not in allowed:
        raise ConfigError(f"--format {fmt} not supported here (choose from {', '.join(allowed)})")
    return fmt


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_sample(args, cfg):
    fmt = _format(args, ("json", "dot"), "json")
    g = sample(_single_n(args, cfg), _schedule(args, cfg), _seed(args, cfg))
    _write(_dumps(g.to_json()) if fmt == "json" else g.to_dot(args.include_infinite), args.out)


def _witness_json(w):
    if isinstance(w, AffineWitness):
        return {"kind": "affine", "vertices": list(w.vertices)}
    if isinstance(w, JoinWitness):
        return {"kind": "join", "s": list(w.s), "t": list(w.t)}
    return None


def analyze_graph(g: LabelledGraph, *, betti=False, zk=1, face_budget=DEFAULT_FACE_BUDGET,
                  clique_budget=DEFAULT_CLIQUE_BUDGET, search_budget=DEFAULT_SEARCH_BUDGET) -> dict:
    fc = is_fc_type(g, clique_budget)
    hyp = is_hyperbolic(g, budget=search_budget)
    report = {
        "n": g.n,
        "fc_type": fc.fc_type,
        "fc_witness": list(fc.witness_clique) if fc.witness_clique else None,
        "hyperbolic": hyp.hyperbolic,
        "witness": _witness_json(hyp.witness),
        "nerve_dim": nerve_dimension(g, clique_budget),
    }
    if betti:
        report["betti"] = betti_numbers(build_nerve(g, budget=face_budget)).betti
    if zk:
        any_copy = find_zk(g, zk)
        free_copy = find_zk(g, zk, True) if any_copy else None
        report["zk"] = {"k": zk,
                        "embedding": any_copy.to_json() if any_copy else None,
                        "no_common_neighbor": free_copy.to_json() if free_copy else None}
    return report


def cmd_analyze(args, cfg):
    _format(args, ("json",), "json")
    if args.graph:
        g = LabelledGraph.from_json(_read_json(args.graph))
    else:
        g = sample(_single_n(args, cfg), _schedule(args, cfg), _seed(args, cfg))
    report = analyze_graph(g, betti=args.betti, zk=args.zk, face_budget=args.budget_faces,
                           clique_budget=args.budget_cliques, search_budget=args.budget_search)
    _write(_dumps(report), args.out)


def _num(x) -> str:
    return "nan" if x is None or x != x else f"{float(x):.12g}"


def cmd_expect(args, cfg):
    fmt = _format(args, ("csv", "json"), "csv")
    spec = args.pattern or cfg.get("pattern")
    if spec is None:
        raise ConfigError("no pattern: pass --pattern")
    pattern = resolve_pattern(spec)
    schedule = _schedule(args, cfg)
    rows = []
    for n in _n_values(args, cfg):
        rep = moment_report(pattern, schedule, n, second=args.second_moment)
        sig = rep.asymptotic
        lead = None if sig is None else sig.coefficient * n ** sig.n_exponent * math.log(n) ** sig.log_exponent
        rows.append({"n": n, "b": rep.b, "exact": str(rep.exact_expectation),
                     "exact_decimal": _num(rep.exact_expectation), "leading": _num(lead),
                     "ratio": None if rep.ratio is None else _num(rep.ratio)})
    if fmt == "json":
        _write(_dumps({"pattern": pattern.to_json(), "rows": rows}), args.out)
        return
    cols = ["n", "b", "exact", "exact_decimal", "leading"] + (["ratio"] if args.second_moment else [])
    lines = [",".join(cols)] + [",".join(str(r[c]) for c in cols) for r in rows]
    _write("\n".join(lines) + "\n", args.out)


def sweep_config(args, cfg) -> experiments.ExperimentConfig:
    base = experiments.preset(args.preset).to_json() if args.preset else {}
    base.update(cfg)
    if args.p:
        base["schedule"] = ProbabilitySchedule.parse(args.p).to_json()
    if args.n:
        base["n_values"] = list(args.n)
    if args.trials is not None:
        base["trials"] = args.trials
    if args.seed is not None:
        base["seed"] = _seed(args, {})
    if args.property:
        base["properties"] = list(args.property)
    if "schedule" not in base:
        raise ConfigError("sweep needs --preset, --config or --p")
    budgets = dict(base.get("budgets", {}))
    for key, given in (("faces", args.budget_faces), ("cliques", args.budget_cliques),
                       ("search", args.budget_search)):
        if given is not None:
            budgets[key] = given
    base["budgets"] = budgets
    return experiments.ExperimentConfig.from_json(base)


def cmd_sweep(args, cfg):
    fmt = _format(args, ("csv", "json", "svg"), "csv")
    config = sweep_config(args, cfg)
    result = experiments.run(config, args.threads)
    if fmt == "csv":
        text = experiments.csv_text(result)
    elif fmt == "json":
        text = _dumps(result.to_json())
    else:
        text = experiments.svg_text(result)
    _write(text, args.out)


def catalog_entries() -> list[dict]:
    out = []
    for t in catalog_types():
        n, edges = catalog_edges(t)
        out.append({"type": t.name, "kind": t.kind, "vertices": n,
                    "edges": [[u, v, label_to_json(m)] for u, v, m in edges]})
    return out


def cmd_catalog(args, cfg):
    fmt = _format(args, ("json", "dot"), "json")
    entries = catalog_entries()
    if fmt == "json":
        _write(_dumps(entries), args.out)
        return
    blocks = []
    for e in entries:
        name = e["type"].replace("~", "affine_").replace("(", "_").replace(")", "")
        lines = [f'graph "{name}" {{', f'  label="{e["type"]}";']
        lines += [f"  {v};" for v in range(e["vertices"])]
        for u, v, m in e["edges"]:
            attr = "" if m == 3 else f' [label="{m}"]'
            lines.append(f"  {u} -- {v}{attr};")
        lines.append("}")
        blocks.append("\n".join(lines))
    _write("\n\n".join(blocks) + "\n", args.out)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _n_list(text):
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected N or N1,N2,...") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty n list")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file (experiment config shape); flags override it")
    common.add_argument("--seed", type=int, help="unsigned 64-bit seed")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=["json", "csv", "dot", "svg"])
    common.add_argument("--budget-faces", type=_positive)
    common.add_argument("--budget-cliques", type=_positive)
    common.add_argument("--budget-search", type=_positive)
    common.add_argument("--threads", type=_positive, default=None,
                        help="worker processes (default $COXRAND_THREADS or 1)")
    common.add_argument("--p", action="append", metavar="LABEL=C[,ALPHA[,BETA]]",
                        help="schedule term p_LABEL(n) = C n^ALPHA (ln n)^BETA; repeatable")
    common.add_argument("--n", type=_n_list, help="vertex count(s), comma separated")

    parser = argparse.ArgumentParser(prog="coxrand", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], help="draw one labelled graph")
    p.add_argument("--include-infinite", action="store_true", help="show infinity pairs in DOT")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("analyze", parents=[common], help="decide properties of one graph")
    p.add_argument("--graph", help="graph JSON file (otherwise one is sampled)")
    p.add_argument("--betti", action="store_true", help="also compute Betti numbers of the nerve")
    p.add_argument("--zk", type=int, default=1, help="look for Z_k with this k (0 disables)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("expect", parents=[common], help="exact and asymptotic expected counts")
    p.add_argument("--pattern", help="catalog entry such as triangle(3,3,3), or pattern JSON")
    p.add_argument("--second-moment", action="store_true")
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("sweep", parents=[common], help="Monte Carlo sweep over n")
    p.add_argument("--preset", help=f"one of: {', '.join(experiments.PRESET_NAMES)}")
    p.add_argument("--trials", type=_positive)
    p.add_argument("--property", action="append", help="property to estimate; repeatable")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", parents=[common], help="print the finite and affine diagrams")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _read_json(args.config) if args.config else {}
        if args.command != "sweep":
            args.budget_faces = args.budget_faces or DEFAULT_FACE_BUDGET
            args.budget_cliques = args.budget_cliques or DEFAULT_CLIQUE_BUDGET
            args.budget_search = args.budget_search or DEFAULT_SEARCH_BUDGET
        args.func(args, cfg)
    except BudgetExceeded as exc:
        print(f"coxrand: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"coxrand: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CoxrandError, ValueError) as exc:
        print(f"coxrand: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
