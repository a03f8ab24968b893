"""Command-line entry point: rank, reduce, eval, compare, cuts.

Exit codes: 0 success, 2 I/O or parse error, 3 invalid configuration.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from . import dataset as dsmod
from .baselines import ReliefFConfig, rank_relieff, rank_univariate
from .classifiers import get_classifier
from .compare import compare_results
from .consistency import rank_pairwise_consistency
from .correlation import rank_pairwise_correlation
from .dataset import Dataset, DatasetError
from .discretize import compute_cut_points
from .evaluation import CvResult, evaluate_ranking, stratified_folds
from .ranking import Ranking

log = logging.getLogger("pairrank")

EXIT_IO = 2
EXIT_CONFIG = 3

METHODS = ("pairwise-correlation", "pairwise-consistency", "info-gain", "chi-squared",
           "correlation", "relieff")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    input: str | None = None
    format: str | None = None
    class_spec: str | None = None
    methods: list[str] = field(default_factory=list)
    q_list: list[str] = field(default_factory=lambda: ["3", "log2", "50", "100"])
    classifiers: list[str] = field(default_factory=lambda: ["naive-bayes", "knn", "zeror"])
    folds: int = 10
    repeats: int = 10
    seed: int = 42
    threads: int = 1
    alpha: float = 0.05
    ttest: str = "resampled"
    output: str = "-"
    output_format: str | None = None
    missing_token: str = "?"

    def validate(self):
        if self.threads < 1:
            raise ConfigError("--threads must be >= 1")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
        for q in self.q_list:
            if q.lower() not in ("log2", "log2(n)") and (not q.lstrip("-").isdigit() or int(q) < 1):
                raise ConfigError(f"invalid q value {q!r}")
        for c in self.classifiers:
            try:
                get_classifier(c)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.folds < 2 or self.repeats < 1:
            raise ConfigError("--folds must be >= 2 and --repeats >= 1")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("--alpha must lie in [0, 1]")


def rank_dataset(ds: Dataset, method: str, threads: int = 1, seed: int = 42) -> Ranking:
    if method == "pairwise-correlation":
        return rank_pairwise_correlation(ds, threads)
    if method == "pairwise-consistency":
        return rank_pairwise_consistency(ds, threads)
    if method in ("info-gain", "chi-squared", "correlation"):
        return rank_univariate(ds, method, threads)
    if method == "relieff":
        return rank_relieff(ds, ReliefFConfig(rng_seed=seed), threads)
    raise ConfigError(f"unknown method {method!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _split(values):
    out = []
    for v in values or []:
        out.extend(t.strip() for t in v.split(",") if t.strip())
    return out


def _common(p):
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["csv", "arff"])
    p.add_argument("--class", dest="class_spec")
    p.add_argument("--missing-token", default="?")
    p.add_argument("--threads", type=int)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--output", default="-")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pairrank", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rank", help="rank attributes, TSV out")
    _common(p)
    p.add_argument("--method", required=True)

    p = sub.add_parser("reduce", help="write the top-q attributes plus class")
    _common(p)
    p.add_argument("--ranking", required=True, help="TSV written by 'rank'")
    p.add_argument("--q", required=True)
    p.add_argument("--output-format", choices=["csv", "arff"])

    for name, helptext in (("eval", "cross-validate top-q reduced datasets"),
                           ("compare", "paired t-tests and wins/losses ranking")):
        p = sub.add_parser(name, help=helptext)
        if name == "compare":
            p.add_argument("--input")
            p.add_argument("--results", nargs="+", help="JSON files from 'eval --output-format json'")
            for flag, kw in (("--format", {"choices": ["csv", "arff"]}), ("--class", {"dest": "class_spec"}),
                             ("--missing-token", {"default": "?"}), ("--threads", {"type": int}),
                             ("--seed", {"type": int, "default": 42}), ("--output", {"default": "-"})):
                p.add_argument(flag, **kw)
            p.add_argument("--alpha", type=float, default=0.05)
            p.add_argument("--ttest", choices=["plain", "resampled"], default="resampled")
            p.add_argument("--method", action="append")
        else:
            _common(p)
            p.add_argument("--method", action="append", required=True)
            p.add_argument("--output-format", choices=["tsv", "json"], default="tsv")
        p.add_argument("--q", action="append")
        p.add_argument("--classifiers", action="append")
        p.add_argument("--folds", type=int, default=10)
        p.add_argument("--repeats", type=int, default=10)

    p = sub.add_parser("cuts", help="export MDL cut points as TSV")
    _common(p)
    return parser


def _config(args) -> RunConfig:
    threads = args.threads
    if threads is None:
        env = os.environ.get("PAIRRANK_THREADS")
        try:
            threads = int(env) if env else 1
        except ValueError:
            raise ConfigError(f"PAIRRANK_THREADS={env!r} is not an integer") from None
    cfg = RunConfig(input=getattr(args, "input", None), format=getattr(args, "format", None),
                    class_spec=getattr(args, "class_spec", None),
                    seed=args.seed, threads=threads, output=args.output,
                    missing_token=getattr(args, "missing_token", "?"))
    method = getattr(args, "method", None)
    cfg.methods = _split(method if isinstance(method, list) else [method] if method else [])
    if getattr(args, "q", None):
        cfg.q_list = _split(args.q if isinstance(args.q, list) else [args.q])
    if getattr(args, "classifiers", None):
        cfg.classifiers = _split(args.classifiers)
    for key in ("folds", "repeats", "alpha", "ttest", "output_format"):
        if hasattr(args, key):
            setattr(cfg, key, getattr(args, key))
    cfg.validate()
    return cfg


def _load(cfg: RunConfig) -> Dataset:
    class_spec = cfg.class_spec
    ds = dsmod.load(cfg.input, class_spec, cfg.missing_token, cfg.format)
    log.info("loaded %s: %d instances, %d attributes, %d classes",
             cfg.input, ds.n_instances, ds.n_attributes, ds.n_classes)
    return ds


class _Out:
    def __init__(self, path: str):
        self.path = path

    def __enter__(self):
        if self.path == "-":
            return sys.stdout
        self.fh = open(self.path, "w", newline="", encoding="utf-8")
        return self.fh

    def __exit__(self, *exc):
        if self.path != "-":
            self.fh.close()


def write_ranking(ranking: Ranking, names, fh):
    fh.write("rank\tattribute\tscore\n")
    for pos, (i, score) in enumerate(ranking.entries, start=1):
        fh.write(f"{pos}\t{names[i]}\t{score:.6f}\n")


def read_ranking_names(path: str) -> list[str]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh, delimiter="\t"))
    if not rows or rows[0][:2] != ["rank", "attribute"]:
        raise DatasetError(f"{path}: not a ranking TSV (expected header 'rank\\tattribute\\tscore')")
    return [r[1] for r in rows[1:] if r]


def cmd_rank(cfg: RunConfig) -> int:
    if len(cfg.methods) != 1:
        raise ConfigError("rank takes exactly one --method")
    ds = _load(cfg)
    ranking = rank_dataset(ds, cfg.methods[0], cfg.threads, cfg.seed)
    with _Out(cfg.output) as fh:
        write_ranking(ranking, ds.attribute_names, fh)
    return 0


def cmd_reduce(cfg: RunConfig, ranking_path: str, q: str, out_format: str | None) -> int:
    ds = _load(cfg)
    names = read_ranking_names(ranking_path)
    missing = [n for n in names if n not in ds.attribute_names]
    if missing:
        raise ConfigError(f"ranking references unknown attribute {missing[0]!r}")
    from .evaluation import resolve_q
    try:
        qv = resolve_q(q, ds.n_attributes)
    except ValueError:
        raise ConfigError(f"invalid q value {q!r}") from None
    if qv < 1 or qv > ds.n_attributes or qv > len(names):
        raise ConfigError(f"q={qv} exceeds the {min(ds.n_attributes, len(names))} ranked attributes")
    reduced = dsmod.project(ds, [ds.index_of(n) for n in names[:qv]])
    fmt = out_format or ("arff" if cfg.output.lower().endswith(".arff") else "csv")
    with _Out(cfg.output) as fh:
        (dsmod.write_arff if fmt == "arff" else dsmod.write_csv)(reduced, fh)
    return 0


def _evaluate(cfg: RunConfig, ds: Dataset) -> list[CvResult]:
    plan = stratified_folds(ds, cfg.folds, cfg.repeats, cfg.seed)
    rows = []
    for method in cfg.methods:
        log.info("ranking with %s", method)
        ranking = rank_dataset(ds, method, cfg.threads, cfg.seed)
        qs = [q for q in cfg.q_list]
        try:
            rows.extend(evaluate_ranking(ds, ranking, qs, cfg.classifiers, plan=plan,
                                         threads=cfg.threads))
        except DatasetError as exc:
            raise ConfigError(str(exc)) from None
    return rows


def cmd_eval(cfg: RunConfig) -> int:
    if not cfg.methods:
        raise ConfigError("eval needs --method")
    ds = _load(cfg)
    rows = _evaluate(cfg, ds)
    with _Out(cfg.output) as fh:
        if cfg.output_format == "json":
            json.dump({"dataset": ds.name, "results": [r.to_dict() for r in rows]}, fh, indent=1)
            fh.write("\n")
        else:
            fh.write("method\tq\tclassifier\tmean\tstddev\n")
            for r in rows:
                fh.write(f"{r.method}\t{r.q}\t{r.classifier}\t{r.mean:.6f}\t{r.std:.6f}\n")
    return 0


def cmd_compare(cfg: RunConfig, result_paths) -> int:
    dataset = ""
    if result_paths:
        results = []
        for path in result_paths:
            try:
                with open(path, encoding="utf-8") as fh:
                    payload = json.load(fh)
                dataset = payload.get("dataset", dataset)
                results.extend(CvResult.from_dict(d) for d in payload["results"])
            except (KeyError, TypeError, json.JSONDecodeError) as exc:
                raise DatasetError(f"{path}: malformed results file ({exc})") from exc
        sigs = {r.plan_signature for r in results}
        if len(sigs) > 1:
            raise ConfigError(f"results come from different fold plans: {sorted(sigs)}")
    elif cfg.input:
        ds = _load(cfg)
        dataset = ds.name
        results = _evaluate(cfg, ds)
    else:
        raise ConfigError("compare needs --results or --input with --method")
    methods = sorted({r.method for r in results})
    if len(methods) < 2:
        raise ConfigError("compare needs results from at least two methods")
    correction = "none" if cfg.ttest == "plain" else "resampled"
    outcomes, table, best = compare_results(results, cfg.alpha, correction, dataset)
    payload = {
        "alpha": cfg.alpha,
        "ttest": cfg.ttest,
        "outcomes": [o.to_dict() for o in outcomes],
        "wins_losses": [{"method": r.method, "wins": r.wins, "losses": r.losses,
                         "difference": r.difference, "rank": r.rank} for r in table],
        "best_count": [{"method": m, "count": c, "rank": k} for m, c, k in best],
    }
    with _Out(cfg.output) as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    return 0


def cmd_cuts(cfg: RunConfig) -> int:
    ds = _load(cfg)
    cuts = compute_cut_points(ds, cfg.threads)
    with _Out(cfg.output) as fh:
        for i in sorted(cuts):
            if ds.columns[i].kind != "numeric":
                continue
            fh.write("\t".join([ds.attribute_names[i], *(repr(c) for c in cuts[i].cuts)]) + "\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a flag error; keep the code, skip the raise
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        if args.command == "rank":
            return cmd_rank(cfg)
        if args.command == "reduce":
            return cmd_reduce(cfg, args.ranking, args.q, args.output_format)
        if args.command == "eval":
            return cmd_eval(cfg)
        if args.command == "compare":
            return cmd_compare(cfg, args.results)
        return cmd_cuts(cfg)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"pairrank: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DatasetError, OSError) as exc:
        print(f"pairrank: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
