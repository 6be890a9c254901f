"""Command line entry point: ``quadcorrect <subcommand> ...``.

Exit codes: 0 success (warnings possible), 1 usage error, 2 data error.
Diagnostics go to stderr; data goes to files or stdout.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .codec import serialize_quads
from .corpus import (
    DEFAULT_ORDER,
    corrector_record,
    dataset_stats,
    export_legacy_line,
    read_corrector_corpus,
    read_legacy_file,
    read_quad_lists,
    read_sentences,
    write_corrector_corpus,
    write_jsonl,
    write_sentences,
)
from .errors import bar_chart_rows, classify_errors, migration_matrix
from .metrics import LengthMismatch, score_lists
from .quads import DEFAULT_TAXONOMY, Taxonomy
from .sim import ChannelConfig, run_pipeline_sim
from .synth import SynthConfig, qc_filter, synthesize_corpus
from .toydata import generate_corpus

log = logging.getLogger("quadcorrect")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
JOBS_ENV = "QUADCORRECT_JOBS"


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    subcommand: str
    config: dict
    inputs: list
    outputs: list
    seed: int | None = None
    version: str = __version__
    counts: dict = field(default_factory=dict)

    def write(self, path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n",
                              encoding="utf-8")


def _taxonomy(args) -> Taxonomy:
    return Taxonomy.from_file(args.taxonomy) if args.taxonomy else DEFAULT_TAXONOMY


def _order(text: str) -> tuple:
    order = tuple(part.strip() for part in text.split(","))
    if sorted(order) != sorted(DEFAULT_ORDER):
        raise argparse.ArgumentTypeError(
            "order must list aspect, category, sentiment, opinion once each")
    return order


def _load_corpus(path, args, taxonomy):
    """Canonical ``.jsonl`` records or a legacy gold file."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"cannot read {path}")
    if path.suffix == ".jsonl":
        return read_sentences(path), []
    corpus, rejects = read_legacy_file(path, args.order, taxonomy, args.lowercase)
    for r in rejects:
        log.warning("%s:%d rejected (%s)", path, r.line_no, r.reason)
    return corpus, rejects


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def cmd_import(args) -> int:
    taxonomy = _taxonomy(args)
    corpus, rejects = _load_corpus(args.input, args, taxonomy)
    if not corpus and not rejects:
        log.warning("%s holds no examples", args.input)
    stats = dataset_stats(corpus, args.name or Path(args.input).stem)
    outputs = []
    if args.out:
        if args.out.endswith(".jsonl"):
            write_sentences(args.out, corpus)
        else:
            Path(args.out).write_text(
                "".join(export_legacy_line(ex, args.order) + "\n" for ex in corpus),
                encoding="utf-8")
        outputs.append(args.out)
    report = stats.as_dict()
    report["rejected"] = [{"line": r.line_no, "reason": r.reason} for r in rejects]
    _emit(report)
    manifest = RunManifest("import", {"order": list(args.order), "lowercase": args.lowercase},
                           [args.input], outputs,
                           counts={"read": len(corpus) + len(rejects), "kept": len(corpus),
                                   "rejected": len(rejects)})
    if args.manifest or args.out:
        manifest.write(args.manifest or f"{args.out}.manifest.json")
    return EXIT_OK


def cmd_synthesize(args) -> int:
    taxonomy = _taxonomy(args)
    corpus, rejects = _load_corpus(args.input, args, taxonomy)
    cfg = SynthConfig(seed=args.seed, w_cor=args.w_cor, w_err=args.w_err,
                      max_span_len=args.max_span_len, identity=not args.no_identity)
    examples, reports = synthesize_corpus(corpus, cfg, taxonomy, jobs=args.jobs)
    kept, dropped = qc_filter(examples, taxonomy)
    for r in reports:
        log.info("example %d slot %d (%s): %s", r.example, r.slot, r.element, r.reason)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_jsonl(out / "corrector.jsonl", (corrector_record(ex) for ex in kept))
    write_corrector_corpus(kept, out / "corrector.txt", out / "corrector.meta.jsonl", taxonomy)
    write_jsonl(out / "qc_rejects.jsonl",
                (dict(corrector_record(ex), reason=reason) for ex, reason in dropped))
    write_jsonl(out / "synth_reports.jsonl", (asdict(r) for r in reports))

    by_prov = {}
    for ex in kept:
        by_prov[ex.provenance] = by_prov.get(ex.provenance, 0) + 1
    counts = {
        "sentences": len(corpus),
        "import_rejected": len(rejects),
        "synthesized": len(examples),
        "kept": len(kept),
        "qc_rejected": len(dropped),
        "unfilled_slots": len(reports),
        "provenance": dict(sorted(by_prov.items())),
    }
    RunManifest("synthesize", asdict(cfg) | {"stopwords": len(cfg.stopwords)},
                [args.input],
                [str(out / n) for n in ("corrector.jsonl", "corrector.txt",
                                        "corrector.meta.jsonl", "qc_rejects.jsonl",
                                        "synth_reports.jsonl")],
                seed=args.seed, counts=counts).write(args.manifest or out / "manifest.json")
    _emit(counts)
    return EXIT_OK


def _pairs(args, taxonomy):
    preds = read_quad_lists(args.pred, args.pred_format, taxonomy, args.order)
    golds = read_quad_lists(args.gold, args.gold_format, taxonomy, args.order)
    return preds, golds


def cmd_evaluate(args) -> int:
    taxonomy = _taxonomy(args)
    preds, golds = _pairs(args, taxonomy)
    report = score_lists(preds, golds, multiset=args.multiset)
    if args.json:
        _emit(report.as_dict())
    else:
        print(report.table(args.name))
    if args.manifest:
        RunManifest("evaluate", {"multiset": args.multiset}, [args.pred, args.gold], [],
                    counts={"examples": len(golds)}).write(args.manifest)
    return EXIT_OK


def cmd_analyze(args) -> int:
    taxonomy = _taxonomy(args)
    if args.corrector:
        examples, rejects = read_corrector_corpus(args.corrector, None, taxonomy)
        for r in rejects:
            log.warning("%s:%d rejected (%s)", args.corrector, r.line_no, r.reason)
        preds = [list(ex.draft) for ex in examples]
        golds = [list(ex.gold) for ex in examples]
        inputs = [args.corrector]
    else:
        if not (args.pred and args.gold):
            raise DataError("analyze needs PRED and GOLD, or --corrector FILE")
        preds, golds = _pairs(args, taxonomy)
        inputs = [args.pred, args.gold]
    if len(preds) != len(golds):
        raise LengthMismatch(len(preds), len(golds))
    summary = classify_errors(zip(preds, golds))
    if args.records:
        write_jsonl(args.records, (
            {"example": r.example, "pred": r.pred_index, "gold": r.gold_index,
             "mismatch": list(r.mismatch) if r.mismatch else None, "class": r.cls}
            for r in summary.records if r.is_error))
    _emit(summary.as_dict())
    if args.manifest:
        RunManifest("analyze", {}, inputs, [args.records] if args.records else [],
                    counts={"examples": len(golds)}).write(args.manifest)
    return EXIT_OK


def _write_chart(path, report) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=["class", "stage1", "stage2"])
        writer.writeheader()
        writer.writerows(bar_chart_rows(report))


def cmd_compare(args) -> int:
    taxonomy = _taxonomy(args)
    s1 = read_quad_lists(args.stage1, args.pred_format, taxonomy, args.order)
    s2 = read_quad_lists(args.stage2, args.pred_format, taxonomy, args.order)
    golds = read_quad_lists(args.gold, args.gold_format, taxonomy, args.order)
    if not len(s1) == len(s2) == len(golds):
        raise DataError(f"line counts differ: stage1={len(s1)} stage2={len(s2)} "
                        f"gold={len(golds)}")
    report = migration_matrix(s1, s2, golds)
    if args.chart_csv:
        _write_chart(args.chart_csv, report)
    _emit(report.as_dict())
    return EXIT_OK


def _channel(args) -> ChannelConfig:
    values = {}
    if args.config:
        values.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
    if args.eps is not None:
        for e in ("aspect", "category", "opinion", "sentiment"):
            values[f"eps_{e}"] = args.eps
    for e in ("aspect", "category", "opinion", "sentiment"):
        v = getattr(args, f"eps_{e}")
        if v is not None:
            values[f"eps_{e}"] = v
    for name in ("drop", "insert", "seed"):
        v = getattr(args, name)
        if v is not None:
            values[name] = v
    fix = values.pop("fix_prob", None)
    if args.fix_prob is not None:
        fix = args.fix_prob
    return ChannelConfig(**values), (0.5 if fix is None else fix)


def cmd_simulate(args) -> int:
    taxonomy = _taxonomy(args)
    corpus, _ = _load_corpus(args.input, args, taxonomy)
    channel, fix_prob = _channel(args)
    result = run_pipeline_sim(corpus, channel, fix_prob, taxonomy=taxonomy)
    report = {
        "channel": asdict(channel),
        "fix_prob": fix_prob,
        "stage1": result.stage1.as_dict(),
        "stage2": result.stage2.as_dict(),
        "migration": result.migration.as_dict(),
        "measured_rates": {e: result.channel.rate(e)
                           for e in ("aspect", "category", "opinion", "sentiment")},
    }
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n",
                                         encoding="utf-8")
        _write_chart(out / "chart.csv", result.migration)
        for name, preds in (("stage1.txt", result.drafts), ("stage2.txt", result.corrected)):
            (out / name).write_text(
                "".join(serialize_quads(q, taxonomy) + "\n" for q in preds), encoding="utf-8")
        outputs = [str(out / n) for n in ("report.json", "chart.csv", "stage1.txt", "stage2.txt")]
        RunManifest("simulate", asdict(channel) | {"fix_prob": fix_prob}, [args.input],
                    outputs, seed=channel.seed,
                    counts={"examples": len(corpus)}).write(out / "manifest.json")
    print(result.stage1.table("stage-1"), file=sys.stderr)
    print(result.stage2.table("stage-2"), file=sys.stderr)
    _emit(report)
    return EXIT_OK


def cmd_toy(args) -> int:
    corpus = generate_corpus(args.n, seed=args.seed)
    text = "".join(export_legacy_line(ex) + "\n" for ex in corpus)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--taxonomy", help="category labels, one per line")
    common.add_argument("--order", type=_order, default=DEFAULT_ORDER,
                        help="legacy tuple order (default aspect,category,sentiment,opinion)")
    common.add_argument("--lowercase", action="store_true", help="lowercase on import")
    common.add_argument("--manifest", help="where to write the run manifest")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="quadcorrect", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("import", parents=[common], help="read a legacy gold file")
    p.add_argument("input")
    p.add_argument("--out", help="output corpus (.jsonl canonical, else legacy)")
    p.add_argument("--name")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("synthesize", parents=[common], help="build a corrector corpus")
    p.add_argument("input")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--w-cor", type=float, default=1.0)
    p.add_argument("--w-err", type=float, default=1.0)
    p.add_argument("--no-identity", action="store_true", help="omit identity pairs")
    p.add_argument("--max-span-len", type=int, default=3)
    p.add_argument("--jobs", type=int, default=int(os.environ.get(JOBS_ENV, "1")))
    p.set_defaults(func=cmd_synthesize)

    fmt = ("auto", "linear", "legacy", "jsonl")
    p = sub.add_parser("evaluate", parents=[common], help="exact-match P/R/F1")
    p.add_argument("pred")
    p.add_argument("gold")
    p.add_argument("--pred-format", choices=fmt, default="auto")
    p.add_argument("--gold-format", choices=fmt, default="auto")
    p.add_argument("--multiset", action="store_true", help="count repeated quads")
    p.add_argument("--json", action="store_true")
    p.add_argument("--name", default="")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("analyze", parents=[common], help="classify prediction errors")
    p.add_argument("pred", nargs="?")
    p.add_argument("gold", nargs="?")
    p.add_argument("--corrector", help="corrector interchange file; drafts act as predictions")
    p.add_argument("--pred-format", choices=fmt, default="auto")
    p.add_argument("--gold-format", choices=fmt, default="auto")
    p.add_argument("--records", help="write per-error records (.jsonl)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", parents=[common], help="stage-1 to stage-2 error migration")
    p.add_argument("stage1")
    p.add_argument("stage2")
    p.add_argument("gold")
    p.add_argument("--pred-format", choices=fmt, default="auto")
    p.add_argument("--gold-format", choices=fmt, default="auto")
    p.add_argument("--chart-csv")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", parents=[common], help="noisy generator + oracle corrector")
    p.add_argument("input")
    p.add_argument("--config", help="JSON file with channel fields and optional fix_prob")
    p.add_argument("--eps", type=float, help="one rate for all four elements")
    for e in ("aspect", "category", "opinion", "sentiment"):
        p.add_argument(f"--eps-{e}", type=float)
    p.add_argument("--drop", type=float)
    p.add_argument("--insert", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--fix-prob", type=float)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("toy", help="write a template-generated toy corpus (legacy format)")
    p.add_argument("-n", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_toy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (DataError, OSError, ValueError, KeyError) as exc:
        # LengthMismatch, CorpusFormatError and JSON errors are ValueErrors
        print(f"quadcorrect: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
