"""Batch command-line interface.

Subcommands: map a vocabulary, run the parameter sweep, evaluate a mapping
against a gold standard, extract a salient-taxonomy closure, and run the
random or trigram baselines.  Flags can be pre-loaded from a ``key = value``
config file; explicit flags win.  Every command is deterministic given its
flags, so re-running never changes output bytes.

Exit codes: 0 success, 1 input or data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from vocmap import evaluation as ev
from vocmap import mapper, vocab, wordnet

_DATA_ERRORS = (vocab.ParseError, wordnet.LoadError, OSError, ValueError)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _load_store(path: str) -> wordnet.WordNetStore:
    p = Path(path)
    if p.is_dir():
        return wordnet.load_wndb_dir(p)
    return wordnet.load_fixture(p.read_bytes())


def _load_vocabulary(path: str) -> vocab.Vocabulary:
    return vocab.parse_vocabulary_ntriples(Path(path).read_bytes(),
                                           name=Path(path).stem)


def _read_roots(path: str, store: wordnet.WordNetStore):
    names = [line.strip() for line in Path(path).read_text("utf-8").splitlines()
             if line.strip() and not line.lstrip().startswith("#")]
    return [store.resolve_synset_name(name) for name in names]


def _write(directory: Path, name: str, payload: bytes) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    (directory / name).write_bytes(payload)


def _write_report(directory: Path, lines: list[str]) -> None:
    _write(directory, "run-report.txt",
           ("\n".join(lines) + "\n").encode("utf-8"))


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise vocab.ParseError("expected 'key = value'", line_no)
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _merge_config(args: argparse.Namespace,
                  defaults: dict[str, object]) -> argparse.Namespace:
    """Fill unset flags from --config, then from hard defaults."""
    file_values = _load_config_file(args.config) if getattr(args, "config", None) \
        else {}
    for key, default in defaults.items():
        if getattr(args, key, None) is not None:
            continue
        if key in file_values:
            raw = file_values[key]
            caster = type(default) if default is not None else str
            if caster is bool:
                value: object = raw.lower() in ("1", "true", "yes", "on")
            elif caster in (int, float):
                value = caster(raw)
            else:
                value = raw
            setattr(args, key, value)
        else:
            setattr(args, key, default)
    return args


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


# ---------------------------------------------------------------------------
# Commands

_MAP_DEFAULTS = {"min_overlap": 0, "min_freq": 0, "out": "out",
                 "taxonomy_roots": None, "alt_labels": False}


def cmd_map(args: argparse.Namespace) -> int:
    args = _merge_config(args, _MAP_DEFAULTS)
    try:
        store = _load_store(args.wordnet)
        vocabulary = _load_vocabulary(args.vocab)
        taxonomy = None
        if args.taxonomy_roots:
            taxonomy = store.taxonomy_closure(_read_roots(args.taxonomy_roots,
                                                          store))
        config = mapper.MapperConfig(ol_min=args.min_overlap,
                                     f_min=args.min_freq,
                                     taxonomy=taxonomy,
                                     use_alt_labels=args.alt_labels)
        mapping = mapper.map_vocabulary(vocabulary, store, config)
        out = Path(args.out)
        _write(out, "mapping.nt", vocab.serialize_mappings_ntriples(mapping))
        _write(out, "mapping.tsv", vocab.serialize_mappings_tsv(mapping))
        report = [
            f"vocabulary: {args.vocab} ({len(vocabulary)} terms)",
            f"wordnet: {args.wordnet} ({len(store)} synsets)",
            f"min_overlap: {config.ol_min}",
            f"min_freq: {config.f_min}",
            f"taxonomy: {'on (' + str(len(taxonomy)) + ' synsets)' if taxonomy is not None else 'off'}",
            f"alt_labels: {'on' if config.use_alt_labels else 'off'}",
            f"mappings: {len(mapping)}",
        ]
        report += [f"warning: {w}" for w in vocabulary.warnings]
        report += [f"warning: {w}" for w in mapping.warnings]
        _write_report(out, report)
    except _DATA_ERRORS as exc:
        return _fail(str(exc))
    return 0


_SWEEP_DEFAULTS = {"workers": 10, "out": "out", "taxonomy_roots": None,
                   "ol_min": None, "f_min": None, "taxonomy": None,
                   "timings": False}


def cmd_sweep(args: argparse.Namespace) -> int:
    args = _merge_config(args, _SWEEP_DEFAULTS)
    try:
        store = _load_store(args.wordnet)
        vocabulary = _load_vocabulary(args.vocab)
        gold = vocab.load_gold(Path(args.gold).read_bytes())
        grid_kwargs = {}
        if args.ol_min is not None:
            grid_kwargs["ol_min_values"] = _int_list(str(args.ol_min))
        if args.f_min is not None:
            grid_kwargs["f_min_values"] = _int_list(str(args.f_min))
        if args.taxonomy is not None:
            options = tuple(part.strip() == "on"
                            for part in str(args.taxonomy).split(","))
            grid_kwargs["taxonomy_options"] = options
        grid = ev.SweepGrid(**grid_kwargs)
        taxonomy = None
        if any(on for on, _, _ in grid.points()):
            if not args.taxonomy_roots:
                print("error: the grid includes taxonomy=on; --taxonomy-roots "
                      "is required", file=sys.stderr)
                return 2
            taxonomy = store.taxonomy_closure(_read_roots(args.taxonomy_roots,
                                                          store))
        rows = ev.run_sweep(vocabulary, store, gold, grid=grid,
                            taxonomy=taxonomy, workers=args.workers)
        out = Path(args.out)
        _write(out, "sweep.tsv", ev.sweep_tsv(rows,
                                              include_timings=args.timings))
        _write(out, "summary.tsv", ev.summary_tsv(rows))
    except _DATA_ERRORS as exc:
        return _fail(str(exc))
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        machine = vocab.load_gold(Path(args.mapping).read_bytes())
        gold = vocab.load_gold(Path(args.gold).read_bytes())
        result = ev.evaluate(machine, gold)
    except _DATA_ERRORS as exc:
        return _fail(str(exc))
    print(f"P={result.precision:.4f} R={result.recall:.4f} "
          f"F={result.f_measure:.4f}")
    return 0


def cmd_taxonomy(args: argparse.Namespace) -> int:
    try:
        store = _load_store(args.wordnet)
        closure = store.taxonomy_closure(_read_roots(args.roots, store))
        names = sorted(store.synset_name(sid) for sid in closure)
        payload = "".join(f"{name}\n" for name in names)
        payload += f"# count: {len(names)}\n"
        if args.out:
            path = Path(args.out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(payload, "utf-8")
        else:
            sys.stdout.write(payload)
    except _DATA_ERRORS as exc:
        return _fail(str(exc))
    return 0


_BASELINE_DEFAULTS = {"seed": 0, "threshold": 0.9, "out": "out"}


def cmd_baseline(args: argparse.Namespace) -> int:
    args = _merge_config(args, _BASELINE_DEFAULTS)
    try:
        store = _load_store(args.wordnet)
        vocabulary = _load_vocabulary(args.vocab)
        if args.kind == "random":
            mapping = mapper.random_baseline_mapping(vocabulary, store,
                                                     seed=args.seed)
        else:
            strategy = "labels" if args.kind == "trigram-labels" \
                else "definitions"
            mapping = ev.trigram_baseline_mapping(vocabulary, store,
                                                  threshold=args.threshold,
                                                  strategy=strategy)
        out = Path(args.out)
        _write(out, "mapping.nt", vocab.serialize_mappings_ntriples(mapping))
        _write(out, "mapping.tsv", vocab.serialize_mappings_tsv(mapping))
    except _DATA_ERRORS as exc:
        return _fail(str(exc))
    return 0


# ---------------------------------------------------------------------------
# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vocmap",
        description="Map SKOS vocabulary terms onto WordNet noun synsets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("map", help="map a vocabulary onto WordNet")
    p_map.add_argument("--vocab", required=True, help="vocabulary N-Triples file")
    p_map.add_argument("--wordnet", required=True,
                       help="WNDB dict directory or JSON fixture file")
    p_map.add_argument("--taxonomy-roots", dest="taxonomy_roots",
                       help="file of salient root synset names, one per line")
    p_map.add_argument("--min-overlap", dest="min_overlap", type=int)
    p_map.add_argument("--min-freq", dest="min_freq", type=int)
    p_map.add_argument("--alt-labels", dest="alt_labels", action="store_const",
                       const=True, help="fall back to altLabels")
    p_map.add_argument("--out")
    p_map.add_argument("--config", help="key = value file; flags override it")
    p_map.set_defaults(func=cmd_map)

    p_sweep = sub.add_parser("sweep", help="evaluate the whole parameter grid")
    p_sweep.add_argument("--vocab", required=True)
    p_sweep.add_argument("--wordnet", required=True)
    p_sweep.add_argument("--gold", required=True,
                         help="gold-standard mapping N-Triples file")
    p_sweep.add_argument("--taxonomy-roots", dest="taxonomy_roots")
    p_sweep.add_argument("--workers", type=int)
    p_sweep.add_argument("--ol-min", dest="ol_min",
                         help="comma-separated overlap thresholds")
    p_sweep.add_argument("--f-min", dest="f_min",
                         help="comma-separated frequency thresholds")
    p_sweep.add_argument("--taxonomy",
                         help="taxonomy options, e.g. 'off,on' or 'off'")
    p_sweep.add_argument("--timings", action="store_const", const=True,
                         help="write real wall times into sweep.tsv")
    p_sweep.add_argument("--out")
    p_sweep.add_argument("--config")
    p_sweep.set_defaults(func=cmd_sweep)

    p_eval = sub.add_parser("eval", help="score a mapping against a gold file")
    p_eval.add_argument("--mapping", required=True)
    p_eval.add_argument("--gold", required=True)
    p_eval.set_defaults(func=cmd_eval)

    p_tax = sub.add_parser("taxonomy", help="extract a salient-taxonomy closure")
    p_tax.add_argument("--wordnet", required=True)
    p_tax.add_argument("--roots", required=True)
    p_tax.add_argument("--out")
    p_tax.set_defaults(func=cmd_taxonomy)

    p_base = sub.add_parser("baseline", help="run a baseline mapper")
    p_base.add_argument("--kind", required=True,
                        choices=["random", "trigram-labels",
                                 "trigram-definitions"])
    p_base.add_argument("--vocab", required=True)
    p_base.add_argument("--wordnet", required=True)
    p_base.add_argument("--seed", type=int)
    p_base.add_argument("--threshold", type=float)
    p_base.add_argument("--out")
    p_base.add_argument("--config")
    p_base.set_defaults(func=cmd_baseline)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
