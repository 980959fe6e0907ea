"""Command-line interface.

Exit codes: 0 success, 1 validation/parse errors, 2 usage errors. All
randomized subcommands take their seed from the config file or an explicit
--seed flag; there is no implicit entropy, so identical invocations
produce byte-identical output.
"""

import argparse
import dataclasses
import json
import sys

from . import io as cio
from .audit import (
    audit_justification,
    build_similarity,
    omission_indicator,
    parse_justification_table,
)
from .errors import CitenoiseError, ParseError
from .fixtures import builtin_fixture, fixture_names
from .metrics import analyze
from .simulate import (
    GenerativeConfig,
    aggregation_curve,
    decompose_pattern_noise,
    generate_system,
    replicate_decisions,
)

_CONFIG_FIELDS = {f.name for f in dataclasses.fields(GenerativeConfig)}


class UsageError(Exception):
    pass


def _load_config(path, seed_override):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: config must be a JSON object")
    unknown = set(raw) - _CONFIG_FIELDS
    if unknown:
        raise ParseError(f"{path}: unknown config keys: {sorted(unknown)}")
    if "bias_shift" in raw and isinstance(raw["bias_shift"], list):
        raw["bias_shift"] = tuple(raw["bias_shift"])
    if seed_override is not None:
        raw["seed"] = seed_override
    if "seed" not in raw:
        raise UsageError("a seed is required (in the config file or via --seed)")
    return GenerativeConfig(**raw)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_system_arg(paths):
    if len(paths) == 1:
        return cio.load_system(paths[0])
    if len(paths) == 2:
        return cio.load_system_csv(paths[0], paths[1])
    raise UsageError("--input takes one JSON document or a realized/accurate CSV pair")


def _cmd_analyze(args):
    system = _load_system_arg(args.input)
    report = analyze(system)
    if args.format == "json":
        _emit(cio.dump_json(cio.report_to_document(report, system)), args.out)
    else:
        _emit(cio.report_to_table(report, system), args.out)
    return 0


def _cmd_simulate(args):
    config = _load_config(args.config, args.seed)
    system, latent = generate_system(config)
    _emit(cio.dump_json(cio.system_to_document(system)), args.out)
    if args.latent:
        doc = {
            "schema_version": cio.SCHEMA_VERSION,
            "author_offsets": latent.author_offsets.tolist(),
            "interaction_offsets": latent.interaction_offsets.tolist(),
            "bias_offsets": latent.bias_offsets.tolist(),
            "flip_probs": latent.flip_probs.tolist(),
            "author_of_paper": latent.author_of_paper.tolist(),
            "accurate": latent.accurate.tolist(),
        }
        with open(args.latent, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(cio.dump_json(doc))
    return 0


def _cmd_retest(args):
    config = _load_config(args.config, args.seed)
    stable, occasion = decompose_pattern_noise(replicate_decisions(config))
    doc = {
        "schema_version": cio.SCHEMA_VERSION,
        "replicates": config.replicates,
        "stable_sigma": stable,
        "occasion_sigma": occasion,
    }
    _emit(cio.dump_json(doc), args.out)
    return 0


def _cmd_aggregate(args):
    config = _load_config(args.config, args.seed)
    try:
        ns = [int(n) for n in args.ns.split(",") if n]
    except ValueError:
        raise UsageError(f"--ns must be a comma-separated integer list: {args.ns!r}")
    rows = aggregation_curve(config, ns, args.trials)
    lines = ["n,empirical_se,theoretical_se"]
    for n, emp, theo in rows:
        lines.append(f"{n},{emp:.6f},{theo:.6f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _read_keys(path):
    with open(path, "r", encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def _cmd_audit(args):
    refs = _read_keys(args.refs)
    intext = _read_keys(args.intext)
    with open(args.jt, "r", encoding="utf-8") as fh:
        jt = parse_justification_table(fh.read())
    report = audit_justification(refs, intext, jt)
    doc = {
        "schema_version": cio.SCHEMA_VERSION,
        "unjustified_citations": list(report.unjustified_citations),
        "orphan_justifications": list(report.orphan_justifications),
        "duplicate_entries": [list(p) for p in report.duplicate_entries],
        "coverage_ratio": report.coverage_ratio,
    }
    _emit(cio.dump_json(doc), args.out)
    return 0


def _cmd_omissions(args):
    with open(args.sim, "r", encoding="utf-8") as fh:
        try:
            sim_doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.sim}: {exc}") from exc
    try:
        ids = [p["id"] for p in sim_doc["papers"]]
        stamps = [p["timestamp"] for p in sim_doc["papers"]]
        sim = build_similarity(ids, stamps, sim_doc["scores"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{args.sim}: malformed similarity document: {exc}") from exc
    with open(args.citations, "r", encoding="utf-8") as fh:
        try:
            cite_doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.citations}: {exc}") from exc
    try:
        if list(cite_doc["papers"]) != ids:
            raise ParseError("citation document paper ids disagree with similarity")
        cites = cite_doc["cites"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{args.citations}: malformed citation document: {exc}") from exc
    flags = omission_indicator(sim, cites, args.k)
    doc = {
        "schema_version": cio.SCHEMA_VERSION,
        "k": args.k,
        "flags": [
            {"citing": citing, "earlier": earlier, "flag": v}
            for (citing, earlier), v in sorted(flags.flags.items())
        ],
    }
    _emit(cio.dump_json(doc), args.out)
    return 0


def _cmd_fixtures(args):
    system = builtin_fixture(args.name)
    _emit(cio.dump_json(cio.system_to_document(system)), args.out)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="citenoise",
        description="Citation accuracy, noise, and bias analysis toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="compute the noise report for a system")
    p.add_argument("--input", nargs="+", required=True, metavar="FILE")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("simulate", help="generate a synthetic system")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--latent", help="write the latent-truth sidecar here")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("retest", help="stable/occasion test-retest decomposition")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_retest)

    p = sub.add_parser("aggregate", help="SE-vs-n aggregation curve as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--ns", required=True, help="comma-separated sample sizes")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_aggregate)

    p = sub.add_parser("audit", help="cross-check a citation justification table")
    p.add_argument("--refs", required=True)
    p.add_argument("--intext", required=True)
    p.add_argument("--jt", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("omissions", help="omission flags over a similarity matrix")
    p.add_argument("--sim", required=True)
    p.add_argument("--citations", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_omissions)

    p = sub.add_parser("fixtures", help="dump a built-in example system")
    p.add_argument("--name", required=True, choices=fixture_names())
    p.add_argument("--out")
    p.set_defaults(func=_cmd_fixtures)

    return parser


def run_cli(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CitenoiseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(run_cli())
