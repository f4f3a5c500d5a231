"""Command-line interface.

Exit codes: 0 = certified / property holds, 1 = failures found / property
fails, 2 = resource cap exceeded or unreadable input.  Results go to files,
one summary line goes to stdout, diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import decomposition as td
from .config import Config, get_config, load_config, set_config
from .construct import ConstructionResult, build
from .errors import ChordpartError, ParseError, ResourceCapError
from .formats import read_graph, write_graph
from .recognition import is_chordal, is_perfect_small
from .verify import verify

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CAP = 2

_SUFFIX = {"graph6": ".g6", "json": ".json", "dot": ".dot"}
_LEMMAS = {"chordal-lemma": "chordal", "perfect-lemma": "perfect", "general-lemma": "general"}


def _apply_overrides(cfg: Config, args: argparse.Namespace) -> Config:
    caps = cfg.caps
    for item in args.cap or []:
        name, _, value = item.partition("=")
        if name.replace("-", "_") not in {f.name for f in dataclasses.fields(caps)} or not value.isdigit():
            raise ValueError(f"bad --cap {item!r}; expected NAME=INTEGER")
        caps = dataclasses.replace(caps, **{name.replace("-", "_"): int(value)})
    changes = {"caps": caps}
    if getattr(args, "workers", None) is not None:
        changes["workers"] = args.workers
    if getattr(args, "out_dir", None) is not None:
        changes["output_dir"] = args.out_dir
    return dataclasses.replace(cfg, **changes)


def _stem(res: ConstructionResult) -> str:
    t = f"_t{res.t}" if res.t is not None else ""
    return f"{res.family}_k{res.k}{t}_r{res.r}"


def cmd_construct(args: argparse.Namespace) -> int:
    out = Path(get_config().output_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        res = build(args.family, args.k, args.r, args.t, force=args.force_size)
    except ResourceCapError as exc:
        print(
            f"refused: predicted {exc.size} vertices for {args.family} k={args.k} r={args.r}"
            + (f" t={args.t}" if args.t is not None else "")
            + f" exceeds cap {exc.cap}; pass --force-size to build anyway",
            file=sys.stderr,
        )
        return EXIT_CAP
    stem = args.name or _stem(res)
    for fmt in args.format:
        write_graph(res.graph, out / f"{stem}{_SUFFIX[fmt]}", fmt)
    if res.decomposition is not None:
        (out / f"{stem}.decomp.json").write_text(td.dumps(res.decomposition), encoding="utf-8")
    log = {"params": res.params, "predicted_size": res.predicted_size,
           "attachments": [a.to_dict() for a in res.attachment_log]}
    (out / f"{stem}.log.json").write_text(json.dumps(log, sort_keys=True) + "\n", encoding="utf-8")
    line = f"{stem}: n={res.graph.n} m={res.graph.m} predicted={res.predicted_size}"
    if res.decomposition is not None:
        line += f" width={td.width(res.decomposition)} (bound <= {res.bound - 1})"
    print(line)
    return EXIT_OK


def _graph_for_verify(args: argparse.Namespace):
    if args.graph:
        return read_graph(args.graph), Path(args.graph).stem
    res = build(args.family, args.k, args.r, args.t)
    return res.graph, _stem(res)


def cmd_verify(args: argparse.Namespace) -> int:
    lemma = _LEMMAS[args.lemma]
    if lemma == "general" and args.t is None:
        print("error: general-lemma needs -t", file=sys.stderr)
        return EXIT_CAP
    G, stem = _graph_for_verify(args)
    out = Path(get_config().output_dir)
    out.mkdir(parents=True, exist_ok=True)
    stream_path = Path(args.stream) if args.stream else out / f"{stem}.{lemma}.ndjson"
    report_path = Path(args.report) if args.report else out / f"{stem}.{lemma}.report.json"
    with open(stream_path, "w", encoding="utf-8") as stream:
        report = verify(G, lemma, args.k, args.r, args.t, stream=stream, stream_all=args.stream_all)
    report_path.write_text(report.to_json(), encoding="utf-8")
    print(
        f"{report.verdict}: {report.partition_count} connected partitions, "
        f"{report.filtered_count} in class, {len(report.failures)} failures; "
        f"report {report_path}; stream {stream_path}"
    )
    return EXIT_OK if report.certified else EXIT_FAIL


def cmd_check(args: argparse.Namespace) -> int:
    G = read_graph(args.graph)
    if args.property == "chordal":
        res = is_chordal(G)
        body = {"property": "chordal", "holds": res.chordal,
                "peo": list(res.ordering) if res.ordering else None,
                "hole": list(res.hole) if res.hole else None}
    elif args.property == "perfect":
        res = is_perfect_small(G)
        body = {"property": "perfect", "holds": res.perfect,
                "odd_cycle": list(res.cycle) if res.cycle else None,
                "in_complement": res.antihole}
    else:
        if not args.decomp:
            print("error: treewidth-cert needs --decomp", file=sys.stderr)
            return EXIT_CAP
        T = td.loads(Path(args.decomp).read_text(encoding="utf-8"))
        violations = td.validate(G, T)
        body = {"property": "treewidth-cert", "holds": not violations,
                "width": td.width(T) if T.bags else None,
                "violations": [{"kind": v.kind, "subject": list(v.subject), "message": v.message}
                               for v in violations]}
    print(json.dumps(body, sort_keys=True))
    return EXIT_OK if body["holds"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chordpart", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON config file (default: $CHORDPART_CONFIG)")
    p.add_argument("--cap", action="append", metavar="NAME=VALUE", help="override a resource cap")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a counterexample family instance")
    c.add_argument("family", choices=["chordal", "perfect", "general"])
    c.add_argument("-k", type=int, required=True)
    c.add_argument("-r", type=int, required=True)
    c.add_argument("-t", type=int)
    c.add_argument("--format", nargs="+", choices=list(_SUFFIX), default=["graph6", "json"])
    c.add_argument("--out-dir")
    c.add_argument("--name", help="output file stem")
    c.add_argument("--force-size", action="store_true", help="build even above the size cap")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="exhaustively check a lemma on a graph")
    v.add_argument("lemma", choices=list(_LEMMAS))
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph6 or JSON file")
    src.add_argument("--family", choices=["chordal", "perfect", "general"])
    v.add_argument("-k", type=int, required=True)
    v.add_argument("-r", type=int, required=True)
    v.add_argument("-t", type=int)
    v.add_argument("--workers", type=int)
    v.add_argument("--out-dir")
    v.add_argument("--report")
    v.add_argument("--stream", help="NDJSON path (failures, or every partition with --stream-all)")
    v.add_argument("--stream-all", action="store_true")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("check", help="test a graph property and print a certificate")
    k.add_argument("graph")
    k.add_argument("property", choices=["chordal", "perfect", "treewidth-cert"])
    k.add_argument("--decomp", help="decomposition JSON for treewidth-cert")
    k.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    previous = get_config()
    try:
        set_config(_apply_overrides(load_config(args.config), args))
        return args.func(args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ChordpartError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    finally:
        set_config(previous)


if __name__ == "__main__":
    sys.exit(main())
