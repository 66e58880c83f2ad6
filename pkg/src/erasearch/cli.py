"""Command line entry points.

    erasearch gen-sample [-o DIR] [--docs N] [--seed S]
    erasearch ingest-kg FILE.nt
    erasearch ingest-corpus FILE.jsonl
    erasearch serve --config FILE
    erasearch export SESSION_ID --config FILE [-o FILE]
    erasearch report SESSION_ID --config FILE [-o DIR] [--group-by G ...]

`gen-sample` writes a relocatable bundle (graph.nt, corpus.jsonl,
config.json, sessions/) that the other commands can point at directly.
The two ingest commands parse and validate a file, print summary counts,
and exit; they exist for checking data before serving it.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import sample_data
from .corpus import CorpusIndex
from .errors import EraSearchError
from .kg import build_graph, parse_triples
from .report import render_report
from .service import ServiceConfig, create_app, load_state

logger = logging.getLogger(__name__)


def cmd_gen_sample(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "graph.nt").write_bytes(sample_data.generate_toy_graph())
    (out / "corpus.jsonl").write_bytes(
        sample_data.generate_toy_corpus(args.docs, args.seed)
    )
    (out / "sessions").mkdir(exist_ok=True)
    config = {
        "kg_path": "graph.nt",
        "corpus_path": "corpus.jsonl",
        "session_dir": "sessions",
        "cors_origins": ["http://localhost:5173"],
    }
    (out / "config.json").write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")
    for name in ("graph.nt", "corpus.jsonl", "config.json"):
        print(out / name)
    return 0


def cmd_ingest_kg(args: argparse.Namespace) -> int:
    with open(args.file, "rb") as fh:
        triples = parse_triples(fh)
    graph = build_graph(triples)
    print(
        f"{args.file}: {len(triples)} triples, "
        f"{len(graph.categories)} categories, {len(graph.entities)} entities, "
        f"{len(graph.broader_edges)} broader edges, "
        f"{len(graph.subject_edges)} subject edges, "
        f"{len(graph.aliases)} aliases"
    )
    return 0


def cmd_ingest_corpus(args: argparse.Namespace) -> int:
    index = CorpusIndex()
    with open(args.file, "rb") as fh:
        n_docs = index.load_jsonl(fh)
    index.verify_offsets()
    n_sentences = 0
    n_links = 0
    for doc_id in index.doc_ids():
        doc = index.document(doc_id)
        n_sentences += len(doc.sentences)
        n_links += len(doc.links)
    print(f"{args.file}: {n_docs} documents, {n_sentences} sentences, {n_links} links")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    config = ServiceConfig.from_file(args.config)
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    from .session import export_session_bytes

    config = ServiceConfig.from_file(args.config)
    state = load_state(config)
    session = state.get_session(args.session_id)
    payload = export_session_bytes(session)
    if args.out:
        Path(args.out).write_bytes(payload)
        print(args.out)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    config = ServiceConfig.from_file(args.config)
    state = load_state(config)
    session = state.get_session(args.session_id)
    written = render_report(state.index, session, args.out, args.group_by)
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="erasearch",
        description="Period-aware entity search over annotated corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-sample", help="write the sample graph, corpus, and config")
    p.add_argument("-o", "--out", default="sample", help="output directory")
    p.add_argument("--docs", type=int, default=50, help="number of corpus documents")
    p.add_argument("--seed", type=int, default=7, help="corpus generator seed")
    p.set_defaults(func=cmd_gen_sample)

    p = sub.add_parser("ingest-kg", help="parse and validate an N-Triples file")
    p.add_argument("file")
    p.set_defaults(func=cmd_ingest_kg)

    p = sub.add_parser("ingest-corpus", help="index and validate a JSONL corpus")
    p.add_argument("file")
    p.set_defaults(func=cmd_ingest_corpus)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="print or write a session's export document")
    p.add_argument("session_id")
    p.add_argument("--config", required=True)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("report", help="write CSV and PNG aggregates for a session")
    p.add_argument("session_id")
    p.add_argument("--config", required=True)
    p.add_argument("-o", "--out", default="report")
    p.add_argument(
        "--group-by",
        action="append",
        default=None,
        help="year or meta:<key>; repeatable (default: year and meta:party)",
    )
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if getattr(args, "group_by", None) is None and args.command == "report":
        args.group_by = ["year", "meta:party"]
    try:
        return args.func(args)
    except (EraSearchError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
