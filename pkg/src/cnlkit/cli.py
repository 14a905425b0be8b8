"""Command-line interface: serve, parse, repl, batch."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chronos import Timestamp
from .deep import to_graph
from .lexicon import load_lexicon, seed_acronyms, seed_aliases, seed_lexicon
from .parser import Parser, tree_text
from .session import Session
from .surface import precheck, preprocess, segment, tokenize
from .terms import print_form


def _load_lexicon(path: str | None):
    if path is None:
        return seed_lexicon()
    p = Path(path)
    if p.is_dir():
        p = p / "lexicon.tsv"
    return load_lexicon(p.read_text(encoding="utf-8"))


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(lexicon=_load_lexicon(args.lexicon))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_parse(args) -> int:
    lex = _load_lexicon(args.lexicon)
    aliases = seed_aliases(lex)
    acronyms = seed_acronyms()
    parser = Parser(lex)
    out = []
    for stream in segment(tokenize(args.text)):
        processed = preprocess(stream, aliases, acronyms)
        diagnostics = precheck(processed, lex,
                               parse_fn=lambda ts: len(parser.parse(ts)))
        trees = [] if diagnostics else parser.parse(processed)
        entry = {
            "text": " ".join(processed.texts()),
            "diagnostics": [
                {"severity": d.severity, "message": d.message} for d in diagnostics
            ],
            "trees": [tree_text(t) for t in trees],
        }
        if not diagnostics and trees:
            session = Session("cli", 0)
            result = session.submit(args.text)
            if result.get("kind") == "result":
                entry["form"] = result["form"]
        out.append(entry)
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for entry in out:
            for d in entry["diagnostics"]:
                print(f"! {d['severity']}: {d['message']}")
            for i, t in enumerate(entry["trees"]):
                print(f"-- parse {i}")
                print(t)
            if "form" in entry:
                print(f"=> {entry['form']}")
    return 0


def cmd_repl(args) -> int:
    session = Session(args.teller, args.offset, lexicon=_load_lexicon(args.lexicon))
    print(f"session {session.id} teller={session.teller} offset={args.offset}")
    print("enter sentences; :para for a paragraph break, :tracks FILE, :quit")
    while True:
        try:
            line = input("> ")
        except EOFError:
            break
        result = run_repl_line(session, line)
        if result is None:
            break
        print(result)
    return 0


def run_repl_line(session: Session, line: str):
    """One REPL interaction; returns the printed response or None to quit."""
    line = line.rstrip("\n")
    if line.strip() == ":quit":
        return None
    if line.strip() == ":para" or not line.strip():
        session.paragraph_break()
        return "-- new paragraph"
    if line.strip().startswith(":tracks"):
        path = line.split(None, 1)[1].strip() if len(line.split(None, 1)) > 1 else ""
        try:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        except OSError as e:
            return f"! cannot read {path!r}: {e}"
        result = session.ingest_tracks(lines)
        return f"-- ingested {result['accepted']} records ({len(result['rejected'])} rejected)"
    if line.strip().startswith(":choose"):
        parts = line.split()
        if len(parts) != 3:
            return "! usage: :choose REF INDEX"
        try:
            result = session.choose(parts[1], int(parts[2]))
        except Exception as e:
            return f"! {e}"
        return format_result(result)
    result = session.submit(line)
    return format_result(result)


def format_result(result: dict) -> str:
    kind = result.get("kind")
    if kind == "diagnostics":
        return "\n".join(f"! {d['severity']}: {d['message']}"
                         for d in result["diagnostics"])
    if kind == "interpretations":
        lines = [f"? ambiguous ({result['sentence_ref']}): choose with "
                 f":choose {result['sentence_ref']} N"]
        for c in result["candidates"]:
            lines.append(f"  [{c['index']}] {c['paraphrase']}")
        return "\n".join(lines)
    if kind == "batch":
        return "\n".join(format_result(r) for r in result["results"])
    if kind == "paragraph":
        return "-- new paragraph"
    lines = [f"[{result.get('timestamp')}] {result.get('act')}: {result.get('status')}"]
    if result.get("form"):
        lines.append(f"  C: {result['form']}")
    for a in result.get("answers", []) or []:
        lines.append(f"  O: {a}")
    return "\n".join(lines)


def cmd_batch(args) -> int:
    session = Session(args.teller, args.offset, lexicon=_load_lexicon(args.lexicon),
                      clock=_fixed_clock(args.at) if args.at else None)
    transcript = []
    for raw in Path(args.infile).read_text(encoding="utf-8").splitlines():
        response = run_repl_line(session, raw)
        if response is None:
            break
        transcript.append(f"> {raw}")
        transcript.append(response)
    text = "\n".join(transcript) + "\n"
    if args.golden:
        golden = Path(args.golden).read_text(encoding="utf-8")
        if text != golden:
            sys.stderr.write("transcript differs from golden file\n")
            _diff(golden, text)
            return 1
        print("transcript matches golden file")
        return 0
    sys.stdout.write(text)
    return 0


def _fixed_clock(spec: str):
    from .terms import read_term
    from .chronos import timestamp_from_term

    if spec.startswith("timestamp("):
        ts = timestamp_from_term(read_term(spec))
    else:
        import datetime as _dt

        dt = _dt.datetime.fromisoformat(spec)
        ts = Timestamp(dt.year, dt.month, dt.day, dt.hour, dt.minute, dt.second)
    return lambda: ts


def _diff(golden: str, got: str):
    import difflib

    for line in difflib.unified_diff(golden.splitlines(), got.splitlines(),
                                     "golden", "got", lineterm=""):
        sys.stderr.write(line + "\n")


def main(argv=None) -> int:
    top = argparse.ArgumentParser(prog="cnlkit",
                                  description="controlled-English to logic engine")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--lexicon", default=None, help="lexicon file or directory")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("parse", help="parse text and print trees/forms")
    p.add_argument("--text", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--lexicon", default=None)
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("repl", help="interactive session")
    p.add_argument("--teller", required=True)
    p.add_argument("--offset", default="0", help="UTC offset like +09:30")
    p.add_argument("--lexicon", default=None)
    p.set_defaults(fn=cmd_repl)

    p = sub.add_parser("batch", help="run a line file through a session")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--golden", default=None)
    p.add_argument("--teller", default="batch")
    p.add_argument("--offset", default="0")
    p.add_argument("--at", default=None,
                   help="fixed utterance time (ISO or timestamp(...) form)")
    p.add_argument("--lexicon", default=None)
    p.set_defaults(fn=cmd_batch)

    args = top.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
