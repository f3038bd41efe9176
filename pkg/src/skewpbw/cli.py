"""Command line front end.

Thin client over the service handlers: each subcommand builds the request
model, runs it (in process by default, or against a remote service with
--server), and prints the JSON document to stdout.  Exit status is 0 when
every check in the document passed, 2 when any failed, and 1 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import SkewPbwError
from .service import handlers
from .service.schemas import (
    CheckRequest,
    Document,
    GrRequest,
    HilbertRequest,
    MulRequest,
    NfRequest,
    OreRequest,
    PointsRequest,
    ReportRequest,
)


def _read_source(args) -> tuple[str, str]:
    path = Path(args.input)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(f"cannot read {path}: {exc}")
    name = args.name or path.stem
    return text, name


def _assignments(args) -> dict[str, str] | None:
    if not getattr(args, "set", None):
        return None
    out = {}
    for item in args.set:
        if "=" not in item:
            raise SystemExit(f"--set expects name=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _dispatch(args, endpoint: str, request) -> Document:
    if args.server:
        import httpx

        response = httpx.post(
            args.server.rstrip("/") + "/v1/" + endpoint,
            json=request.model_dump(),
            timeout=60.0,
        )
        if response.status_code == 400:
            raise SkewPbwError(response.json().get("detail", "parse error"))
        response.raise_for_status()
        return Document.model_validate(response.json())
    fn = getattr(handlers, f"run_{endpoint}")
    return fn(request)


def _emit(args, doc: Document) -> int:
    if getattr(args, "text", False) and "presentation" in doc.data:
        payload = doc.data["presentation"]
    else:
        payload = json.dumps(doc.model_dump(by_alias=True), indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    failed = [c for c in doc.checks if not c.passed]
    if failed:
        print(
            f"{doc.presentation_name}: {len(failed)} of {len(doc.checks)} checks failed",
            file=sys.stderr,
        )
        return 2
    print(
        f"{doc.presentation_name}: {len(doc.checks)} checks passed", file=sys.stderr
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewpbw",
        description="Exact engine for skew PBW extension presentations",
    )
    parser.add_argument("--version", action="version", version=f"skewpbw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", help="presentation file (.spbw)")
        sp.add_argument("--name", help="presentation name (defaults to the file stem)")
        sp.add_argument("--output", help="write the document to this path instead of stdout")
        sp.add_argument("--server", help="base URL of a running service to call instead")
        sp.add_argument(
            "--set",
            action="append",
            metavar="NAME=VALUE",
            help="specialize a parameter to an exact rational (repeatable)",
        )

    sp = sub.add_parser("check", help="validate axioms, classify shape, certify the basis")
    common(sp)

    sp = sub.add_parser("nf", help="normal form of an expression")
    common(sp)
    sp.add_argument("expression")
    sp.add_argument("--strategy", choices=["leftmost", "rightmost"], default="leftmost")

    sp = sub.add_parser("mul", help="product of two expressions")
    common(sp)
    sp.add_argument("left")
    sp.add_argument("right")

    sp = sub.add_parser("gr", help="emit the associated graded presentation")
    common(sp)
    sp.add_argument("--text", action="store_true", help="print the presentation text only")

    sp = sub.add_parser("ore", help="emit the iterated Ore tower (quasi-commutative only)")
    common(sp)

    sp = sub.add_parser("report", help="property transfer report and GK dimension")
    common(sp)

    sp = sub.add_parser("hilbert", help="graded dimensions with rank cross-checks")
    common(sp)
    sp.add_argument("--max-degree", type=int, default=4)

    sp = sub.add_parser("points", help="point matrix, locus, and point chains")
    common(sp)
    sp.add_argument("--symbolic", action="store_true", help="emit M(u) and the locus")
    sp.add_argument("--start", help='starting point, e.g. "[1:1:1]"')
    sp.add_argument("--depth", type=int, default=5)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    source, name = _read_source(args)
    assign = _assignments(args)
    try:
        if args.command == "check":
            doc = _dispatch(args, "check", CheckRequest(source=source, name=name, assign=assign))
        elif args.command == "nf":
            doc = _dispatch(
                args,
                "nf",
                NfRequest(
                    source=source,
                    name=name,
                    assign=assign,
                    expression=args.expression,
                    strategy=args.strategy,
                ),
            )
        elif args.command == "mul":
            doc = _dispatch(
                args,
                "mul",
                MulRequest(source=source, name=name, assign=assign, left=args.left, right=args.right),
            )
        elif args.command == "gr":
            doc = _dispatch(args, "gr", GrRequest(source=source, name=name, assign=assign))
        elif args.command == "ore":
            doc = _dispatch(args, "ore", OreRequest(source=source, name=name, assign=assign))
        elif args.command == "report":
            doc = _dispatch(args, "report", ReportRequest(source=source, name=name, assign=assign))
        elif args.command == "hilbert":
            doc = _dispatch(
                args,
                "hilbert",
                HilbertRequest(source=source, name=name, assign=assign, max_degree=args.max_degree),
            )
        elif args.command == "points":
            doc = _dispatch(
                args,
                "points",
                PointsRequest(
                    source=source,
                    name=name,
                    assign=assign,
                    symbolic=args.symbolic,
                    start=args.start,
                    depth=args.depth,
                ),
            )
        else:  # pragma: no cover
            parser.error(f"unknown command {args.command}")
    except SkewPbwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return _emit(args, doc)


if __name__ == "__main__":
    sys.exit(main())
