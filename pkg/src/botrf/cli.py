"""Command-line entry points: HTTP service, interactive REPL and
one-shot command evaluation.

    botrf serve --dem-dir DIR --data-dir DIR --listen HOST:PORT [--telegram]
    botrf repl  --dem-dir DIR --data-dir DIR
    botrf eval "calc a b 10 10 5800" --dem-dir DIR --data-dir DIR
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import threading

from .dem import TileCache
from .gateway.engine import Engine, ResponseKind
from .propagation import ItmParams, LossModel
from .sitestore import SiteStore

logger = logging.getLogger(__name__)


def build_engine(args: argparse.Namespace) -> Engine:
    dem_dir = args.dem_dir or os.environ.get("DEM_DIR") or "."
    data_dir = args.data_dir or os.environ.get("BOTRF_DATA")
    return Engine(
        dem=TileCache(root_dir=dem_dir, capacity=args.tile_cache),
        store=SiteStore(data_dir=data_dir),
        default_model=LossModel(args.model),
        itm_params=ItmParams(),
        spacing_m=args.spacing,
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dem-dir", help="directory of .hgt tiles (env DEM_DIR)")
    parser.add_argument("--data-dir", help="persistent data directory (env BOTRF_DATA)")
    parser.add_argument("--model", choices=["itm", "ke", "fspl"], default="itm",
                        help="default path loss model")
    parser.add_argument("--spacing", type=float, default=30.0,
                        help="profile sample spacing in meters")
    parser.add_argument("--tile-cache", type=int, default=16,
                        help="max resident DEM tiles")


def _print_response(resp, chart_dir: str | None = None) -> None:
    if resp.kind is ResponseKind.ERROR:
        print(f"error: {resp.body}")
        return
    print(resp.body)
    for note in resp.diagnostics:
        print(f"note: {note}")
    if resp.chart_svg:
        out_dir = chart_dir or "."
        path = os.path.join(out_dir, "botrf-chart.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(resp.chart_svg)
        print(f"chart written to {path}")


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .gateway.http import create_app

    engine = build_engine(args)
    host, _, port = args.listen.rpartition(":")
    app = create_app(engine, frontend_dir=args.frontend_dir)

    if args.telegram:
        token = os.environ.get("TELEGRAM_TOKEN", "")
        if not token:
            print("TELEGRAM_TOKEN not set; telegram adapter disabled", file=sys.stderr)
        else:
            from .gateway.telegram import TelegramAdapter

            adapter = TelegramAdapter(engine, token)
            thread = threading.Thread(
                target=adapter.run_forever, name="telegram", daemon=True
            )
            thread.start()
            print("telegram adapter polling")

    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def cmd_repl(args: argparse.Namespace) -> int:
    engine = build_engine(args)
    chart_dir = args.data_dir or os.environ.get("BOTRF_DATA") or "."
    print("botrf repl; `help` lists commands, ctrl-d exits")
    while True:
        try:
            line = input("botrf> ")
        except EOFError:
            print()
            return 0
        except KeyboardInterrupt:
            print()
            return 0
        if not line.strip():
            continue
        _print_response(engine.execute("local", line), chart_dir)


def cmd_eval(args: argparse.Namespace) -> int:
    engine = build_engine(args)
    resp = engine.execute("local", args.line)
    _print_response(resp, args.data_dir or ".")
    return 1 if resp.kind is ResponseKind.ERROR else 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=logging.INFO, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    parser = argparse.ArgumentParser(prog="botrf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    _add_common(p_serve)
    p_serve.add_argument("--listen", default="127.0.0.1:8000", help="HOST:PORT")
    p_serve.add_argument("--telegram", action="store_true",
                         help="enable the Telegram adapter (needs TELEGRAM_TOKEN)")
    p_serve.add_argument("--frontend-dir", help="static web UI directory to mount at /")
    p_serve.set_defaults(func=cmd_serve)

    p_repl = sub.add_parser("repl", help="interactive command loop")
    _add_common(p_repl)
    p_repl.set_defaults(func=cmd_repl)

    p_eval = sub.add_parser("eval", help="evaluate one command line and exit")
    _add_common(p_eval)
    p_eval.add_argument("line", help="command line to evaluate")
    p_eval.set_defaults(func=cmd_eval)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
