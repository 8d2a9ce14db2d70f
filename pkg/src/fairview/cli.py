"""Server entry point: fairview-server --corpus data/hotel_comments.jsonl"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config
from .service import start_service


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fairview-server",
        description="Serve a comment corpus with balanced-reading support.",
    )
    parser.add_argument("--config", type=Path, default=None, help="JSON config file")
    parser.add_argument("--corpus", type=Path, default=None, help="corpus file (JSONL)")
    parser.add_argument("--bind", default=None, help="host:port to listen on")
    parser.add_argument(
        "--offline",
        action="store_true",
        help="force the deterministic fallback providers (no model calls)",
    )
    parser.add_argument(
        "--client-dir", type=Path, default=None, help="compiled web client to serve at /"
    )
    args = parser.parse_args(argv)

    try:
        config = load_config(
            path=args.config, corpus=args.corpus, bind=args.bind, offline=args.offline
        )
    except (ValueError, FileNotFoundError) as exc:
        parser.error(str(exc))

    try:
        app, engine = start_service(config, client_dir=args.client_dir)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    host, _, port = config.bind.partition(":")
    print(
        f"fairview: {len(engine.corpus)} comments, "
        f"{len(engine.scheme.topics)} topics, listening on {config.bind}"
    )

    import uvicorn

    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000), log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
