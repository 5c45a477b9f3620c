"""Command-line front end: interactive REPL by default, service with --listen.

The REPL reads one command batch per line; ``:``-prefixed lines are
meta-commands.  Translation runs through the offline pattern rules
unless a provider endpoint is configured (or --offline forces the
rules regardless).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .dsl import Program, pretty_print
from .exporters import emit_rhino_macro, export_obj, export_stl
from .nl import (
    NLRequest,
    OfflineProvider,
    ProviderUnavailable,
    TranslationFailed,
    provider_from_env,
    translate,
)
from .scenedoc import scene_document, serialize
from .session import Session, scene_snapshot_summary

_HELP = """\
commands:  any DSL or natural-language line, executed per current mode
  :mode nl|dsl   switch input interpretation
  :undo          undo the last batch
  :export PATH   write the scene (.obj, .stl, .json) or macro (.txt)
  :scene         print the scene summary
  :help          this text
  :quit          exit"""


def _parse_args(argv) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="cadscript",
        description="Text-driven solid modeling with sun studies.",
    )
    parser.add_argument(
        "--listen",
        metavar="HOST:PORT",
        help="run the HTTP service instead of the REPL",
    )
    parser.add_argument(
        "--offline",
        action="store_true",
        help="force the offline pattern translator even if an endpoint is configured",
    )
    parser.add_argument("--seed", type=int, default=0, help="session RNG seed")
    parser.add_argument(
        "--spacing-mode",
        choices=("gap", "pitch"),
        default="gap",
        help="grid spacing reads as facade gap or center-to-center pitch",
    )
    return parser.parse_args(argv)


def _export(session: Session, path: str) -> str:
    lower = path.lower()
    if lower.endswith(".obj"):
        data = export_obj(session.scene, seed=session.seed)
    elif lower.endswith(".stl"):
        data = export_stl(session.scene, seed=session.seed)
    elif lower.endswith(".json"):
        data = serialize(scene_document(session)).encode("utf-8")
    elif lower.endswith(".txt") or lower.endswith(".macro"):
        statements = tuple(
            stmt for e in session.history for stmt in e.program.statements
        )
        data = emit_rhino_macro(Program(statements)).encode("utf-8")
    else:
        return f"error: unknown export extension on {path!r} (use .obj/.stl/.json/.txt)"
    with open(path, "wb") as fh:
        fh.write(data)
    return f"wrote {path} ({len(data)} bytes)"


def repl(
    seed: int,
    spacing_mode: str = "gap",
    provider=None,
    stdin=None,
    stdout=None,
) -> None:
    """Interactive loop; ``stdin``/``stdout`` are injectable for tests."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout

    def say(text: str = "", end: str = "\n") -> None:
        stdout.write(text + end)
        stdout.flush()

    def show(result) -> None:
        if result.error is not None:
            say(f"error: {result.error}")
        for message in result.messages:
            say(message)

    if provider is None:
        provider = provider_from_env()
    session = Session(seed=seed, spacing_mode=spacing_mode)
    mode = "dsl"
    say(f"cadscript (seed {session.seed}, {mode} mode; :help for commands)")
    while True:
        say("cad> ", end="")
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line:
            continue
        if line.startswith(":"):
            parts = line.split()
            command = parts[0]
            if command == ":quit":
                break
            elif command == ":help":
                say(_HELP)
            elif command == ":mode":
                if len(parts) == 2 and parts[1] in ("nl", "dsl"):
                    mode = parts[1]
                    say(f"mode set to {mode}")
                else:
                    say("usage: :mode nl|dsl")
            elif command == ":undo":
                show(session.execute("undo"))
            elif command == ":scene":
                say(scene_snapshot_summary(session.scene), end="")
            elif command == ":export":
                if len(parts) == 2:
                    say(_export(session, parts[1]))
                else:
                    say("usage: :export PATH")
            else:
                say(f"unknown meta-command {command!r} (:help for commands)")
            continue
        if mode == "dsl":
            show(session.execute(line))
        else:
            try:
                request = NLRequest(line, context=scene_snapshot_summary(session.scene))
                outcome = translate(request, provider, session.scene.to_context())
            except (TranslationFailed, ProviderUnavailable) as exc:
                say(f"error: {exc}")
                for i, attempt in enumerate(exc.attempts, start=1):
                    for message in attempt.errors:
                        say(f"  attempt {i}: {message}")
                continue
            program = outcome.result.program
            say("translated to:")
            say(pretty_print(program), end="")
            show(session.execute(program, source_text=pretty_print(program)))


def main(argv: Optional[list] = None) -> int:
    args = _parse_args(argv if argv is not None else sys.argv[1:])
    if args.listen:
        from .service import serve

        host, _, port_text = args.listen.rpartition(":")
        host = host or "127.0.0.1"
        try:
            port = int(port_text)
        except ValueError:
            print(f"error: --listen expects HOST:PORT, got {args.listen!r}")
            return 2
        serve(
            host,
            port,
            default_seed=args.seed,
            spacing_mode=args.spacing_mode,
            offline=args.offline,
        )
        return 0
    provider = OfflineProvider() if args.offline else None
    repl(args.seed, args.spacing_mode, provider=provider)
    return 0


if __name__ == "__main__":
    sys.exit(main())
