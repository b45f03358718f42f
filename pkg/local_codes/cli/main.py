"""
Command-line entry point: ``python -m local_codes <command> ...``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from .. import __version__
from ..core.primitives.errors import LocalCodesError
from ..core.primitives.f2 import SearchBudget
from .commands import CommandRegistry, CommandResult, RunConfig, default_registry

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 2


def build_parser(registry: CommandRegistry) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="local_codes", description="Local quantum codes from embedded complexes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=7, help="seed for every random choice (default 7)")
    common.add_argument("--log-level", default="WARNING", help="logging level (default WARNING)")
    common.add_argument("-o", "--output", type=Path, default=None, help="output file (default stdout)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--params", dest="params_file", type=Path, default=None, help="JSON overrides for embedding")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in registry.names():
        command = registry.get(name)
        sub = subparsers.add_parser(name, help=command.description, parents=[common])
        command.configure(sub)
    return parser


def _budget(args: argparse.Namespace, seed: int) -> SearchBudget:
    budget = SearchBudget(seed=seed)
    overrides: Dict[str, Any] = {}
    if getattr(args, "exact_qubits", None) is not None:
        overrides["exact_qubits"] = args.exact_qubits
    if getattr(args, "isd_iterations", None) is not None:
        overrides["isd_iterations"] = args.isd_iterations
    return replace(budget, **overrides)


def run_config(args: argparse.Namespace) -> RunConfig:
    skip = {"command", "seed", "log_level", "output", "fmt", "params_file"}
    arguments = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items()) if k not in skip}
    return RunConfig(
        command=args.command,
        seed=args.seed,
        output=args.output,
        fmt=args.fmt,
        log_level=args.log_level,
        params_file=args.params_file,
        budget=_budget(args, args.seed),
        arguments=arguments,
    )


def render(config: RunConfig, result: CommandResult) -> str:
    if result.text is not None:
        return f"# local_codes {__version__} seed={config.seed}\n{result.text}"
    envelope = {
        "version": __version__,
        "seed": config.seed,
        "params": {**config.to_dict(), **result.params},
        "kind": result.kind,
        "result": result.payload,
    }
    return json.dumps(envelope, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: Optional[Path], stream: TextIO) -> None:
    if output is None:
        stream.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None, *, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    registry = default_registry()
    parser = build_parser(registry)
    args = parser.parse_args(list(argv) if argv is not None else None)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING))
    config = run_config(args)
    LOGGER.info(
        "\n%s\n[COMMAND] %s\nSeed: %d\nArguments: %s\n%s",
        "=" * 80,
        config.command,
        config.seed,
        config.arguments,
        "=" * 80,
    )
    try:
        result = registry.get(config.command)(config, args)
        _emit(render(config, result), config.output, stdout)
    except (LocalCodesError, ValueError, OSError) as exc:
        stderr.write(f"local_codes {config.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_FAILURE
    return EXIT_OK


def entrypoint(argv: Optional[List[str]] = None) -> None:
    sys.exit(main(argv))


__all__ = ["build_parser", "entrypoint", "main", "render", "run_config"]
