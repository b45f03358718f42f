"""
Subcommands of the ``local_codes`` command line and the registry that holds them.

Every command reads interchange JSON, runs one pipeline step and returns a
``CommandResult`` whose payload is wrapped in the reproducibility envelope
``{"version", "seed", "params", "kind", "result"}`` by the entry point.
"""

from __future__ import annotations

import argparse
import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from ..core.embedding.engine import EmbedParams, gg_embed
from ..core.embedding.spatial import CoarseCertificate, certify_coarse
from ..core.locality.bounds import BoundThresholds, check_bounds
from ..core.locality.placement import Placement, certify_local, fold_torus, pad_code
from ..core.locality.survey import SweepParams, frontier_survey, parse_sizes
from ..core.primitives.errors import FormatError
from ..core.primitives.f2 import BitMatrix, SearchBudget
from ..core.topology.code import (
    CssCode,
    code_from_complex,
    cycle_matrix,
    hamming_matrix,
    hypergraph_product,
    repetition_matrix,
    report,
    steane_code,
    toric_code,
    validate,
)
from ..core.topology.complex import (
    CellComplex,
    cubical_torus,
    cycle,
    octahedron,
    random_surface_complex,
    triangulated_torus,
)
from ..families import create_family

LOGGER = logging.getLogger(__name__)


@dataclass
class RunConfig:
    """Everything one invocation needs; recorded in every output."""

    command: str
    seed: int = 7
    output: Optional[Path] = None
    fmt: str = "json"
    log_level: str = "WARNING"
    params_file: Optional[Path] = None
    budget: SearchBudget = field(default_factory=SearchBudget)
    arguments: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "seed": self.seed,
            "format": self.fmt,
            "budget": self.budget.to_dict(),
            "arguments": dict(self.arguments),
        }


@dataclass
class CommandResult:
    kind: str
    payload: Any
    text: Optional[str] = None  # preformatted output (csv) written instead of JSON
    params: Dict[str, Any] = field(default_factory=dict)


CommandFunc = Callable[[RunConfig, argparse.Namespace], CommandResult]


@dataclass
class Command:
    name: str  # subcommand name
    description: str
    func: CommandFunc
    configure: Callable[[argparse.ArgumentParser], None] = lambda parser: None

    def __call__(self, config: RunConfig, args: argparse.Namespace) -> CommandResult:
        return self.func(config, args)


class CommandRegistry:
    """In-memory registry of subcommands."""

    def __init__(self) -> None:
        self._commands: Dict[str, Command] = {}

    def register(self, command: Command) -> None:
        if command.name in self._commands:
            raise ValueError(f"Command named '{command.name}' already registered.")
        self._commands[command.name] = command

    def update(self, commands: Iterable[Command]) -> None:
        for command in commands:
            self.register(command)

    def get(self, name: str) -> Command:
        try:
            return self._commands[name]
        except KeyError as exc:
            raise ValueError(f"Unknown command '{name}'. Available: {tuple(self._commands)}") from exc

    def names(self) -> Iterable[str]:
        return list(self._commands.keys())

    def describe(self) -> str:
        return "\n".join(f"- {c.name}: {c.description}" for c in self._commands.values())


# ------------------------------------------------------------------ file io
def read_json(path: Path) -> Dict[str, Any]:
    """Load a JSON file; an output envelope is unwrapped to its ``result``."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}", source=str(path)) from exc
    if isinstance(payload, dict) and "result" in payload and "version" in payload:
        payload = payload["result"]
    if not isinstance(payload, dict):
        raise FormatError("expected a JSON object", source=str(path))
    return payload


def load_code(path: Path) -> CssCode:
    payload = read_json(path)
    if "code" in payload and "h1" not in payload:
        payload = payload["code"]
    return CssCode.from_dict(payload, source=str(path))


def load_bundle(path: Path, code_path: Optional[Path] = None) -> Tuple[CssCode, Placement]:
    """A placement file may carry its code (``{"code", "placement"}``) or name it with ``--code``."""
    payload = read_json(path)
    if "placement" in payload:
        placement_payload = payload["placement"]
        code_payload = payload.get("code")
    else:
        placement_payload, code_payload = payload, None
    if code_path is not None:
        code = load_code(code_path)
    elif code_payload is not None:
        code = CssCode.from_dict(code_payload, source=str(path))
    else:
        raise FormatError("placement has no code; pass --code", source=str(path), field="code")
    return code, Placement.from_dict(placement_payload, code, source=str(path))


def bundle(code: CssCode, placement: Placement) -> Dict[str, Any]:
    return {"code": code.to_dict(), "placement": placement.to_dict()}


def _budget_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--exact-qubits", type=int, default=None, help="largest quotient searched exactly")
    parser.add_argument("--isd-iterations", type=int, default=None, help="randomized search iterations")


# ---------------------------------------------------------------------- gen
def parse_classical(text: str) -> BitMatrix:
    """``repetition:L``, ``cycle:L`` or ``hamming``."""
    kind, _, size = text.partition(":")
    if kind == "hamming":
        return hamming_matrix()
    if kind in ("repetition", "cycle") and size.isdigit():
        return repetition_matrix(int(size)) if kind == "repetition" else cycle_matrix(int(size))
    raise ValueError(f"Unknown classical code '{text}'. Expected repetition:L, cycle:L or hamming.")


GEN_KINDS = ("toric", "hgp", "steane", "torus-complex", "triangulated-torus", "cycle", "octahedron", "random-surface")


def _configure_gen(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("kind", choices=GEN_KINDS)
    parser.add_argument("--n", type=int, default=2, help="torus dimension")
    parser.add_argument("--L", type=int, default=3, help="side length or cycle length")
    parser.add_argument("--k", type=int, default=1, help="qubit cell dimension")
    parser.add_argument("--a", default="repetition:3", help="first classical code of a product")
    parser.add_argument("--b", default="repetition:3", help="second classical code of a product")
    parser.add_argument("--triangles", type=int, default=32)


def _check_complex(x: CellComplex) -> CellComplex:
    """Raise ``ChainConditionViolated`` at the first failing pair of consecutive boundaries."""
    if not x.chain_condition_holds():
        for k in range(1, x.dims):
            validate(code_from_complex(x, k))
    return x


def cmd_gen(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    kind = args.kind
    if kind == "toric":
        code = toric_code(args.n, args.L, args.k)
        return CommandResult("code", code.to_dict(), params={"n": args.n, "L": args.L, "k": args.k})
    if kind == "hgp":
        code = hypergraph_product(parse_classical(args.a), parse_classical(args.b))
        return CommandResult("code", code.to_dict(), params={"a": args.a, "b": args.b})
    if kind == "steane":
        return CommandResult("code", steane_code().to_dict())
    builders: Dict[str, Callable[[], CellComplex]] = {
        "torus-complex": lambda: cubical_torus(args.n, args.L),
        "triangulated-torus": lambda: triangulated_torus(args.L),
        "cycle": lambda: cycle(args.L),
        "octahedron": octahedron,
        "random-surface": lambda: random_surface_complex(args.triangles, seed=config.seed),
    }
    x = _check_complex(builders[kind]())
    params = {"n": args.n, "L": args.L, "triangles": args.triangles}
    return CommandResult("complex", x.to_dict(), params=params)


# ------------------------------------------------------------------- report
def _configure_report(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("code", type=Path, help="code JSON")
    _budget_arguments(parser)


def cmd_report(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    code = load_code(args.code)
    return CommandResult("report", report(code, config.budget).to_dict(), params={"code": str(args.code)})


# -------------------------------------------------------------------- embed
def _configure_embed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("complex", type=Path, help="complex JSON with vertex coordinates")
    parser.add_argument("--n", type=int, default=None, help="target dimension")
    parser.add_argument("--delta", type=float, default=None)


def embed_params(config: RunConfig, args: argparse.Namespace) -> EmbedParams:
    params = EmbedParams()
    if config.params_file is not None:
        params = EmbedParams.from_dict(read_json(config.params_file))
    overrides: Dict[str, Any] = {"seed": config.seed}
    if args.n is not None:
        overrides["n"] = args.n
    if args.delta is not None:
        overrides["delta"] = args.delta
    return replace(params, **overrides)


def cmd_embed(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    x = CellComplex.from_dict(read_json(args.complex), source=str(args.complex))
    params = embed_params(config, args)
    embedded = gg_embed(x, params)
    return CommandResult("embedding", embedded.to_dict(), params=params.to_dict())


def recheck_embedding(payload: Dict[str, Any], *, source: Optional[str] = None) -> Dict[str, Any]:
    """Recompute the coarse certificate of an embedding file and compare with the stored one."""
    try:
        stored = CoarseCertificate.from_dict(payload["certificate"])
        params = EmbedParams.from_dict(payload["params"])
        coords = np.asarray(payload["coords"], dtype=float)
    except KeyError as exc:
        raise FormatError("missing key", source=source, field=str(exc.args[0])) from exc
    x = CellComplex.from_dict(payload, source=source)
    fresh = certify_coarse(coords, x, params.grid)
    return {"matches": fresh == stored, "stored": stored.to_dict(), "recomputed": fresh.to_dict()}


# ------------------------------------------------------------------ certify
def _configure_certify(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("placement", type=Path, help="placement JSON (or an embedding with --embedding)")
    parser.add_argument("--code", type=Path, default=None, help="code JSON when the placement has none")
    parser.add_argument("--check-limit", type=int, default=None)
    parser.add_argument("--cube-limit", type=float, default=16.0)
    parser.add_argument("--embedding", action="store_true", help="recheck an embedding certificate")


def cmd_certify(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    if args.embedding:
        payload = read_json(args.placement)
        return CommandResult("embedding-check", recheck_embedding(payload, source=str(args.placement)))
    code, placement = load_bundle(args.placement, args.code)
    certificate = certify_local(code, placement, check_limit=args.check_limit, cube_limit=args.cube_limit)
    return CommandResult("certificate", certificate.to_dict())


# --------------------------------------------------------------- fold / pad
def _configure_fold(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--L", type=int, default=4)
    parser.add_argument("--k", type=int, default=1)


def cmd_fold(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    placement = fold_torus(args.n, args.L, args.k)
    return CommandResult("placement", bundle(placement.code, placement), params={"n": args.n, "L": args.L, "k": args.k})


def _configure_pad(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("placement", type=Path)
    parser.add_argument("--code", type=Path, default=None)
    parser.add_argument("--target", type=int, required=True, help="target number of qubits")
    parser.add_argument("--cube-factor", type=float, default=2.0)


def cmd_pad(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    code, placement = load_bundle(args.placement, args.code)
    padded_code, padded = pad_code(code, placement, args.target, cube_factor=args.cube_factor)
    return CommandResult("placement", bundle(padded_code, padded), params={"target": args.target})


# ------------------------------------------------------- survey and bounds
def _configure_survey(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("family")
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--L", default="3..6", help="sizes, e.g. 3..6 or 3,5,8")
    parser.add_argument("--kind", default=None, help="classical code of an hgp family")
    parser.add_argument("--inner", default=None, help="family wrapped by padded")
    parser.add_argument("--factor", type=float, default=None, help="padding factor")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--timing", action="store_true", help="record wall-clock runtimes")
    parser.add_argument("--distance", type=float, default=4.0)
    parser.add_argument("--tradeoff", type=float, default=4.0)
    _budget_arguments(parser)


def cmd_survey(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    options: Dict[str, Any] = {"n": args.n}
    for name in ("kind", "inner", "factor"):
        value = getattr(args, name)
        if value is not None:
            options[name] = value
    family = create_family(args.family, **options)
    sweep = SweepParams(
        sizes=parse_sizes(args.L),
        seed=config.seed,
        thresholds=BoundThresholds(args.distance, args.tradeoff),
        budget=config.budget,
        workers=args.workers,
        timing=args.timing,
    )
    table = frontier_survey(family, sweep)
    params = {"family": family.to_dict(), "sweep": sweep.to_dict()}
    text = table.to_csv() if config.fmt == "csv" else None
    return CommandResult("survey", table.to_dict(), text=text, params=params)


def _configure_verify(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("placement", type=Path)
    parser.add_argument("--code", type=Path, default=None)
    parser.add_argument("--distance", type=float, default=4.0)
    parser.add_argument("--tradeoff", type=float, default=4.0)
    _budget_arguments(parser)


def cmd_verify_bounds(config: RunConfig, args: argparse.Namespace) -> CommandResult:
    code, placement = load_bundle(args.placement, args.code)
    certificate = certify_local(code, placement)
    thresholds = BoundThresholds(args.distance, args.tradeoff)
    bound = check_bounds(code, certificate, thresholds, budget=config.budget)
    return CommandResult("bounds", bound.to_dict(), params={"thresholds": thresholds.to_dict()})


def default_registry() -> CommandRegistry:
    registry = CommandRegistry()
    registry.update(
        [
            Command("gen", "generate a code or complex", cmd_gen, _configure_gen),
            Command("report", "size, dimension and distances of a code", cmd_report, _configure_report),
            Command("embed", "coarse embedding of a complex into R^n", cmd_embed, _configure_embed),
            Command("certify", "locality certificate of a placement", cmd_certify, _configure_certify),
            Command("fold", "folded toric code placement", cmd_fold, _configure_fold),
            Command("pad", "pad a placed code to a target size", cmd_pad, _configure_pad),
            Command("survey", "frontier survey over a family", cmd_survey, _configure_survey),
            Command("verify-bounds", "distance and tradeoff bound check", cmd_verify_bounds, _configure_verify),
        ]
    )
    return registry


__all__ = [
    "Command",
    "CommandRegistry",
    "CommandResult",
    "RunConfig",
    "bundle",
    "default_registry",
    "load_bundle",
    "load_code",
    "parse_classical",
    "read_json",
    "recheck_embedding",
]
