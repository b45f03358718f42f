"""
Command-line surface.
"""

from .commands import Command, CommandRegistry, CommandResult, RunConfig, default_registry
from .main import build_parser, main

__all__ = [
    "Command",
    "CommandRegistry",
    "CommandResult",
    "RunConfig",
    "build_parser",
    "default_registry",
    "main",
]
