"""Command gateway: grammar parsing, dispatch, HTTP API, REPL and the
optional Telegram adapter."""

from .parser import Command, CommandError, Verb, parse_command, render_usage
from .engine import Engine, Response, ResponseKind

__all__ = [
    "Command",
    "CommandError",
    "Verb",
    "parse_command",
    "render_usage",
    "Engine",
    "Response",
    "ResponseKind",
]
