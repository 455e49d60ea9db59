"""Command grammar for the planning gateway.

One line, whitespace-tolerant, verb first. Numbers accept sign and
decimals; trailing `key=value` options are allowed where documented.

    site <name> <lat> <lon>
    calc <tx> <rx> <tx_h> <rx_h> <f_mhz> [k=<K>] [model=itm|ke]
    rep  <tx> <rx> [<tx_h> <rx_h> <f_mhz>] [k=<K>] [model=itm|ke]
    pow  <tx> <rx> <ptx> <txcable> <txgain> <rxgain> <rxcable> <sens> [f=<MHz>]
    cnv  <value> <unit> [<unit>] [f=<MHz>]
    list
    help
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..errors import BotrfError


class Verb(Enum):
    SITE = "site"
    CALC = "calc"
    REP = "rep"
    POW = "pow"
    CNV = "cnv"
    LIST = "list"
    HELP = "help"


_USAGE = {
    Verb.SITE: "usage: site <name> <lat> <lon>",
    Verb.CALC: "usage: calc <tx> <rx> <tx_height_m> <rx_height_m> <freq_mhz> [k=<K>] [model=itm|ke]",
    Verb.REP: "usage: rep <tx> <rx> [<tx_height_m> <rx_height_m> <freq_mhz>] [k=<K>] [model=itm|ke]",
    Verb.POW: "usage: pow <tx> <rx> <tx_dbm> <tx_cable_db> <tx_gain_dbi> <rx_gain_dbi> <rx_cable_db> <sensitivity_dbm> [f=<MHz>]",
    Verb.CNV: "usage: cnv <value> <unit> [<unit>] [f=<MHz>]  (units: mw, dbm, mhz, m, dbuv)",
    Verb.LIST: "usage: list  (no arguments; shows your stored sites)",
    Verb.HELP: "usage: help  (no arguments; shows this summary)",
}

_ALLOWED_OPTIONS = {
    Verb.SITE: set(),
    Verb.CALC: {"k", "model"},
    Verb.REP: {"k", "model"},
    Verb.POW: {"f"},
    Verb.CNV: {"f"},
    Verb.LIST: set(),
    Verb.HELP: set(),
}


class CommandError(BotrfError):
    """Unparseable or invalid command; message includes usage guidance."""


@dataclass(frozen=True)
class Command:
    verb: Verb
    args: dict = field(default_factory=dict)
    owner: str = "local"


def render_usage(verb: Verb) -> str:
    return _USAGE[verb]


def usage_summary() -> str:
    return "\n".join(_USAGE[v] for v in Verb)


def _number(token: str, what: str, verb: Verb) -> float:
    try:
        return float(token)
    except ValueError:
        raise CommandError(
            f"{what} must be a number, got {token!r}\n{_USAGE[verb]}"
        ) from None


def _split_options(verb: Verb, tokens: list[str]) -> tuple[list[str], dict]:
    positional: list[str] = []
    options: dict[str, str] = {}
    allowed = _ALLOWED_OPTIONS[verb]
    for tok in tokens:
        if "=" in tok:
            key, _, value = tok.partition("=")
            key = key.lower()
            if key not in allowed:
                raise CommandError(
                    f"unknown option {key!r} for {verb.value}\n{_USAGE[verb]}"
                )
            options[key] = value
        else:
            positional.append(tok)
    return positional, options


def parse_command(line: str, owner: str = "local") -> Command:
    """Parse one command line; raises CommandError with usage on any problem."""
    tokens = line.split()
    if not tokens:
        raise CommandError("empty command; try `help`")

    verb_token = tokens[0].lower()
    try:
        verb = Verb(verb_token)
    except ValueError:
        verbs = ", ".join(v.value for v in Verb)
        raise CommandError(
            f"unknown command {tokens[0]!r}; available commands: {verbs}"
        ) from None

    positional, options = _split_options(verb, tokens[1:])
    args: dict = {}

    if verb is Verb.SITE:
        if len(positional) != 3:
            raise CommandError(f"site takes 3 arguments\n{_USAGE[verb]}")
        args["name"] = positional[0]
        args["lat"] = _number(positional[1], "latitude", verb)
        args["lon"] = _number(positional[2], "longitude", verb)

    elif verb is Verb.CALC:
        if len(positional) != 5:
            raise CommandError(f"calc takes 5 arguments\n{_USAGE[verb]}")
        args["tx"], args["rx"] = positional[0], positional[1]
        args["tx_height_m"] = _number(positional[2], "tx antenna height", verb)
        args["rx_height_m"] = _number(positional[3], "rx antenna height", verb)
        args["frequency_mhz"] = _number(positional[4], "frequency", verb)

    elif verb is Verb.REP:
        if len(positional) not in (2, 5):
            raise CommandError(
                f"rep takes 2 arguments, optionally followed by heights and frequency\n{_USAGE[verb]}"
            )
        args["tx"], args["rx"] = positional[0], positional[1]
        if len(positional) == 5:
            args["tx_height_m"] = _number(positional[2], "tx antenna height", verb)
            args["rx_height_m"] = _number(positional[3], "rx antenna height", verb)
            args["frequency_mhz"] = _number(positional[4], "frequency", verb)

    elif verb is Verb.POW:
        if len(positional) != 8:
            raise CommandError(f"pow takes 8 arguments\n{_USAGE[verb]}")
        args["tx"], args["rx"] = positional[0], positional[1]
        names = (
            "tx_power_dbm",
            "tx_cable_loss_db",
            "tx_antenna_gain_dbi",
            "rx_antenna_gain_dbi",
            "rx_cable_loss_db",
            "rx_sensitivity_dbm",
        )
        for name, tok in zip(names, positional[2:]):
            args[name] = _number(tok, name.replace("_", " "), verb)

    elif verb is Verb.CNV:
        if len(positional) not in (2, 3):
            raise CommandError(f"cnv takes a value and one or two units\n{_USAGE[verb]}")
        args["value"] = _number(positional[0], "value", verb)
        args["from_unit"] = positional[1].lower()
        args["to_unit"] = positional[2].lower() if len(positional) == 3 else None

    else:  # LIST, HELP
        if positional:
            raise CommandError(f"{verb.value} takes no arguments\n{_USAGE[verb]}")

    if "model" in options:
        model = options.pop("model").lower()
        if model not in ("itm", "ke", "fspl"):
            raise CommandError(f"model must be itm or ke\n{_USAGE[verb]}")
        args["model"] = model
    for key, value in options.items():
        args[key] = _number(value, f"option {key}", verb)

    return Command(verb=verb, args=args, owner=owner)
