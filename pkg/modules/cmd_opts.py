import argparse
from typing import *


def create_parser(commands: Sequence[Any]) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mediatrix",
        description="Mediated digraphs: bounds on the mediation number, witnesses and certificates.",
    )
    parser.add_argument("--config", help="Path to config file", type=str, default=None)
    parser.add_argument(
        "--log-level",
        help="Logging level",
        type=str,
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
    )
    parser.add_argument(
        "--workers", help="Worker processes for searches and tables", type=int, default=None
    )
    parser.add_argument(
        "--no-progress", help="Disable progress bars", action="store_true"
    )

    subparsers = parser.add_subparsers(dest="command_name", required=True)
    for command in commands:
        sub = subparsers.add_parser(command.name(), help=command.help())
        command.arguments(sub)
        sub.set_defaults(command=command)
    return parser
