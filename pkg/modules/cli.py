import argparse
import importlib
import os
from typing import *

from lib.mediatrix.config import MediatrixConfig

from modules.shared import ROOT_DIR


class Command:
    COMMANDS_DIR = os.path.join(ROOT_DIR, "modules", "commands")

    def sort(self):
        return 1

    def name(self):
        return ""

    def help(self):
        return ""

    def arguments(self, parser: argparse.ArgumentParser):
        pass

    def run(self, opts: argparse.Namespace, config: MediatrixConfig) -> int:
        return 0


def load_commands() -> List[Command]:
    commands = []
    for file in sorted(os.listdir(Command.COMMANDS_DIR)):
        if not file.endswith(".py") or file.startswith("_"):
            continue
        module = importlib.import_module(f"modules.commands.{file[:-3]}")
        CommandClass = [
            x
            for x in module.__dict__.values()
            if type(x) == type and issubclass(x, Command) and not x == Command
        ]
        if len(CommandClass) > 0:
            commands.append(CommandClass[0]())
    return sorted(commands, key=lambda x: x.sort())


def apply_overrides(opts: argparse.Namespace, config: MediatrixConfig) -> MediatrixConfig:
    config = config.model_copy(deep=True)
    if opts.workers is not None:
        config.exact.workers = opts.workers
        config.diffcover.workers = opts.workers
        config.bounds.workers = opts.workers
    return config
