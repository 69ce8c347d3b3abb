import argparse
import json

from lib.mediatrix.config import MediatrixConfig
from lib.mediatrix.difference_cover import default_k_budget, min_difference_cover
from lib.mediatrix.errors import UsageError

from modules.cli import Command


class DiffCover(Command):
    def sort(self):
        return 4

    def name(self):
        return "diffcover"

    def help(self):
        return "Least difference cover of Z_n within a size budget"

    def arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--k-budget", type=int, default=None)

    def run(self, opts: argparse.Namespace, config: MediatrixConfig) -> int:
        if opts.n < 1:
            raise UsageError(f"n must be at least 1, got {opts.n}")
        budget = opts.k_budget or default_k_budget(opts.n, config.diffcover.budget_slack)
        cover = min_difference_cover(
            opts.n,
            budget,
            workers=config.diffcover.workers,
            progress=not opts.no_progress,
        )
        if cover is None:
            print(json.dumps({"n": opts.n, "k_budget": budget, "k": None}))
            return 1
        print(json.dumps({"n": opts.n, "k": cover.k, "elems": list(cover.elems), "mu_ub": cover.k - 1}))
        return 0
