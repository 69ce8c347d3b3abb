import argparse
import json

from lib.mediatrix.bounds import best_upper_bound, f_lower
from lib.mediatrix.config import MediatrixConfig
from lib.mediatrix.digraph import arcs
from lib.mediatrix.errors import ArgumentError, BudgetError, ResourceError, SearchBudgetExceeded, UsageError
from lib.mediatrix.exact import mu_exact
from lib.mediatrix.utils import logger

from modules.cli import Command


class Exact(Command):
    def sort(self):
        return 5

    def name(self):
        return "exact"

    def help(self):
        return "Exact mu(n) by branch and bound, for small n"

    def arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--k-cap", type=int, default=None)

    def run(self, opts: argparse.Namespace, config: MediatrixConfig) -> int:
        n = opts.n
        if n < 1:
            raise UsageError(f"n must be at least 1, got {n}")
        k_cap = opts.k_cap
        if k_cap is None:
            k_cap = best_upper_bound(n, effort=1, config=config).value
        try:
            mu, witness = mu_exact(
                n,
                k_cap,
                max_n=config.exact.max_n,
                node_limit=config.exact.node_limit,
                time_limit=config.exact.time_limit,
                workers=config.exact.workers,
            )
        except (ResourceError, ArgumentError) as e:
            raise UsageError(str(e))
        except SearchBudgetExceeded as e:
            logger.warning(f"n={n}: {e}")
            print(json.dumps({"n": n, "mu": None, "status": "unknown"}))
            return 1
        except BudgetError as e:
            logger.warning(str(e))
            print(json.dumps({"n": n, "mu": None, "status": f"above {k_cap}"}))
            return 1
        print(json.dumps({"n": n, "f": f_lower(n), "mu": mu, "arcs": [list(a) for a in arcs(witness)]}))
        return 0
