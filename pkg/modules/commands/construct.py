import argparse
import json
import random
import sys

from lib.mediatrix.bounds import UpperBound, best_upper_bound
from lib.mediatrix.config import MediatrixConfig
from lib.mediatrix.constructions import (
    extend_plane,
    extension_parameters,
    extension_size,
    plane_order,
)
from lib.mediatrix.difference_cover import default_k_budget, min_difference_cover
from lib.mediatrix.errors import (
    ArgumentError,
    BudgetError,
    ConstructionError,
    ResourceError,
    SearchBudgetExceeded,
    UsageError,
)
from lib.mediatrix.exact import mu_exact
from lib.mediatrix.families import family_from_digraph
from lib.mediatrix.utils import logger

from modules.certificates import certificate_from_bound, dumps, verify_certificate, write_certificate
from modules.cli import Command


class Construct(Command):
    def sort(self):
        return 2

    def name(self):
        return "construct"

    def help(self):
        return "Build a mediated witness for n and write its certificate"

    def arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument(
            "--method",
            choices=["auto", "plane", "extend", "diffcover", "exact"],
            default="auto",
        )
        parser.add_argument("--q", type=int, default=None)
        parser.add_argument("--m", type=int, default=None)
        parser.add_argument("--t", type=int, default=None)
        parser.add_argument("--k-budget", type=int, default=None)
        parser.add_argument("--effort", type=int, choices=[0, 1, 2], default=None)
        parser.add_argument("--kind", choices=["digraph", "family"], default="digraph")
        parser.add_argument("--out", type=str, default=None, help="Certificate path, stdout if omitted")

    def plane(self, n: int, config: MediatrixConfig) -> UpperBound:
        q = plane_order(n)
        if q is None:
            raise UsageError(f"plane needs n = q^2+q+1 for a prime power q, got n={n}")
        return UpperBound(n, q, "plane", {"q": q})

    def extend(self, opts: argparse.Namespace, config: MediatrixConfig) -> UpperBound:
        n = opts.n
        given = [opts.q, opts.m, opts.t]
        if all(v is None for v in given):
            options = extension_parameters(n)
            if not options:
                raise UsageError(f"no plane extension reaches n={n}")
            q, m, t = min(options, key=lambda p: (p[0] + p[1], p[0]))
        elif any(v is None for v in given):
            raise UsageError("--q, --m and --t go together")
        else:
            q, m, t = given
            if extension_size(q, m, t) != n:
                raise UsageError(f"extension ({q}, {m}, {t}) has {extension_size(q, m, t)} points, not {n}")

        rng = random.Random(config.construction.seed) if config.construction.randomize_z else None
        ext = extend_plane(q, m, t, rng=rng, max_order=config.galois.max_order)
        return UpperBound(n, q + m, "plane-extension", {"q": q, "m": m, "t": t}, family=ext.family)

    def diffcover(self, opts: argparse.Namespace, config: MediatrixConfig) -> UpperBound:
        n = opts.n
        budget = opts.k_budget or default_k_budget(n, config.diffcover.budget_slack)
        cover = min_difference_cover(
            n,
            budget,
            workers=config.diffcover.workers,
            progress=not opts.no_progress,
        )
        if cover is None:
            raise UsageError(f"no difference cover mod {n} with at most {budget} elements")
        return UpperBound(n, cover.k - 1, "diff-cover", {"k": cover.k, "elems": list(cover.elems)})

    def exact(self, n: int, config: MediatrixConfig) -> UpperBound:
        k_cap = best_upper_bound(n, effort=1, config=config).value
        mu, witness = mu_exact(
            n,
            k_cap,
            max_n=config.exact.max_n,
            node_limit=config.exact.node_limit,
            time_limit=config.exact.time_limit,
            workers=config.exact.workers,
        )
        return UpperBound(n, mu, "exact", {"k": mu}, family=family_from_digraph(witness))

    def run(self, opts: argparse.Namespace, config: MediatrixConfig) -> int:
        n = opts.n
        if n < 1:
            raise UsageError(f"n must be at least 1, got {n}")
        try:
            if opts.method == "plane":
                bound = self.plane(n, config)
            elif opts.method == "extend":
                bound = self.extend(opts, config)
            elif opts.method == "diffcover":
                bound = self.diffcover(opts, config)
            elif opts.method == "exact":
                bound = self.exact(n, config)
            else:
                bound = best_upper_bound(n, opts.effort, config)
        except (ArgumentError, ResourceError) as e:
            raise UsageError(str(e))
        except SearchBudgetExceeded as e:
            logger.warning(f"n={n}: {e}")
            print(json.dumps({"n": n, "mu": None, "status": "unknown"}))
            return 1
        except BudgetError as e:
            logger.warning(str(e))
            print(json.dumps({"n": n, "mu": None, "status": "no witness within the cap"}))
            return 1

        cert = certificate_from_bound(bound, opts.kind, config)
        report = verify_certificate(cert)
        if not report.ok:
            raise ConstructionError(f"{bound.label} witness for n={n} failed verification: {report.messages}")

        logger.info(f"n={n}: {bound.label} gives mu <= {bound.value}")
        if opts.out:
            write_certificate(cert, opts.out)
            logger.info(f"wrote {opts.out}")
        else:
            sys.stdout.write(dumps(cert))
        return 0
