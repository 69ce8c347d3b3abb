import argparse
import csv
import json
import sys

from lib.mediatrix.bounds import bounds_table, monotonicity_violations, ratio_report
from lib.mediatrix.config import MediatrixConfig
from lib.mediatrix.errors import ArgumentError, UsageError
from lib.mediatrix.utils import logger

from modules.cli import Command

CSV_COLUMNS = ["n", "f", "mu_ub", "method", "gap", "strict_gap"]


class Bounds(Command):
    def sort(self):
        return 1

    def name(self):
        return "bounds"

    def help(self):
        return "Table of lower and upper bounds on mu(n) over a range of n"

    def arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("--from", dest="n_from", type=int, required=True)
        parser.add_argument("--to", dest="n_to", type=int, required=True)
        parser.add_argument("--effort", type=int, choices=[0, 1, 2], default=None)
        parser.add_argument("--format", choices=["json", "csv"], default="json")
        parser.add_argument(
            "--summary", action="store_true", help="Log the ratio and monotonicity summary"
        )

    def run(self, opts: argparse.Namespace, config: MediatrixConfig) -> int:
        if opts.n_to > config.bounds.table_max_n:
            raise UsageError(f"--to exceeds the table cap {config.bounds.table_max_n}")
        try:
            records = bounds_table(
                opts.n_from,
                opts.n_to,
                effort=opts.effort,
                config=config,
                workers=config.bounds.workers,
                progress=not opts.no_progress,
            )
        except ArgumentError as e:
            raise UsageError(str(e))

        if opts.format == "csv":
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for r in records:
                writer.writerow(
                    [r.n, r.f_lower, r.mu_upper, r.upper_method, r.gap, str(r.strict_gap_proved).lower()]
                )
        else:
            json.dump([r.model_dump() for r in records], sys.stdout, indent=2)
            sys.stdout.write("\n")

        if opts.summary:
            violations = monotonicity_violations(records)
            if any(r.f_lower > 0 for r in records):
                report = ratio_report(records)
                logger.info(
                    f"{report.rows} rows, max mu_ub/f = {report.max_ratio:.4f} at n={report.max_ratio_n}, "
                    f"max gap {report.max_gap} at n={report.max_gap_n}"
                )
                if report.max_prime_ratio is not None:
                    logger.info(
                        f"primes-only extension: max ratio {report.max_prime_ratio:.4f} "
                        f"at n={report.max_prime_ratio_n}"
                    )
            gaps = [r.n for r in records if r.strict_gap_proved]
            logger.info(f"strict gaps at {gaps}, monotonicity violations at {violations}")
        return 0
