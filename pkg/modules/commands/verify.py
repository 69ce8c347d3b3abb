import argparse

from lib.mediatrix.config import MediatrixConfig

from modules.certificates import read_certificate, verify_certificate
from modules.cli import Command


class Verify(Command):
    def sort(self):
        return 3

    def name(self):
        return "verify"

    def help(self):
        return "Check a certificate: exit 0 if valid, 1 if a claim is false"

    def arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("path", type=str)

    def run(self, opts: argparse.Namespace, config: MediatrixConfig) -> int:
        report = verify_certificate(read_certificate(opts.path))
        if report.ok:
            print(f"valid: {report.kind} on n={report.n}, value {report.actual} <= claim {report.claimed}")
            return 0
        for message in report.messages:
            print(f"invalid: {message}")
        return 1
