import sys
from typing import *

from lib.mediatrix.errors import CertificateError, UsageError
from lib.mediatrix.utils import logger, setup_logging
from modules import cli, cmd_opts, shared


def main(argv: Optional[Sequence[str]] = None) -> int:
    commands = cli.load_commands()
    parser = cmd_opts.create_parser(commands)
    opts = parser.parse_args(argv)
    setup_logging(opts.log_level)

    try:
        config = cli.apply_overrides(opts, shared.load_config(opts.config))
        return opts.command.run(opts, config)
    except (UsageError, CertificateError) as e:
        logger.error(str(e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
