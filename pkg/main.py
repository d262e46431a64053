#!/usr/bin/env python3
"""
Main entry point for the plane-partition congruence toolkit.
Parses the command line, configures logging and runs the command.
"""

import sys

from modules import cli
from modules.errors import UsageError
from utils.log_setup import setup_logging


def main(argv=None):
    """Main entry point; returns the process exit code."""
    argv = sys.argv[1:] if argv is None else argv
    try:
        command = cli.parse(argv)
    except UsageError as e:
        print(f"planecong: usage error: {e}", file=sys.stderr)
        return cli.EXIT_ERROR
    setup_logging(command.log_level)
    return cli.execute(command)


if __name__ == "__main__":
    sys.exit(main())
