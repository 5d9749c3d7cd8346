"""Running the tropls command line interface"""
import sys

from tropls.cli.commands import run


def main():
    """
    entry point to run one tropls subcommand
    """
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
