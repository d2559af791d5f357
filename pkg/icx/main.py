import sys
from typing import List, Optional

from loguru import logger

from icx.config import LOG_LEVEL
from icx.errors import IcxError
from icx.ui import COMMANDS, TableSource, build_parser, render_output, resolve_config


def configure_logging(verbose: bool = False) -> None:
    """Diagnostics go to standard error; standard output carries results only."""
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else LOG_LEVEL)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one icx command.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        0 on success, 1 when a check fails, 2 on usage or I/O errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    try:
        config = resolve_config(args)
    except ValueError as e:
        configure_logging()
        print(f"icx: invalid configuration: {e}", file=sys.stderr)
        return 2
    configure_logging(config.verbose)
    logger.debug(f"Running {args.command} with {config}")

    try:
        output = COMMANDS[args.command](args, config, TableSource(config))
    except (IcxError, OSError, ValueError) as e:
        logger.debug(f"{args.command} failed: {e!r}")
        print(f"icx {args.command}: {e}", file=sys.stderr)
        return 2

    sys.stdout.write(render_output(output, config.format, config.timestamp))
    return output.status


def main():
    """Main application entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
