import logging
import sys
from typing import List, Optional

import click

from commands.cli import cli
from utils.config import Config
from utils.constants import EXIT_MATH_ERROR, EXIT_OK, EXIT_USAGE_ERROR
from utils.errors import InputError, MathError

logger = logging.getLogger(__name__)


def configure_logging() -> None:
    logging.basicConfig(
        level=Config.LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def run(argv: Optional[List[str]] = None) -> int:
    """Run the command line and return the exit code.

    0 on success, 1 on a mathematical obstruction (degenerate symbol, pole,
    general position), 2 on a usage or input error. Errors are reported as
    one line on stderr.
    """
    try:
        result = cli.main(args=argv, prog_name="opinv", standalone_mode=False)
    except MathError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_MATH_ERROR
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE_ERROR
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE_ERROR
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_MATH_ERROR
    except ValueError as exc:
        logger.debug("invalid argument", exc_info=True)
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE_ERROR
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    configure_logging()
    sys.exit(run())
