import json
import logging
import time
from typing import List, Optional

import click
from pydantic import ValidationError

from glasnerkit.core.config import config
from glasnerkit.core.exceptions import EXIT_OK, GlasnerException, ValidationException
from glasnerkit.core.logger import setup_logging

logger = logging.getLogger(__name__)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def describe_validation_error(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        where = ".".join(str(loc) for loc in err["loc"])
        parts.append(f"{where}: {err['msg']}" if where else err["msg"])
    return "; ".join(parts)


class GlasnerGroup(click.Group):
    """Maps library errors to exit codes and a JSON error on standard error."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except GlasnerException as exc:
            self._fail(ctx, exc)
        except ValidationError as exc:
            self._fail(ctx, ValidationException(describe_validation_error(exc)))

    @staticmethod
    def _fail(ctx: click.Context, exc: GlasnerException):
        logger.error(exc.detail)
        click.echo(json.dumps(exc.to_dict(), sort_keys=True), err=True)
        ctx.exit(exc.exit_code)


@click.group(cls=GlasnerGroup)
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Overrides GLASNER_LOG_LEVEL.")
@click.option("--timing/--no-timing", default=None, help="Report wall time in timing_ms.")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], timing: Optional[bool]):
    """Exponential sums, power-full moduli and eps-dense dilations on the torus."""
    settings = config.reload()
    level = (log_level or settings.LOG_LEVEL).upper()
    if level not in LOG_LEVELS:
        level = "WARNING"
    setup_logging(level, settings.LOG_FILE)
    ctx.obj = {
        "settings": settings,
        "timing": settings.REPORT_TIMING if timing is None else timing,
        "started": time.perf_counter(),
    }


from glasnerkit.cli.routers import bounds, expsum, glasner, modulus, powerfull, torus  # noqa: E402

cli.add_command(expsum.router, name="expsum")
cli.add_command(modulus.router, name="modulus")
cli.add_command(powerfull.router, name="powerfull")
cli.add_command(torus.router, name="torus")
cli.add_command(glasner.router, name="glasner")
cli.add_command(bounds.router, name="bounds")


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command line; returns the process exit code."""
    try:
        result = cli.main(args=argv, prog_name="glasnerkit", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return result if isinstance(result, int) else EXIT_OK
