import csv
import io
import time
from typing import Any, Dict, Iterable, Sequence

import click

from glasnerkit.core.config import Config
from glasnerkit.repositories.GlasnerModules.matrices import MatrixRepository
from glasnerkit.repositories.TorusModules.pointsets import PointSetRepository
from glasnerkit.schemas.output import OutputRecord, to_jsonable
from glasnerkit.services.GlasnerModules.glasner import GlasnerService
from glasnerkit.services.TorusModules.service import TorusService


def get_settings(ctx: click.Context) -> Config:
    return ctx.find_root().obj["settings"]


def get_glasner_service(ctx: click.Context) -> GlasnerService:
    return GlasnerService(PointSetRepository(), MatrixRepository(), get_settings(ctx))


def get_torus_service(ctx: click.Context) -> TorusService:
    return TorusService(PointSetRepository(), get_settings(ctx))


threads_option = click.option(
    "--threads", type=click.IntRange(min=1), default=1, show_default=True,
    help="Worker threads; the output does not depend on this.",
)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True,
)


def parse_int_list(text: str, name: str) -> tuple:
    """'0,1,-2' -> (0, 1, -2)."""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got '{text}'", param_hint=name)


def build_record(ctx: click.Context, command: str, inputs: Dict[str, Any], results: Dict[str, Any]) -> OutputRecord:
    root = ctx.find_root().obj
    timing = 0.0
    if root.get("timing"):
        timing = round((time.perf_counter() - root["started"]) * 1000.0, 3)
    return OutputRecord(command=command, inputs=inputs, results=results, timing_ms=timing)


def emit(ctx: click.Context, command: str, inputs: Dict[str, Any], results: Dict[str, Any]) -> OutputRecord:
    """Write the JSON record to standard output."""
    record = build_record(ctx, command, inputs, results)
    click.echo(record.serialize())
    return record


def emit_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]]):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in to_jsonable(list(row))])
    click.echo(buffer.getvalue(), nl=False)


def _csv_cell(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if value is None:
        return ""
    return value

