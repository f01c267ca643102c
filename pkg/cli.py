"""
Command-line interface for qqpft
"""

import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Union, cast

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from algebra.signal import Grid2D
from analyzers.uncertainty import LogConstant, UncertaintyAnalyzer
from analyzers.validation import SUITE_NAMES, TheoremValidator
from config import Settings, get_settings, save_settings
from display import (
    display_error,
    display_settings,
    display_signal,
    display_success,
    display_uncertainty_reports,
    display_verification_reports,
    display_warnings,
)
from errors import ParameterError, QQPFTError
from formats.images import read_pbm, read_ppm, write_ppm
from formats.qsig import Form, read_qsig, write_qsig
from models import CommandResult, QPFTParams, QQPFTParams, UPReport, VerificationReport
from transforms import qqpft

logger = logging.getLogger(__name__)

IDENTITY = "0,1,0,0,0"


class MuParam(click.ParamType):
    """a,b,c,d,e quintuple of one axis"""

    name = "a,b,c,d,e"

    def convert(self, value: object, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> QPFTParams:
        if isinstance(value, QPFTParams):
            return value
        try:
            return QPFTParams.parse(str(value))
        except ParameterError as e:
            self.fail(str(e), param, ctx)


MU = MuParam()
FORM = click.Choice(["binary", "text"])


def _setup_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@contextmanager
def _guard() -> Iterator[None]:
    """Precondition and I/O failures end the command with exit code 2"""
    try:
        yield
    except (QQPFTError, OSError, ValidationError) as e:
        display_error(str(e))
        sys.exit(2)


def _finish(reports: List[Union[VerificationReport, UPReport]], json_path: Optional[Path], warnings: Optional[List[str]] = None) -> None:
    result = CommandResult.from_reports(reports, warnings)
    if json_path:
        with open(json_path, "w") as f:
            json.dump(result.payload(), f, indent=2)
        logger.info("wrote %d reports to %s", len(reports), json_path)
    display_warnings(result.warnings)
    if result.exit_code:
        sys.exit(result.exit_code)


def mu_options(func: Callable[..., None]) -> Callable[..., None]:
    func = click.option("--mu2", type=MU, default=IDENTITY, show_default=True, help="j-axis parameters")(func)
    return click.option("--mu1", type=MU, default=IDENTITY, show_default=True, help="i-axis parameters")(func)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level")
@click.pass_context
def app(ctx: click.Context, verbose: bool) -> None:
    """qqpft - Quaternion quadratic-phase Fourier transforms"""
    with _guard():
        settings = get_settings()
    _setup_logging("DEBUG" if verbose else settings.log_level)
    ctx.obj = settings


@app.command()
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--out", "output_path", type=click.Path(dir_okay=False, path_type=Path), required=True)
@mu_options
@click.option("--method", type=click.Choice(["fast", "direct"]), default="fast", show_default=True)
@click.option("--variant", type=click.Choice(["two", "left", "right"]), default="two", show_default=True)
@click.option("--form", type=FORM, default="binary", show_default=True)
def transform(input_path: Path, output_path: Path, mu1: QPFTParams, mu2: QPFTParams, method: str, variant: str, form: str) -> None:
    """Apply the Q-QPFT to a QSIG signal"""
    with _guard():
        params = QQPFTParams(mu1=mu1, mu2=mu2)
        f = read_qsig(input_path)
        if variant == "two":
            F = qqpft.forward(f, params, method)
        else:
            # sided placements are evaluated by quadrature only
            logger.debug("variant %s ignores --method %s", variant, method)
            F = qqpft.forward_sided(f, params, variant)
        write_qsig(F, output_path, cast(Form, form))
        display_signal(F, title="Transform")
        display_success(f"Wrote {output_path}")


@app.command()
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--out", "output_path", type=click.Path(dir_okay=False, path_type=Path), required=True)
@mu_options
@click.option("--method", type=click.Choice(["exact", "direct"]), default="exact", show_default=True)
@click.option("--form", type=FORM, default="binary", show_default=True)
def inverse(input_path: Path, output_path: Path, mu1: QPFTParams, mu2: QPFTParams, method: str, form: str) -> None:
    """Recover a signal from its transform on the induced grid"""
    with _guard():
        F = read_qsig(input_path)
        f = qqpft.inverse(F, QQPFTParams(mu1=mu1, mu2=mu2), method)
        write_qsig(f, output_path, cast(Form, form))
        display_signal(f, title="Inverse")
        display_success(f"Wrote {output_path}")


@app.command()
@click.option("--k1", type=float, default=0.5, show_default=True)
@click.option("--k2", type=float, default=0.5, show_default=True)
@mu_options
@click.option("--n", type=int, help="Grid size per axis")
@click.option("--extent", type=float, help="Grid side length")
@click.option("--out", "output_path", type=click.Path(dir_okay=False, path_type=Path), required=True)
@click.option("--form", type=FORM, default="binary", show_default=True)
@click.pass_obj
def gaussian(settings: Settings, k1: float, k2: float, mu1: QPFTParams, mu2: QPFTParams, n: Optional[int], extent: Optional[float], output_path: Path, form: str) -> None:
    """Closed-form transform of e^{-(k1 x1² + k2 x2²)} on the induced grid"""
    with _guard():
        space = Grid2D.from_extent(n or settings.n, extent or settings.extent)
        frequency = space.frequency_grid(mu1.b, mu2.b)
        F = qqpft.gaussian_oracle_grid(QQPFTParams(mu1=mu1, mu2=mu2), k1, k2, frequency)
        write_qsig(F, output_path, cast(Form, form))
        display_success(f"Wrote {output_path}")


@app.command()
@click.option("--suite", type=click.Choice(["all", *SUITE_NAMES]), default="all", show_default=True)
@click.option("--n", type=int, help="Grid size per axis")
@click.option("--extent", type=float, help="Grid side length")
@click.option("--seed", type=int, help="Seed of the random test signals")
@click.option("--json", "json_path", type=click.Path(dir_okay=False, path_type=Path), help="Write the report array here")
@click.pass_obj
def verify(settings: Settings, suite: str, n: Optional[int], extent: Optional[float], seed: Optional[int], json_path: Optional[Path]) -> None:
    """Run the invariant suites"""
    with _guard():
        validator = TheoremValidator(settings, n=n, extent=extent, seed=seed)
        with Console(stderr=True).status("[bold green]Running suites..."):
            reports = validator.validate(suite)
        display_verification_reports(reports)
        _finish(list(reports), json_path)


@app.command()
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@mu_options
@click.option("--e1", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="PBM mask on the space grid")
@click.option("--e2", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="PBM mask on the frequency grid")
@click.option("--log-constant", type=click.Choice(["paper", "corrected"]), help="Only evaluate this logarithmic constant")
@click.option("--json", "json_path", type=click.Path(dir_okay=False, path_type=Path), help="Write the report array here")
@click.pass_obj
def uncertainty(settings: Settings, input_path: Path, mu1: QPFTParams, mu2: QPFTParams, e1: Optional[Path], e2: Optional[Path], log_constant: Optional[str], json_path: Optional[Path]) -> None:
    """Evaluate every uncertainty principle on a signal"""
    with _guard():
        if (e1 is None) != (e2 is None):
            raise click.UsageError("--e1 and --e2 must be given together")
        f = read_qsig(input_path)
        analyzer = UncertaintyAnalyzer(
            f,
            QQPFTParams(mu1=mu1, mu2=mu2),
            tolerance=settings.tolerances.uncertainty,
            log_tolerance=settings.tolerances.log_uncertainty,
            r2_floor=settings.hardy_r2_floor,
        )
        mask1 = read_pbm(e1, f.grid) if e1 else None
        mask2 = read_pbm(e2, analyzer.plan.frequency) if e2 else None
        reports = analyzer.analyze(mask1, mask2, cast(Optional[LogConstant], log_constant))
        display_uncertainty_reports(reports)
        _finish(list(reports), json_path)


@app.group()
def image() -> None:
    """Convert between PPM images and QSIG signals"""


@image.command("import")
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--out", "output_path", type=click.Path(dir_okay=False, path_type=Path), required=True)
@click.option("--form", type=FORM, default="binary", show_default=True)
@click.option("--pad", is_flag=True, help="Append a black row or column to odd sides instead of rejecting the image")
def image_import(input_path: Path, output_path: Path, form: str, pad: bool) -> None:
    """PPM (P6) to QSIG.

    Grids need even sides, so an image with an odd width or height exits 2 unless --pad is given.
    """
    with _guard():
        f = read_ppm(input_path, pad=pad)
        write_qsig(f, output_path, cast(Form, form))
        display_success(f"Imported {f.grid.n1}x{f.grid.n2} image to {output_path}")


@image.command("export")
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--out", "output_path", type=click.Path(dir_okay=False, path_type=Path), required=True)
def image_export(input_path: Path, output_path: Path) -> None:
    """QSIG to PPM (P6); the scalar part is dropped"""
    with _guard():
        warnings = write_ppm(read_qsig(input_path), output_path)
        display_warnings(warnings)
        display_success(f"Exported {output_path}")


@app.group()
def config() -> None:
    """Show or save settings"""


@config.command("show")
@click.pass_obj
def config_show(settings: Settings) -> None:
    """Display the resolved settings"""
    display_settings(settings)


@config.command("save")
@click.option("--n", type=int)
@click.option("--extent", type=float)
@click.option("--seed", type=int)
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.option("--file", "config_file", type=click.Path(dir_okay=False, path_type=Path), help="Defaults to ~/.qqpft/config.json")
@click.pass_obj
def config_save(settings: Settings, n: Optional[int], extent: Optional[float], seed: Optional[int], log_level: Optional[str], config_file: Optional[Path]) -> None:
    """Save the resolved settings, with overrides"""
    with _guard():
        overrides = {k: v for k, v in dict(n=n, extent=extent, seed=seed, log_level=log_level).items() if v is not None}
        updated = Settings.model_validate({**settings.model_dump(), **overrides})
        path = save_settings(updated, config_file)
        display_success(f"Configuration saved to {path}")


if __name__ == "__main__":
    app()
