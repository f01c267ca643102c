"""
Display module for qqpft
"""

from typing import Dict, List, Sequence, Union

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from algebra.signal import QSignal2D
from config import Settings
from models import UPReport, VerificationReport, is_failure

console = Console()


def _status(passed: bool) -> str:
    return "[green]✓[/green]" if passed else "[red]✗[/red]"


def display_verification_reports(reports: Sequence[VerificationReport]) -> None:
    """Display suite results in a table"""
    table = Table(title="Verification")

    table.add_column("Check", style="cyan")
    table.add_column("Parameters", style="white")
    table.add_column("Max error", justify="right")
    table.add_column("Tolerance", justify="right", style="yellow")
    table.add_column("Status", style="bold")

    for report in reports:
        params = report.parameters or {}
        table.add_row(
            report.name,
            " ".join(f"{k}={tuple(v)}" for k, v in params.items()) or "-",
            f"{report.max_abs_error:.3e}",
            f"{report.tolerance:.0e}",
            _status(report.passed),
        )

    console.print(table)
    display_summary(reports)


def display_uncertainty_reports(reports: Sequence[UPReport]) -> None:
    """Display uncertainty functionals in a table"""
    table = Table(title="Uncertainty principles")

    table.add_column("Check", style="cyan")
    table.add_column("Kind", style="white")
    table.add_column("LHS", justify="right")
    table.add_column("Bound", justify="right")
    table.add_column("Ratio / slack", justify="right", style="yellow")
    table.add_column("Status", style="bold")

    for report in reports:
        status = "[blue]diag[/blue]" if report.kind == "diagnostic" else _status(report.passed)
        table.add_row(
            report.name,
            report.kind,
            f"{report.lhs:.6g}",
            f"{report.rhs_bound:.6g}",
            f"{report.ratio_or_slack:.6g}",
            status,
        )

    console.print(table)
    display_summary(reports)


def display_summary(reports: Sequence[Union[VerificationReport, UPReport]]) -> None:
    failed = [r for r in reports if is_failure(r)]
    if failed:
        console.print(f"\n[bold red]✗ {len(failed)} of {len(reports)} checks failed[/bold red]")
    else:
        console.print(f"\n[bold green]✓ {len(reports)} checks passed[/bold green]")


def display_signal(f: QSignal2D, title: str = "Signal") -> None:
    """Display grid and magnitude summary of a signal"""
    grid = f.grid
    magnitude = f.abs()
    panel = Panel(
        f"""[bold]Grid[/bold]
Shape: {grid.n1} x {grid.n2}
Spacing: ({grid.dx1:.6g}, {grid.dx2:.6g})
Origin: ({grid.x1_0:.6g}, {grid.x2_0:.6g})

[bold]Samples[/bold]
max |f|: {magnitude.max():.6g}
‖f‖₂: {float((magnitude**2).sum() * grid.cell_area) ** 0.5:.6g}""",
        title=title,
    )
    console.print(panel)


def display_settings(settings: Settings) -> None:
    table = Table(title="Settings")

    table.add_column("Key", style="cyan")
    table.add_column("Value", style="white")

    values: Dict[str, object] = settings.model_dump(exclude={"tolerances"})
    for key, value in values.items():
        table.add_row(key, str(value))
    for key, value in settings.tolerances.model_dump().items():
        table.add_row(f"tolerances.{key}", f"{value:g}")

    console.print(table)


def display_warnings(warnings: List[str]) -> None:
    for warning in warnings:
        display_warning(warning)


def display_error(message: str) -> None:
    """Display error message"""
    console.print(f"[bold red]Error: {message}[/bold red]")


def display_success(message: str) -> None:
    """Display success message"""
    console.print(f"[bold green]✓ {message}[/bold green]")


def display_warning(message: str) -> None:
    """Display warning message"""
    console.print(f"[bold yellow]⚠ {message}[/bold yellow]")
