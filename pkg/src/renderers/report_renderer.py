"""
Report Renderer - plain line records by default, rich tables on request
"""

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from ..core.verification import VerificationResult, VerificationStatus

STATUS_STYLES = {
    VerificationStatus.CONFIRMED: "bold green",
    VerificationStatus.FAILED: "bold red",
    VerificationStatus.LIMIT_EXCEEDED: "bold yellow",
    VerificationStatus.USAGE_ERROR: "bold red",
}


class ReportRenderer:
    """Renders verification results on standard output"""

    def __init__(self, pretty: bool = False, timing: bool = False, console: Console = None):
        self.pretty = pretty
        self.timing = timing
        self.console = console or Console(highlight=False, emoji=False)

    def render(self, result: VerificationResult):
        if self.pretty:
            self._render_table(result)
        else:
            self._render_plain(result)

    def _render_plain(self, result: VerificationResult):
        """Header line, then one record per line; no markup so output is stable"""
        out = self.console
        out.print(f"{result.command} {result.status.value}", markup=False, soft_wrap=True)
        for record in result.records:
            out.print(" ".join([record.key] + record.values), markup=False, soft_wrap=True)
        if result.message:
            out.print(result.message, markup=False, soft_wrap=True)
        if self.timing and result.elapsed is not None:
            out.print(f"elapsed {result.elapsed:.3f}s", markup=False, soft_wrap=True)

    def _render_table(self, result: VerificationResult):
        style = STATUS_STYLES[result.status]
        table = Table(title=f"{result.command} [{style}]{result.status.value}[/{style}]")
        width = max([len(r.values) + 1 for r in result.records] + [len(result.columns)])
        columns = list(result.columns) + [""] * (width - len(result.columns))
        for i, column in enumerate(columns):
            table.add_column(column, style="cyan" if i == 0 else None)
        for record in result.records:
            cells = [record.key] + record.values
            table.add_row(*(escape(c) for c in cells + [""] * (width - len(cells))))
        self.console.print(table)
        if result.message:
            self.console.print(f"[dim]{escape(result.message)}[/dim]")
        if self.timing and result.elapsed is not None:
            self.console.print(f"[dim]Elapsed: {result.elapsed:.3f}s[/dim]")

    def render_error(self, message: str):
        """Usage errors go to stderr"""
        Console(stderr=True, highlight=False, emoji=False).print(f"Error: {message}", markup=False, style="bold red")

    def render_text(self, text: str):
        """Raw documents (emitted presentations, table dumps) pass through unchanged"""
        self.console.print(text, markup=False, highlight=False, soft_wrap=True, end="")
