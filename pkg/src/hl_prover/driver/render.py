"""Text reports rendered from the jinja2 templates shipped with the driver"""

from pathlib import Path
from typing import Any, Optional

from jinja2 import Environment, FileSystemLoader


class ReportRenderer:
    """
    Renders check, lint, bench and stats reports as text.

    Templates are looked up in ``template_path`` (the package's
    ``templates`` directory by default) as ``<kind>.txt.j2``.
    """

    def __init__(self, template_path: Optional[Path] = None):
        self.template_path = template_path or Path(__file__).parent / "templates"
        self.env = Environment(
            loader=FileSystemLoader(str(self.template_path)),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )

    def render(self, kind: str, **context: Any) -> str:
        return self.env.get_template(f"{kind}.txt.j2").render(**context)

    def check(self, report) -> str:
        return self.render("check", report=report)

    def lint(self, findings) -> str:
        return self.render("lint", findings=findings)

    def bench(self, rows) -> str:
        return self.render("bench", rows=rows)

    def stats(self, stats) -> str:
        return self.render("stats", stats=stats)
