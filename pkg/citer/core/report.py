"""
Report Generator - canonical JSON and HTML verification reports
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, Optional

from jinja2 import Template

from ..models.results import CheckStatus, VerificationReport


def _finite(value: Any) -> Any:
    """JSON has no infinities; they travel as strings"""
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


def canonical_json(data: Dict[str, Any]) -> str:
    """Sorted keys and repr-exact floats, so equal reports give equal bytes"""
    return json.dumps(_finite(data), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


class ReportGenerator:
    """
    Write verification reports in JSON and HTML
    """

    def __init__(self, output_dir: Path = Path("."), timing: bool = False):
        self.output_dir = Path(output_dir)
        self.timing = timing

    def render_json(self, report: VerificationReport) -> str:
        return canonical_json(report.to_dict(self.timing))

    def generate_json(self, report: VerificationReport, path: Optional[Path] = None) -> Path:
        """Generate JSON report"""
        output_path = Path(path) if path is not None else self.output_dir / f"citer_verify_{report.suite}.json"
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(self.render_json(report))
        return output_path

    def generate_html(self, report: VerificationReport, path: Optional[Path] = None) -> Path:
        """Generate HTML report"""
        output_path = Path(path) if path is not None else self.output_dir / f"citer_verify_{report.suite}.html"
        output_path.parent.mkdir(parents=True, exist_ok=True)

        html_content = self._get_html_template().render(
            report=report,
            results=report.results,
            status_colors=self._get_status_colors(),
            timing=self.timing,
            fmt=self._format_pair,
        )
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(html_content)
        return output_path

    @staticmethod
    def _format_pair(pair) -> str:
        re, im = pair
        if im == 0:
            return f"{re:.12g}"
        return f"{re:.12g} {'+' if im >= 0 else '-'} {abs(im):.12g}i"

    def _get_status_colors(self) -> Dict[str, str]:
        return {
            CheckStatus.PASS.value: "#2e7d32",
            CheckStatus.FAIL.value: "#c62828",
            CheckStatus.SKIPPED.value: "#757575",
        }

    def _get_html_template(self) -> Template:
        template_str = """<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>citer verification - {{ report.suite }}</title>
    <style>
        body { font-family: -apple-system, BlinkMacSystemFont, 'Segoe UI', Roboto, sans-serif; margin: 2em; color: #222; }
        h1 { font-size: 1.5em; }
        .summary span { margin-right: 1.5em; font-weight: bold; }
        table { border-collapse: collapse; width: 100%; font-size: 0.9em; }
        th, td { border-bottom: 1px solid #ddd; padding: 6px 8px; text-align: left; vertical-align: top; }
        th { background: #f5f5f5; }
        td.num { font-family: monospace; white-space: nowrap; }
        .note { color: #555; font-style: italic; }
    </style>
</head>
<body>
    <h1>Verification suite: {{ report.suite }}</h1>
    <div class="summary">
        <span>Total: {{ results | length }}</span>
        <span style="color: {{ status_colors['pass'] }}">Passed: {{ report.passed }}</span>
        <span style="color: {{ status_colors['fail'] }}">Failed: {{ report.failed }}</span>
        <span style="color: {{ status_colors['skipped'] }}">Skipped: {{ report.skipped }}</span>
    </div>
    <h2>Checks</h2>
    <table>
        <tr>
            <th>Check</th><th>Status</th><th>Computed</th><th>Expected</th>
            <th>|error|</th><th>Tolerance</th>{% if timing %}<th>ms</th>{% endif %}<th>Provenance</th>
        </tr>
        {% for r in results %}
        <tr>
            <td>{{ r.name }}{% if r.note %}<div class="note">{{ r.note }}</div>{% endif %}</td>
            <td style="color: {{ status_colors[r.status.value] }}">{{ r.status.value }}</td>
            <td class="num">{{ fmt(r.computed) }}</td>
            <td class="num">{{ fmt(r.expected) }}</td>
            <td class="num">{{ '%.3e' | format(r.abs_error) }}</td>
            <td class="num">{{ '%.1e' | format(r.tolerance) }}</td>
            {% if timing %}<td class="num">{{ '%.1f' | format(r.runtime_ms) }}</td>{% endif %}
            <td>{{ r.provenance }}</td>
        </tr>
        {% endfor %}
    </table>
    <h2>Configuration</h2>
    <table>
        {% for key, value in report.config | dictsort %}
        <tr><th>{{ key }}</th><td class="num">{{ value }}</td></tr>
        {% endfor %}
        {% for key, value in report.versions | dictsort %}
        <tr><th>{{ key }}</th><td class="num">{{ value }}</td></tr>
        {% endfor %}
    </table>
</body>
</html>"""
        return Template(template_str)
