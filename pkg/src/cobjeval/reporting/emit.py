"""Report emission: schema-stable JSON and self-contained static HTML.

JSON serialization sorts keys and excludes wall-clock values, so identical
store state emits byte-identical files. HTML pages inline their styles and
precomputed values; nothing is fetched at view time.
"""

from __future__ import annotations

import html
import json
from datetime import datetime, timezone
from pathlib import Path

_STYLE = """
body { font-family: -apple-system, 'Segoe UI', Roboto, sans-serif; margin: 2rem; color: #1c1e21; }
h1 { font-size: 1.4rem; } h2 { font-size: 1.1rem; margin-top: 1.5rem; }
table { border-collapse: collapse; margin: 1rem 0; }
th, td { border: 1px solid #d0d4d9; padding: 0.35rem 0.7rem; text-align: left; font-size: 0.9rem; }
th { background: #f2f4f6; }
td.num { text-align: right; font-variant-numeric: tabular-nums; }
.pass { color: #1a7f37; font-weight: 600; } .fail { color: #b42318; font-weight: 600; }
.gray { background: #e5e7eb; color: #6b7280; }
.cell { display: inline-block; width: 9rem; margin: 0.2rem; padding: 0.6rem; border-radius: 4px;
        text-align: center; font-size: 0.85rem; }
pre { background: #f6f8fa; padding: 0.8rem; overflow-x: auto; font-size: 0.8rem; border-radius: 4px; }
.cols { display: flex; gap: 1rem; } .cols > div { flex: 1; min-width: 0; }
.delta-up { color: #1a7f37; } .delta-down { color: #b42318; }
"""


def emit(report: dict, format: str, out_path: str | Path) -> Path:
    """Write the report; returns the path written."""
    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if format == "json":
        path.write_text(to_json(report), encoding="utf-8")
    elif format == "html":
        path.write_text(to_html(report), encoding="utf-8")
    else:
        raise ValueError(f"unknown report format: {format}")
    return path


def report_path(base_dir: str | Path, kind: str, format: str,
                timestamp: datetime | None = None) -> Path:
    """Standard layout: <base>/<kind>/<timestamp>.<format>"""
    stamp = (timestamp or datetime.now(timezone.utc)).strftime("%Y%m%dT%H%M%S%f")
    return Path(base_dir) / kind / f"{stamp}.{format}"


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def to_html(report: dict) -> str:
    kind = report.get("kind", "report")
    builder = _HTML_BUILDERS.get(kind, _generic_html)
    body = builder(report)
    return (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
        f"<title>{html.escape(kind)} report</title>"
        f"<style>{_STYLE}</style></head>\n<body>\n{body}\n</body></html>\n"
    )


def _esc(value) -> str:
    return html.escape(str(value))


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)


def _comparison_html(report: dict) -> str:
    parts = [f"<h1>Set comparison: {_esc(report['left']['set_ids'])} vs "
             f"{_esc(report['right']['set_ids'])}</h1>"]
    parts.append("<h2>Overall</h2><table><tr><th>Metric</th><th>Kind</th>"
                 "<th>Left</th><th>Right</th><th>Delta</th></tr>")
    for name, cell in sorted(report["metrics"].items()):
        delta_class = "delta-up" if cell["delta"] > 0 else ("delta-down" if cell["delta"] < 0 else "")
        parts.append(
            f"<tr><td>{_esc(name)}</td><td>{_esc(cell['kind'])}</td>"
            f"<td class='num'>{_fmt(cell['left'])}</td><td class='num'>{_fmt(cell['right'])}</td>"
            f"<td class='num {delta_class}'>{_fmt(cell['delta'])}</td></tr>"
        )
    parts.append("</table>")

    parts.append("<h2>By benchmark</h2><table><tr><th>Benchmark</th><th>Metric</th>"
                 "<th>Left</th><th>Right</th><th>Delta</th></tr>")
    for row in report["benchmarks"]:
        for name, cell in sorted(row["metrics"].items()):
            parts.append(
                f"<tr><td>{_esc(row['benchmark'])}</td><td>{_esc(name)}</td>"
                f"<td class='num'>{_fmt(cell['left'])}</td>"
                f"<td class='num'>{_fmt(cell['right'])}</td>"
                f"<td class='num'>{_fmt(cell['delta'])}</td></tr>"
            )
    parts.append("</table>")
    return "\n".join(parts)


def _score_color(score: float) -> str:
    # 1..7 mapped red -> yellow -> green.
    clamped = max(1.0, min(7.0, score))
    hue = int((clamped - 1) / 6 * 120)
    return f"hsl({hue}, 70%, 75%)"


def _heatmap_html(report: dict) -> str:
    parts = [f"<h1>Judge-score heatmap (sets {_esc(report['set_ids'])})</h1>",
             f"<p>Weighting: {_esc(report['weighting'])}; "
             f"scored points: {_esc(report['scored_points'])}</p>"]
    for kind, cell in report["cells"].items():
        if cell.get("absent"):
            parts.append(f"<span class='cell gray'>{_esc(kind)}<br>n/a</span>")
        else:
            color = _score_color(cell["weighted_score"])
            parts.append(
                f"<span class='cell' style='background:{color}'>{_esc(kind)}<br>"
                f"<strong>{cell['weighted_score']:.2f}</strong> ({cell['sample_count']})</span>"
            )
    return "\n".join(parts)


def _samples_html(report: dict) -> str:
    checker_ids = sorted({c for row in report["rows"] for c in row["checkers"]})
    parts = [f"<h1>All samples, set {_esc(report['set_id'])}</h1>", "<table><tr><th>Point</th>"]
    parts.append("".join(f"<th>{_esc(c)}</th>" for c in checker_ids))
    parts.append("<th>Judge</th><th>Errors</th></tr>")
    for row in report["rows"]:
        cells = [f"<td>{_esc(row['program'])}/{_esc(row['paragraph'])} #{row['point_id']}</td>"]
        for checker in checker_ids:
            value = row["checkers"].get(checker)
            if value is None:
                cells.append("<td class='gray'>-</td>")
            else:
                cells.append(f"<td class='{'pass' if value else 'fail'}'>"
                             f"{'pass' if value else 'FAIL'}</td>")
        judge = row["judge_score"]
        cells.append(f"<td class='num'>{_esc(judge) if judge is not None else '-'}</td>")
        cells.append(f"<td class='num'>{row['error_count']}</td>")
        parts.append("<tr>" + "".join(cells) + "</tr>")
    parts.append("</table>")
    return "\n".join(parts)


def _debug_html(report: dict) -> str:
    parts = [f"<h1>Debug: {_esc(report['program'])}/{_esc(report['paragraph'])} "
             f"(point {report['point_id']})</h1>"]
    parts.append("<div class='cols'><div><h2>COBOL</h2><pre>"
                 + _esc(report["cobol_source"]) + "</pre></div>")
    parts.append("<div><h2>Java</h2><pre>" + _esc(report["translated_java"]) + "</pre></div></div>")
    if report.get("maps_text"):
        parts.append("<h2>Mappings</h2><pre>" + _esc(report["maps_text"]) + "</pre>")
    parts.append("<h2>Checker scores</h2><table><tr><th>Checker</th><th>Outcome</th><th>Metrics</th></tr>")
    for row in report["checker_scores"]:
        outcome = "pass" if row["passed"] else "FAIL"
        parts.append(f"<tr><td>{_esc(row['checker'])}</td>"
                     f"<td class='{'pass' if row['passed'] else 'fail'}'>{outcome}</td>"
                     f"<td>{_esc(json.dumps(row['metrics'], sort_keys=True))}</td></tr>")
    parts.append("</table>")
    if report["errors"]:
        parts.append("<h2>Findings</h2><table><tr><th>Type</th><th>Severity</th><th>Message</th></tr>")
        for error in report["errors"]:
            parts.append(f"<tr><td>{_esc(error['checker_id'])}</td>"
                         f"<td>{_esc(error.get('severity', 'error'))}</td>"
                         f"<td>{_esc(error['message'])}</td></tr>")
        parts.append("</table>")
    if report.get("judge"):
        parts.append("<h2>Judge</h2><pre>" + _esc(report["judge"].get("raw_response", "")) + "</pre>")
    if report.get("java_diff") is not None:
        parts.append(f"<h2>Diff vs point {_esc(report.get('compared_to'))}</h2><pre>"
                     + _esc("\n".join(report["java_diff"])) + "</pre>")
    return "\n".join(parts)


def _coverage_html(report: dict) -> str:
    parts = [f"<h1>Coverage ({report['scope_datapoints']} datapoints)</h1>",
             "<table><tr><th>Node</th><th>Level</th><th>Count</th><th>Datapoints</th></tr>"]
    for row in report["rows"]:
        indent = {"category": "", "subcategory": "&nbsp;&nbsp;", "subsubcategory": "&nbsp;&nbsp;&nbsp;&nbsp;"}
        zero = " class='gray'" if row["count"] == 0 else ""
        parts.append(
            f"<tr{zero}><td>{indent[row['level']]}{_esc(row['name'])}</td>"
            f"<td>{_esc(row['level'])}</td><td class='num'>{row['count']}</td>"
            f"<td class='num'>{row['datapoints']}</td></tr>"
        )
    parts.append("</table>")
    return "\n".join(parts)


def _calibration_html(report: dict) -> str:
    parts = [f"<h1>Judge calibration: {_esc(report['judge_id'])}</h1>",
             f"<p>Alignment rate: <strong>{report['alignment_rate']:.2f}</strong>, "
             f"strict-order rate: {report['strict_order_rate']:.2f}, "
             f"parse failures: {report['parse_failures']}</p>",
             "<table><tr><th>Triple</th><th>A</th><th>B</th><th>C</th><th>Aligned</th></tr>"]
    for row in report["triples"]:
        scores = row["scores"]
        parts.append(
            f"<tr><td>{_esc(row['triple_id'])}</td>"
            f"<td class='num'>{_esc(scores.get('a'))}</td>"
            f"<td class='num'>{_esc(scores.get('b'))}</td>"
            f"<td class='num'>{_esc(scores.get('c'))}</td>"
            f"<td>{_fmt(row.get('aligned', False))}</td></tr>"
        )
    parts.append("</table>")
    return "\n".join(parts)


def _generic_html(report: dict) -> str:
    return "<pre>" + _esc(json.dumps(report, indent=2, sort_keys=True)) + "</pre>"


_HTML_BUILDERS = {
    "comparison": _comparison_html,
    "heatmap": _heatmap_html,
    "samples": _samples_html,
    "debug": _debug_html,
    "coverage": _coverage_html,
    "calibration": _calibration_html,
}
