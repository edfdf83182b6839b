"""Command-line client for the evaluation service.

The CLI never touches the store directly: every command talks to the HTTP
API. Without ``--server`` it spins the service up in-process over an ASGI
transport, so single-machine use needs no running daemon; with ``--server``
the same commands drive a remote instance.

Exit codes: 0 success, 1 internal, 2 configuration, 3 I/O, 4 input schema,
5 evaluation/lookup, 6 judge backend.
"""

from __future__ import annotations

import json
import signal
import sys
import time
from pathlib import Path

import click
import httpx

from .config import AppConfig, load_config
from .errors import CobjevalError, ConfigError
from .reporting import report_path

EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_SCHEMA = 4
EXIT_EVAL = 5
EXIT_JUDGE = 6

_CATEGORY_EXITS = {
    "config": EXIT_CONFIG,
    "io": EXIT_IO,
    "schema": EXIT_SCHEMA,
    "not_found": EXIT_EVAL,
    "judge": EXIT_JUDGE,
    "internal": EXIT_INTERNAL,
}


def fail(category: str, message: str) -> None:
    """Emit the one-line machine-parsable error and exit."""
    click.echo(f"error category={category} message={json.dumps(message)}", err=True)
    sys.exit(_CATEGORY_EXITS.get(category, EXIT_INTERNAL))


class ServiceClient:
    """Lazy: the HTTP client (and, in local mode, the in-process service)
    exists only once a command actually issues a request, so `--help` and
    argument errors never touch the store."""

    def __init__(self, server: str | None, config: AppConfig):
        self.config = config
        self._server = server
        self._client = None
        self._app = None

    def _ensure_client(self):
        if self._client is not None:
            return self._client
        if self._server:
            self._client = httpx.Client(base_url=self._server.rstrip("/"), timeout=300.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # test-client import warns on some stacks
                from fastapi.testclient import TestClient
            from .service import create_app

            self._app = create_app(self.config)
            self._client = TestClient(self._app, base_url="http://cobjeval.internal")
        return self._client

    def close(self) -> None:
        if self._client is not None:
            self._client.close()
        if self._app is not None:
            self._app.state.store.close()

    def request(self, method: str, url: str, **kwargs) -> dict | list:
        client = self._ensure_client()
        try:
            response = client.request(method, url, **kwargs)
        except httpx.HTTPError as exc:
            fail("internal", f"service unreachable: {exc}")
        if response.status_code >= 400:
            try:
                body = response.json()
            except ValueError:
                body = {}
            category = body.get("category", "internal")
            message = body.get("error") or body.get("detail") or response.text
            if response.status_code == 409:
                # Duplicate ingest is an idempotent no-op, not a failure.
                click.echo(f"skipped: {message}", err=True)
                sys.exit(0)
            fail(category, str(message))
        if response.headers.get("content-type", "").startswith("text/html"):
            return {"_html": response.text}
        return response.json()

    def fetch_report(self, method: str, url: str, format: str, **kwargs):
        if format == "html":
            payload = self.request(method, url, params={**kwargs.pop("params", {}), "format": "html"},
                                   **kwargs)
            return payload["_html"]
        payload = self.request(method, url, **kwargs)
        return payload["report"]


pass_client = click.make_pass_decorator(ServiceClient)


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON configuration file.")
@click.option("--server", default=None, metavar="URL",
              help="Remote service URL; omit to run the service in-process.")
@click.option("--store", "store_path", default=None, type=click.Path(),
              help="Store database path (overrides config).")
@click.option("--inbox", default=None, type=click.Path(), help="Inbox directory (overrides config).")
@click.option("--report-dir", default=None, type=click.Path(),
              help="Directory for saved reports (overrides config).")
@click.pass_context
def main(ctx, config_path, server, store_path, inbox, report_dir):
    """Evaluate COBOL-to-Java method translations."""
    try:
        config = load_config(config_path, overrides={
            "store_path": store_path,
            "inbox": inbox,
            "report_dir": report_dir,
        })
    except ConfigError as exc:
        fail("config", str(exc))
    client = ServiceClient(server, config)
    ctx.obj = client
    ctx.call_on_close(client.close)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8021, show_default=True, type=int)
@pass_client
def serve(client: ServiceClient, host, port):
    """Run the evaluation service as an HTTP daemon."""
    import uvicorn
    from .service import create_app

    click.echo(f"serving on http://{host}:{port}", err=True)
    uvicorn.run(create_app(client.config), host=host, port=port, log_level="info")


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@pass_client
def ingest(client: ServiceClient, file):
    """Ingest one JSONL evaluation-set file."""
    try:
        content = Path(file).read_text(encoding="utf-8")
    except OSError as exc:
        fail("io", f"cannot read {file}: {exc}")
    body = client.request("POST", "/ingest", json={"content": content,
                                                   "filename": Path(file).name})
    click.echo(json.dumps(body, indent=2, sort_keys=True))


@main.command()
@click.argument("directory", type=click.Path(), required=False)
@click.option("--interval", default=2.0, show_default=True, help="Poll interval in seconds.")
@click.option("--once", is_flag=True, help="Scan a single time and exit.")
@pass_client
def watch(client: ServiceClient, directory, interval, once):
    """Watch an inbox directory and ingest arriving *.jsonl files."""
    inbox = directory or client.config.inbox
    Path(inbox).mkdir(parents=True, exist_ok=True)
    stopping = {"flag": False}

    def handle_sigint(signum, frame):
        stopping["flag"] = True
        click.echo("stopping after current scan...", err=True)

    previous = signal.signal(signal.SIGINT, handle_sigint)
    try:
        while True:
            body = client.request("POST", "/inbox/scan", json={"inbox": str(inbox)})
            for outcome in body["outcomes"]:
                click.echo(f"{outcome['status']}: {outcome['file']} {outcome['detail']}", err=True)
            if once or stopping["flag"]:
                break
            time.sleep(interval)
    finally:
        signal.signal(signal.SIGINT, previous)


@main.command()
@click.argument("set_id", type=int)
@click.option("--judge", is_flag=True, help="Run the configured judge backend as well.")
@click.option("--judge-backend", default=None, metavar="SPEC",
              help="Judge backend override (stub:5, stub:7,5,3, recorded:PATH, http:URL).")
@click.option("--checkers", default=None, metavar="IDS",
              help="Comma-separated checker ids to run (default: all).")
@click.option("--workers", default=None, type=int, help="Worker pool size for this run.")
@pass_client
def evaluate(client: ServiceClient, set_id, judge, judge_backend, checkers, workers):
    """Run the checker battery (and optionally the judge) over a set."""
    payload = {
        "set_id": set_id,
        "judge": judge or bool(judge_backend),
        "judge_backend": judge_backend,
        "workers": workers,
        "checkers": [c.strip() for c in checkers.split(",")] if checkers else None,
    }
    click.echo(f"evaluating set {set_id}...", err=True)
    body = client.request("POST", "/evaluate", json=payload)
    click.echo(json.dumps(body, indent=2, sort_keys=True))


@main.command(name="sets")
@pass_client
def list_sets(client: ServiceClient):
    """List ingested evaluation sets."""
    click.echo(json.dumps(client.request("GET", "/sets"), indent=2, sort_keys=True))


@main.command(name="datasets")
@pass_client
def list_datasets(client: ServiceClient):
    """List datasets and their datapoint counts."""
    click.echo(json.dumps(client.request("GET", "/datasets"), indent=2, sort_keys=True))


@main.command()
@click.option("--set", "set_id", type=int, default=None, help="Filter by evaluation set.")
@click.option("--dataset", default=None, help="Filter by dataset name.")
@click.option("--datapoint", "datapoint_id", type=int, default=None, help="Filter by datapoint.")
@click.option("--checker", default=None, help="Filter by finding id (A-VAR, A-CICS, ...).")
@click.option("--warnings", is_flag=True, help="Include warning-level findings.")
@pass_client
def errors(client: ServiceClient, set_id, dataset, datapoint_id, checker, warnings):
    """List individual findings from the latest results."""
    params = {k: v for k, v in (("set_id", set_id), ("dataset", dataset),
                                ("datapoint_id", datapoint_id), ("checker", checker),
                                ("include_warnings", warnings or None)) if v is not None}
    click.echo(json.dumps(client.request("GET", "/errors", params=params),
                          indent=2, sort_keys=True))


def _emit_report(client: ServiceClient, report, kind: str, format: str, out: str | None,
                 save: bool) -> None:
    if isinstance(report, str):  # pre-rendered HTML
        content = report
    else:
        content = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        target = Path(out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(content, encoding="utf-8")
        click.echo(str(target))
    elif save:
        target = report_path(client.config.report_dir, kind, format)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(content, encoding="utf-8")
        click.echo(str(target))
    else:
        click.echo(content, nl=False)


_format_option = click.option("--format", "format_", type=click.Choice(["json", "html"]),
                              default="json", show_default=True)
_out_option = click.option("--out", default=None, type=click.Path(),
                           help="Write the report to this path instead of stdout.")
_save_option = click.option("--save", is_flag=True,
                            help="Write under <report-dir>/<kind>/<timestamp>.<format>.")


@main.group()
def report():
    """Build reports from stored results."""


@report.command()
@click.option("--left", required=True, metavar="IDS", help="Left-side set ids, comma separated.")
@click.option("--right", required=True, metavar="IDS", help="Right-side set ids, comma separated.")
@_format_option
@_out_option
@_save_option
@pass_client
def compare(client: ServiceClient, left, right, format_, out, save):
    """Compare two groups of evaluation sets."""
    payload = {"left": [int(x) for x in left.split(",")],
               "right": [int(x) for x in right.split(",")]}
    data = client.fetch_report("POST", "/reports/compare", format_, json=payload)
    _emit_report(client, data, "compare", format_, out, save)


@report.command()
@click.option("--sets", "set_ids", required=True, metavar="IDS", help="Set ids, comma separated.")
@click.option("--unweighted", is_flag=True, help="Use all-ones weights instead of occurrences.")
@_format_option
@_out_option
@_save_option
@pass_client
def heatmap(client: ServiceClient, set_ids, unweighted, format_, out, save):
    """Judge-score heatmap by COBOL statement kind."""
    payload = {"set_ids": [int(x) for x in set_ids.split(",")], "unweighted": unweighted}
    data = client.fetch_report("POST", "/reports/heatmap", format_, json=payload)
    _emit_report(client, data, "heatmap", format_, out, save)


@report.command()
@click.option("--set", "set_id", required=True, type=int)
@_format_option
@_out_option
@_save_option
@pass_client
def samples(client: ServiceClient, set_id, format_, out, save):
    """All-samples view of one evaluation set."""
    data = client.fetch_report("GET", "/reports/samples", format_, params={"set_id": set_id})
    _emit_report(client, data, "samples", format_, out, save)


@report.command()
@click.option("--point", "point_id", required=True, type=int)
@click.option("--other", "other_point_id", type=int, default=None,
              help="Second point for a side-by-side diff.")
@_format_option
@_out_option
@_save_option
@pass_client
def debug(client: ServiceClient, point_id, other_point_id, format_, out, save):
    """Single-sample debug bundle."""
    params = {"point_id": point_id}
    if other_point_id is not None:
        params["other_point_id"] = other_point_id
    data = client.fetch_report("GET", "/reports/debug", format_, params=params)
    _emit_report(client, data, "debug", format_, out, save)


@report.command()
@click.option("--dataset", default=None, help="Restrict to one dataset (default: all).")
@_format_option
@_out_option
@_save_option
@pass_client
def coverage(client: ServiceClient, dataset, format_, out, save):
    """Coverage frequency report over ingested datapoints."""
    params = {"dataset": dataset} if dataset else {}
    data = client.fetch_report("GET", "/reports/coverage", format_, params=params)
    _emit_report(client, data, "coverage", format_, out, save)


@main.command()
@click.argument("triples_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--judge-backend", default=None, metavar="SPEC",
              help="Judge backend (defaults to the configured one).")
@pass_client
def calibrate(client: ServiceClient, triples_file, judge_backend):
    """Score partial-order benchmark triples and report alignment."""
    payload = {"triples_path": str(Path(triples_file).resolve()),
               "judge_backend": judge_backend}
    body = client.request("POST", "/calibrate", json=payload)
    report_data = body["report"]
    click.echo(f"alignment rate: {report_data['alignment_rate']}")
    click.echo(f"strict-order rate: {report_data['strict_order_rate']}")
    click.echo(json.dumps(report_data, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
