"""Benchmark CLI: run repeated-trial query sets and render reports.

Backends are named in a JSON config file:

    {"backends": {
        "canned":  {"kind": "scripted", "responses_path": "responses.json"},
        "offline": {"kind": "replay", "fixture_path": "session.jsonl",
                     "mp_http_fixture": "http.jsonl"},
        "gpt":     {"kind": "live", "base_url": "https://api...", "model": "gpt-4"}
    }}

A scripted backend answers query q from responses.json[q][trial] (cycling);
replay and live backends route every prompt through the full agent hierarchy.
"""

from __future__ import annotations

import dataclasses
import json
import os
from pathlib import Path

import click

from ..llm import BackendConfig, build_backend
from ..mptools import FixtureHttpClient, LiveHttpClient, MpClient, MpToolDispatcher, TokenBucket
from ..react import Answered, run_supervisor
from ..roster import build_roster
from ..tooling import LogicalClock
from .benchmark import BenchQuery, load_queries, render_table, run_benchmark


def _scripted_answerer(responses_path: str):
    responses = json.loads(Path(responses_path).read_text())

    def answer(query: BenchQuery, trial: int) -> str:
        options = responses.get(query.id)
        if not options:
            raise KeyError(f"no scripted responses for query {query.id!r}")
        return options[trial % len(options)]

    return answer


def _agent_answerer(raw: dict):
    backend = build_backend(
        BackendConfig(
            kind=raw["kind"],
            base_url=raw.get("base_url", ""),
            model=raw.get("model", ""),
            temperature=float(raw.get("temperature", 0.0)),
            api_key_env=raw.get("api_key_env", "LLM_API_KEY"),
            fixture_path=raw.get("fixture_path", ""),
        )
    )
    if raw.get("mp_http_fixture"):
        http = FixtureHttpClient(raw["mp_http_fixture"])
    else:
        http = LiveHttpClient(limiter=TokenBucket(float(raw.get("rate_limit_per_s", 10.0))))
    client = MpClient(
        http,
        base_url=raw.get("mp_base_url", "https://api.materialsproject.org"),
        api_key=os.environ.get(raw.get("mp_api_key_env", "MP_API_KEY"), ""),
    )
    refs = FixtureHttpClient(raw["reference_http_fixture"]) if raw.get("reference_http_fixture") else None
    dispatcher = MpToolDispatcher(client=client, reference_http=refs)
    roster = build_roster(include_references=refs is not None)
    deterministic = raw["kind"] == "replay"

    def answer(query: BenchQuery, trial: int) -> str:
        trace = run_supervisor(
            roster.supervisor,
            roster.assistants,
            query.prompt,
            backends={"default": backend},
            tools=dispatcher,
            session=f"{query.id}-t{trial}",
            clock=LogicalClock() if deterministic else None,
            assistant_descriptions=roster.assistant_descriptions,
        )
        if isinstance(trace.outcome, Answered):
            return trace.outcome.text
        raise RuntimeError(f"no answer: {type(trace.outcome).__name__}")

    return answer


def _build_answerer(config_path: str, backend_name: str):
    config = json.loads(Path(config_path).read_text())
    backends = config.get("backends", {})
    if backend_name not in backends:
        raise click.ClickException(
            f"backend {backend_name!r} not in {sorted(backends)} (config {config_path})"
        )
    raw = backends[backend_name]
    if raw.get("kind") == "scripted":
        return _scripted_answerer(raw["responses_path"]), raw
    return _agent_answerer(raw), raw


@click.group()
def main() -> None:
    """Repeated-trial benchmark over any configured answerer."""


@main.command()
@click.option("--queries", "queries_path", required=True, type=click.Path(exists=True))
@click.option("--backend", "backend_name", required=True)
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--trials", default=None, type=int, help="override n_trials for every query")
@click.option("--parallelism", default=1, show_default=True, type=int)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--timestamp", default=None, help="fix the report timestamp (for reproducible output)")
def run(queries_path, backend_name, config_path, trials, parallelism, out_path, timestamp):
    """Run every query N times and write a metrics report."""
    queries = load_queries(queries_path)
    if trials is not None:
        queries = [dataclasses.replace(q, n_trials=trials) for q in queries]
    answerer, raw = _build_answerer(config_path, backend_name)
    run_config = {
        "backend": backend_name,
        "kind": raw.get("kind"),
        "temperature": raw.get("temperature", 0.0),
    }
    if timestamp:
        run_config["timestamp"] = timestamp
    report = run_benchmark(queries, answerer, parallelism=parallelism, run_config=run_config)
    Path(out_path).write_text(report.to_json())
    click.echo(render_table(report), nl=False)
    click.echo(f"report written to {out_path}")


@main.command()
@click.argument("report_path", type=click.Path(exists=True))
def report(report_path):
    """Render a stored report as the metric table."""
    data = json.loads(Path(report_path).read_text())
    click.echo(render_report_dict(data), nl=False)


def render_report_dict(data: dict) -> str:
    def fmt(x):
        return "-" if x is None else f"{x:.3f}"

    headers = ("query", "Precision", "CoP", "Confidence", "SCoR", "MAE")
    rows = []
    for qid, r in sorted(data.get("per_query", {}).items()):
        rows.append((qid, fmt(r.get("precision")), fmt(r.get("cop")),
                     fmt(r.get("confidence")), fmt(r.get("scor")), fmt(r.get("abs_error"))))
    agg = data.get("aggregate", {})
    rows.append(("ALL", fmt(agg.get("mean_precision")), fmt(agg.get("mean_cop")),
                 fmt(agg.get("mean_confidence")), fmt(agg.get("mean_scor")), fmt(agg.get("mae"))))
    widths = [max(len(h), *(len(row[k]) for row in rows)) for k, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[k]) for k, h in enumerate(headers)),
        "  ".join("-" * widths[k] for k in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[k]) for k, cell in enumerate(row)))
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    main()
