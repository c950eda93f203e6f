"""Command-line interface: explore, assess, serve."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .appmodel import load_app_model_file
from .assess import AssessConfig, assess
from .errors import ReprolintError
from .extract import FileLabeler
from .graph import build_graph, dump_graph, load_graph_file, systematic_explore
from .ingest import parse_report
from .report import html_report, machine_report
from .resolve import MatchConfig
from .service import DEFAULT_EXPLORE_BUDGET

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


@click.group()
def main():
    """Quality linter for steps-to-reproduce in bug reports."""


def _fail_input(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INPUT)


@main.command()
@click.option("--app", "app_path", required=True, type=click.Path(),
              help="App model document (JSON).")
@click.option("--budget", required=True, type=int, help="Maximum interactions to execute.")
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="Graph cache file to write.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Accepted for interface parity; systematic exploration is deterministic.")
def explore(app_path, budget, out_path, seed):
    """Systematically explore an app model into a graph cache."""
    if not Path(app_path).is_file():
        _fail_input(f"app model file not found: {app_path}")
    try:
        model = load_app_model_file(app_path)
        graph = build_graph(systematic_explore(model, budget=budget))
    except ReprolintError as exc:
        _fail_input(str(exc))
    except Exception as exc:  # noqa: BLE001 - boundary
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    Path(out_path).write_text(dump_graph(graph), encoding="utf-8")
    click.echo(f"explored {len(graph.vertices)} screens, {len(graph.edges)} interactions "
               f"-> {out_path}")
    sys.exit(EXIT_OK)


_KIND_LINE = {"HQ": "high quality", "AS": "ambiguous", "VM": "vocabulary mismatch",
              "MS": "missing steps before this one"}


@main.command(name="assess")
@click.option("--report", "report_path", required=True, type=click.Path(),
              help="Bug report text file.")
@click.option("--app", "app_path", required=True, type=click.Path(),
              help="App model document (JSON).")
@click.option("--graph-cache", type=click.Path(), default=None,
              help="Graph cache from a previous explore run.")
@click.option("--out", "out_dir", type=click.Path(), default=".", show_default=True,
              help="Directory for report artifacts.")
@click.option("--format", "fmt", type=click.Choice(["json", "html", "both"]),
              default="both", show_default=True)
@click.option("--depth", type=int, default=6, show_default=True,
              help="Graph levels inspected per step.")
@click.option("--rand-iters", type=int, default=3, show_default=True,
              help="Random exploration iterations.")
@click.option("--rand-steps", type=int, default=10, show_default=True,
              help="Random steps per iteration.")
@click.option("--threshold", type=float, default=0.5, show_default=True,
              help="Similarity threshold for component matching.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(), default=None,
              help="Lexicon/keyword/synonym config overriding the defaults.")
@click.option("--labels", "labels_path", type=click.Path(), default=None,
              help="Sidecar sentence labels (one B/I/O per line).")
def assess_command(report_path, app_path, graph_cache, out_dir, fmt, depth,
                   rand_iters, rand_steps, threshold, seed, lexicon_path, labels_path):
    """Assess the steps-to-reproduce of one bug report."""
    for path, name in ((report_path, "report"), (app_path, "app model")):
        if not Path(path).is_file():
            _fail_input(f"{name} file not found: {path}")
    if graph_cache is not None and not Path(graph_cache).is_file():
        _fail_input(f"graph cache file not found: {graph_cache}")
    if lexicon_path is not None and not Path(lexicon_path).is_file():
        _fail_input(f"lexicon file not found: {lexicon_path}")
    if labels_path is not None and not Path(labels_path).is_file():
        _fail_input(f"label file not found: {labels_path}")

    try:
        model = load_app_model_file(app_path)
        match_cfg = (MatchConfig.from_file(lexicon_path) if lexicon_path
                     else MatchConfig.from_dict())
        match_cfg.threshold = threshold
        match_cfg.validate()
        cfg = AssessConfig(depth=depth, rand_iterations=rand_iters,
                           rand_steps=rand_steps, seed=seed, match=match_cfg)
        if graph_cache is not None:
            graph = load_graph_file(graph_cache)
        else:
            graph = build_graph(systematic_explore(model, budget=DEFAULT_EXPLORE_BUDGET))
        text = Path(report_path).read_text(encoding="utf-8")
        report = parse_report(text)
        labeler = FileLabeler.from_path(labels_path) if labels_path else None
        qr = assess(report, model, graph, cfg, labeler)
    except ReprolintError as exc:
        _fail_input(str(exc))
    except Exception as exc:  # noqa: BLE001 - boundary
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    artifacts = []
    if fmt in ("json", "both"):
        path = out / f"{qr.report_id}.report.json"
        path.write_text(machine_report(qr), encoding="utf-8")
        artifacts.append(path)
    if fmt in ("html", "both"):
        path = out / f"{qr.report_id}.report.html"
        path.write_text(html_report(qr), encoding="utf-8")
        artifacts.append(path)

    for entry in qr.entries:
        kinds = ", ".join(_KIND_LINE[a.kind] for a in entry.annotations)
        click.echo(f"step {entry.order_index + 1}: {kinds}  [{entry.text}]")
    if not qr.entries:
        click.echo("no steps to reproduce identified (see diagnostics)")
    for path in artifacts:
        click.echo(f"wrote {path}")
    sys.exit(EXIT_OK)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--data-dir", type=click.Path(), default=None,
              help="Artifact store root (defaults to $REPROLINT_DATA_DIR).")
@click.option("--workers", type=int, default=4, show_default=True,
              help="Concurrent assessment jobs.")
def serve(host, port, data_dir, workers):
    """Run the HTTP API for the authoring UI."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(data_dir=data_dir, workers=workers), host=host, port=port)


if __name__ == "__main__":
    main()
