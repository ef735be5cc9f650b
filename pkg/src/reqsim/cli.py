"""Command-line client for the HTTP service, plus the `serve` launcher.

Every subcommand except `serve` is a thin wrapper over one endpoint:
it sends the request, prints the JSON (or CSV) response, and exits
non-zero on an error body. The service URL comes from --url or the
REQSIM_URL environment variable (default http://127.0.0.1:8000).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx


def _client(ctx: click.Context) -> httpx.Client:
    return httpx.Client(base_url=ctx.obj["url"], timeout=60.0)


def _emit(response: httpx.Response) -> None:
    content_type = response.headers.get("content-type", "")
    if "application/json" in content_type:
        click.echo(json.dumps(response.json(), indent=2))
    else:
        click.echo(response.text, nl=False)
    if response.status_code >= 400:
        sys.exit(1)


@click.group()
@click.option(
    "--url",
    envvar="REQSIM_URL",
    default="http://127.0.0.1:8000",
    show_default=True,
    help="Base URL of the reqsim service.",
)
@click.pass_context
def main(ctx: click.Context, url: str) -> None:
    ctx.ensure_object(dict)
    ctx.obj["url"] = url


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option(
    "--data-dir",
    envvar="REQSIM_DATA_DIR",
    default="./data",
    show_default=True,
    help="Directory holding the experiment file store.",
)
def serve(host: str, port: int, data_dir: str) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .api import create_app

    uvicorn.run(create_app(data_dir=data_dir), host=host, port=port)


@main.group()
def files() -> None:
    """Experiment file operations."""


@files.command("create")
@click.argument("name")
@click.pass_context
def files_create(ctx: click.Context, name: str) -> None:
    with _client(ctx) as client:
        _emit(client.post("/files", json={"name": name}))


@files.command("list")
@click.pass_context
def files_list(ctx: click.Context) -> None:
    with _client(ctx) as client:
        _emit(client.get("/files"))


@files.command("show")
@click.argument("name")
@click.pass_context
def files_show(ctx: click.Context, name: str) -> None:
    with _client(ctx) as client:
        _emit(client.get(f"/files/{name}"))


@files.command("events")
@click.argument("name")
@click.pass_context
def files_events(ctx: click.Context, name: str) -> None:
    with _client(ctx) as client:
        _emit(client.get(f"/files/{name}/events"))


@files.command("consolidated")
@click.argument("name")
@click.option("--csv", "as_csv", is_flag=True, help="Emit CSV instead of JSON.")
@click.pass_context
def files_consolidated(ctx: click.Context, name: str, as_csv: bool) -> None:
    path = f"/files/{name}/consolidated.csv" if as_csv else f"/files/{name}/consolidated"
    with _client(ctx) as client:
        _emit(client.get(path))


@main.group()
def experiment() -> None:
    """Operations on one experiment within a file."""


@experiment.command("next")
@click.argument("name")
@click.option("--arrival-hi", required=True, type=int, help="New arrival upper bound.")
@click.option(
    "--add",
    "added",
    multiple=True,
    metavar="SERVICE_ID=COUNT",
    help="Demand to add for a service; repeatable.",
)
@click.pass_context
def experiment_next(ctx: click.Context, name: str, arrival_hi: int, added: tuple[str, ...]) -> None:
    demands = {}
    for item in added:
        service_id, _, count = item.partition("=")
        demands[int(service_id)] = int(count)
    body = {"added_demands": demands, "new_arrival_hi": arrival_hi}
    with _client(ctx) as client:
        _emit(client.post(f"/files/{name}/experiments", json=body))


@experiment.command("config")
@click.argument("name")
@click.argument("experiment_id", type=int)
@click.argument("config_path", type=click.Path(exists=True, path_type=Path))
@click.pass_context
def experiment_config(
    ctx: click.Context, name: str, experiment_id: int, config_path: Path
) -> None:
    """Upload a CloudConfig JSON document."""
    payload = json.loads(config_path.read_text())
    with _client(ctx) as client:
        _emit(client.put(f"/files/{name}/experiments/{experiment_id}/config", json=payload))


@experiment.command("generate")
@click.argument("name")
@click.argument("experiment_id", type=int)
@click.option("--seed", type=int, default=None, help="RNG seed (default: experiment id).")
@click.pass_context
def experiment_generate(
    ctx: click.Context, name: str, experiment_id: int, seed: int | None
) -> None:
    body = {} if seed is None else {"seed": seed}
    with _client(ctx) as client:
        _emit(
            client.post(f"/files/{name}/experiments/{experiment_id}/generate", json=body)
        )


@experiment.command("refresh")
@click.argument("name")
@click.argument("experiment_id", type=int)
@click.pass_context
def experiment_refresh(ctx: click.Context, name: str, experiment_id: int) -> None:
    with _client(ctx) as client:
        _emit(client.post(f"/files/{name}/experiments/{experiment_id}/refresh"))


@experiment.command("run")
@click.argument("name")
@click.argument("experiment_id", type=int)
@click.option(
    "--strategy",
    "strategies",
    multiple=True,
    help="Strategy to run; repeatable. Empty runs the defaults.",
)
@click.option("--mode", default="exact", show_default=True, type=click.Choice(["exact", "paper_compat"]))
@click.pass_context
def experiment_run(
    ctx: click.Context,
    name: str,
    experiment_id: int,
    strategies: tuple[str, ...],
    mode: str,
) -> None:
    body = {"strategies": list(strategies), "mode": mode}
    with _client(ctx) as client:
        _emit(client.post(f"/files/{name}/experiments/{experiment_id}/run", json=body))


@experiment.command("results")
@click.argument("name")
@click.argument("experiment_id", type=int)
@click.pass_context
def experiment_results(ctx: click.Context, name: str, experiment_id: int) -> None:
    with _client(ctx) as client:
        _emit(client.get(f"/files/{name}/experiments/{experiment_id}/results"))


@experiment.command("export")
@click.argument("name")
@click.argument("experiment_id", type=int)
@click.option(
    "--out",
    type=click.Path(path_type=Path),
    default=None,
    help="Destination zip (default NAME-ID.zip).",
)
@click.pass_context
def experiment_export(
    ctx: click.Context, name: str, experiment_id: int, out: Path | None
) -> None:
    with _client(ctx) as client:
        response = client.get(f"/files/{name}/experiments/{experiment_id}/results.csv")
        if response.status_code >= 400:
            _emit(response)
            return
        destination = out or Path(f"{name}-{experiment_id}.zip")
        destination.write_bytes(response.content)
        click.echo(f"wrote {destination}")


@main.command()
@click.argument("capacities")
@click.option("--mode", default="exact", show_default=True, type=click.Choice(["exact", "paper_compat"]))
@click.option("--requests", type=int, default=None, help="Also apportion this many requests.")
@click.pass_context
def quantify(ctx: click.Context, capacities: str, mode: str, requests: int | None) -> None:
    """Preview the capacity quantification for comma-separated CAPACITIES."""
    params: dict = {"capacities": capacities, "mode": mode}
    if requests is not None:
        params["requests"] = requests
    with _client(ctx) as client:
        _emit(client.get("/quantify", params=params))


if __name__ == "__main__":
    main()
