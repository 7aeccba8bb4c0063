"""Command-line client.

Each subcommand reads an optional JSON document (``--config FILE`` or stdin),
merges the flags into it and posts it to the in-process service.  Exit codes:
0 success, 1 validation error, 2 malformed input.
"""

from __future__ import annotations

import json
import sys
import warnings

import click

CONFIG_KEYS = {"rank", "components", "rep"}

# request fields accepted at the top level of each command's document
FIELDS = {
    "directions": {"factors"},
    "order": {"factors", "theta"},
    "decompose": {"config"},
    "dims": {"config", "grid", "psis"},
    "resolve": {"config", "psi"},
    "fiber": {"config", "psi", "theta"},
    "stokes": {"symbolic", "rank", "seed", "rep"},
    "verify": {"seed", "trials", "grid"},
}


def _client():
    with warnings.catch_warnings():
        # starlette warns about its httpx transport; irrelevant in-process
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .api import app

    return TestClient(app)


def _emit(doc) -> None:
    click.echo(json.dumps(doc, indent=2, ensure_ascii=False))


def _fail(code: int, kind: str, message: str) -> None:
    _emit({"error": {"kind": kind, "message": message, "details": {}}})
    sys.exit(code)


def _read_document(config_file) -> dict:
    if config_file is not None:
        text = config_file.read()
    else:
        stdin = click.get_text_stream("stdin")
        text = "" if stdin.isatty() else stdin.read()
    if not text.strip():
        return {}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(2, "MalformedInput", f"input is not JSON: {exc}")
    if not isinstance(doc, dict):
        _fail(2, "MalformedInput", "input must be a JSON object")
    return doc


def build_request(command: str, doc: dict, flags: dict) -> dict:
    """Merge document and flags into the request body of ``command``."""
    fields = FIELDS[command]
    req = {}
    config = dict(doc.get("config") or {})
    for key, value in doc.items():
        if key == "config":
            continue
        if key in fields:
            req[key] = value
        elif "config" in fields and key in CONFIG_KEYS:
            config[key] = value
        else:
            req[key] = value  # left for the schema to reject
    if "config" in fields:
        if flags.get("rank") is not None:
            config["rank"] = flags["rank"]
        req["config"] = config
    elif "rank" in fields and flags.get("rank") is not None:
        req["rank"] = flags["rank"]
    for key in ("theta", "grid", "seed", "symbolic"):
        if key in fields and flags.get(key) is not None:
            req[key] = flags[key]
    return req


def run(command: str, flags: dict, config_file=None) -> None:
    doc = _read_document(config_file)
    body = build_request(command, doc, flags)
    resp = _client().post(f"/{command}", json=body)
    out = resp.json()
    _emit(out)
    if resp.status_code == 200:
        if command == "verify" and not out.get("ok"):
            sys.exit(1)
        sys.exit(0)
    sys.exit(1 if resp.status_code == 400 else 2)


def _common(f):
    f = click.option("--config", "config_file", type=click.File("r"), default=None,
                     help="JSON document (default: stdin)")(f)
    f = click.option("--theta", default=None, help="direction as a/b, a multiple of π")(f)
    f = click.option("--grid", type=int, default=None, help="number of sample angles")(f)
    f = click.option("--rank", type=int, default=None, help="rank r")(f)
    f = click.option("--seed", type=int, default=None, help="random seed (default 0)")(f)
    f = click.option("--symbolic/--numeric", "symbolic", default=None,
                     help="symbolic group-algebra output or a random matrix representation")(f)
    return f


@click.group()
def main():
    """Stokes data from exponential factors and Čech coverings."""


def _command(name: str, doc: str):
    @main.command(name, help=doc)
    @_common
    def cmd(config_file, theta, grid, rank, seed, symbolic):
        run(name, {"theta": theta, "grid": grid, "rank": rank, "seed": seed, "symbolic": symbolic},
            config_file)

    return cmd


_command("directions", "Stokes directions of a pair of exponential factors.")
_command("order", "Total order of factors at --theta.")
_command("decompose", "Formal decomposition of a divisor configuration.")
_command("dims", "Stalk dimensions over a grid of directions.")
_command("resolve", "Blow-up charts and goodness of the twist.")
_command("fiber", "Punctures and boundary arc of the fiber over --theta.")
_command("stokes", "N_pi, N_0 and the Stokes matrices of the worked example.")
_command("verify", "Run the invariant suite.")


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service (needs uvicorn)."""
    import uvicorn

    uvicorn.run("stokesdata.api:app", host=host, port=port)


if __name__ == "__main__":
    main()
