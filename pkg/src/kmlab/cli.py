"""Command line surface.

Exit codes: 0 success, 1 check failure or invalid matrix, 2 usage or
malformed input, 3 undecided within budget.  File outputs are written
atomically and are byte-identical across runs with the same
configuration and version.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from kmlab import cache as cache_mod
from kmlab import gcm as gcm_mod
from kmlab import nilpotency, reports, verify
from kmlab.errors import GCMValidationError, NotAffine
from kmlab.pairs import empirical_pairing_bound
from kmlab.roots import generate_real_roots
from kmlab.weyl import enumerate_elements

CONFIG_KEYS = (
    "gcm", "max_length", "max_height", "max_steps",
    "out", "format", "workers", "cache_dir", "trials", "seed",
)


def _load_config(path):
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise click.UsageError(f"cannot read config {path}: {exc}")
    return {k: v for k, v in data.items() if k in CONFIG_KEYS}


def _merged(config, **flags):
    """Explicit flags win over config-file values."""
    out = dict(config)
    for k, v in flags.items():
        if v is not None:
            out[k] = v
    return out


def _load_gcm(path):
    if path is None:
        raise click.UsageError("a --gcm file is required")
    try:
        with open(path, "rb") as fh:
            data = json.load(fh)
        if not isinstance(data, dict) or "matrix" not in data:
            raise click.UsageError(f"{path}: expected a JSON object with 'matrix'")
        return gcm_mod.from_json_dict(data)
    except click.UsageError:
        raise
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read {path}: {exc}")
    except GCMValidationError as exc:
        raise click.UsageError(f"{path}: not a generalized Cartan matrix: {exc}")


def _parse_word(text):
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise click.UsageError(f"word must be comma-separated integers: {text!r}")


def _maybe_cache_dir(cfg):
    """Cache directory when asked for by flag, config, or environment."""
    if cfg.get("cache_dir") or os.environ.get(cache_mod.ENV_VAR):
        return cache_mod.resolve_cache_dir(cfg.get("cache_dir"))
    return None


def _write_out(path, text):
    cache_mod.atomic_write_text(Path(path), text)


@click.group()
def main():
    """Exact engine for Kac-Moody root-system combinatorics."""


@main.command("classify")
@click.argument("gcm_path", type=click.Path())
def cmd_classify(gcm_path):
    """Kind of a generalized Cartan matrix (finite, affine, indefinite)."""
    try:
        with open(gcm_path, "rb") as fh:
            data = json.load(fh)
        matrix = data["matrix"] if isinstance(data, dict) else None
        if matrix is None:
            raise click.UsageError(f"{gcm_path}: expected JSON with 'matrix'")
    except (OSError, json.JSONDecodeError, TypeError, KeyError) as exc:
        raise click.UsageError(f"cannot read {gcm_path}: {exc}")
    try:
        A = gcm_mod.validate(matrix, name=str(data.get("name", "")))
    except GCMValidationError as exc:
        click.echo(f"invalid: {exc}")
        sys.exit(1)
    t = gcm_mod.classify(A)
    label = t.kind.capitalize()
    if t.kind == gcm_mod.AFFINE and len(t.components) == 1:
        from kmlab.affine import null_root

        delta = null_root(A)
        label += ", δ=(" + ",".join(map(str, delta)) + ")"
    if len(t.components) > 1:
        parts = ", ".join(
            f"{{{','.join(map(str, comp))}}}:{kind}" for comp, kind in t.components
        )
        label += f" [components {parts}]"
    click.echo(label)


@main.command("degree")
@click.option("--gcm", "gcm_path", type=click.Path())
@click.option("--word", "word_text", default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
@click.option("--config", "config_path", type=click.Path(), default=None)
def cmd_degree(gcm_path, word_text, out_path, fmt, config_path):
    """Nilpotency degree of the inversion set of one word."""
    cfg = _merged(
        _load_config(config_path),
        gcm=gcm_path, word=word_text, out=out_path, format=fmt,
    )
    A = _load_gcm(cfg.get("gcm"))
    word = _parse_word(cfg.get("word", ""))
    rep = nilpotency.degree_of_word(A, word)
    click.echo(
        f"degree {rep.degree} (length {rep.length}, inversion set "
        f"{rep.invset_size}, max chain {rep.max_chain})"
    )
    if cfg.get("out"):
        if cfg.get("format", "json") == "csv":
            text = "\n".join(reports.sweep_csv_lines([rep])) + "\n"
        else:
            text = "\n".join(reports.sweep_json_lines([rep], A)) + "\n"
        _write_out(cfg["out"], text)


@main.command("sweep")
@click.option("--gcm", "gcm_path", type=click.Path())
@click.option("--max-length", type=int, default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
@click.option("--workers", type=int, default=None)
@click.option("--cache-dir", type=click.Path(), default=None)
@click.option("--config", "config_path", type=click.Path(), default=None)
def cmd_sweep(gcm_path, max_length, out_path, fmt, workers, cache_dir, config_path):
    """Degree report for every element up to a length cap."""
    cfg = _merged(
        _load_config(config_path),
        gcm=gcm_path, max_length=max_length, out=out_path,
        format=fmt, workers=workers, cache_dir=cache_dir,
    )
    A = _load_gcm(cfg.get("gcm"))
    L = cfg.get("max_length")
    if L is None or L < 0:
        raise click.UsageError("--max-length must be a nonnegative integer")
    words = None
    cdir = _maybe_cache_dir(cfg)
    if cdir is not None:
        words = cache_mod.load_words(A, L, cdir)
    if words is None:
        words = [w.word for w in enumerate_elements(A, L)]
        if cdir is not None:
            cache_mod.store_words(A, L, words, cdir)
    nworkers = int(cfg.get("workers") or 1)
    reps = _compute_reports(A, words, nworkers)
    summary = nilpotency.summarize(reps, L)
    if cfg.get("out"):
        if cfg.get("format", "csv") == "json":
            text = "\n".join(reports.sweep_json_lines(reps, A)) + "\n"
        else:
            text = "\n".join(reports.sweep_csv_lines(reps)) + "\n"
        _write_out(cfg["out"], text)
        _write_out(
            str(cfg["out"]) + ".summary.json",
            reports.summary_json(summary, A) + "\n",
        )
    click.echo(
        f"{summary.count} records, global max degree {summary.global_max}, "
        f"plateau={'yes' if summary.plateau else 'no'}"
    )


def _chunk_worker(args):
    rows, name, words = args
    A = gcm_mod.validate(rows, name=name)
    return [nilpotency.degree_of_word(A, w) for w in words]


def _compute_reports(A, words, nworkers):
    if nworkers <= 1 or len(words) < 4:
        return [nilpotency.degree_of_word(A, w) for w in words]
    size = max(1, (len(words) + nworkers - 1) // nworkers)
    chunks = [
        ([list(r) for r in A.entries], A.name, words[i : i + size])
        for i in range(0, len(words), size)
    ]
    out = []
    with ProcessPoolExecutor(max_workers=nworkers) as pool:
        for part in pool.map(_chunk_worker, chunks):
            out.extend(part)
    return out


@main.command("verify")
@click.option("--gcm", "gcm_path", type=click.Path())
@click.option("--suite", type=click.Choice(sorted(verify.SUITES)), required=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--max-height", type=int, default=None)
@click.option("--max-length", type=int, default=None)
@click.option("--max-steps", type=int, default=None)
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(), default=None)
def cmd_verify(gcm_path, suite, out_path, max_height, max_length, max_steps,
               trials, seed, config_path):
    """Run one verification suite and report counterexamples."""
    cfg = _merged(
        _load_config(config_path),
        gcm=gcm_path, out=out_path, max_height=max_height,
        max_length=max_length, max_steps=max_steps, trials=trials, seed=seed,
    )
    A = _load_gcm(cfg.get("gcm"))
    kwargs = {}
    if cfg.get("max_height") is not None:
        kwargs["height_cap"] = cfg["max_height"]
    if cfg.get("max_length") is not None:
        kwargs["length_cap"] = cfg["max_length"]
    if cfg.get("max_steps") is not None:
        kwargs["max_steps"] = cfg["max_steps"]
    if cfg.get("trials") is not None:
        kwargs["trials"] = cfg["trials"]
    if cfg.get("seed") is not None:
        kwargs["seed"] = cfg["seed"]
    try:
        report = verify.SUITES[suite](A, **kwargs)
    except NotAffine as exc:
        raise click.UsageError(f"suite {suite} needs an affine matrix: {exc}")
    text = report.to_json()
    if cfg.get("out"):
        _write_out(cfg["out"], text + "\n")
    click.echo(text)
    if report.counterexample is not None:
        sys.exit(1)
    if report.scanned_count == 0 and report.undecided_count > 0:
        sys.exit(3)


@main.command("kbound")
@click.option("--gcm", "gcm_path", type=click.Path())
@click.option("--max-height", type=int, default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--cache-dir", type=click.Path(), default=None)
@click.option("--config", "config_path", type=click.Path(), default=None)
def cmd_kbound(gcm_path, max_height, out_path, cache_dir, config_path):
    """Empirical pairing bound over summing prenilpotent pairs."""
    cfg = _merged(
        _load_config(config_path),
        gcm=gcm_path, max_height=max_height, out=out_path, cache_dir=cache_dir,
    )
    A = _load_gcm(cfg.get("gcm"))
    H = cfg.get("max_height") or 8
    table = None
    cdir = _maybe_cache_dir(cfg)
    if cdir is not None:
        table = cache_mod.load_root_table(A, H, cdir)
    if table is None:
        table = generate_real_roots(A, H)
        if cdir is not None:
            cache_mod.store_root_table(table, cdir)
    rep = empirical_pairing_bound(table)
    payload = {
        "gcm": reports.gcm_summary(A),
        "height_cap": H,
        "value": rep.value,
        "witness": None
        if rep.witness is None
        else [list(rep.witness[0].root), list(rep.witness[1].root)],
        "scanned_count": rep.scanned,
    }
    text = json.dumps(payload, sort_keys=True, indent=2)
    if cfg.get("out"):
        _write_out(cfg["out"], text + "\n")
    click.echo(text)


if __name__ == "__main__":
    main()
