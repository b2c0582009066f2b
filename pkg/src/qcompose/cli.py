"""Command-line experiment harness.

Each subcommand builds its instances, runs the experiment, and emits one flat
table either as CSV (default) or JSON (a list of row objects).  Floats are
rendered at 12 significant digits in both formats, rows are sorted by a fixed
per-command key, and identical invocations (including --seed) produce
byte-identical output.  With --out the table is written in a single shot
after all computation succeeds, so failures never leave partial files.

Row schemas (CSV column order == JSON key order):

  dj                    kind, index, weight, accept_probability
  compose-fail          stop_time, accept_amplitude, accept_probability,
                        exited_mass
  purifier              p0, epsilon, D, W, R, complexity, perturbation_bound,
                        overlap, decision
  commute               s, t, H_st, H_ts, H_st_mc, H_st_stderr, H_ts_mc,
                        H_ts_stderr, W, R, two_WR, residual
  costs                 model, cost, note
  majority-vs-purifier  delta, majority_k, majority_error, purifier_D,
                        perturbation, purifier_overhead

Numeric flags accept plain decimals, fractions ("1/3"), and powers of two
("2^-10"); fractional inputs are kept exact until the final float rendering.

Exit codes: 0 success, 2 usage or validation error, 3 input parse error,
4 internal numerical failure.
"""

from __future__ import annotations

import csv
import functools
import io
import itertools
import json
import math
import pathlib
import re
from fractions import Fraction

import click
import numpy as np

from .composition import (
    FULL,
    classical_avg_cost,
    majority_vs_purifier_table,
    profile_from_json,
    quantum_naive_cost,
    quantum_walk_cost,
    run_composed_dj_h,
    run_dj,
)
from .errors import (
    BadDimension,
    BadParameter,
    IndexOutOfRange,
    NumericalFailure,
    ParseError,
    QComposeError,
)
from .graphs import (
    commute_identity_residual,
    effective_resistance,
    graph_from_json,
    hitting_time_exact,
    hitting_time_mc,
    total_weight,
)
from .promise import (
    instance_from_json,
    instance_to_json,
    structured_counterexample,
)
from .walks import purifier_record

MAX_DJ_DIM = 2 ** 14


# --- plumbing ----------------------------------------------------------------

def _die(exc, code: int):
    click.echo(f"error: {exc}", err=True)
    raise SystemExit(code)


def _trap(func):
    """Map library exceptions onto the documented exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ParseError as exc:
            _die(exc, 3)
        except NumericalFailure as exc:
            _die(exc, 4)
        except OSError as exc:
            _die(exc, 3)
        except (QComposeError, ValueError) as exc:
            _die(exc, 2)

    return wrapper


def _output_options(func):
    func = click.option(
        "--out", default=None, metavar="PATH",
        help="Write the table to PATH instead of stdout.")(func)
    func = click.option(
        "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
        show_default=True, help="Table serialization.")(func)
    return func


def _fmt_cell(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _json_cell(value):
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, float):
        return float(f"{value:.12g}")
    return str(value)


def _render(columns, rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_cell(row[c]) for c in columns])
        return buf.getvalue()
    payload = [{c: _json_cell(row[c]) for c in columns} for row in rows]
    return json.dumps(payload, indent=2) + "\n"


def _emit(columns, rows, fmt: str, out):
    text = _render(columns, rows, fmt)
    if out is None:
        click.echo(text, nl=False)
    else:
        pathlib.Path(out).write_text(text)


def _read_file(path: str) -> str:
    return pathlib.Path(path).read_text()


_POW2 = re.compile(r"2\^(-?\d+)")


def _parse_number(text, what: str = "number") -> Fraction:
    s = str(text).strip()
    match = _POW2.fullmatch(s)
    try:
        if match:
            return Fraction(2) ** int(match.group(1))
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise BadParameter(f"cannot parse {what} {text!r}") from exc


def _parse_number_list(text, what: str) -> list[Fraction]:
    items = [part for part in str(text).split(",") if part.strip()]
    return [_parse_number(part, what) for part in items]


def _parse_int_list(text, what: str) -> list[int]:
    values = []
    for part in str(text).split(","):
        if not part.strip():
            continue
        try:
            values.append(int(part))
        except ValueError as exc:
            raise BadParameter(f"cannot parse {what} {part.strip()!r}") from exc
    return values


def _check_vertex(v: int, n: int, name: str):
    if not 0 <= v < n:
        raise IndexOutOfRange(f"{name}={v} outside 0..{n - 1}")


# --- commands ----------------------------------------------------------------

@click.group()
def main():
    """Desk-scale experiments: exact single-query runs, early-stopping
    composition, electric-network identities, and the line-walk purifier."""


@main.command("dj")
@click.option("--m", type=int, required=True,
              help="Input length (power of two, at most 2^14).")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for the balanced-input sample.")
@_output_options
@_trap
def cmd_dj(m, seed, fmt, out):
    """Accept probabilities on the all-zero input and balanced samples."""
    if m < 2 or m & (m - 1):
        raise BadDimension(f"m must be a power of two, got {m}")
    if m > MAX_DJ_DIM:
        raise BadDimension(f"m must be at most {MAX_DJ_DIM}, got {m}")
    rows = [{"kind": "constant", "index": 0, "weight": 0,
             "accept_probability": run_dj("0" * m)}]
    half = m // 2
    if math.comb(m, half) <= 8:
        combos = list(itertools.combinations(range(m), half))
    else:
        rng = np.random.default_rng(seed)
        seen = set()
        while len(seen) < 8:
            picks = rng.choice(m, size=half, replace=False)
            seen.add(tuple(sorted(int(j) for j in picks)))
        combos = sorted(seen)
    for index, positions in enumerate(combos):
        marked = set(positions)
        bits = "".join("1" if j in marked else "0" for j in range(m))
        rows.append({"kind": "balanced", "index": index, "weight": half,
                     "accept_probability": run_dj(bits)})
    rows.sort(key=lambda r: (r["kind"] != "constant", r["index"]))
    _emit(["kind", "index", "weight", "accept_probability"], rows, fmt, out)


@main.command("compose-fail")
@click.option("--m", type=int, default=None,
              help="Inner instance size for the structured counterexample "
                   "(multiple of 4).")
@click.option("--instance", "instance_path", default=None, metavar="PATH",
              help="Load a composed instance from JSON instead of --m.")
@click.option("--max-stop", type=int, default=None,
              help="Largest finite stop time.  [default: m/2+1]")
@click.option("--dump-instance", default=None, metavar="PATH",
              help="Also write the instance as JSON to PATH.")
@_output_options
@_trap
def cmd_compose_fail(m, instance_path, max_stop, dump_instance, fmt, out):
    """Early-stopping sweep on a composed instance: amplitude vs stop time."""
    if (m is None) == (instance_path is None):
        raise BadParameter("provide exactly one of --m or --instance")
    if instance_path is not None:
        inst = instance_from_json(_read_file(instance_path))
    else:
        inst = structured_counterexample(m)
    limit = inst.inner_m // 2 + 1 if max_stop is None else max_stop
    if limit < 1:
        raise BadParameter(f"--max-stop must be >= 1, got {max_stop}")
    rows = []
    for stop in list(range(1, limit + 1)) + [FULL]:
        res = run_composed_dj_h(inst, stop)
        rows.append({
            "stop_time": "FULL" if stop is FULL else stop,
            "accept_amplitude": res.accept_amplitude,
            "accept_probability": res.accept_probability,
            "exited_mass": res.exited_mass,
        })
    rows.sort(key=lambda r: math.inf if r["stop_time"] == "FULL"
              else r["stop_time"])
    if dump_instance is not None:
        pathlib.Path(dump_instance).write_text(instance_to_json(inst))
    _emit(["stop_time", "accept_amplitude", "accept_probability",
           "exited_mass"], rows, fmt, out)


@main.command("purifier")
@click.option("--epsilon", default="1/3", show_default=True,
              help="Promise gap; accepts fractions like 1/3.")
@click.option("--d", "d_single", type=int, default=None,
              help="Single line depth (overrides --d-list).")
@click.option("--d-list", default="4,8,16,32", show_default=True,
              help="Comma-separated line depths.")
@click.option("--p0", "p0_single", default=None,
              help="Single coin bias (overrides --p0-list).")
@click.option("--p0-list", default="0.1,0.9", show_default=True,
              help="Comma-separated coin biases.")
@_output_options
@_trap
def cmd_purifier(epsilon, d_single, d_list, p0_single, p0_list, fmt, out):
    """Line-walk purifier sweep: electric quantities, bounds, decisions."""
    eps = _parse_number(epsilon, "--epsilon")
    depths = [d_single] if d_single is not None else _parse_int_list(
        d_list, "--d-list")
    if p0_single is not None:
        biases = [_parse_number(p0_single, "--p0")]
    else:
        biases = _parse_number_list(p0_list, "--p0-list")
    if not depths or not biases:
        raise BadParameter("need at least one depth and one coin bias")
    rows = [purifier_record(p0, eps, depth)
            for p0 in biases for depth in depths]
    rows.sort(key=lambda r: (r["p0"], r["D"]))
    _emit(["p0", "epsilon", "D", "W", "R", "complexity",
           "perturbation_bound", "overlap", "decision"], rows, fmt, out)


@main.command("commute")
@click.option("--graph", "graph_path", required=True, metavar="PATH",
              help="Graph JSON file (no boundary weights allowed).")
@click.option("--s", type=int, default=0, show_default=True)
@click.option("--t", type=int, default=None, help="[default: n-1]")
@click.option("--trials", type=int, default=100000, show_default=True,
              help="Monte-Carlo walks per direction.")
@click.option("--seed", type=int, default=0, show_default=True)
@_output_options
@_trap
def cmd_commute(graph_path, s, t, trials, seed, fmt, out):
    """Hitting times vs 2WR on one graph, exact and Monte-Carlo."""
    graph = graph_from_json(_read_file(graph_path))
    if t is None:
        t = graph.n - 1
    _check_vertex(s, graph.n, "--s")
    _check_vertex(t, graph.n, "--t")
    residual = commute_identity_residual(graph, s, t)
    h_st = hitting_time_exact(graph, s, t)
    h_ts = hitting_time_exact(graph, t, s)
    mc_st, err_st = hitting_time_mc(graph, s, t, seed=seed, trials=trials)
    mc_ts, err_ts = hitting_time_mc(graph, t, s, seed=seed + 1, trials=trials)
    weight = total_weight(graph)
    resistance = effective_resistance(graph, s, t)
    rows = [{
        "s": s, "t": t,
        "H_st": h_st, "H_ts": h_ts,
        "H_st_mc": mc_st, "H_st_stderr": err_st,
        "H_ts_mc": mc_ts, "H_ts_stderr": err_ts,
        "W": weight, "R": resistance,
        "two_WR": 2.0 * weight * resistance,
        "residual": residual,
    }]
    _emit(["s", "t", "H_st", "H_ts", "H_st_mc", "H_st_stderr", "H_ts_mc",
           "H_ts_stderr", "W", "R", "two_WR", "residual"], rows, fmt, out)


@main.command("costs")
@click.option("--profile", "profile_path", required=True, metavar="PATH",
              help="Cost profile JSON file.")
@_output_options
@_trap
def cmd_costs(profile_path, fmt, out):
    """Evaluate the three cost models on one profile."""
    profile = profile_from_json(_read_file(profile_path))
    rows = [
        {"model": "classical_avg", "cost": classical_avg_cost(profile),
         "note": ""},
        {"model": "quantum_naive", "cost": quantum_naive_cost(profile),
         "note": ""},
        {"model": "quantum_walk", "cost": quantum_walk_cost(profile),
         "note": "hidden constant reported as 1"},
    ]
    rows.sort(key=lambda r: r["model"])
    _emit(["model", "cost", "note"], rows, fmt, out)


@main.command("majority-vs-purifier")
@click.option("--epsilon", default="1/3", show_default=True,
              help="Per-call error; accepts fractions like 1/3.")
@click.option("--delta-list", default="2^-5,2^-10,2^-20,2^-40",
              show_default=True,
              help="Comma-separated target error levels (2^-N accepted).")
@_output_options
@_trap
def cmd_majority_vs_purifier(epsilon, delta_list, fmt, out):
    """Repetition count needed by majority voting vs purifier overhead."""
    eps = _parse_number(epsilon, "--epsilon")
    deltas = _parse_number_list(delta_list, "--delta-list")
    rows = majority_vs_purifier_table(eps, deltas)
    _emit(["delta", "majority_k", "majority_error", "purifier_D",
           "perturbation", "purifier_overhead"], rows, fmt, out)


if __name__ == "__main__":
    main()
