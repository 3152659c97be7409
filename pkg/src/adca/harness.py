"""Convergence experiments: sample antidictionary sources, encode, measure.

Each (length, trial) pair yields one :class:`MetricsRecord`.  All lengths of
one trial are prefixes of a single sample path drawn with seed
``base_seed + trial``, so a run is fully determined by its arguments.
"""

from __future__ import annotations

import csv
import json
import statistics
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .dynamic_codec import encode_dynamic, n0_bound, shallow_beta_bound
from .integer_code import omega_bound, omega_length
from .markov_source import SourceModel, sample, stationary, visit_counts
from .static_codec import encode_static

__all__ = [
    "CSV_COLUMNS",
    "MetricsRecord",
    "check_bounds",
    "emit_csv",
    "measure",
    "read_csv",
    "run_convergence",
    "summarize",
]


@dataclass(frozen=True)
class MetricsRecord:
    model: str
    mode: str
    n: int
    seed: int
    J: int
    m: int
    entropy: float
    total_bits: int
    bits_per_symbol: float
    header_bits: int
    length_bits: int
    records_bits: int
    payload_bits: int
    n0: int
    shallow_beta: int
    coded: int
    visits: list[int] = field(default_factory=list)
    branch_freqs: list[list[float]] = field(default_factory=list)
    header_ints: list[int] = field(default_factory=list)


CSV_COLUMNS = [f.name for f in fields(MetricsRecord)]
_JSON_COLUMNS = {"visits", "branch_freqs", "header_ints"}
_INT_COLUMNS = {"n", "seed", "J", "m", "total_bits", "header_bits", "length_bits",
                "records_bits", "payload_bits", "n0", "shallow_beta", "coded"}
_FLOAT_COLUMNS = {"entropy", "bits_per_symbol"}


def measure(model: SourceModel, x: Sequence[int], mode: str, *, seed: int = 0,
            entropy: float | None = None, name: str = "") -> MetricsRecord:
    """Encode ``x`` in ``mode`` and collect every observable of the run."""
    if entropy is None:
        entropy = stationary(model).entropy
    n = len(x)
    A = model.antidictionary
    visits, trav = visit_counts(model.G, x)
    freqs = [[t / v if v else 0.0 for t in row] for row, v in zip(trav, visits)]
    if mode == "static":
        cw = encode_static(x, A)
        sz = cw.sizes()
        header, length, records = sz["dictionary"], sz["length_field"], 0
        n0 = shallow = 0
        coded = cw.coded
        m = A.max_len
    elif mode == "dynamic":
        m = A.max_len
        cw = encode_dynamic(x, m, model.J)
        sz = cw.sizes()
        header, length, records = sz["header"], sz["length_field"], sz["records"]
        n0 = len(cw.records)
        shallow = cw.stats.shallow_beta
        coded = cw.stats.coded
    else:
        raise ValueError(f"unknown mode {mode!r}")
    total = sz["total"]
    return MetricsRecord(
        model=name, mode=mode, n=n, seed=seed, J=model.J, m=m, entropy=entropy,
        total_bits=total, bits_per_symbol=total / n if n else 0.0,
        header_bits=header, length_bits=length, records_bits=records,
        payload_bits=sz["payload"], n0=n0, shallow_beta=shallow, coded=coded,
        visits=visits, branch_freqs=freqs, header_ints=cw.header_integers(),
    )


def run_convergence(model: SourceModel, mode: str, lengths: Sequence[int], trials: int,
                    seed: int = 0, name: str = "") -> list[MetricsRecord]:
    """Encode sampled strings of every length in every trial.

    ``mode`` is ``"static"``, ``"dynamic"`` or ``"both"``.  The static codec
    is handed the model's antidictionary; the dynamic codec only its longest
    word length.
    """
    if list(lengths) != sorted(lengths):
        raise ValueError("lengths must be ascending")
    if trials < 1:
        raise ValueError("at least one trial is required")
    modes = ["static", "dynamic"] if mode == "both" else [mode]
    entropy = stationary(model).entropy
    out = []
    for trial in range(trials):
        trial_seed = seed + trial
        path = sample(model, max(lengths, default=0), trial_seed)
        for n in lengths:
            for md in modes:
                out.append(measure(model, path[:n], md, seed=trial_seed,
                                   entropy=entropy, name=name))
    return out


def check_bounds(records: Iterable[MetricsRecord]) -> list[str]:
    """List every violated structural bound; an empty list means all hold."""
    report = []
    for r in records:
        tag = f"{r.model or 'model'}/{r.mode}/n={r.n}/seed={r.seed}"
        parts = r.header_bits + r.length_bits + r.records_bits + r.payload_bits
        if parts != r.total_bits:
            report.append(f"{tag}: components sum to {parts}, total is {r.total_bits}")
        if sum(r.visits) != r.n:
            report.append(f"{tag}: visit counts sum to {sum(r.visits)}, n is {r.n}")
        for v in r.header_ints:
            if v >= 2 and omega_length(v) > omega_bound(v):
                report.append(f"{tag}: omega length of {v} exceeds its bound")
        if r.mode == "dynamic":
            d = r.m - 1
            if r.n0 > n0_bound(r.J, d):
                report.append(f"{tag}: n0={r.n0} exceeds {n0_bound(r.J, d)}")
            if r.shallow_beta > shallow_beta_bound(r.J, d):
                report.append(f"{tag}: {r.shallow_beta} shallow contexts exceed {shallow_beta_bound(r.J, d)}")
    return report


def _cell(name: str, value) -> str:
    if name in _JSON_COLUMNS:
        return json.dumps(value, separators=(",", ":"))
    if name in _FLOAT_COLUMNS:
        return repr(float(value))
    return str(value)


def emit_csv(records: Iterable[MetricsRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in records:
            row = asdict(r)
            writer.writerow([_cell(k, row[k]) for k in CSV_COLUMNS])


def read_csv(path) -> list[MetricsRecord]:
    out = []
    with open(Path(path), newline="") as fh:
        for row in csv.DictReader(fh):
            kw = {}
            for k, v in row.items():
                if k in _JSON_COLUMNS:
                    kw[k] = json.loads(v)
                elif k in _INT_COLUMNS:
                    kw[k] = int(v)
                elif k in _FLOAT_COLUMNS:
                    kw[k] = float(v)
                else:
                    kw[k] = v
            out.append(MetricsRecord(**kw))
    return out


def summarize(records: Iterable[MetricsRecord]) -> list[dict]:
    """Median bits/symbol and header share per (model, mode, n)."""
    groups: dict[tuple, list[MetricsRecord]] = {}
    for r in records:
        groups.setdefault((r.model, r.mode, r.n), []).append(r)
    rows = []
    for (name, mode, n), rs in sorted(groups.items()):
        rows.append({
            "model": name,
            "mode": mode,
            "n": n,
            "trials": len(rs),
            "entropy": rs[0].entropy,
            "median_bits_per_symbol": statistics.median(r.bits_per_symbol for r in rs),
            "median_header_per_symbol": statistics.median(
                (r.total_bits - r.payload_bits) / r.n if r.n else 0.0 for r in rs),
        })
    return rows
