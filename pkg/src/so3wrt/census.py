"""Census screening pipeline: CSV in, JSON verdict report out.

The input format is one row per knot with columns

    name, pd, crossings, genus, thickness, prime

where genus/thickness/prime may be empty.  A bundled table of all prime
knots with at most 9 crossings ships with the package (constructed and
certified from scratch; see ``scripts/build_census.py``).

Verdicts are computed independently per knot, optionally across a process
pool; the report is assembled in input order, so its bytes do not depend on
the parallelism level.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .cyclo import eta, kappa, quantum_int, to_complex
from .knots import DiagramError, KnotRecord, parse_pd
from .obstruction import ALL_FILTERS, f_r_set, full_verdict
from .torus import s_matrix, t_matrix

__all__ = [
    "RunConfig",
    "RunSummary",
    "run",
    "load_census_csv",
    "bundled_census_path",
    "load_bundled_census",
    "show_constants",
    "REPORT_SCHEMA",
]


@dataclass(frozen=True)
class RunConfig:
    """Settings for one census screening run."""

    input_path: str
    levels: tuple = (5,)
    max_crossings: Optional[int] = None
    filters: tuple = ALL_FILTERS
    output_path: Optional[str] = None
    parallelism: int = 1
    twist: int = 1
    timeout: Optional[float] = None  # seconds per knot
    cache_path: Optional[str] = None

    def __post_init__(self):
        if not self.filters:
            raise ValueError("at least one filter must be enabled")
        bad = [f for f in self.filters if f not in ALL_FILTERS]
        if bad:
            raise ValueError(f"unknown filters {bad}")
        for r in self.levels:
            if r < 5 or r % 2 == 0:
                raise ValueError(f"levels must be odd primes >= 5, got {r}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be positive")


@dataclass
class RunSummary:
    total: int = 0
    skipped: list = field(default_factory=list)
    excluded: int = 0
    residual: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)

    def to_json(self, config: RunConfig):
        return {
            "config": {
                "input": config.input_path,
                "levels": list(config.levels),
                "filters": list(config.filters),
                "max_crossings": config.max_crossings,
                "twist": config.twist,
            },
            "total": self.total,
            "skipped": list(self.skipped),
            "excluded": self.excluded,
            "residual": list(self.residual),
            "counts": dict(self.counts),
            "verdicts": [v for v in self.verdicts],
        }


REPORT_SCHEMA = {
    "type": "object",
    "required": ["config", "total", "skipped", "excluded", "residual",
                 "counts", "verdicts"],
    "properties": {
        "config": {
            "type": "object",
            "required": ["input", "levels", "filters"],
            "properties": {
                "input": {"type": "string"},
                "levels": {"type": "array", "items": {"type": "integer"}},
                "filters": {"type": "array", "items": {"type": "string"}},
                "max_crossings": {"type": ["integer", "null"]},
                "twist": {"type": "integer"},
            },
        },
        "total": {"type": "integer"},
        "skipped": {"type": "array"},
        "excluded": {"type": "integer"},
        "residual": {"type": "array", "items": {"type": "string"}},
        "counts": {"type": "object"},
        "verdicts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "filters_applied", "candidate_slopes",
                             "fr_orthogonal_hits", "conclusion"],
                "properties": {
                    "name": {"type": "string"},
                    "filters_applied": {"type": "array",
                                        "items": {"type": "string"}},
                    "delta2": {"type": ["integer", "null"]},
                    "jones3": {"type": ["integer", "null"]},
                    "zeta5_trivial": {"type": ["boolean", "null"]},
                    "candidate_slopes": {"type": "array",
                                         "items": {"type": "string"}},
                    "fr_orthogonal_hits": {"type": "object"},
                    "conclusion": {},
                },
            },
        },
    },
}


# ---------------------------------------------------------------------------
# CSV ingestion.
# ---------------------------------------------------------------------------

class MalformedInput(ValueError):
    pass


def _parse_row(row: dict, line: int) -> KnotRecord:
    try:
        name = row["name"].strip()
        pd = parse_pd(row["pd"])
        crossings = int(row["crossings"])
    except (KeyError, AttributeError) as exc:
        raise MalformedInput(f"line {line}: missing column ({exc})")
    except (ValueError, DiagramError) as exc:
        raise MalformedInput(f"line {line}: {exc}")
    if not name:
        raise MalformedInput(f"line {line}: empty name")

    def opt_int(key):
        val = (row.get(key) or "").strip()
        return int(val) if val else None

    def opt_bool(key):
        val = (row.get(key) or "").strip().lower()
        if not val:
            return None
        if val in ("true", "1", "yes"):
            return True
        if val in ("false", "0", "no"):
            return False
        raise MalformedInput(f"line {line}: bad boolean {val!r} in {key}")

    try:
        return KnotRecord(
            name=name,
            pd=pd,
            crossing_number=crossings,
            genus=opt_int("genus"),
            thickness=opt_int("thickness"),
            prime=opt_bool("prime"),
        )
    except ValueError as exc:
        raise MalformedInput(f"line {line}: {exc}")


def load_census_csv(path):
    """Parse a census CSV; returns (records, skipped-row messages)."""
    records, skipped = [], []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return [], []
        required = {"name", "pd", "crossings"}
        if not required.issubset(set(reader.fieldnames)):
            raise MalformedInput(
                f"header must contain {sorted(required)}, "
                f"got {reader.fieldnames}")
        for line, row in enumerate(reader, start=2):
            try:
                records.append(_parse_row(row, line))
            except MalformedInput as exc:
                skipped.append(str(exc))
    return records, skipped


def bundled_census_path() -> Path:
    return Path(resources.files("so3wrt") / "data" / "knots_to_9.csv")


def load_bundled_census():
    """All prime knots with at most 9 crossings, as KnotRecords."""
    records, skipped = load_census_csv(bundled_census_path())
    if skipped:
        raise RuntimeError(f"bundled census is corrupt: {skipped}")
    return records


# ---------------------------------------------------------------------------
# The runner.
# ---------------------------------------------------------------------------

def _verdict_task(args):
    rec, levels, filters, twist = args
    return full_verdict(rec, levels=levels, filters=filters,
                        twist=twist).to_json()


def run(config: RunConfig) -> RunSummary:
    """Screen a census and write the JSON report.

    Deterministic: the report depends only on the input and configuration,
    not on the parallelism level.  Malformed rows are reported with their
    line numbers and skipped; a knot exceeding the per-knot timeout gets the
    conclusion "skipped (timeout)".
    """
    records, skipped = load_census_csv(config.input_path)
    if config.max_crossings is not None:
        records = [r for r in records
                   if r.crossing_number <= config.max_crossings]
    summary = RunSummary(total=len(records), skipped=skipped)

    cache = {}
    if config.cache_path and Path(config.cache_path).exists():
        with open(config.cache_path) as fh:
            cache = json.load(fh)

    tasks = [(rec, tuple(config.levels), tuple(config.filters), config.twist)
             for rec in records]
    results = [None] * len(tasks)
    cached_idx = set()
    for i, rec in enumerate(records):
        key = _cache_key(rec, config)
        if key in cache:
            results[i] = cache[key]
            cached_idx.add(i)

    pending = [i for i in range(len(tasks)) if i not in cached_idx]
    if pending and config.parallelism > 1:
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            futures = {i: pool.submit(_verdict_task, tasks[i]) for i in pending}
            for i in pending:
                try:
                    results[i] = futures[i].result(timeout=config.timeout)
                except FutureTimeout:
                    results[i] = _timeout_verdict(records[i])
    else:
        for i in pending:
            if config.timeout is not None:
                results[i] = _run_with_alarm(tasks[i], config.timeout,
                                             records[i])
            else:
                results[i] = _verdict_task(tasks[i])

    if config.cache_path:
        for i, rec in enumerate(records):
            cache[_cache_key(rec, config)] = results[i]
        with open(config.cache_path, "w") as fh:
            json.dump(cache, fh, sort_keys=True)

    summary.verdicts = results
    for v in results:
        if v["conclusion"] == "excluded":
            summary.excluded += 1
        elif v["conclusion"] != "skipped (timeout)":
            summary.residual.append(v["name"])
    summary.counts = _filter_counts(results)
    if config.output_path:
        with open(config.output_path, "w") as fh:
            json.dump(summary.to_json(config), fh, indent=1, sort_keys=True)
            fh.write("\n")
    return summary


def _cache_key(rec: KnotRecord, config: RunConfig) -> str:
    return "|".join([
        rec.name, rec.pd.serialize(), str(rec.crossing_number),
        str(rec.genus), str(rec.thickness), str(rec.prime),
        ",".join(map(str, config.levels)), ",".join(config.filters),
        str(config.twist),
    ])


def _timeout_verdict(rec: KnotRecord):
    return {
        "name": rec.name,
        "filters_applied": [],
        "delta2": None,
        "jones3": None,
        "zeta5_trivial": None,
        "candidate_slopes": [],
        "fr_orthogonal_hits": {},
        "conclusion": "skipped (timeout)",
    }


def _run_with_alarm(task, seconds, rec):
    import signal

    def handler(signum, frame):
        raise TimeoutError

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        return _verdict_task(task)
    except TimeoutError:
        return _timeout_verdict(rec)
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _filter_counts(verdicts):
    counts = {
        "excluded_total": 0,
        "excluded_by_composite": 0,
        "excluded_by_finite_type": 0,
        "excluded_by_slopes": 0,
        "excluded_by_zeta5": 0,
        "excluded_by_fr": 0,
        "residual": 0,
        "skipped_timeout": 0,
        "zeta5_trivial": 0,
    }
    for v in verdicts:
        if v["conclusion"] == "skipped (timeout)":
            counts["skipped_timeout"] += 1
            continue
        if v.get("zeta5_trivial"):
            counts["zeta5_trivial"] += 1
        if v["conclusion"] != "excluded":
            counts["residual"] += 1
            continue
        counts["excluded_total"] += 1
        applied = v["filters_applied"]
        if any(line.startswith("composite:") for line in applied):
            counts["excluded_by_composite"] += 1
        elif any("excludes" in line for line in applied):
            counts["excluded_by_finite_type"] += 1
        elif any(line.startswith("zeta5:") and "kills" in line
                 for line in applied) and not v["fr_orthogonal_hits"]:
            counts["excluded_by_zeta5"] += 1
        elif v["fr_orthogonal_hits"]:
            counts["excluded_by_fr"] += 1
        else:
            counts["excluded_by_slopes"] += 1
    return counts


# ---------------------------------------------------------------------------
# Constants dump.
# ---------------------------------------------------------------------------

def show_constants(r: int, twist: int = 1) -> str:
    """Exact serialisations plus float images of the level-r constants."""
    lines = [f"level r = {r}, twist e = {twist}"]
    m = (r - 1) // 2
    for n in range(1, m + 1):
        q = quantum_int(n, r, twist)
        lines.append(f"[{n}] = {q.serialize()}  ~ {to_complex(q):.6f}")
    e = eta(r, twist)
    k = kappa(r, twist)
    lines.append(f"eta = {e.serialize()}  ~ {to_complex(e):.6f}")
    lines.append(f"kappa = {k.serialize()}  ~ {to_complex(k):.6f}")
    lines.append("rho(S):")
    for row in s_matrix(r, twist):
        lines.append("  [" + ", ".join(x.serialize() for x in row) + "]")
    lines.append("rho(T) diagonal:")
    for i, row in enumerate(t_matrix(r, twist)):
        lines.append(f"  {row[i].serialize()}")
    if r >= 5 and _levels_prime(r):
        lines.append("F_r elements:")
        for label, vec in f_r_set(r, twist):
            lines.append(f"  {label}: {vec.serialize()}")
    return "\n".join(lines)


def _levels_prime(r):
    if r < 2:
        return False
    p = 2
    while p * p <= r:
        if r % p == 0:
            return False
        p += 1
    return True
