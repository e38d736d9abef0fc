"""Deterministic greedy list scheduler over per-class task costs.

Tasks are independent; the dispatcher hands the next task in list order to
the earliest-free core (lowest index on ties).  Costs are exact Fractions end
to end, so makespans, speedups and regime boundaries are reproducible to the
bit.  The speedup curve of a task set falls into three regions as cores grow:
near-linear while every core stays busy (I), sublinear once the heavy classes
dominate (II), and flat when the longest class alone sets the makespan (III).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import combinations as _comb
from .core import WindowSpec

__all__ = [
    "POLICY_FIFO",
    "POLICY_LONGEST",
    "TaskCost",
    "SchedResult",
    "SweepPoint",
    "model_costs",
    "simulate",
    "sweep",
    "ingest_measured_costs",
    "write_cost_trace",
    "TRACE_HEADER",
    "SWEEP_HEADER",
]

POLICY_FIFO = "fifo"
POLICY_LONGEST = "longest"

TRACE_HEADER = ["task_id", "dr", "dc", "cost"]
SWEEP_HEADER = ["cores", "makespan", "speedup", "region"]


@dataclass(frozen=True)
class TaskCost:
    """One schedulable unit: a (matrix, class) pair and its exact cost."""

    task_id: int
    dr: int
    dc: int
    cost: Fraction
    matrix_index: int = 0

    def __post_init__(self) -> None:
        cost = self.cost if isinstance(self.cost, Fraction) else Fraction(self.cost)
        if cost < 0:
            raise ValueError(f"task {self.task_id}: cost must be >= 0, got {cost}")
        object.__setattr__(self, "cost", cost)


@dataclass(frozen=True)
class SchedResult:
    makespan: Fraction
    per_core_busy: tuple[Fraction, ...]
    speedup: Fraction
    trace: tuple[tuple[Fraction, int, int], ...]  # (start, core, task_id)


@dataclass(frozen=True)
class SweepPoint:
    cores: int
    makespan: Fraction
    speedup: Fraction
    region: str


def model_costs(window: WindowSpec, dims: tuple[int, int], batch: int = 1) -> list[TaskCost]:
    """One task per (matrix, class): cost = pairs * (1 + writes), i.e. one
    multiply plus up to `writes` accumulating additions per pair."""
    n, m = dims
    window.validate_for(n, m)
    if batch < 1:
        raise ValueError(f"batch must be >= 1, got {batch}")
    combos = _comb.unique_combinations(window)
    tasks = []
    for b in range(batch):
        for comb in combos:
            cost = _comb.pair_count(comb, n, m) * (1 + _comb.max_writes(comb, window))
            tasks.append(TaskCost(len(tasks), comb.dr, comb.dc, Fraction(cost), b))
    return tasks


def simulate(
    tasks,
    cores: int,
    policy: str = POLICY_LONGEST,
    dispatch_overhead=0,
) -> SchedResult:
    """Run the greedy list schedule and report exact makespan and speedup.

    policy orders the list: "fifo" keeps task order, "longest" sorts by
    descending cost (stable).  dispatch_overhead, if nonzero, stretches each
    assignment's span on its core without counting as useful work; it exists
    for sensitivity studies and defaults to zero.
    """
    tasks = list(tasks)
    if not tasks:
        raise ValueError("task list must not be empty")
    if cores < 1:
        raise ValueError(f"cores must be >= 1, got {cores}")
    total = sum((t.cost for t in tasks), Fraction(0))
    if total == 0:
        raise ValueError("total work must be positive")
    overhead = dispatch_overhead if isinstance(dispatch_overhead, Fraction) else Fraction(dispatch_overhead)
    if overhead < 0:
        raise ValueError(f"dispatch overhead must be >= 0, got {overhead}")
    if policy == POLICY_LONGEST:
        order = sorted(tasks, key=lambda t: t.cost, reverse=True)
    elif policy == POLICY_FIFO:
        order = tasks
    else:
        raise ValueError(f"unknown policy {policy!r}")
    free_at = [Fraction(0)] * cores
    busy = [Fraction(0)] * cores
    trace = []
    for task in order:
        core = min(range(cores), key=free_at.__getitem__)  # earliest free, lowest index on ties
        start = free_at[core]
        free_at[core] = start + overhead + task.cost
        busy[core] += task.cost
        trace.append((start, core, task.task_id))
    makespan = max(free_at)
    return SchedResult(
        makespan=makespan,
        per_core_busy=tuple(busy),
        speedup=total / makespan,
        trace=tuple(trace),
    )


def sweep(tasks, core_counts, policy: str = POLICY_LONGEST) -> list[SweepPoint]:
    """Simulate over increasing core counts and classify each point.

    Region I: speedup within 5% of the core count.  Region III: under 1%
    improvement over the previous point.  Everything between is region II.
    """
    core_counts = list(core_counts)
    if not core_counts:
        raise ValueError("core_counts must not be empty")
    points = []
    prev_speedup = None
    for cores in core_counts:
        result = simulate(tasks, cores, policy)
        if result.speedup >= Fraction(19, 20) * cores:
            region = "I"
        elif prev_speedup is not None and result.speedup - prev_speedup < prev_speedup / 100:
            region = "III"
        else:
            region = "II"
        points.append(SweepPoint(cores, result.makespan, result.speedup, region))
        prev_speedup = result.speedup
    return points


def write_cost_trace(path, entries) -> None:
    """Write (Combination, cost) pairs as a task_id,dr,dc,cost CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_HEADER)
        for task_id, (comb, cost) in enumerate(entries):
            cost_txt = repr(cost) if isinstance(cost, float) else str(cost)
            writer.writerow([task_id, comb.dr, comb.dc, cost_txt])


def ingest_measured_costs(path, window: WindowSpec, batch: int = 1) -> list[TaskCost]:
    """Load a measured cost trace; row count must be batch * class count.

    Costs parse exactly: decimal, scientific or rational ("3/2") forms all
    land in Fraction without rounding.
    """
    if batch < 1:
        raise ValueError(f"batch must be >= 1, got {batch}")
    per_matrix = len(_comb.unique_combinations(window))
    expected = per_matrix * batch
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != TRACE_HEADER:
            raise ValueError(f"{path}: expected header {','.join(TRACE_HEADER)}, got {header}")
        tasks = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            try:
                task_id, dr, dc = int(row[0]), int(row[1]), int(row[2])
                cost = Fraction(row[3])
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"{path}:{lineno}: malformed row {row!r}") from None
            if not _comb.is_unique_combination(dr, dc, window):
                raise ValueError(f"{path}:{lineno}: offset ({dr}, {dc}) is not a class of this window")
            tasks.append(TaskCost(task_id, dr, dc, cost, len(tasks) // per_matrix))
    if len(tasks) != expected:
        raise ValueError(
            f"{path}: expected {expected} tasks ({batch} x {per_matrix} classes), got {len(tasks)}"
        )
    return tasks
