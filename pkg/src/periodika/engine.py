"""Exact evolution of configurations under table rules.

Both configuration classes are closed under one step of a global map: the
image of a spatially periodic configuration is spatially periodic with the
same (or a dividing) period, and the image of an eventually periodic
configuration is eventually periodic with the mid widened by at most the
window width.  Orbit computations therefore never approximate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .configs import Config, CyclicConfig, EpConfig, value_at
from .rules import TableRule


def step_cyclic(rule: TableRule, x: CyclicConfig) -> CyclicConfig:
    if rule.alphabet_size != x.alphabet_size:
        raise ValueError("alphabet mismatch")
    k = rule.alphabet_size
    lo = rule.offset - rule.radius
    width = rule.width
    word, n = x.word, len(x.word)
    table = rule.table
    out = []
    for i in range(n):
        idx = 0
        for t in range(width):
            idx = idx * k + word[(i + lo + t) % n]
        out.append(table[idx])
    return CyclicConfig(k, tuple(out), 0)


def step_ep(rule: TableRule, x: EpConfig) -> EpConfig:
    if rule.alphabet_size != x.alphabet_size:
        raise ValueError("alphabet mismatch")
    k = rule.alphabet_size
    r, o = rule.radius, rule.offset
    lo = o - r
    width = rule.width
    table = rule.table
    left, right = x.left, x.right
    ell, rho = len(left), len(right)
    start, end = x.start, x.end

    def image_left(i):
        idx = 0
        for t in range(width):
            idx = idx * k + left[(i + lo + t - start) % ell]
        return table[idx]

    def image_right(i):
        idx = 0
        for t in range(width):
            idx = idx * k + right[(i + lo + t - end) % rho]
        return table[idx]

    new_start = start - o - r
    new_end = end - o + r
    new_left = tuple(image_left(new_start - ell + j) for j in range(ell))
    new_right = tuple(image_right(new_end + j) for j in range(rho))
    mid = []
    for i in range(new_start, new_end):
        idx = 0
        for t in range(width):
            idx = idx * k + value_at(x, i + lo + t)
        mid.append(table[idx])
    return EpConfig(k, new_left, tuple(mid), new_right, new_start)


def step(rule: TableRule, x: Config) -> Config:
    if isinstance(x, CyclicConfig):
        return step_cyclic(rule, x)
    return step_ep(rule, x)


@dataclass(frozen=True)
class CycleResult:
    """Orbit shape: ``F^(preperiod + period)(x) = F^preperiod(x)``, minimal."""

    preperiod: int
    period: int


@dataclass(frozen=True)
class CycleTimeout:
    steps_examined: int
    reason: str = "step budget exhausted"


def temporal_cycle(
    rule: TableRule,
    x: Config,
    max_steps: int = 100_000,
    max_mid: int = 10_000,
) -> CycleResult | CycleTimeout:
    """Exact preperiod and period of the orbit of ``x``, by memoisation.

    Canonical forms make state comparison exact, so the first repeat gives
    the true minimal preperiod and period.  Returns ``CycleTimeout`` when
    the step budget runs out or an eventually periodic mid outgrows
    ``max_mid``.
    """
    seen = {x: 0}
    cur = x
    for n in range(1, max_steps + 1):
        cur = step(rule, cur)
        if isinstance(cur, EpConfig) and len(cur.mid) > max_mid:
            return CycleTimeout(n, "mid width cap exceeded")
        if cur in seen:
            q = seen[cur]
            return CycleResult(q, n - q)
        seen[cur] = n
    return CycleTimeout(max_steps)


@dataclass(frozen=True)
class SpaceTimeTrace:
    alphabet_size: int
    lo: int
    hi: int
    rows: tuple[tuple[int, ...], ...]


def space_time(rule: TableRule, x: Config, steps: int, lo: int, hi: int) -> SpaceTimeTrace:
    """Sampled orbit segment: ``steps + 1`` rows over coordinates ``lo..hi``."""
    if hi < lo:
        raise ValueError("window must satisfy lo <= hi")
    rows = []
    cur = x
    for n in range(steps + 1):
        rows.append(tuple(value_at(cur, i) for i in range(lo, hi + 1)))
        if n < steps:
            cur = step(rule, cur)
    return SpaceTimeTrace(x.alphabet_size, lo, hi, tuple(rows))


def ascii_render(trace: SpaceTimeTrace) -> str:
    if trace.alphabet_size <= 10:
        return "\n".join("".join(str(a) for a in row) for row in trace.rows)
    return "\n".join(" ".join(str(a) for a in row) for row in trace.rows)


def pgm_render(trace: SpaceTimeTrace) -> bytes:
    """Binary PGM (P5) image, one pixel per cell, letters scaled to 0..255."""
    width = trace.hi - trace.lo + 1
    height = len(trace.rows)
    scale = 255 // (trace.alphabet_size - 1)
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    body = bytes(a * scale for row in trace.rows for a in row)
    return header + body
