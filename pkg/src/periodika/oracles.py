"""Brute-force oracles that cross-check the coefficient-level criteria.

These work on explicit tables only, so they are independent of the
additive shortcuts: surjectivity is decided by exact preimage counting on
the de Bruijn graph, equicontinuity by literally comparing canonical
tables of rule powers.  Both are exact-or-Unknown; neither ever guesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rules import (
    ResourceCapError,
    TableRule,
    canonicalize_table,
    compose_table,
    decode_word,
    encode_word,
    identity_rule,
    pad_table,
)


def surjectivity_oracle(rule: TableRule, max_vectors: int = 1_000_000) -> bool:
    """Exact surjectivity test by balance of preimage counts.

    A global map of radius r over k letters is surjective iff every word w
    has exactly ``k**(2r)`` preimage words of length ``len(w) + 2r``.  The
    count vector (preimage paths per de Bruijn state) evolves under one
    transfer per letter; the reachable vectors are explored exhaustively.
    In the balanced case entries stay bounded so the walk terminates, and
    an unbalanced word is found at the first bad vector sum.  The window
    offset is ignored: precomposing with a shift preserves surjectivity.
    """
    k, r = rule.alphabet_size, rule.radius
    states = k ** (2 * r)
    table = rule.table
    buckets: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for u in range(states):
        base = u * k
        for c in range(k):
            buckets[table[base + c]].append((u, (base + c) % states))
    start = (1,) * states
    seen = {start}
    frontier = [start]
    while frontier:
        vec = frontier.pop()
        for a in range(k):
            nxt = [0] * states
            for u, v in buckets[a]:
                nxt[v] += vec[u]
            if sum(nxt) != states:
                return False
            t = tuple(nxt)
            if t not in seen:
                if len(seen) >= max_vectors:
                    raise ResourceCapError("preimage-count exploration exceeded cap")
                seen.add(t)
                frontier.append(t)
    return True


@dataclass(frozen=True)
class EquicontinuityCert:
    """Witness of ``F^q = F^(q+p)`` as global maps (canonical tables equal)."""

    q: int
    p: int


@dataclass(frozen=True)
class OracleUnknown:
    reason: str
    powers_computed: int


def equicontinuity_oracle(
    rule: TableRule,
    budget: int = 64,
    max_radius: int = 12,
    max_cells: int = 30_000,
) -> EquicontinuityCert | OracleUnknown:
    """Search for a repeat among canonical tables of ``F^0, F^1, ...``.

    Returns the first ``(q, p)`` with ``q + p <= budget`` such that the
    canonical tables of ``F^q`` and ``F^(q+p)`` coincide -- an exact proof
    of eventual periodicity of the rule powers, hence of equicontinuity.
    Powers of sensitive rules keep growing, so the table caps (radius and
    cell count) bound the work; hitting a cap yields ``OracleUnknown``,
    never a wrong verdict.
    """
    k = rule.alphabet_size
    cur = identity_rule(k)
    memo = {cur: 0}
    for n in range(1, budget + 1):
        new_radius = cur.radius + rule.radius
        if new_radius > max_radius or k ** (2 * new_radius + 1) > max_cells:
            return OracleUnknown(f"table cap reached at power {n}", n - 1)
        nxt = canonicalize_table(compose_table(rule, cur))
        if nxt in memo:
            q = memo[nxt]
            return EquicontinuityCert(q, n - q)
        memo[nxt] = n
        cur = nxt
    return OracleUnknown("power budget exhausted", budget)


def product_rule(f: TableRule, g: TableRule, max_cells: int = 250_000) -> TableRule:
    """Table of the product map (F x G) over the fused alphabet ``a*kg + b``."""
    radius = max(f.radius + abs(f.offset), g.radius + abs(g.offset))
    kf, kg = f.alphabet_size, g.alphabet_size
    k = kf * kg
    width = 2 * radius + 1
    if k**width > max_cells:
        raise ResourceCapError("product table too large")
    fp = pad_table(f, radius, 0)
    gp = pad_table(g, radius, 0)
    table = []
    for idx in range(k**width):
        word = decode_word(idx, k, width)
        fa = fp.table[encode_word((d // kg for d in word), kf)]
        gb = gp.table[encode_word((d % kg for d in word), kg)]
        table.append(fa * kg + gb)
    return TableRule(k, radius, tuple(table))
