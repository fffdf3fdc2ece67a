"""Local rules of one-dimensional cellular automata.

Two representations are used throughout the package:

* ``TableRule`` -- an explicit lookup table over a finite window.  A rule
  with radius ``r`` and offset ``o`` reads the cells ``i+o-r .. i+o+r``
  (left to right) to produce the new value of cell ``i``.  The offset lets
  one-sided rules keep a minimal window after canonicalisation; plain
  symmetric rules always have offset 0.
* ``AdditiveRule`` -- a linear rule ``f(x)_i = sum_j c_j * x_{i+j} mod m``
  stored as a sparse coefficient map.  Composition of additive rules is
  Laurent-polynomial multiplication over Z_m, so rule powers stay exact.

Table indices are big-endian: the window word ``(x_{-r}, ..., x_r)`` maps
to ``sum x_j * k^(position from the right)``, which matches the usual
Wolfram numbering for ``k=2, r=1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field


class RuleSpecError(ValueError):
    """Raised when a rule literal cannot be parsed."""


class NotSurjectiveError(ValueError):
    """Raised by operations that require a surjective rule."""


class ResourceCapError(RuntimeError):
    """Raised when an exact computation would exceed its resource cap."""


def _validate_letters(letters, alphabet_size, what):
    for a in letters:
        if not isinstance(a, int) or not 0 <= a < alphabet_size:
            raise ValueError(f"{what} contains letter {a!r} outside 0..{alphabet_size - 1}")


@dataclass(frozen=True)
class TableRule:
    """Total lookup table for a local rule.

    ``table[idx]`` is the output for the window word whose big-endian
    base-``alphabet_size`` value is ``idx``.  The window covers positions
    ``offset - radius .. offset + radius`` relative to the updated cell.
    """

    alphabet_size: int
    radius: int
    table: tuple[int, ...]
    offset: int = 0

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise ValueError("alphabet_size must be at least 2")
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        width = 2 * self.radius + 1
        expected = self.alphabet_size ** width
        if len(self.table) != expected:
            raise ValueError(
                f"table has {len(self.table)} entries, expected {expected} "
                f"for radius {self.radius} over {self.alphabet_size} letters"
            )
        _validate_letters(self.table, self.alphabet_size, "table")

    @property
    def width(self) -> int:
        return 2 * self.radius + 1

    @property
    def window(self) -> tuple[int, int]:
        """Leftmost and rightmost window position relative to the cell."""
        return (self.offset - self.radius, self.offset + self.radius)

    def __call__(self, word) -> int:
        return self.table[encode_word(word, self.alphabet_size)]

    @classmethod
    def from_wolfram(cls, code: int, alphabet_size: int = 2, radius: int = 1) -> "TableRule":
        """Build the rule numbered ``code`` in the Wolfram convention.

        Digit ``v`` (base ``alphabet_size``) of ``code`` is the output for
        the window word of big-endian value ``v``.
        """
        if alphabet_size < 2 or radius < 0:
            raise ValueError("need alphabet_size >= 2 and radius >= 0")
        entries = alphabet_size ** (2 * radius + 1)
        limit = alphabet_size ** entries
        if not 0 <= code < limit:
            raise ValueError(f"rule code {code} outside 0..{limit - 1}")
        table = tuple((code // alphabet_size**v) % alphabet_size for v in range(entries))
        return cls(alphabet_size, radius, table)

    def wolfram_code(self) -> int:
        if self.offset != 0:
            raise ValueError("only offset-0 rules have a Wolfram code")
        return sum(a * self.alphabet_size**v for v, a in enumerate(self.table))


def encode_word(word, alphabet_size: int) -> int:
    """Big-endian base-``alphabet_size`` value of a letter sequence."""
    idx = 0
    for a in word:
        idx = idx * alphabet_size + a
    return idx


def decode_word(idx: int, alphabet_size: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        out.append(idx % alphabet_size)
        idx //= alphabet_size
    return tuple(reversed(out))


def identity_rule(alphabet_size: int) -> TableRule:
    return TableRule(alphabet_size, 0, tuple(range(alphabet_size)))


@dataclass(frozen=True)
class AdditiveRule:
    """Linear local rule ``f(x)_i = sum_j coeffs[j] * x_{i+j} mod modulus``.

    Coefficients are stored reduced mod ``modulus`` with zero entries
    dropped; ``radius`` is the declared window half-width and may exceed
    the support.
    """

    modulus: int
    radius: int
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        reduced = {}
        for j, c in self.coeffs.items():
            if abs(j) > self.radius:
                raise ValueError(f"coefficient index {j} exceeds declared radius {self.radius}")
            c %= self.modulus
            if c:
                reduced[j] = c
        object.__setattr__(self, "coeffs", dict(sorted(reduced.items())))

    def __eq__(self, other):
        if not isinstance(other, AdditiveRule):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.radius == other.radius
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.modulus, self.radius, tuple(sorted(self.coeffs.items()))))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def coefficient_list(self) -> list[int]:
        """Dense coefficient list over the declared window ``-r .. r``."""
        return [self.coeffs.get(j, 0) for j in range(-self.radius, self.radius + 1)]


def table_from_additive(rule: AdditiveRule) -> TableRule:
    """Expand an additive rule into an explicit table over Z_m."""
    m, r = rule.modulus, rule.radius
    width = 2 * r + 1
    dense = rule.coefficient_list()
    table = []
    for idx in range(m**width):
        word = decode_word(idx, m, width)
        table.append(sum(c * a for c, a in zip(dense, word)) % m)
    return TableRule(m, r, tuple(table))


def compose_additive(f: AdditiveRule, g: AdditiveRule) -> AdditiveRule:
    """Rule of the composed map F o G (apply ``g`` first, then ``f``).

    The coefficient of index ``i`` is ``sum_{j+k=i} f_j * g_k mod m`` --
    the Laurent product of the two coefficient polynomials.
    """
    if f.modulus != g.modulus:
        raise ValueError("cannot compose additive rules with different moduli")
    m = f.modulus
    prod: dict[int, int] = {}
    for j, cj in f.coeffs.items():
        for k, ck in g.coeffs.items():
            prod[j + k] = (prod.get(j + k, 0) + cj * ck) % m
    return AdditiveRule(m, f.radius + g.radius, prod)


def power_additive(f: AdditiveRule, h: int) -> AdditiveRule:
    """``h``-fold composition of ``f`` with itself, via repeated squaring."""
    if h < 1:
        raise ValueError("power must be at least 1")
    acc = f
    for bit in bin(h)[3:]:
        acc = compose_additive(acc, acc)
        if bit == "1":
            acc = compose_additive(acc, f)
    return acc


def _essential_positions(rule: TableRule) -> list[int]:
    """Window positions (0-based, left to right) the table depends on."""
    k, width = rule.alphabet_size, rule.width
    table = rule.table
    total = len(table)
    essential = []
    for j in range(width):
        stride = k ** (width - 1 - j)
        block = stride * k
        found = False
        for base in range(0, total, block):
            for low in range(base, base + stride):
                first = table[low]
                for t in range(1, k):
                    if table[low + t * stride] != first:
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if found:
            essential.append(j)
    return essential


def essential_span(rule: TableRule) -> tuple[int, int] | None:
    """Exact dependence span relative to the cell, or None for constant rules."""
    ess = _essential_positions(rule)
    if not ess:
        return None
    lo = rule.offset - rule.radius
    return (lo + ess[0], lo + ess[-1])


def canonicalize_table(rule: TableRule) -> TableRule:
    """Minimal-window form of a table rule.

    Positions the table provably does not depend on are stripped; when the
    essential span has even width it is padded by one inessential position
    on the right so the window stays of the form ``offset +- radius``.
    Two table rules induce the same global map iff their canonical forms
    are identical.
    """
    k = rule.alphabet_size
    span = essential_span(rule)
    if span is None:
        return TableRule(k, 0, (rule.table[0],) * k)
    lo, hi = span
    if (hi - lo) % 2 == 1:
        hi += 1
    new_r = (hi - lo) // 2
    new_o = lo + new_r
    old_lo, old_hi = rule.window
    new_width = 2 * new_r + 1
    table = []
    for idx in range(k**new_width):
        word = decode_word(idx, k, new_width)
        old_word = tuple(
            word[p - lo] if lo <= p <= hi else 0 for p in range(old_lo, old_hi + 1)
        )
        table.append(rule.table[encode_word(old_word, k)])
    return TableRule(k, new_r, tuple(table), new_o)


def same_global_map(a: TableRule, b: TableRule) -> bool:
    return canonicalize_table(a) == canonicalize_table(b)


def pad_table(rule: TableRule, radius: int, offset: int = 0) -> TableRule:
    """Re-express ``rule`` over the window ``offset +- radius``.

    The new window must contain the old one.
    """
    old_lo, old_hi = rule.window
    new_lo, new_hi = offset - radius, offset + radius
    if new_lo > old_lo or new_hi < old_hi:
        raise ValueError("padded window must contain the original window")
    k = rule.alphabet_size
    width = 2 * radius + 1
    table = []
    for idx in range(k**width):
        word = decode_word(idx, k, width)
        sub = word[old_lo - new_lo : old_hi - new_lo + 1]
        table.append(rule.table[encode_word(sub, k)])
    return TableRule(k, radius, tuple(table), offset)


def compose_table(f: TableRule, g: TableRule) -> TableRule:
    """Table of the composed map F o G (apply ``g`` first)."""
    if f.alphabet_size != g.alphabet_size:
        raise ValueError("cannot compose rules over different alphabets")
    k = f.alphabet_size
    radius = f.radius + g.radius
    offset = f.offset + g.offset
    width = 2 * radius + 1
    comb_lo = offset - radius
    g_lo, g_width = g.offset - g.radius, g.width
    table = []
    for idx in range(k**width):
        word = decode_word(idx, k, width)
        inner = []
        for p in range(f.offset - f.radius, f.offset + f.radius + 1):
            start = p + g_lo - comb_lo
            inner.append(g.table[encode_word(word[start : start + g_width], k)])
        table.append(f.table[encode_word(inner, k)])
    return TableRule(k, radius, tuple(table), offset)


@dataclass(frozen=True)
class Permutativity:
    leftmost: bool
    rightmost: bool


def is_permutative(rule: TableRule) -> Permutativity:
    """Whether the table is bijective in its leftmost / rightmost variable."""
    k, width = rule.alphabet_size, rule.width
    table = rule.table

    def bijective(stride: int) -> bool:
        block = stride * k
        for base in range(0, len(table), block):
            for low in range(base, base + stride):
                seen = {table[low + t * stride] for t in range(k)}
                if len(seen) != k:
                    return False
        return True

    left = bijective(k ** (width - 1))
    right = bijective(1) if width > 1 else left
    return Permutativity(left, right)


_ADDITIVE_RE = re.compile(r"^m=(\d+);r=(\d+);c=(-?\d+(?:,-?\d+)*)$")


def parse_rule_spec(text: str) -> TableRule | AdditiveRule:
    """Parse a rule literal.

    Grammar::

        additive:m=<int>;r=<int>;c=<c_-r>,...,<c_r>
        wolfram:<code>[;k=<alphabet>][;r=<radius>]
    """
    if text.startswith("additive:"):
        body = text[len("additive:") :]
        mm = _ADDITIVE_RE.match(body)
        if not mm:
            raise RuleSpecError(
                f"malformed additive rule spec at position {len('additive:')}: {body!r}"
            )
        m, r = int(mm.group(1)), int(mm.group(2))
        if m < 2:
            raise RuleSpecError(f"modulus {m} must be at least 2")
        coeffs = [int(c) for c in mm.group(3).split(",")]
        if len(coeffs) != 2 * r + 1:
            raise RuleSpecError(
                f"expected {2 * r + 1} coefficients for radius {r}, got {len(coeffs)} "
                f"(position {text.index('c=') + 2})"
            )
        return AdditiveRule(m, r, {j - r: c for j, c in enumerate(coeffs)})
    if text.startswith("wolfram:"):
        body = text[len("wolfram:") :]
        parts = body.split(";")
        if not parts[0].isdigit():
            raise RuleSpecError(
                f"malformed wolfram code at position {len('wolfram:')}: {parts[0]!r}"
            )
        code = int(parts[0])
        k, r = 2, 1
        pos = len("wolfram:") + len(parts[0])
        for part in parts[1:]:
            pos += 1
            if part.startswith("k=") and part[2:].isdigit():
                k = int(part[2:])
            elif part.startswith("r=") and part[2:].isdigit():
                r = int(part[2:])
            else:
                raise RuleSpecError(f"malformed wolfram option at position {pos}: {part!r}")
            pos += len(part)
        try:
            return TableRule.from_wolfram(code, k, r)
        except ValueError as exc:
            raise RuleSpecError(str(exc)) from None
    raise RuleSpecError(
        "rule spec must start with 'additive:' or 'wolfram:' (position 0)"
    )


def render_rule_spec(rule: TableRule | AdditiveRule) -> str:
    """Canonical literal for a rule (inverse of ``parse_rule_spec``)."""
    if isinstance(rule, AdditiveRule):
        c = ",".join(str(v) for v in rule.coefficient_list())
        return f"additive:m={rule.modulus};r={rule.radius};c={c}"
    return f"wolfram:{rule.wolfram_code()};k={rule.alphabet_size};r={rule.radius}"


def gcd_all(values, start: int = 0) -> int:
    g = start
    for v in values:
        g = math.gcd(g, v)
    return g
