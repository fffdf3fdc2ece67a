"""Exact finite representations of bi-infinite configurations.

Two families of configurations admit exact arithmetic:

* ``CyclicConfig`` -- spatially periodic: ``x_i = word[(phase + i) mod n]``.
* ``EpConfig`` -- eventually periodic in both directions:
  ``^inf(left) . mid . (right)^inf`` where the left tail's last letter sits
  at ``start - 1`` and the mid begins at ``start``.

Constructors canonicalise: cyclic words are reduced to their primitive
root, rotated so that the letter at coordinate 0 is ``word[0]`` and phase
is 0; eventually periodic tails are reduced to primitive roots, border
letters that match a tail are absorbed into it, and configurations with
empty mid are anchored (spatially periodic ones at coordinate 0,
two-regime ones at the leftmost possible boundary).  Equality of the
frozen dataclasses therefore decides equality of the configurations they
denote.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


class ConfigSpecError(ValueError):
    """Raised when a configuration literal cannot be parsed."""


def _check_letters(word, alphabet_size, what):
    for a in word:
        if not isinstance(a, int) or not 0 <= a < alphabet_size:
            raise ValueError(f"{what} contains letter {a!r} outside 0..{alphabet_size - 1}")


def primitive_root(word: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest ``u`` with ``word = u * (len(word) // len(u))``."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and all(word[i] == word[i % d] for i in range(n)):
            return word[:d]
    return word


def _rot_left(word):
    return word[1:] + word[:1]


def _rot_right(word):
    return word[-1:] + word[:-1]


@dataclass(frozen=True)
class CyclicConfig:
    """Spatially periodic configuration ``x_i = word[(phase + i) mod n]``.

    After construction ``word`` is the primitive root read off from
    coordinate 0 and ``phase`` is 0.
    """

    alphabet_size: int
    word: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise ValueError("alphabet_size must be at least 2")
        word = tuple(self.word)
        if not word:
            raise ValueError("cyclic word must be nonempty")
        _check_letters(word, self.alphabet_size, "word")
        n = len(word)
        phase = self.phase % n
        root = primitive_root(word)
        d = len(root)
        anchored = tuple(word[(phase + j) % n] for j in range(d))
        object.__setattr__(self, "word", anchored)
        object.__setattr__(self, "phase", 0)

    @property
    def period(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class EpConfig:
    """Eventually periodic configuration ``^inf(left) . mid . (right)^inf``.

    ``mid`` occupies coordinates ``start .. start + len(mid) - 1``; the
    left tail repeats leftward from ``start - 1`` and the right tail
    repeats rightward from ``start + len(mid)``.
    """

    alphabet_size: int
    left: tuple[int, ...]
    mid: tuple[int, ...]
    right: tuple[int, ...]
    start: int = 0

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise ValueError("alphabet_size must be at least 2")
        left, mid, right = tuple(self.left), tuple(self.mid), tuple(self.right)
        if not left or not right:
            raise ValueError("tail words must be nonempty")
        for word, what in ((left, "left"), (mid, "mid"), (right, "right")):
            _check_letters(word, self.alphabet_size, what)
        start = self.start

        left = primitive_root(left)
        right = primitive_root(right)
        # Absorb border letters that already match the adjacent tail.
        while mid and mid[0] == left[0]:
            left = _rot_left(left)
            mid = mid[1:]
            start += 1
        while mid and mid[-1] == right[-1]:
            right = _rot_right(right)
            mid = mid[:-1]
        if not mid:
            if len(left) == len(right) and left == right:
                # Spatially periodic: anchor the root at coordinate 0.
                d = len(left)
                anchored = tuple(left[(j - start) % d] for j in range(d))
                left = right = anchored
                start = 0
            else:
                # Two-regime configuration: slide the boundary leftmost.
                guard = lcm(len(left), len(right))
                while left[-1] == right[-1]:
                    left = _rot_right(left)
                    right = _rot_right(right)
                    start -= 1
                    guard -= 1
                    if guard < 0:  # pragma: no cover - primitivity rules this out
                        raise AssertionError("boundary slide failed to terminate")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "mid", mid)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "start", start)

    @property
    def end(self) -> int:
        """First coordinate covered by the right tail."""
        return self.start + len(self.mid)


Config = CyclicConfig | EpConfig


def canonicalize_ep(x: EpConfig) -> EpConfig:
    """Canonical form of an eventually periodic configuration.

    Constructors already canonicalise, so this rebuild is the identity on
    well-formed values; it exists to make the normalisation explicit.
    """
    return EpConfig(x.alphabet_size, x.left, x.mid, x.right, x.start)


def value_at(x: Config, i: int) -> int:
    """Letter at coordinate ``i``."""
    if isinstance(x, CyclicConfig):
        return x.word[i % len(x.word)]
    if i < x.start:
        return x.left[(i - x.start) % len(x.left)]
    if i < x.end:
        return x.mid[i - x.start]
    return x.right[(i - x.end) % len(x.right)]


def shift(x: Config, n: int = 1) -> Config:
    """``n``-fold shift: the result ``y`` satisfies ``y_i = x_{i+n}``."""
    if isinstance(x, CyclicConfig):
        return CyclicConfig(x.alphabet_size, x.word, n % len(x.word))
    return EpConfig(x.alphabet_size, x.left, x.mid, x.right, x.start - n)


def is_spatially_periodic(x: Config) -> bool:
    """Whether some nonzero shift fixes the configuration."""
    if isinstance(x, CyclicConfig):
        return True
    return not x.mid and x.left == x.right


def _as_ep(x: Config) -> EpConfig:
    if isinstance(x, EpConfig):
        return x
    return EpConfig(x.alphabet_size, x.word, (), x.word, 0)


def equals(x: Config, y: Config) -> bool:
    """Exact equality of the denoted configurations (cross-class aware)."""
    if x.alphabet_size != y.alphabet_size:
        raise ValueError("alphabet mismatch")
    if type(x) is type(y):
        return x == y
    return _as_ep(x) == _as_ep(y)


@dataclass(frozen=True)
class Below:
    """Distance marker: the metric value is at most ``2**-depth``."""

    depth: int


def metric_distance(x: Config, y: Config, depth: int = 64) -> Fraction | Below:
    """Cantor-metric distance ``2**-min{ |i| : x_i != y_i }``, exactly.

    Returns ``Fraction(0)`` when the configurations are equal, the exact
    dyadic distance when they first differ within ``depth`` coordinates of
    the origin, and ``Below(depth)`` otherwise.
    """
    if equals(x, y):
        return Fraction(0)
    for n in range(depth):
        if value_at(x, n) != value_at(y, n) or value_at(x, -n) != value_at(y, -n):
            return Fraction(1, 2**n)
    return Below(depth)


def map_letters(x: Config, fn, alphabet_size: int) -> Config:
    """Apply a letter map pointwise; the result is re-canonicalised."""
    if isinstance(x, CyclicConfig):
        return CyclicConfig(alphabet_size, tuple(fn(a) for a in x.word), 0)
    return EpConfig(
        alphabet_size,
        tuple(fn(a) for a in x.left),
        tuple(fn(a) for a in x.mid),
        tuple(fn(a) for a in x.right),
        x.start,
    )


def join_letterwise(components, fn, alphabet_size: int) -> Config:
    """Combine configurations coordinatewise with ``fn(letters...)``.

    All components must be CyclicConfig for a cyclic result; otherwise the
    result is eventually periodic.
    """
    components = tuple(components)
    if not components:
        raise ValueError("need at least one component")
    if all(isinstance(c, CyclicConfig) for c in components):
        period = lcm(*(len(c.word) for c in components))
        word = tuple(
            fn(*(value_at(c, i) for c in components)) for i in range(period)
        )
        return CyclicConfig(alphabet_size, word, 0)
    eps = [c for c in components if isinstance(c, EpConfig)]
    start = min(c.start for c in eps)
    end = max(c.end for c in eps)
    left_period = lcm(
        *(len(c.left) if isinstance(c, EpConfig) else len(c.word) for c in components)
    )
    right_period = lcm(
        *(len(c.right) if isinstance(c, EpConfig) else len(c.word) for c in components)
    )

    def joint(i):
        return fn(*(value_at(c, i) for c in components))

    left = tuple(joint(start - left_period + j) for j in range(left_period))
    mid = tuple(joint(i) for i in range(start, end))
    right = tuple(joint(end + j) for j in range(right_period))
    return EpConfig(alphabet_size, left, mid, right, start)


@dataclass(frozen=True)
class ProductConfig:
    """Pair of configurations evolving under a product rule."""

    first: Config
    second: Config

    def fused(self) -> Config:
        """Single configuration over the product alphabet ``a*k2 + b``."""
        return product_config(self.first, self.second)


def product_config(x: Config, y: Config) -> Config:
    k2 = y.alphabet_size
    return join_letterwise(
        (x, y), lambda a, b: a * k2 + b, x.alphabet_size * k2
    )


def split_product_config(z: Config, k1: int, k2: int) -> ProductConfig:
    if z.alphabet_size != k1 * k2:
        raise ValueError("alphabet mismatch")
    first = map_letters(z, lambda c: c // k2, k1)
    second = map_letters(z, lambda c: c % k2, k2)
    return ProductConfig(first, second)


def product_metric_distance(a: ProductConfig, b: ProductConfig, depth: int = 64):
    """Max (sup) metric on pairs: ``max(d(first), d(second))``."""
    d1 = metric_distance(a.first, b.first, depth)
    d2 = metric_distance(a.second, b.second, depth)
    if isinstance(d1, Below) and isinstance(d2, Below):
        return Below(min(d1.depth, d2.depth))
    if isinstance(d1, Below):
        return d1 if d2 <= Fraction(1, 2**d1.depth) else d2
    if isinstance(d2, Below):
        return d2 if d1 <= Fraction(1, 2**d2.depth) else d1
    return max(d1, d2)


def _word_to_text(word) -> str:
    return "".join(str(a) for a in word)


def _text_to_word(text: str, alphabet_size: int, what: str) -> tuple[int, ...]:
    if alphabet_size > 10:
        raise ConfigSpecError("literal parsing supports alphabets of at most 10 letters")
    out = []
    for ch in text:
        if not ch.isdigit() or int(ch) >= alphabet_size:
            raise ConfigSpecError(f"bad letter {ch!r} in {what} for alphabet {alphabet_size}")
        out.append(int(ch))
    return tuple(out)


def render_config(x: Config) -> str:
    """Canonical literal for a configuration."""
    if isinstance(x, CyclicConfig):
        return f"cyclic:{_word_to_text(x.word)}@{x.phase}"
    return (
        f"ep:{_word_to_text(x.left)}|{_word_to_text(x.mid)}|{_word_to_text(x.right)}"
        f"@{x.start}"
    )


def parse_config(text: str, alphabet_size: int) -> Config:
    """Parse ``cyclic:<word>[@phase]`` or ``ep:<left>|<mid>|<right>[@start]``."""
    if text.startswith("cyclic:"):
        body = text[len("cyclic:") :]
        phase = 0
        if "@" in body:
            body, _, tail = body.partition("@")
            try:
                phase = int(tail)
            except ValueError:
                raise ConfigSpecError(f"bad phase {tail!r}") from None
        word = _text_to_word(body, alphabet_size, "cyclic word")
        if not word:
            raise ConfigSpecError("cyclic word must be nonempty")
        return CyclicConfig(alphabet_size, word, phase)
    if text.startswith("ep:"):
        body = text[len("ep:") :]
        start = 0
        if "@" in body:
            body, _, tail = body.partition("@")
            try:
                start = int(tail)
            except ValueError:
                raise ConfigSpecError(f"bad start {tail!r}") from None
        parts = body.split("|")
        if len(parts) != 3:
            raise ConfigSpecError("ep literal needs exactly three '|'-separated fields")
        left = _text_to_word(parts[0], alphabet_size, "left tail")
        mid = _text_to_word(parts[1], alphabet_size, "mid")
        right = _text_to_word(parts[2], alphabet_size, "right tail")
        if not left or not right:
            raise ConfigSpecError("tail words must be nonempty")
        return EpConfig(alphabet_size, left, mid, right, start)
    raise ConfigSpecError("config literal must start with 'cyclic:' or 'ep:'")
