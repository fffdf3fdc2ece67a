"""Configuration representations: canonical forms, equality, shift, the
Cantor metric, products, and literals."""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

import pytest

from periodika.configs import (
    Below,
    ConfigSpecError,
    CyclicConfig,
    EpConfig,
    canonicalize_ep,
    equals,
    is_spatially_periodic,
    join_letterwise,
    map_letters,
    metric_distance,
    parse_config,
    primitive_root,
    product_config,
    product_metric_distance,
    ProductConfig,
    render_config,
    shift,
    split_product_config,
    value_at,
)


# ---------------------------------------------------------------------------
# primitive roots and cyclic canonicalization


def test_primitive_root():
    assert primitive_root((0, 1, 0, 1)) == (0, 1)
    assert primitive_root((0, 1, 1)) == (0, 1, 1)
    assert primitive_root((0,)) == (0,)


def test_cyclic_reduces_to_primitive_root():
    assert CyclicConfig(2, (0, 1, 0, 1)) == CyclicConfig(2, (0, 1))


def test_cyclic_phase_rotates_into_the_word():
    rotated = CyclicConfig(2, (0, 1), 1)
    assert rotated.word == (1, 0) and rotated.phase == 0
    assert value_at(rotated, 0) == 1


def test_cyclic_distinct_phases_differ():
    assert CyclicConfig(2, (0, 1), 0) != CyclicConfig(2, (0, 1), 1)


def test_cyclic_rejects_bad_input():
    with pytest.raises(ValueError):
        CyclicConfig(2, ())
    with pytest.raises(ValueError):
        CyclicConfig(2, (0, 2))


# ---------------------------------------------------------------------------
# eventually periodic canonicalization


def test_ep_absorbs_aligned_middle():
    x = EpConfig(2, (0, 1), (0, 1), (0, 1), 0)
    assert x.mid == () and x.left == x.right
    assert is_spatially_periodic(x)
    assert equals(x, CyclicConfig(2, (0, 1)))


def test_ep_defect_is_already_canonical():
    x = EpConfig(2, (0,), (1,), (0,), 0)
    assert x.left == (0,) and x.mid == (1,) and x.right == (0,) and x.start == 0


def test_ep_reduces_tails_and_absorbs_borders():
    x = EpConfig(2, (0, 0), (0, 1), (0,), 0)
    assert x.left == (0,)
    assert x.mid == (1,)
    assert x.start == 1


def test_ep_two_regime_boundary_slides_leftmost():
    a = EpConfig(2, (0,), (), (0, 1), 0)
    b = EpConfig(2, (0,), (), (0, 1), 2)
    # same biinfinite configuration described with different anchors
    assert a == shift(b, 2)
    assert not is_spatially_periodic(a)


def test_ep_rejects_empty_tails():
    with pytest.raises(ValueError):
        EpConfig(2, (), (1,), (0,))
    with pytest.raises(ValueError):
        EpConfig(2, (0,), (1,), ())


def test_canonicalize_ep_is_identity_on_constructed_values():
    x = EpConfig(2, (0, 1), (1, 1), (0,), -2)
    assert canonicalize_ep(x) == x


def test_ep_construction_preserves_denotation():
    rng = random.Random(11)
    for _ in range(200):
        k = rng.choice((2, 3, 4))
        left = tuple(rng.randrange(k) for _ in range(rng.randint(1, 3)))
        mid = tuple(rng.randrange(k) for _ in range(rng.randint(0, 4)))
        right = tuple(rng.randrange(k) for _ in range(rng.randint(1, 3)))
        start = rng.randint(-3, 3)

        def raw(i):
            if i < start:
                return left[(i - start) % len(left)]
            if i < start + len(mid):
                return mid[i - start]
            return right[(i - start - len(mid)) % len(right)]

        x = EpConfig(k, left, mid, right, start)
        width = 4 * (len(left) + len(mid) + len(right))
        for i in range(-width, width + 1):
            assert value_at(x, i) == raw(i)


# ---------------------------------------------------------------------------
# value_at and shift


def test_value_at_covers_all_three_regions():
    x = EpConfig(3, (0, 1), (2, 2), (1,), 0)
    assert [value_at(x, i) for i in range(-4, 5)] == [0, 1, 0, 1, 2, 2, 1, 1, 1]


def test_shift_examples():
    x = CyclicConfig(2, (1, 0))
    assert value_at(shift(x, 1), 0) == value_at(x, 1)
    assert shift(x, 0) == x
    y = EpConfig(2, (0,), (1,), (0,), 0)
    assert shift(y, 3).start == -3


def test_shift_is_additive():
    rng = random.Random(3)
    samples = [
        CyclicConfig(2, (1, 1, 0)),
        EpConfig(3, (0, 1), (2,), (0,), -1),
        EpConfig(2, (0,), (), (1,), 0),
    ]
    for x in samples:
        for _ in range(20):
            a, b = rng.randint(-6, 6), rng.randint(-6, 6)
            assert shift(shift(x, a), b) == shift(x, a + b)


def test_shift_preserves_denotation():
    x = EpConfig(2, (0, 1), (1, 1), (0,), 0)
    y = shift(x, 2)
    for i in range(-8, 9):
        assert value_at(y, i) == value_at(x, i + 2)


# ---------------------------------------------------------------------------
# spatial periodicity and equality


def test_spatial_periodicity_examples():
    assert not is_spatially_periodic(EpConfig(2, (0,), (1,), (0,), 0))
    assert is_spatially_periodic(EpConfig(2, (0, 1), (), (0, 1), 0))
    assert not is_spatially_periodic(EpConfig(2, (0,), (), (0, 1), 0))
    assert is_spatially_periodic(CyclicConfig(2, (0, 1)))


def test_spatial_periodicity_agrees_with_shift_fixpoints():
    samples = [
        CyclicConfig(2, (0, 1, 1)),
        EpConfig(2, (0, 1), (), (0, 1), 1),
        EpConfig(2, (0,), (1,), (0,), 0),
        EpConfig(2, (0,), (), (1,), 0),
        EpConfig(3, (0, 1), (2,), (1, 2), 0),
    ]
    for x in samples:
        bound = 8
        fixed = any(equals(shift(x, n), x) for n in range(1, bound + 1))
        assert is_spatially_periodic(x) == fixed


def test_equals_across_classes():
    assert equals(EpConfig(2, (0,), (), (0,), 0), CyclicConfig(2, (0,)))
    assert equals(CyclicConfig(2, (0, 1, 0, 1)), CyclicConfig(2, (0, 1)))
    assert not equals(CyclicConfig(2, (0, 1)), CyclicConfig(2, (0, 1), 1))
    assert not equals(EpConfig(2, (0,), (1,), (0,), 0), CyclicConfig(2, (0,)))
    with pytest.raises(ValueError):
        equals(CyclicConfig(2, (0,)), CyclicConfig(3, (0,)))


# ---------------------------------------------------------------------------
# metric


def test_metric_examples():
    zero = CyclicConfig(2, (0,))
    defect = EpConfig(2, (0,), (1,), (0,), 0)
    assert metric_distance(zero, defect) == Fraction(1)
    far = EpConfig(2, (0,), (1,), (0,), 2)
    assert metric_distance(zero, far) == Fraction(1, 4)
    assert metric_distance(zero, CyclicConfig(2, (0, 0))) == Fraction(0)


def test_metric_below_marker():
    zero = CyclicConfig(2, (0,))
    distant = EpConfig(2, (0,), (1,), (0,), 100)
    out = metric_distance(zero, distant, depth=5)
    assert isinstance(out, Below) and out.depth == 5


def test_metric_is_symmetric_and_ultrametric():
    samples = [
        CyclicConfig(2, (0,)),
        CyclicConfig(2, (0, 1)),
        EpConfig(2, (0,), (1,), (0,), 0),
        EpConfig(2, (0,), (1, 1), (0,), -2),
        EpConfig(2, (1,), (), (0,), 0),
    ]
    for x in samples:
        for y in samples:
            dxy = metric_distance(x, y)
            assert dxy == metric_distance(y, x)
            assert (dxy == 0) == equals(x, y)
            for z in samples:
                dxz = metric_distance(x, z)
                dzy = metric_distance(z, y)
                assert dxy <= max(dxz, dzy)


# ---------------------------------------------------------------------------
# letterwise maps and products


def test_map_letters_recanonicalizes():
    x = EpConfig(2, (0,), (1,), (0,), 0)
    flipped = map_letters(x, lambda a: 1 - a, 2)
    assert flipped == EpConfig(2, (1,), (0,), (1,), 0)
    collapsed = map_letters(x, lambda a: 0, 2)
    assert equals(collapsed, CyclicConfig(2, (0,)))


def test_join_letterwise_on_cyclic_inputs():
    a = CyclicConfig(2, (0, 1))
    b = CyclicConfig(2, (0, 1, 1))
    joined = join_letterwise((a, b), lambda p, q: p ^ q, 2)
    assert isinstance(joined, CyclicConfig)
    assert len(joined.word) in (1, 2, 3, 6)
    for i in range(-12, 13):
        assert value_at(joined, i) == value_at(a, i) ^ value_at(b, i)


def test_join_letterwise_mixed_classes():
    a = EpConfig(2, (0,), (1,), (0,), 0)
    b = CyclicConfig(2, (0, 1))
    joined = join_letterwise((a, b), lambda p, q: p + q, 3)
    for i in range(-10, 11):
        assert value_at(joined, i) == value_at(a, i) + value_at(b, i)


def test_product_split_round_trip():
    x = EpConfig(2, (0,), (1,), (0,), 0)
    y = CyclicConfig(3, (0, 2))
    fused = product_config(x, y)
    assert fused.alphabet_size == 6
    back = split_product_config(fused, 2, 3)
    assert equals(back.first, x) and equals(back.second, y)
    with pytest.raises(ValueError):
        split_product_config(fused, 3, 3)


def test_product_metric_is_the_max_metric():
    x1 = CyclicConfig(2, (0,))
    x2 = EpConfig(2, (0,), (1,), (0,), 1)
    y1 = CyclicConfig(2, (0,))
    a = ProductConfig(x1, y1)
    b = ProductConfig(x2, y1)
    assert product_metric_distance(a, b) == Fraction(1, 2)
    same = product_metric_distance(a, a, depth=4)
    assert same == Fraction(0)


# ---------------------------------------------------------------------------
# literals


def test_parse_and_render_cyclic():
    x = parse_config("cyclic:0101@2", 2)
    assert x == CyclicConfig(2, (0, 1), 2)
    assert render_config(x) == "cyclic:01@0"
    assert parse_config(render_config(x), 2) == x


def test_parse_and_render_ep():
    x = parse_config("ep:0|1|0", 2)
    assert x == EpConfig(2, (0,), (1,), (0,), 0)
    assert render_config(x) == "ep:0|1|0@0"
    y = parse_config("ep:01||01@-2", 2)
    assert is_spatially_periodic(y)


def test_parse_config_errors():
    for text, k in (
        ("cyclic:", 2),
        ("cyclic:012", 2),
        ("cyclic:01@x", 2),
        ("ep:0|1", 2),
        ("ep:|1|0", 2),
        ("ep:0|1|0@x", 2),
        ("nope:0", 2),
        ("cyclic:0", 11),
    ):
        with pytest.raises(ConfigSpecError):
            parse_config(text, k)
