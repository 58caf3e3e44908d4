from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bhrkit import transforms as tf
from bhrkit.catalog import build_omega_realization
from bhrkit.lengths import (
    MalformedInput,
    PathSeq,
    classify,
    linear_length_multiset,
    linear_lengths,
    ms,
    verify_realization,
)

H1_25 = PathSeq((0, 7, 14, 21, 22, 15, 8, 1, 2, 9, 16, 23, 24, 17, 10, 3, 4, 11, 18, 19, 12, 5, 6, 13, 20))
H1_3_4_8 = PathSeq((0, 4, 8, 9, 5, 1, 2, 6, 10, 11, 7, 3))


def lengths(path) -> Counter:
    return linear_length_multiset(path).as_counter()


paths = st.integers(1, 30).flatmap(lambda v: st.permutations(range(v))).map(PathSeq)


@st.composite
def standard_paths(draw, max_v=25):
    v = draw(st.integers(1, max_v))
    rest = draw(st.permutations(range(1, v)))
    return PathSeq((0, *rest))


# --- relabelings ---------------------------------------------------------------------


def test_complement_examples():
    assert tf.complement([0, 2, 1]).labels == (2, 0, 1)
    assert linear_length_multiset(tf.complement(H1_25)) == ms("1^6,7^18")


def test_translate_examples():
    assert tf.translate([0, 2, 1], 3) == (3, 5, 4)
    assert tf.translate([0, 1], 5) == (5, 6)
    assert tf.translate([0], 0) == (0,)
    assert linear_lengths(tf.translate([0, 2, 1], 3)) == linear_lengths([0, 2, 1])
    with pytest.raises(MalformedInput):
        tf.translate([0, 1], -1)


def test_standardize():
    assert tf.standardize([0, 2, 1]).labels == (0, 2, 1)
    assert tf.standardize([1, 2, 0]).labels == (0, 2, 1)
    assert tf.standardize([1, 0, 2]).labels == (0, 2, 1)  # complement of [1,2,0], reversed
    with pytest.raises(MalformedInput):
        tf.standardize([1, 0, 3, 2])


@given(paths)
def test_complement_is_an_involution(path):
    assert tf.complement(tf.complement(path)) == path
    assert lengths(tf.complement(path)) == lengths(path)


@given(paths, st.integers(0, 50))
def test_translation_keeps_lengths(path, t):
    assert linear_lengths(tf.translate(path.labels, t)) == linear_lengths(path.labels)
    assert tf.translate(path.labels, 0) == path.labels


# --- gluing ----------------------------------------------------------------------------


def test_concatenate_examples():
    assert tf.concatenate([0, 1], [0, 1]).labels == (0, 1, 2)
    out = tf.concatenate([0, 2, 1, 3], [0, 2, 1, 3])
    assert out.labels == (0, 2, 1, 3, 5, 4, 6)
    assert verify_realization(out, ms("1^2,2^4")).ok


def test_concatenate_needs_standard_inputs():
    with pytest.raises(MalformedInput):
        tf.concatenate([1, 0, 2], [0, 1])


@given(standard_paths(), standard_paths())
def test_concatenation_adds_multisets(g, h):
    out = tf.concatenate(g, h)
    assert out.v == g.v + h.v - 1
    assert lengths(out) == lengths(g) + lengths(h)


@given(standard_paths(), st.integers(1, 12))
def test_concatenation_with_perfect_second_part_ends_at_the_top(g, n):
    out = tf.concatenate(g, PathSeq(range(n)))  # the straight run is perfect
    assert out.labels[-1] == out.v - 1
    assert classify(tf.standardize(out)).standard


def test_append_ones_examples():
    out = tf.append_ones([0, 2, 1, 3], 2)
    assert out.labels == (0, 2, 1, 3, 4, 5)
    assert verify_realization(out, ms("1^3,2^2")).ok
    assert tf.append_ones(H1_25, 0) == H1_25
    assert tf.append_ones([0, 1], 1).labels == (0, 1, 2)


@given(standard_paths(), st.integers(0, 6))
def test_append_ones_adds_exactly_s_ones(g, s):
    out = tf.append_ones(g, s)
    assert lengths(out) == lengths(g) + Counter({1: s})
    assert classify(out).standard
    if classify(g).perfect:
        assert classify(out).perfect


def test_insert_between_0_1_examples():
    out = tf.insert_between_0_1([1, 0, 2], [0, 2, 1])
    assert out.labels == (1, 3, 2, 0)
    assert verify_realization(out, ms("1,2^2")).ok
    out = tf.insert_between_0_1([0, 1], [0, 1])
    assert verify_realization(out, ms("1")).ok
    with pytest.raises(MalformedInput):
        tf.insert_between_0_1([0, 2, 1], [0, 1])


@given(standard_paths(max_v=15), standard_paths(max_v=10))
def test_insertion_merges_multisets(g, h):
    pos = {ell: i for i, ell in enumerate(g.labels)}
    if g.v < 2 or h.v < 2 or abs(pos[0] - pos[1]) != 1:
        return
    if h.labels[-1] != 1:
        return
    out = tf.insert_between_0_1(g, h)
    assert out.v == g.v + h.v - 2
    assert lengths(out) == lengths(g) + lengths(h) - Counter({1: 1})


def test_bridge_partial_row_examples():
    g, h = (0, 2, 4, 3, 1), (0, 2, 3, 1)
    out = tf.bridge_partial_row(g, h, tf.BridgeParams(5, 4, 9, 24))
    assert out.v == 33 and verify_realization(out, ms("1^3,2^5,9^24")).ok
    out = tf.bridge_partial_row(g, h, tf.BridgeParams(5, 4, 8, 21, squash=True))
    assert out.v == 29 and verify_realization(out, ms("1^2,2^5,8^21")).ok
    out = tf.bridge_partial_row([0], [0], tf.BridgeParams(1, 1, 2, 2))
    assert out.v == 4 and verify_realization(out, ms("1,2^2")).ok


def test_bridge_params_validation():
    with pytest.raises(MalformedInput):
        tf.BridgeParams(5, 4, 9, 25)
    with pytest.raises(MalformedInput):
        tf.BridgeParams(5, 4, 9, 24, squash=True)
    with pytest.raises(MalformedInput):
        tf.bridge_partial_row([0, 1], [0], tf.BridgeParams(1, 1, 2, 2))


# --- local moves -------------------------------------------------------------------------


def test_gamma_move_up_examples():
    out = tf.gamma_move_up(H1_3_4_8, 3, 0)
    assert out.labels == (0, 1, 4, 8, 9, 5, 2, 6, 10, 11, 7, 3)
    assert verify_realization(out, ms("1^3,3^2,4^6")).ok
    h1 = build_omega_realization(8, 20).path
    assert verify_realization(tf.corner_cut(tf.gamma_move_up(h1, 7, 0), 7), ms("1^6,7^3,8^17")).ok
    path = h1
    for g in (0, 2, 4):
        path = tf.gamma_move_up(path, 7, g)
    assert verify_realization(path, ms("1^7,7^6,8^14")).ok


def test_gamma_move_down_examples():
    out = tf.gamma_move_down(H1_3_4_8, 4, 8)
    assert out.labels == (0, 4, 9, 5, 1, 2, 6, 10, 11, 7, 8, 3)
    assert verify_realization(out, ms("1^3,4^6,5^2")).ok
    h1 = build_omega_realization(8, 22).path
    assert h1.v == 30
    step = tf.gamma_move_down(h1, 8, 26)
    assert verify_realization(step, ms("1^7,8^20,9^2")).ok
    assert verify_realization(tf.corner_flap(step, 8), ms("1^8,8^19,9^3")).ok
    path = h1
    for g in (22, 24, 26, 28):
        path = tf.gamma_move_down(path, 8, g)
    assert verify_realization(path, ms("1^7,8^14,9^8")).ok


def test_corner_moves_examples():
    out = tf.corner_cut(H1_3_4_8, 3)
    assert out.labels == (0, 4, 8, 9, 5, 1, 2, 6, 10, 7, 3)
    assert verify_realization(out, ms("1^2,3,4^7")).ok
    out = tf.corner_flap(H1_3_4_8, 4)
    assert out.labels == (0, 4, 8, 9, 5, 1, 2, 6, 10, 11, 12, 7, 3)
    assert verify_realization(out, ms("1^4,4^7,5")).ok


def test_moves_report_missing_patterns():
    with pytest.raises(tf.PatternMissing) as exc:
        tf.gamma_move_up(H1_3_4_8, 3, 1)
    assert exc.value.anchor == 1 and "gamma_move_up" in str(exc.value)
    with pytest.raises(tf.PatternMissing):
        tf.gamma_move_down(H1_3_4_8, 4, 0)
    with pytest.raises(tf.PatternMissing):
        tf.corner_cut(H1_25, 7)
    with pytest.raises(tf.PatternMissing):
        tf.corner_flap(H1_3_4_8, 3)
    with pytest.raises(tf.PatternMissing):
        tf.rotate_end([0, 1, 2], 5, 7)


def test_rotate_end_trades_one_length():
    # [0,1,2,3]: end 3, u=1 at distance 2 followed by the 1-edge 1-2
    out = tf.rotate_end([0, 1, 2, 3], 1, 2)
    assert out.labels == (0, 1, 3, 2)
    assert lengths(out) == Counter({1: 2, 2: 1})


@settings(max_examples=60)
@given(st.sampled_from([(x, b) for x in range(2, 9) for b in range(2, 25)]), st.data())
def test_move_deltas_on_catalog_paths(xb, data):
    x, b = xb
    path = build_omega_realization(x, b).path
    g = data.draw(st.integers(0, path.v - 1))
    try:
        out = tf.gamma_move_down(path, x, g)
    except tf.PatternMissing:
        return
    assert lengths(out) == lengths(path) - Counter({x: 2}) + Counter({x + 1: 2})
