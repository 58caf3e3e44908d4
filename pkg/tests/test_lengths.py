import pytest
from hypothesis import given
from hypothesis import strategies as st

from bhrkit.lengths import (
    Certificate,
    Fauxset,
    LengthMultiset,
    MalformedInput,
    PathSeq,
    RealizationKind,
    VerificationFailure,
    certify,
    classify,
    cyclic_length_multiset,
    fauxset_necessity,
    is_admissible,
    linear_length_multiset,
    ms,
    q_star,
    verify_realization,
)

H1_25 = [0, 7, 14, 21, 22, 15, 8, 1, 2, 9, 16, 23, 24, 17, 10, 3, 4, 11, 18, 19, 12, 5, 6, 13, 20]
INTRO = [0, 8, 7, 2, 4, 10, 9, 1, 3, 5, 6]

paths = st.integers(1, 40).flatmap(lambda v: st.permutations(range(v))).map(PathSeq)


@pytest.mark.parametrize(
    "path, expected",
    [(INTRO, "1^3,2^3,5,6,8^2"), ([0, 1, 2], "1^2"), ([0, 2, 1], "1,2")],
)
def test_linear_length_multiset(path, expected):
    assert linear_length_multiset(path) == ms(expected)


@pytest.mark.parametrize(
    "path, expected",
    [(INTRO, "1^3,2^3,3^2,5^2"), ([0, 1, 2], "1^2"), ([0, 2, 1, 3], "1,2^2")],
)
def test_cyclic_length_multiset(path, expected):
    assert cyclic_length_multiset(path) == ms(expected)


def test_verify_pass_and_fail():
    assert verify_realization(PathSeq(INTRO), ms("1^3,2^3,3^2,5^2"), RealizationKind.CYCLIC).ok
    assert verify_realization(PathSeq(H1_25), ms("1^6,7^18")).ok
    report = verify_realization(PathSeq([0, 1, 2]), ms("2^2"))
    assert not report.ok
    assert report.missing == {2: 2} and report.extra == {1: 2}
    assert "missing {2^2}" in report.describe()


def test_verify_rejects_order_mismatch():
    with pytest.raises(MalformedInput):
        verify_realization(PathSeq([0, 1, 2]), LengthMultiset.of({1: 3}))


@pytest.mark.parametrize(
    "L, v, expected",
    [("1^3,2^3,3^2,5^2", 11, True), ("2^3", 4, False), ("1^6,7^18", 25, True), ("2^5", 6, False), ("2^4,3", 6, True)],
)
def test_is_admissible(L, v, expected):
    assert is_admissible(LengthMultiset.parse(L, v)) is expected


@pytest.mark.parametrize("L, expected", [("1^3,5^9", False), ("1^6,7^18", True), ("2^3", False), ("1^2", True)])
def test_fauxset_necessity(L, expected):
    assert fauxset_necessity(ms(L)) is expected


def test_classify():
    assert classify(H1_25) == classify(PathSeq(H1_25))
    c = classify(H1_25)
    assert c.standard and not c.perfect
    assert classify(list(range(6))).perfect
    c = classify([1, 0, 2])
    assert not c.standard and not c.perfect


def test_parse_and_format_round_trip():
    L = ms("{1^6, 7^18}")
    assert L.v == 25 and L.pairs == ((1, 6), (7, 18))
    assert ms(str(L)) == L
    assert ms("3,1,1") == LengthMultiset.of({1: 2, 3: 1})
    assert PathSeq.parse("[0,2,1]").labels == (0, 2, 1)


@pytest.mark.parametrize("text", ["1^x", "0^2", "1^2;3", "a"])
def test_malformed_multisets(text):
    with pytest.raises(MalformedInput):
        ms(text)


def test_malformed_paths_and_multisets():
    with pytest.raises(MalformedInput):
        PathSeq((0, 2))
    with pytest.raises(MalformedInput):
        PathSeq.parse("0,x")
    with pytest.raises(MalformedInput):
        LengthMultiset(5, ((1, 2),))
    with pytest.raises(MalformedInput):
        LengthMultiset(4, ((2, 1), (1, 2)))
    with pytest.raises(MalformedInput):
        LengthMultiset(3, ((3, 2),))


def test_q_star_and_fauxset():
    # v = 25, x = 7: columns 0..3 reach row 3, columns 4..6 stop at row 2
    assert [q_star(25, 7, k) for k in range(7)] == [3, 3, 3, 3, 2, 2, 2]
    f = Fauxset(x=7, k=4, v=25)
    assert f.members == (4, 11, 18) and f.top == 18


def test_certify_and_recheck():
    cert = certify(H1_25, ms("1^6,7^18"), "H1")
    assert isinstance(cert, Certificate)
    assert cert.standard and not cert.perfect and cert.recheck().ok
    with pytest.raises(VerificationFailure):
        certify([0, 1, 2], ms("2^2"), "bogus")
    with pytest.raises(VerificationFailure):
        certify([0, 1, 2], ms("1^3"), "bogus")


@given(paths)
def test_multiset_sizes(path):
    assert linear_length_multiset(path).size == path.v - 1
    cyc = cyclic_length_multiset(path)
    assert cyc.size == path.v - 1 and cyc.is_cyclic_ranged()


@given(paths)
def test_every_path_realizes_its_own_multisets(path):
    assert verify_realization(path, linear_length_multiset(path)).ok
    assert verify_realization(path, cyclic_length_multiset(path), RealizationKind.CYCLIC).ok
    # a realizable linear multiset passes the column bound; a cyclic one is admissible
    assert fauxset_necessity(linear_length_multiset(path))
    assert is_admissible(cyclic_length_multiset(path))


@given(paths)
def test_reversal_keeps_multiset(path):
    rev = PathSeq(path.labels[::-1])
    assert linear_length_multiset(rev) == linear_length_multiset(path)
    assert classify(rev) == classify(path)
