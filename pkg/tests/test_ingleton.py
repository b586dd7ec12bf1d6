"""Ingleton checkers: brute force, structural, sampled, and witnesses."""

import pytest

from spaving.census import enumerate_stable_sets
from spaving.constructions import vamos
from spaving.errors import FormatError, ScaleError
from spaving.ingleton import (
    BRUTE_MAX_N,
    PairPattern,
    ViolationWitness,
    _pair_splits,
    enumerate_patterns,
    eval_quadruple,
    find_all_witnesses,
    ingleton_brute,
    ingleton_fast_sp,
    ingleton_sampled,
    minor_witness,
    pattern_counts,
    pattern_counts_direct,
    witness_to_quadruple,
)
from spaving.johnson import random_stable_set
from spaving.matroids import basis_to_sp, is_isomorphic, sp_new, sp_to_basis


def lifted_vamos():
    """V8 with a ninth element forced into every circuit-hyperplane."""
    return sp_new(9, 5, [h | 0x100 for h in vamos().ch])


def test_vamos_quadruple_values():
    v8 = vamos()
    quad = eval_quadruple(v8.rank, 0x03, 0x0C, 0x30, 0xC0)
    assert (quad.lhs, quad.rhs) == (15, 16)
    assert quad.violated
    # swapping C, D into the left-hand positions breaks the pattern
    assert not eval_quadruple(v8.rank, 0x30, 0xC0, 0x03, 0x0C).violated


def test_brute_finds_vamos():
    v8 = vamos()
    for mode in ("flats", "subsets"):
        quad = ingleton_brute(sp_to_basis(v8), mode=mode)
        assert quad is not None and quad.violated
    with pytest.raises(ValueError):
        ingleton_brute(sp_to_basis(v8), mode="everything")


def test_brute_refuses_large_ground_sets():
    with pytest.raises(ScaleError):
        ingleton_brute(lifted_vamos())
    assert BRUTE_MAX_N == 8


def test_brute_modes_agree_on_randoms():
    for n, r in [(6, 3), (7, 3), (8, 4)]:
        for seed in range(10):
            m = sp_new(n, r, random_stable_set(n, r, seed=seed))
            flats = ingleton_brute(m, mode="flats")
            subsets = ingleton_brute(m, mode="subsets")
            assert (flats is None) == (subsets is None)


def test_fast_agrees_with_brute_exhaustively():
    # every stable family on 5 or fewer elements, all ranks
    for n in range(1, 6):
        for r in range(1, n):
            def check(fam, n=n, r=r):
                m = sp_new(n, r, fam)
                assert ingleton_brute(m) is None
                assert ingleton_fast_sp(m) is None

            enumerate_stable_sets(n, r, visitor=check)


def test_fast_agrees_with_brute_on_randoms():
    for n, r in [(7, 3), (7, 4), (8, 4)]:
        hits = 0
        for seed in range(100):
            m = sp_new(n, r, random_stable_set(n, r, seed=seed))
            w = ingleton_fast_sp(m)
            quad = ingleton_brute(m)
            assert (w is None) == (quad is None)
            if w is not None:
                hits += 1
                assert witness_to_quadruple(m, w).violated
        if (n, r) == (8, 4):
            assert hits > 0  # the draw must exercise both outcomes


def test_witness_shape_and_roundtrip():
    v8 = vamos()
    ws = find_all_witnesses(v8)
    assert len(ws) == 1
    w = ws[0]
    assert w.to_dict() == {
        "K": "0",
        "P": ["3", "c", "30", "c0"],
        "basis_pair": [3, 4],
    }
    assert ViolationWitness.from_dict(w.to_dict()) == w
    assert ingleton_fast_sp(v8) == w


@pytest.mark.parametrize(
    "bad",
    [{}, {"K": "0"}, {"K": "zz", "P": [], "basis_pair": [1, 2]}],
)
def test_witness_from_dict_rejects(bad):
    with pytest.raises(FormatError):
        ViolationWitness.from_dict(bad)


def test_witness_to_quadruple_vamos():
    v8 = vamos()
    quad = witness_to_quadruple(v8, find_all_witnesses(v8)[0])
    assert (quad.lhs, quad.rhs) == (15, 16)


def test_minor_witness_identity_and_lift():
    v8 = vamos()
    mw = minor_witness(v8, ingleton_fast_sp(v8))
    assert mw == sp_to_basis(v8)

    m9 = lifted_vamos()
    w9 = ingleton_fast_sp(m9)
    assert w9 is not None and w9.pattern.core == 0x100
    minor = minor_witness(m9, w9)
    assert (minor.n, minor.r) == (8, 4)
    assert is_isomorphic(basis_to_sp(minor), v8)


def test_pattern_unions_and_hits():
    pat = PairPattern(0, (0x03, 0x0C, 0x30, 0xC0))
    assert pat.unions() == [0x0F, 0x33, 0xC3, 0x3C, 0xCC, 0xF0]
    assert pat.hits(vamos().ch) == 5
    with pytest.raises(ValueError):
        PairPattern(0, (0x0C, 0x03, 0x30, 0xC0))


def test_pair_splits():
    splits = list(_pair_splits(0b1111))
    assert len(splits) == 3
    assert all(p | q == 0b1111 and p & q == 0 for p, q in splits)
    assert {frozenset((p, q)) for p, q in splits} == {
        frozenset((0b0011, 0b1100)),
        frozenset((0b0101, 0b1010)),
        frozenset((0b1001, 0b0110)),
    }


def test_pattern_census_size():
    # 7!! pairings of eight elements, each its own pattern at (8, 4)
    pats = list(enumerate_patterns(8, 4))
    assert len(pats) == 105
    assert len(set(pats)) == 105
    assert list(enumerate_patterns(7, 4)) == []
    assert pattern_counts([0b111], 3) == (0, 0)


def test_pattern_count_cross_check():
    v8 = vamos()
    assert pattern_counts(v8.ch, 4) == (1, 0)
    assert pattern_counts_direct(v8.ch, 8, 4) == (1, 0)
    m9 = lifted_vamos()
    assert pattern_counts(m9.ch, 5) == pattern_counts_direct(m9.ch, 9, 5) == (1, 0)
    for seed in range(20):
        fam = random_stable_set(8, 4, seed=seed)
        assert pattern_counts(fam, 4) == pattern_counts_direct(fam, 8, 4)


def test_full_six_pattern_counted():
    pat = PairPattern(0, (0x03, 0x0C, 0x30, 0xC0))
    fam = pat.unions()
    assert pattern_counts(fam, 4) == (0, 1)
    assert pattern_counts_direct(fam, 8, 4) == (0, 1)
    # a full six never yields a witness: no union is a basis
    assert find_all_witnesses(sp_new(8, 4, fam)) == []


def test_sampled_checker_contract():
    v8 = vamos()
    with pytest.raises(ValueError):
        ingleton_sampled(v8, 0)
    # uniform quadruples almost never land on the tight configuration;
    # a None answer is explicitly inconclusive
    assert ingleton_sampled(v8, 500, seed=0) is None
    m = sp_new(9, 4, random_stable_set(9, 4, seed=1))
    assert ingleton_sampled(m, 500, seed=0) is None


def test_fast_checker_small_cases():
    assert ingleton_fast_sp(sp_new(6, 3, [0b000111])) is None
    assert ingleton_fast_sp(sp_new(8, 3, [0b00000111])) is None
    assert ingleton_fast_sp(sp_new(7, 4, [0b0001111])) is None
