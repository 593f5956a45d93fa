from fractions import Fraction
from itertools import permutations, product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tetralattice.errors import DegeneratePoint, OutOfRange
from tetralattice.exactalg import LaurentPoly, parse_poly, var
from tetralattice.symfun import (
    alternant,
    block_sequence,
    compositions,
    elementary,
    kostka,
    loop_elementary,
    loop_elementary_paths,
    normalize_partition,
    ordered_set_partitions,
    partitions,
    schur_at_ones,
    schur_bialternant,
    schur_from_tableaux,
    schur_point,
    semistandard_tableaux,
    symmetrize_blocks,
)

Z = ["z1", "z2", "z3", "z4", "z5"]


def brute_fillings(lam, m):
    """Every filling of the diagram with 1..m, kept if rows weakly increase and columns strictly increase."""
    cells = [(r, c) for r, length in enumerate(lam) for c in range(length)]
    for vals in product(range(1, m + 1), repeat=len(cells)):
        t = dict(zip(cells, vals))
        if all(t[(r, c)] <= t[(r, c + 1)] for (r, c) in cells if (r, c + 1) in t) and all(
            t[(r, c)] < t[(r + 1, c)] for (r, c) in cells if (r + 1, c) in t
        ):
            yield t


def brute_kostka(lam, alpha):
    want = tuple(alpha)
    return sum(1 for t in brute_fillings(lam, len(alpha))
               if tuple(list(t.values()).count(k) for k in range(1, len(alpha) + 1)) == want)


def test_schur_examples():
    assert schur_bialternant((), Z[:2]) == LaurentPoly.const(1)
    assert schur_bialternant((1,), Z[:2]) == parse_poly("z1 + z2")
    assert schur_bialternant((2, 1), Z[:2]) == parse_poly("z1^2*z2 + z1*z2^2")
    assert schur_bialternant((2, 1), Z[:3]).substitute({v: 1 for v in Z[:3]}) == LaurentPoly.const(8)
    assert schur_bialternant((2,), Z[:3]).substitute({v: 1 for v in Z[:3]}) == LaurentPoly.const(6)


def test_alternant_quotient_by_hand():
    num = alternant((3, 0), Z[:2])
    assert num == parse_poly("z1^3 - z2^3")
    assert alternant((1, 0), Z[:2]) == parse_poly("z1 - z2")


def test_non_partition_sequences():
    # sign-normalized: s_(0,1) has exponents (1,1): repeated, so zero; s_(0,2) = -s_(1,1)
    assert schur_bialternant((0, 1), Z[:2]).is_zero()
    assert schur_bialternant((0, 2), Z[:2]) == -schur_bialternant((1, 1), Z[:2])
    assert schur_bialternant((1, 0, 0, 1), Z[:3]).is_zero()
    assert schur_bialternant((2, 1, 0, 0), Z[:3]) == schur_bialternant((2, 1), Z[:3])


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2, 1)])
def test_bialternant_matches_tableaux(lam):
    for n in range(len(lam), 4):
        brute = LaurentPoly.const(0)
        for t in brute_fillings(lam, n):
            mono = LaurentPoly.const(1)
            for v in t.values():
                mono = mono * var(Z[v - 1])
            brute = brute + mono
        assert schur_bialternant(lam, Z[:n]) == brute
        assert schur_from_tableaux(lam, Z[:n]) == brute


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6).flatmap(lambda k: st.sampled_from(list(partitions(k, max_parts=4)) or [()])),
       st.integers(2, 5), st.data())
def test_schur_is_symmetric(lam, n, data):
    if len(lam) > n:
        lam = lam[:n]
    s = schur_bialternant(lam, Z[:n])
    a = data.draw(st.integers(0, n - 2))
    assert s.swap(Z[a], Z[a + 1]) == s


@pytest.mark.parametrize("size", range(0, 7))
def test_kostka_expansion(size):
    n = 3
    for lam in partitions(size, max_parts=n):
        s = schur_bialternant(lam, Z[:n])
        rebuilt = LaurentPoly.const(0)
        for alpha in compositions(size, n):
            rebuilt = rebuilt + LaurentPoly.monomial(kostka(lam, alpha), dict(zip(Z, alpha)))
        assert rebuilt == s


def test_kostka_examples():
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((1, 1), (2,)) == 0
    assert kostka((3, 2), (1, 1)) == 0
    for lam in [(1,), (2, 1), (3, 2, 2), (4, 1)]:
        assert kostka(lam, lam) == 1


@pytest.mark.parametrize("size", range(1, 6))
def test_kostka_against_brute_force(size):
    for m in range(1, 4):
        for lam in partitions(size, max_parts=m):
            for alpha in compositions(size, m):
                assert kostka(lam, alpha) == brute_kostka(lam, alpha)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (3, 1, 1)]), st.permutations([2, 1, 1, 1]))
def test_kostka_content_symmetric(lam, alpha):
    assert kostka(lam, alpha) == kostka(lam, sorted(alpha, reverse=True))


def test_semistandard_count():
    assert len(semistandard_tableaux((2, 1), 3)) == 8
    assert len(semistandard_tableaux((2, 2), 2)) == 1


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(), (1,), (2, 1), (2, 2), (3, 1)]), st.integers(0, 2), st.integers(2, 3))
def test_factorization(lam, c, n):
    lam = lam[:n]
    shifted = tuple(x + c for x in lam + (0,) * (n - len(lam)))
    prod_z = LaurentPoly.const(1)
    for v in Z[:n]:
        prod_z = prod_z * var(v, c)
    assert schur_bialternant(shifted, Z[:n]) == prod_z * schur_bialternant(lam, Z[:n])


@pytest.mark.parametrize("n", range(0, 9))
def test_elementary_at_ones(n):
    for k in range(n + 1):
        e = elementary(k, [f"x{j}" for j in range(n)])
        assert e.substitute({f"x{j}": 1 for j in range(n)}) == LaurentPoly.const(comb(n, k))
    assert elementary(n + 1, [f"x{j}" for j in range(n)]).is_zero()


def test_elementary_examples():
    assert elementary(0, Z[:3]) == LaurentPoly.const(1)
    assert elementary(2, Z[:3]) == parse_poly("z1*z2 + z1*z3 + z2*z3")
    assert elementary(1, Z[:4]).substitute({v: 1 for v in Z[:4]}) == LaurentPoly.const(4)


def test_loop_elementary_examples():
    assert loop_elementary(0, 2, 3, 4) == LaurentPoly.const(1)
    assert loop_elementary(1, 1, 3, 2) == parse_poly("z1_1 + z2_1")
    assert loop_elementary(2, 2, 2, 3) == parse_poly("z1_2*z2_1 + z1_2*z3_1 + z2_2*z3_1")
    with pytest.raises(OutOfRange):
        loop_elementary(4, 1, 3, 3)


@pytest.mark.parametrize("k, a, ell, n", [(3, 1, 3, 5), (2, 2, 3, 4), (4, 3, 2, 5), (1, 1, 1, 3), (0, 1, 2, 2)])
def test_loop_elementary_paths(k, a, ell, n):
    assert loop_elementary(k, a, ell, n) == loop_elementary_paths(k, a, ell, n)


def test_symmetrize_blocks_examples():
    assert symmetrize_blocks([(1, 1), (1, 0)], [2, 3]) == 5
    assert symmetrize_blocks([(2, 3)], [2, 5]) == Fraction(2**3 * 5**3)
    with pytest.raises(DegeneratePoint):
        symmetrize_blocks([(1, 1), (1, 0)], [2, 2])
    with pytest.raises(OutOfRange):
        symmetrize_blocks([(1, 1)], [2, 3])


def _points(draw, n):
    return draw(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(lambda x: x != 0),
                         min_size=n, max_size=n, unique=True))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_symmetrize_blocks_matches_schur(data):
    # exponents strictly decreasing across blocks: the symmetrization is s of the block sequence
    m = data.draw(st.integers(1, 3))
    sizes = data.draw(st.lists(st.integers(1, 2), min_size=m, max_size=m))
    base = sorted(data.draw(st.lists(st.integers(0, 2), min_size=m, max_size=m)), reverse=True)
    exps = [base[i] + (m - 1 - i) for i in range(m)]
    pts = _points(data.draw, sum(sizes))
    blocks = list(zip(sizes, exps))
    shape = block_sequence([(e, s) for s, e in blocks])
    assert symmetrize_blocks(blocks, pts) == schur_point(shape, pts)


def test_symmetrize_single_blocks_symbolic_points():
    pts = [Fraction(2), Fraction(3), Fraction(-5, 4), Fraction(7)]
    for lam in partitions(4, max_parts=4):
        lam = lam + (0,) * (4 - len(lam))
        assert symmetrize_blocks([(1, x) for x in lam], pts) == schur_point(lam, pts)


def test_schur_point_matches_symbolic():
    pts = [Fraction(2), Fraction(-1, 3), Fraction(5, 2)]
    s = schur_bialternant((3, 1), Z[:3])
    assert schur_point((3, 1), pts) == s.substitute(dict(zip(Z, pts))).constant_term()
    with pytest.raises(DegeneratePoint):
        schur_point((1,), [1, 1])


@pytest.mark.parametrize("lam, n", [((2,), 3), ((1,), 4), ((2, 1), 3), ((3, 3, 1), 4), ((), 2)])
def test_schur_at_ones(lam, n):
    ones = {v: 1 for v in Z[:n]}
    assert schur_at_ones(lam, n) == schur_bialternant(lam, Z[:n]).substitute(ones).constant_term()


def test_partition_helpers():
    assert normalize_partition((3, 1, 0, 0)) == (3, 1)
    with pytest.raises(OutOfRange):
        normalize_partition((1, 2))
    assert block_sequence([(2, 2), (0, 1)]) == (2, 2, 0)
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert sorted(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert len(list(ordered_set_partitions("abcd", [2, 1, 1]))) == 12


def test_permutation_invariance_of_point_evaluation():
    pts = [Fraction(3), Fraction(7, 2), Fraction(-2)]
    for perm in permutations(pts):
        assert schur_point((2, 1), perm) == schur_point((2, 1), pts)
