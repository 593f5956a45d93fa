from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tetralattice.errors import NotStabilized, OutOfRange, ParseError
from tetralattice.exactalg import LaurentPoly, parse_poly, q_factorial, q_pochhammer_series, var
from tetralattice.fock import GENERIC, Q0
from tetralattice.pfunc import (
    OperatorWord,
    TraceWeights,
    XFactor,
    XijFactor,
    YFactor,
    auto_cutoff,
    dual_expectation,
    parse_word,
    plain_trace,
    vacuum_expectation,
    weighted_trace,
    x_word,
    y_word,
)


def P(text):
    return parse_poly(text)


def test_vev_weakly_increasing_example():
    assert vacuum_expectation(x_word(3, [1, 2, 3], ["z1", "z2", "z3"])) == P("z1*z2^2*z3^3")


def test_vev_empty_word():
    assert vacuum_expectation(OperatorWord((), Q0, 3)) == LaurentPoly.const(1)


def test_vev_two_factor_example():
    # z1 * s_(1,1)(z1, z2)
    assert vacuum_expectation(parse_word("X(n=3,i=2,z=z1) X(n=3,i=1,z=z2)")) == P("z1^2*z2")


def test_auto_cutoff():
    assert auto_cutoff(x_word(3, [1, 2], ["a", "b"])) == 3


def test_rational_spectral_values():
    w = parse_word("X(n=3,i=2,z=3) X(n=3,i=1,z=-1/2)")
    assert vacuum_expectation(w) == LaurentPoly.const(Fraction(-9, 2))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n), min_size=1, max_size=3))))
def test_q0_vev_is_generic_vev_at_q_zero(data):
    n, idx = data
    zs = [f"z{k}" for k in range(1, len(idx) + 1)]
    a = vacuum_expectation(x_word(n, idx, zs, Q0))
    b = vacuum_expectation(x_word(n, idx, zs, GENERIC)).substitute({"q": 0})
    for i, v in zip(idx, zs):
        b = b * var(v, i)
    assert a == b


def test_dual_10010_example():
    got = dual_expectation((1, 0, 0, 1, 0), y_word(5, 3))
    want = P("z1_1*z2_4 + q*z1_4*z2_1 + z1_1*z3_4 + q*z1_4*z3_1 + z2_1*z3_4 + q*z2_4*z3_1")
    assert got == want
    assert len(list(got.items())) == 6


def test_dual_empty_bra():
    assert dual_expectation((0, 0, 0), y_word(3, 4)) == LaurentPoly.const(1)


def _e(m, names):
    total = LaurentPoly.const(0)
    for combo in combinations(names, m):
        t = LaurentPoly.const(1)
        for v in combo:
            t = t * var(v)
        total = total + t
    return total


@pytest.mark.parametrize("ell, n", [(2, 2), (3, 3), (4, 2), (4, 4)])
def test_equal_colour_corollary(ell, n):
    collapse = {f"z{k}_{j}": var(f"z{k}") for k in range(1, n + 1) for j in range(1, ell + 1)}
    for m in range(ell + 1):
        bra = (1,) * m + (0,) * (ell - m)
        got = dual_expectation(bra, y_word(ell, n)).substitute(collapse)
        assert got == q_factorial(m, "q") * _e(m, [f"z{k}" for k in range(1, n + 1)])


def test_dual_bra_length_checked():
    with pytest.raises(OutOfRange):
        dual_expectation((1, 0), y_word(3, 2))


def test_trace_factorization_example():
    w = x_word(3, [3, 2, 1, 0], ["z3", "z2", "z1", "z0"])
    assert plain_trace(w) == P("z1*z2^2*z3^3")
    assert plain_trace(x_word(3, [3, 2, 1, 0], [1, 1, 1, 1])) == LaurentPoly.const(1)


def test_trace_tasep_example():
    w = parse_word(" ".join(f"X(n=3,i={i},z=1)" for i in (3, 0, 0, 2, 1)))
    res = plain_trace(w, with_meta=True)
    assert res.value == LaurentPoly.const(6)
    assert res.stabilized_at >= 1
    assert [m for m, _ in res.history] == list(range(1, res.history[-1][0] + 1))


@settings(max_examples=15, deadline=None)
@given(st.permutations([0, 1, 2, 2]), st.integers(0, 3))
def test_trace_cyclicity(order, r):
    w = x_word(2, list(order), [f"z{k}" for k in range(4)])
    assert plain_trace(w) == plain_trace(w.rotated(r))


def test_trace_not_stabilized():
    with pytest.raises(NotStabilized):
        plain_trace(parse_word("X(n=2,i=0,z=z)"), M_max=6)
    with pytest.raises(OutOfRange):
        plain_trace(parse_word("X(n=2,i=0,z=z)"), M_start=3, M_max=2)


def test_trace_requires_q0():
    with pytest.raises(ValueError):
        plain_trace(x_word(2, [1], ["z"], GENERIC))


def _empty_one_site(kind):
    return weighted_trace(OperatorWord((), GENERIC, 1), TraceWeights(("t",), ("Q",), kind), 3)


def test_weighted_trace_empty_word_kind_a():
    capped = frozenset({"t", "Q"})
    want = q_pochhammer_series("t", "Q", capped, 3).inverse()
    assert _empty_one_site("A") == want


def test_weighted_trace_empty_word_kind_b():
    capped = frozenset({"t", "Q"})
    assert _empty_one_site("B") == q_pochhammer_series(P("-t"), "Q", capped, 3)


def test_weighted_trace_of_single_k():
    # on rank 2, X_1(z) is the single operator k, so Tr^A = 1/(qt; Q)_inf and Tr^B = (-qt; Q)_inf
    w = x_word(2, [1], ["z"], GENERIC)
    capped = frozenset({"t11", "Q11"})
    tr_a = weighted_trace(w, TraceWeights.for_rank(2, "A"), 3)
    tr_b = weighted_trace(w, TraceWeights.for_rank(2, "B"), 3)
    assert tr_a == q_pochhammer_series(P("q*t11"), "Q11", capped, 3).inverse()
    assert tr_b == q_pochhammer_series(P("-q*t11"), "Q11", capped, 3)


def test_weights_validation():
    with pytest.raises(ValueError):
        TraceWeights(("t",), ("Q",), "C")
    with pytest.raises(ValueError):
        TraceWeights(("t", "u"), ("Q",))
    with pytest.raises(ValueError):
        weighted_trace(x_word(3, [1], ["z"], GENERIC), TraceWeights(("t",), ("Q",)))
    with pytest.raises(ValueError):
        weighted_trace(x_word(3, [1], ["z"], Q0), TraceWeights.for_rank(3))


def test_for_rank_names():
    w = TraceWeights.for_rank(3, "B")
    assert w.t == ("t11", "t12", "t21")
    assert w.Q == ("Q11", "Q12", "Q21")


def test_parse_word_roundtrip():
    w = parse_word("X(n=3,i=2,z=z1) Xij(n=3,i=1,j=2)")
    assert w.factors == (XFactor(3, 2, "z1"), XijFactor(3, 1, 2))
    assert parse_word(str(w)) == w
    y = parse_word("Y(l=5,k=1,z=z) Y(l=5,k=2)", GENERIC)
    assert y.factors == (YFactor(5, 1, "z"), YFactor(5, 2, "z"))
    assert y.n_lines == 5


@pytest.mark.parametrize("text", ["X(n=3,i=2", "X(n=3,i=2) junk", "X(n=3,z=z1)", "X(n=3,i2)", "Z(n=1)"])
def test_parse_word_errors(text):
    with pytest.raises(ParseError):
        parse_word(text)


def test_word_rank_mismatch():
    with pytest.raises(ValueError):
        parse_word("X(n=3,i=1,z=a) X(n=4,i=1,z=b)")
    with pytest.raises(ValueError):
        OperatorWord((), "bogus")
    with pytest.raises(ValueError):
        x_word(3, [1, 2], ["a"])


def test_xij_requires_q0_and_y_requires_generic():
    with pytest.raises(ValueError):
        vacuum_expectation(OperatorWord((XijFactor(3, 1, 1),), GENERIC))
    with pytest.raises(ValueError):
        vacuum_expectation(OperatorWord((YFactor(2, 1),), Q0))
