from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tetralattice.errors import CutoffExceeded, OutOfRange
from tetralattice.exactalg import LaurentPoly, parse_poly, var
from tetralattice.fock import AMINUS, APLUS, BMINUS, BPLUS, GENERIC, ID, KDIAG, Q0, TPROJ, site_action, site_position, sites
from tetralattice.vertexmodel import (
    basis_states,
    build_x_ij,
    build_x_operator,
    build_y_operator,
    flipped_sixth_vertex,
    identity,
    l_element,
    l_table,
    vacuum,
    x_terms,
    x_transitions,
    y_transitions,
)

z, q = var("z"), var("q")

# (i, j, a, b) -> (site kind, z power, scalar), typed in from the printed tables
Q0_TABLE = {
    (0, 0, 0, 0): (ID, 0, 1),
    (1, 1, 1, 1): (ID, 0, 1),
    (1, 0, 0, 1): (BPLUS, 0, 1),
    (0, 1, 1, 0): (BMINUS, 0, 1),
    (0, 1, 0, 1): (TPROJ, 0, 1),
}
GENERIC_TABLE = {
    (0, 0, 0, 0): (ID, 0, 1),
    (1, 1, 1, 1): (ID, 0, 1),
    (1, 0, 0, 1): (APLUS, 1, 1),
    (0, 1, 1, 0): (AMINUS, -1, 1),
    (0, 1, 0, 1): (KDIAG, 0, 1),
    (1, 0, 1, 0): (KDIAG, 0, -q),
}


def colouring_oracle(n, i, model, occ):
    """Sum over every global 0/1 assignment of the edges of D_n; no pruning."""
    table = Q0_TABLE if model == Q0 else GENERIC_TABLE
    c = [None] + [1 if p <= i else 0 for p in range(1, n + 1)]
    pos = site_position(n)
    verts = [(k, l) for l in range(1, n) for k in range(1, n - l + 1)]
    edges = [("bottom", k) for k in range(1, n)]
    edges += [("A", k, l) for (k, l) in verts if l < n - k]
    edges += [("B", k, l) for (k, l) in verts if k > 1]
    out = {}
    for bits in product((0, 1), repeat=len(edges)):
        e = dict(zip(edges, bits))
        terms = [(tuple(occ), LaurentPoly.const(1))]
        top = c[n]
        zpow = 0
        for k, l in verts:
            ii = e[("bottom", k)] if l == 1 else e[("A", k, l - 1)]
            jj = c[l] if k == n - l else e[("B", k + 1, l)]
            a = c[n + 1 - k] if l == n - k else e[("A", k, l)]
            b = e[("B", k, l)] if k > 1 else None
            if b is None:
                # top edge: whichever colour the ice rule allows
                b = ii + jj - a
                if b not in (0, 1):
                    terms = []
                    break
                top += b
            entry = table.get((ii, jj, a, b))
            if entry is None:
                terms = []
                break
            kind, ze, scalar = entry
            zpow += ze
            line = pos[(k, l)]
            new = []
            for st_, coef in terms:
                for m2, w in site_action(kind, st_[line]):
                    s2 = list(st_)
                    s2[line] = m2
                    new.append((tuple(s2), coef * w * scalar))
            terms = new
        if not terms:
            continue
        weight = z**top if model == Q0 else z**zpow
        for s2, coef in terms:
            out[s2] = out.get(s2, LaurentPoly.const(0)) + coef * weight
    return {s: v for s, v in out.items() if v}


@pytest.mark.parametrize("model", [Q0, GENERIC])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_operator_matches_colouring_oracle(model, n):
    nl = len(sites(n))
    for i in range(n + 1):
        op = build_x_operator(n, i, "z", model)
        for s in basis_states(nl, 2 if n < 4 else 1):
            assert op.column(s) == colouring_oracle(n, i, model, s), (n, i, s)


def test_tables_match_printed_values():
    for model, printed in ((Q0, Q0_TABLE), (GENERIC, GENERIC_TABLE)):
        table = l_table(model)
        assert set(table) == set(printed)
        for key, (kind, ze, scalar) in printed.items():
            got_kind, got_scalar = l_element(model, *key)
            assert got_kind == kind
            assert got_scalar == LaurentPoly.coerce(scalar) * z**ze
    assert l_element(Q0, 1, 0, 1, 0) is None


def test_ice_rule():
    for model in (Q0, GENERIC):
        for (i, j, a, b) in l_table(model):
            assert i + j == a + b


def _explicit(n, i):
    got = {}
    for kinds, ze, scalar in x_terms(n, i, GENERIC):
        key = tuple(sorted((s, k) for s, k in zip(sites(n), kinds) if k != ID))
        got[key] = got.get(key, LaurentPoly.const(0)) + scalar * z**ze
    return {k: v for k, v in got.items() if v}


def test_explicit_rank_three_i1():
    want = {
        (((1, 1), AMINUS), ((1, 2), APLUS), ((2, 1), KDIAG)): LaurentPoly.const(1),
        (((1, 2), APLUS), ((2, 1), KDIAG)): z,
        (((1, 1), KDIAG), ((2, 1), KDIAG)): LaurentPoly.const(1),
    }
    assert _explicit(3, 1) == want


def test_explicit_rank_three_i3():
    want = {
        (): LaurentPoly.const(1),
        (((1, 1), APLUS), ((1, 2), AMINUS), ((2, 1), AMINUS)): z**-1,
        (((1, 1), AMINUS),): z**-1,
        (((1, 2), AMINUS), ((2, 1), AMINUS)): z**-2,
        (((1, 1), KDIAG), ((1, 2), AMINUS)): z**-1,
        (((1, 1), KDIAG), ((2, 1), AMINUS)): -q * z**-1,
    }
    assert _explicit(3, 3) == want


def test_rank_two_i0_on_vacuum():
    op = build_x_operator(2, 0, "z", Q0)
    assert op.apply({(0,): LaurentPoly.const(1)}) == {(0,): LaurentPoly.const(1), (1,): z}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_traversal_order_independence(n):
    nl = len(sites(n))
    for model in (Q0, GENERIC):
        for i in range(n + 1):
            for s in basis_states(nl, 1):
                assert x_transitions(n, i, model, s, "row") == x_transitions(n, i, model, s, "column")


def test_x_ij_components_sum_to_x():
    n, i, M = 3, 1, 3
    full = build_x_operator(n, i, "z", Q0, M)
    total = build_x_ij(n, i, 0, M)
    for j in range(1, n + 1):
        total = total + build_x_ij(n, i, j, M).scale(z**j)
    assert full.equals_on(total, basis_states(3, M - 1))


def test_x_ij_examples():
    vac = vacuum(3)
    one = {vac: LaurentPoly.const(1)}
    assert build_x_ij(3, 3, 3).apply(one) == one
    for j in range(4, 7):
        op = build_x_ij(3, 0, j)
        assert all(not op.column(s) for s in basis_states(3, 2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_zf_relations_small(n):
    x, y = var("x"), var("y")
    X = lambda a, v: build_x_operator(n, a, v)  # noqa: E731
    states = basis_states(len(sites(n)), 2)
    for i in range(n + 1):
        for j in range(n + 1):
            lhs = X(i, "x") @ X(j, "y")
            if i < j:
                rhs = (X(i, "y") @ X(j, "x")) + (X(j, "y") @ X(i, "x")).scale(1 - x / y)
            elif i == j:
                rhs = X(i, "y") @ X(i, "x")
            else:
                rhs = (X(i, "y") @ X(j, "x")).scale(x / y)
            assert lhs.equals_on(rhs, states), (i, j)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_vacuum_actions(n):
    nl = len(sites(n))
    vac = vacuum(nl)
    assert build_x_operator(n, n, "z").apply({vac: LaurentPoly.const(1)}) == {vac: z**n}
    x0 = build_x_operator(n, 0, "z")
    for s in basis_states(nl, 1):
        coef = x0.column(s).get(vac, LaurentPoly.const(0))
        assert coef == LaurentPoly.const(1 if s == vac else 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_q0_is_generic_at_q_zero_up_to_z_power(n):
    # X^{q0}_i(z) = z^i X^{gen}_i(z)|_{q=0}, entry by entry
    nl = len(sites(n))
    for i in range(n + 1):
        a, b = build_x_operator(n, i, "z", Q0), build_x_operator(n, i, "z", GENERIC)
        for s in basis_states(nl, 2 if n < 4 else 1):
            red = {o: c.substitute({"q": 0}) * z**i for o, c in b.column(s).items()}
            assert a.column(s) == {o: c for o, c in red.items() if c}


def test_degeneration_of_local_weights():
    # generic L at q=0, z=1 acts like the five-vertex R; the sixth vertex dies
    gen, five = l_table(GENERIC), l_table(Q0)
    for key in gen:
        kind, scalar = l_element(GENERIC, *key)
        scalar = scalar.substitute({"q": 0, "z": 1})
        for m in range(4):
            got = {o: c.substitute({"q": 0}) * scalar for o, c in
                   ((o, LaurentPoly.coerce(c)) for o, c in site_action(kind, m))}
            got = {o: c for o, c in got.items() if c}
            if key in five:
                want = {o: LaurentPoly.coerce(c) for o, c in site_action(five[key][0], m)}
            else:
                want = {}
            assert got == want, (key, m)


def test_y_column_three_local_types():
    for ell in range(1, 5):
        for s in basis_states(ell, 2):
            for out, _, coef in y_transitions(ell, s):
                assert coef
                assert all(b >= a for a, b in zip(s, out))
                assert sum(out) - sum(s) <= 1


def test_y_two_column_single_creation():
    col = build_y_operator(2)(1)
    got = col.apply({(0, 0): LaurentPoly.const(1)})
    assert got[(1, 0)] == var("z1_1")
    assert got[(0, 1)] == var("z1_2")
    assert got[(0, 0)] == LaurentPoly.const(1)


def test_y_grid_accepts_rational_values():
    col = build_y_operator(2, {(1, 1): 3, (2, 1): 5})(1)
    assert col.apply({(0, 0): LaurentPoly.const(1)})[(0, 1)] == LaurentPoly.const(5)


@pytest.mark.parametrize("N, occ", [(3, 2), (4, 1)])
def test_same_index_operators_commute(N, occ):
    states = basis_states(len(sites(N)), occ)
    for j in range(N + 1):
        a = build_x_operator(N, j, "z", GENERIC) @ build_x_operator(N, j, "w", GENERIC)
        b = build_x_operator(N, j, "w", GENERIC) @ build_x_operator(N, j, "z", GENERIC)
        assert a.equals_on(b, states), j


def test_flipped_sixth_vertex_breaks_commutativity():
    # rank 3 survives the flip; rank 4 does not
    states = basis_states(6, 1)
    with flipped_sixth_vertex():
        assert l_element(GENERIC, 1, 0, 1, 0)[1] == q
        broken = [
            j for j in range(5)
            if not (build_x_operator(4, j, "z", GENERIC) @ build_x_operator(4, j, "w", GENERIC)).equals_on(
                build_x_operator(4, j, "w", GENERIC) @ build_x_operator(4, j, "z", GENERIC), states)
        ]
    assert broken == [0, 1, 3, 4]
    assert l_element(GENERIC, 1, 0, 1, 0)[1] == -q


def test_compose_with_identity():
    x = build_x_operator(3, 1, "z", GENERIC)
    states = basis_states(3, 2)
    assert (x @ identity(3, GENERIC)).equals_on(x, states)
    assert (identity(3, GENERIC) @ x).equals_on(x, states)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.tuples(*[st.integers(0, 1)] * 3))
def test_composition_associative(i, j, k, s):
    A, B, C = (build_x_operator(3, a, v, GENERIC) for a, v in ((i, "x"), (j, "y"), (k, "w")))
    assert ((A @ B) @ C).column(s) == (A @ (B @ C)).column(s)


def test_cutoff_is_enforced():
    op = build_x_operator(2, 0, "z", Q0, M=1)
    op.column((0,))
    with pytest.raises(CutoffExceeded):
        op.column((1,))
    with pytest.raises(OutOfRange):
        build_x_operator(2, 0, "z", Q0, M=0)
    with pytest.raises(OutOfRange):
        build_x_operator(2, 3, "z", Q0).column((0,))


def test_spectral_point_evaluation():
    sym = build_x_operator(3, 2, "z", GENERIC).column((1, 0, 1))
    num = build_x_operator(3, 2, 3, GENERIC).column((1, 0, 1))
    assert num == {o: c.substitute({"z": 3}) for o, c in sym.items()}


def test_dump_is_sorted_text():
    op = build_x_operator(2, 0, "z", Q0)
    op.column((1,))
    op.column((0,))
    assert op.dump(2) == [("{}", "{}", "1"), ("{}", "{(1,1):1}", "z"), ("{(1,1):1}", "{(1,1):1}", "1"),
                          ("{(1,1):1}", "{(1,1):2}", "z")]
    assert parse_poly(op.dump()[1][2]) == z
