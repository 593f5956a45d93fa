import pytest

from tetralattice.errors import CutoffExceeded, OutOfRange
from tetralattice.exactalg import substitute, var
from tetralattice.fock import (
    AMINUS,
    APLUS,
    BMINUS,
    BPLUS,
    GENERIC,
    KDIAG,
    Q0,
    TPROJ,
    OccupationState,
    SiteOp,
    apply_site_op,
    format_state,
    oscillator_relation_check,
    pairing,
    site_action,
    sites,
)

q = var("q")


def test_sites_cardinality():
    for n in range(7):
        assert len(sites(n)) == n * (n - 1) // 2
    assert sites(3) == ((1, 1), (1, 2), (2, 1))


def test_site_action_examples():
    assert site_action(BMINUS, 0) == []
    assert site_action(KDIAG, 2) == [(2, q**2)]
    assert site_action(AMINUS, 1) == [(0, 1 - q**2)]
    assert site_action(TPROJ, 0) == [(0, 1)]
    assert site_action(TPROJ, 3) == []
    assert site_action(BPLUS, 4) == [(5, 1)]


def test_cutoff_is_a_hard_error():
    with pytest.raises(CutoffExceeded):
        site_action(APLUS, 3, cutoff=3)
    st = OccupationState.vacuum(3, cutoff=1)
    (s1, _), = apply_site_op(SiteOp(BPLUS, (1, 2)), st)
    assert s1[(1, 2)] == 1
    with pytest.raises(CutoffExceeded):
        apply_site_op(SiteOp(BPLUS, (1, 2)), s1)


def test_state_serialization():
    st = OccupationState.from_dict(3, {(2, 1): 2, (1, 1): 1}, cutoff=4)
    assert str(st) == "{(1,1):1, (2,1):2}"
    assert format_state(3, (0, 0, 0)) == "{}"
    with pytest.raises(OutOfRange):
        OccupationState(3, (0, 0), 2)


def test_pairing_examples():
    assert pairing(3, 3, normalized=True) == 1
    assert pairing(2, 2) == (1 - q**2) * (1 - q**4)
    assert pairing(1, 2) == 0
    assert pairing(0, 0) == 1


def test_pairing_orthogonal_and_q0_limit():
    for m in range(5):
        for mp in range(5):
            p = pairing(m, mp)
            assert (p == 0) == (m != mp)
            assert substitute(p, {"q": 0}) == (1 if m == mp else 0)


def test_pairing_adjointness():
    # <m| a+ |m-1> computed through the pairing equals (1 - q^{2m}) <m-1|m-1>
    for m in range(1, 5):
        lhs = pairing(m, m)  # a+|m-1> = |m>
        rhs = (1 - q ** (2 * m)) * pairing(m - 1, m - 1)
        assert lhs == rhs


@pytest.mark.parametrize("model", [Q0, GENERIC])
def test_oscillator_relations(model):
    rep = oscillator_relation_check(model, 5)
    assert rep["violations"] == []
    assert all(rep["relations"].values())
    assert len(rep["relations"]) == 4


def test_generic_site_ops_degenerate_to_q0():
    for m in range(5):
        for gen, zero in [(APLUS, BPLUS), (AMINUS, BMINUS), (KDIAG, TPROJ)]:
            g = {m2: substitute(c, {"q": 0}) for m2, c in site_action(gen, m)}
            g = {k: v for k, v in g.items() if v}
            z = dict(site_action(zero, m))
            assert g == z
