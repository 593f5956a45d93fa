from fractions import Fraction

from hypothesis import strategies as st

from tetralattice.exactalg import LaurentPoly

VARS = ["z1", "z2", "z3", "q"]


@st.composite
def laurent_polys(draw, names=VARS, max_terms=5, lo=-2, hi=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = {v: draw(st.integers(lo, hi)) for v in names}
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 4))
        key = tuple(sorted(mono.items()))
        terms[key] = terms.get(key, 0) + Fraction(num, den)
    p = LaurentPoly.const(0)
    for key, c in terms.items():
        p = p + LaurentPoly.monomial(c, dict(key))
    return p


@st.composite
def nonzero_polys(draw, **kw):
    p = draw(laurent_polys(**kw))
    if p.is_zero():
        p = LaurentPoly.const(draw(st.integers(1, 5)))
    return p


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
