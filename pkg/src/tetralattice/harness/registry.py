"""Named identity checks.

Every entry computes both sides through separate code paths (lattice versus
closed form, or operator recursion versus direct action) and records one case
per parameter set.  Conjecture entries report ``evidence-only`` unless a
counterexample turns up.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product

from .. import schubert as sch
from .. import tasep
from ..errors import TetraError
from ..exactalg import LaurentPoly, parse_poly, var
from ..fock import GENERIC, sites
from ..pfunc import (
    OperatorWord,
    TraceWeights,
    XijFactor,
    apply_word,
    dual_expectation,
    plain_trace,
    vacuum_expectation,
    weighted_trace,
    x_word,
    y_word,
)
from ..symfun import compositions, grid_variable, kostka, ordered_set_partitions, partitions
from ..vertexmodel import basis_states, build_x_operator, vacuum, x_terms
from . import oracles

PASS, FAIL, EVIDENCE = "pass", "fail", "evidence-only"


# ---- sampling ------------------------------------------------------------
def sample_points(rng: random.Random, count: int, avoid=()):
    """Distinct rationals p/d with 2 <= p <= 97 and 1 <= d <= 13."""
    seen = set(Fraction(a) for a in avoid)
    out = []
    while len(out) < count:
        x = Fraction(rng.randint(2, 97), rng.randint(1, 13))
        if x in seen:
            continue
        seen.add(x)
        out.append(x)
    return out


def _fmt(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _case(inputs, lhs, rhs, ok=None, **extra):
    ok = (lhs == rhs) if ok is None else ok
    rec = {"inputs": inputs, "lhs": _fmt(lhs), "rhs": _fmt(rhs), "ok": bool(ok)}
    rec.update(extra)
    return rec


@dataclass(frozen=True)
class Check:
    name: str
    fn: object
    tags: frozenset
    defaults: dict = field(default_factory=dict)
    conjecture: bool = False
    summary: str = ""


REGISTRY: dict = {}


def register(name, tags, defaults=None, conjecture=False, summary=""):
    def deco(fn):
        tagset = frozenset(tags) | ({"conjectures"} if conjecture else {"theorems"})
        REGISTRY[name] = Check(name, fn, tagset, defaults or {}, conjecture, summary)
        return fn

    return deco


def _vars(prefix, count, start=1):
    return [f"{prefix}{k}" for k in range(start, start + count)]


# ---- rank-3 explicit operators ---------------------------------------------------
@register("x_explicit", {"generic", "lattice"}, summary="generic rank-3 X operators against the explicit list")
def _x_explicit(p, rng):
    cases = []
    z = var("z")
    for i in range(4):
        got = {}
        for kinds, ze, scalar in x_terms(3, i, GENERIC):
            key = tuple(sorted((s, k) for s, k in zip(sites(3), kinds) if k != "Id"))
            got[key] = got.get(key, LaurentPoly.const(0)) + scalar * z**ze
        want = {}
        for text, ops in oracles.EXPLICIT_N3[i]:
            key = tuple(sorted(ops.items()))
            want[key] = want.get(key, LaurentPoly.const(0)) + parse_poly(text)
        got = {k: v for k, v in got.items() if v}
        fmt = lambda d: sorted(f"{v} * {k}" for k, v in d.items())  # noqa: E731
        cases.append(_case({"n": 3, "i": i}, "; ".join(fmt(got)), "; ".join(fmt(want)), got == want))
    return cases


# ---- ZF algebra ------------------------------------------------------------------
def _zf_rhs(n, i, j):
    x, y = var("x"), var("y")
    X = lambda a, b: build_x_operator(n, a, b)  # noqa: E731
    if i < j:
        return (X(i, "y") @ X(j, "x")) + (X(j, "y") @ X(i, "x")).scale(1 - x * y**-1)
    if i == j:
        return X(i, "y") @ X(i, "x")
    return (X(i, "y") @ X(j, "x")).scale(x * y**-1)


@register("zf_relations", {"q0", "lattice"}, {"n_max": 4, "occupation": {"2": 2, "3": 2, "4": 1}},
          summary="exchange relations of the q=0 X operators, symbolic in x and y")
def _zf(p, rng):
    cases = []
    for n in range(1, p["n_max"] + 1):
        nl = len(sites(n))
        states = basis_states(nl, int(p["occupation"].get(str(n), 1)))
        for i in range(n + 1):
            for j in range(n + 1):
                lhs = build_x_operator(n, i, "x") @ build_x_operator(n, j, "y")
                residual = lhs.residual_on(_zf_rhs(n, i, j), states)
                cases.append(_case({"n": n, "i": i, "j": j, "states": len(states)},
                                   f"{len(residual)} nonzero residual entries", "0 nonzero residual entries",
                                   not residual))
    return cases


# ---- multiple commutation ------------------------------------------------------------------
@register("multi_comm", {"q0", "lattice"},
          {"sets": [[3, [3, 1], [1, 2]], [3, [2, 1, 0], [1, 1, 1]], [3, [3, 0], [2, 1]], [4, [4, 2], [1, 2]],
                    [4, [3, 1, 0], [1, 1, 1]]], "points": 1, "occupation": 1},
          summary="reordering of a strictly decreasing block word, applied to basis states at rational points")
def _multi_comm(p, rng):
    cases = []
    for n, idx, sizes in p["sets"]:
        m = len(idx)
        nl = len(sites(n))
        states = basis_states(nl, p["occupation"])
        for _ in range(p["points"]):
            pts = sample_points(rng, sum(sizes))
            blocks, it = [], iter(pts)
            for s in sizes:
                blocks.append([next(it) for _ in range(s)])
            pre = Fraction(1)
            for k, block in enumerate(blocks, 1):
                for z in block:
                    pre *= z ** (m - k)
            lhs_word = x_word(n, [i for i, b in zip(idx, blocks) for _ in b], [z for b in blocks for z in b])
            ok, bad_state = True, None
            for s in states:
                lhs = apply_word(lhs_word, {s: LaurentPoly.const(1)})
                lhs = {k: v * LaurentPoly.const(1 / pre) for k, v in lhs.items()}
                rhs = {}
                for split in ordered_set_partitions(pts, sizes):
                    wgt = oracles.symmetrized_commutation_weight(split, m)
                    rev_idx = [i for i, b in zip(reversed(idx), reversed(split)) for _ in b]
                    rev_vars = [z for b in reversed(split) for z in b]
                    for k, v in apply_word(x_word(n, rev_idx, rev_vars), {s: LaurentPoly.const(1)}).items():
                        rhs[k] = rhs.get(k, LaurentPoly.const(0)) + v * LaurentPoly.const(wgt)
                rhs = {k: v for k, v in rhs.items() if v}
                lhs = {k: v for k, v in lhs.items() if v}
                if lhs != rhs:
                    ok, bad_state = False, s
                    break
            cases.append(_case({"n": n, "indices": idx, "sizes": sizes, "points": [_fmt(x) for x in pts],
                                "states": len(states)},
                               "agree" if ok else f"differs on {bad_state}", "agree", ok))
    return cases


# ---- Schur correspondence ------------------------------------------------------------------
def _decreasing_words(n, m_max):
    for m in range(1, m_max + 1):
        for idx in combinations(range(n, -1, -1), m):
            yield list(idx)


@register("schur_corr", {"q0", "lattice", "symfun"}, {"n_max": 4, "m_max": 3, "block_max": 2},
          summary="vacuum expectations of decreasing words against prod z^{m-k} times a Schur polynomial")
def _schur_corr(p, rng):
    cases = []
    for n in range(1, p["n_max"] + 1):
        for idx in _decreasing_words(n, p["m_max"]):
            for sizes in product(range(1, p["block_max"] + 1), repeat=len(idx)):
                blocks = []
                for k, s in enumerate(sizes, 1):
                    blocks.append([f"z{k}{chr(96 + a)}" if s > 1 else f"z{k}" for a in range(1, s + 1)])
                word = x_word(n, [i for i, b in zip(idx, blocks) for _ in b], [z for b in blocks for z in b])
                lhs = vacuum_expectation(word)
                rhs = oracles.schur_corr_rhs(idx, blocks)
                cases.append(_case({"n": n, "indices": idx, "sizes": list(sizes)}, lhs, rhs))
    return cases


@register("tensor_schur", {"q0", "lattice", "symfun"}, {"n_max": 4, "run_max": 2},
          summary="decreasing run followed by an increasing run gives a monomial times a Schur polynomial")
def _tensor_schur(p, rng):
    cases = []
    for n in range(1, p["n_max"] + 1):
        for k in range(1, p["run_max"] + 1):
            for dec in combinations(range(n, -1, -1), k):
                for ell in range(1, p["run_max"] + 1):
                    for inc in combinations(range(0, n + 1), ell):
                        if dec[0] > inc[0]:
                            continue
                        zs, ws = _vars("z", k), _vars("w", ell)
                        lhs = vacuum_expectation(x_word(n, list(dec) + list(inc), zs + ws))
                        rhs = oracles.tensor_schur_rhs(dec, inc, zs, ws)
                        cases.append(_case({"n": n, "decreasing": list(dec), "increasing": list(inc)}, lhs, rhs))
    return cases


@register("weak_increase", {"q0", "lattice"}, {"n_max": 4, "m_max": 4},
          summary="weakly increasing words give prod z_k^{i_k}")
def _weak_increase(p, rng):
    cases = []
    for n in range(1, p["n_max"] + 1):
        for m in range(1, p["m_max"] + 1):
            for idx in _weak_words(n, m):
                zs = _vars("z", m)
                lhs = vacuum_expectation(x_word(n, idx, zs))
                rhs = LaurentPoly.const(1)
                for i, z in zip(idx, zs):
                    rhs = rhs * var(z, i)
                cases.append(_case({"n": n, "indices": list(idx)}, lhs, rhs))
    return cases


def _weak_words(n, m):
    def rec(lo, left):
        if left == 0:
            yield ()
            return
        for i in range(lo, n + 1):
            for tail in rec(i, left - 1):
                yield (i,) + tail

    return rec(0, m)


# ---- symmetric-function identities ---------------------------------------------------
def _point_cases(rng, sets, n_points, sides):
    cases = []
    for params in sets:
        for _ in range(n_points):
            count = params["vars"]
            pts = sample_points(rng, count)
            lhs, rhs = sides(params, pts)
            cases.append(_case({**{k: v for k, v in params.items() if k != "vars"},
                                "points": [_fmt(x) for x in pts]}, lhs, rhs))
    return cases


@register("shuffle_jlp", {"q0", "symfun", "point-eval"},
          {"points": 3, "sets": [[[2, 1], [4], [1, 1], [1]], [[1], [3, 2], [2], [1, 1]], [[2, 0], [3], [1, 2], [2]],
                                 [[1, 0], [3, 2], [1, 1], [1, 1]], [[3], [5, 4], [2], [2, 1]],
                                 [[2], [2], [3], [3]]]},
          summary="shuffle formula splitting a two-run staircase Schur polynomial")
def _jlp(p, rng):
    sets = [{"m1": a, "m2": b, "s1": c, "s2": d, "vars": sum(c) + sum(d)} for a, b, c, d in p["sets"]]
    return _point_cases(rng, sets, p["points"],
                        lambda q, pts: oracles.jlp_sides(q["m1"], q["m2"], q["s1"], q["s2"], pts))


@register("fnr", {"q0", "symfun", "point-eval"},
          {"points": 3, "sets": [[4, [1, 2], [1]], [5, [2, 1, 1], [3, 1]], [4, [1, 1, 2], [2, 0]], [5, [2, 2], [2]],
                                 [6, [1, 1, 1, 2], [4, 2, 0]], [3, [3, 2], [0]]]},
          summary="splitting off the top block of a staircase Schur polynomial")
def _fnr(p, rng):
    sets = [{"n": n, "sizes": s, "indices": i, "vars": sum(s)} for n, s, i in p["sets"]]
    return _point_cases(rng, sets, p["points"], lambda q, pts: oracles.fnr_sides(q["n"], q["sizes"], q["indices"], pts))


@register("gm", {"q0", "symfun", "point-eval"},
          {"points": 3, "reading": "derived",
           "sets": [[[1, 1, 1], [3, 2]], [[2, 1, 1], [4, 2]], [[1, 2], [2]], [[2, 2], [3]], [[1, 1, 2], [4, 1]],
                    [[1, 1, 1, 1], [5, 3, 2]]]},
          summary="removing a zero block from a staircase Schur polynomial")
def _gm(p, rng):
    sets = [{"sizes": s, "indices": i, "vars": sum(s)} for s, i in p["sets"]]
    return _point_cases(rng, sets, p["points"],
                        lambda q, pts: oracles.gm_sides(q["sizes"], q["indices"], pts, p["reading"]))


@register("unified", {"q0", "symfun", "point-eval"},
          {"points": 3, "reading": "derived",
           "sets": [[4, [1, 1, 1], [2]], [5, [1, 2, 1], [3]], [5, [1, 1, 1, 1], [3, 1]], [5, [2, 1, 1], [2]],
                    [4, [1, 1, 2], [2]], [6, [1, 1, 1, 1], [4, 2]]]},
          summary="top and zero blocks removed together")
def _unified(p, rng):
    sets = [{"n": n, "sizes": s, "indices": i, "vars": sum(s)} for n, s, i in p["sets"]]
    return _point_cases(rng, sets, p["points"],
                        lambda q, pts: oracles.unified_sides(q["n"], q["sizes"], q["indices"], pts, p["reading"]))


# ---- Kostka realization ---------------------------------------------------------------
@register("kostka_3d", {"q0", "lattice", "symfun"}, {"size_max": 5, "m_max": 3},
          summary="fixed-degree X_{i,j} words count semistandard tableaux")
def _kostka_3d(p, rng):
    cases = []
    for m in range(1, p["m_max"] + 1):
        for size in range(1, p["size_max"] + 1):
            for lam in partitions(size, max_parts=m):
                lam = tuple(lam) + (0,) * (m - len(lam))
                n = lam[0] + m - 1
                for alpha in compositions(size, m):
                    lhs = kostka_word_value(lam, alpha)
                    rhs = kostka(lam, alpha)
                    cases.append(_case({"lambda": list(lam), "alpha": list(alpha), "n": n}, lhs, rhs))
    return cases


def kostka_word_value(lam, alpha):
    m = len(lam)
    n = lam[0] + m - 1
    fs = tuple(XijFactor(n, lam[k] + m - 1 - k, alpha[k] + m - 1 - k) for k in range(m))
    v = vacuum_expectation(OperatorWord(fs))
    return v.constant_term() if v.is_constant() else v


# ---- traces and TASEP ---------------------------------------------------------------
@register("trace_fact", {"q0", "lattice", "trace"}, {"ranks": [1, 2, 3], "block_max": 2},
          summary="Tr(X_n(z_n) ... X_0(z_0)) factorizes into prod z_j^j")
def _trace_fact(p, rng):
    cases = []
    for n in p["ranks"]:
        for sizes in product(range(1, p["block_max"] + 1), repeat=n + 1):
            if sum(sizes) > n + 3:
                continue
            blocks = [[f"z{j}{chr(97 + a)}" for a in range(s)] for j, s in enumerate(sizes)]
            idx = [j for j in range(n, -1, -1) for _ in blocks[j]]
            vs = [z for j in range(n, -1, -1) for z in blocks[j]]
            res = plain_trace(x_word(n, idx, vs), with_meta=True)
            cases.append(_case({"n": n, "sizes": list(sizes)}, res.value, oracles.trace_fact_rhs(blocks),
                               stabilized_at=res.stabilized_at))
    return cases


@register("tasep_probgen", {"q0", "lattice", "trace", "tasep"},
          {"n": 3, "sizes": [[1, 1, 1, 1], [2, 1, 1, 1], [1, 2, 1, 1], [1, 1, 1, 2]]},
          summary="traces of block-reordered words with distinct spectral variables")
def _tasep_probgen(p, rng):
    n = p["n"]
    cases = []
    for sizes in p["sizes"]:
        for j in range(0, n + 1):
            for k in range(j, n + 1):
                blocks = [[f"z{ell}{chr(97 + a)}" for a in range(s)] for ell, s in enumerate(sizes)]
                order = list(range(n, k, -1)) + list(range(j - 1, -1, -1)) + list(range(k, j - 1, -1))
                idx = [ell for ell in order for _ in blocks[ell]]
                vs = [z for ell in order for z in blocks[ell]]
                res = plain_trace(x_word(n, idx, vs), with_meta=True)
                rhs = oracles.tasep_probgen_rhs(n, j, k, blocks)
                cases.append(_case({"n": n, "j": j, "k": k, "sizes": sizes}, res.value, rhs,
                                   stabilized_at=res.stabilized_at))
    return cases


EXAMPLE_VECTOR = [(24, "00123"), (6, "00213"), (12, "01023"), (17, "01203"), (8, "02013"), (3, "02103"),
                  (4, "10023"), (7, "10203"), (9, "12003"), (6, "20013"), (3, "20103"), (1, "21003")]


@register("tasep_example", {"q0", "tasep"}, {"sector": [2, 1, 1, 1]},
          summary="three-species sector vector, trace values and closed forms")
def _tasep_example(p, rng):
    vec = tasep.steady_state(tuple(p["sector"]))
    cases = []
    got = [str(vec[tasep.parse_config(c)]) for _, c in EXAMPLE_VECTOR]
    want = [str(v) for v, _ in EXAMPLE_VECTOR]
    cases.append(_case({"method": "kernel", "configs": [c for _, c in EXAMPLE_VECTOR]}, ",".join(got), ",".join(want)))
    for config, j, k, expect in [("30021", 1, 2, 6), ("31002", 2, 2, 4), ("32100", 3, 3, 1)]:
        c = tasep.parse_config(config)
        tr = tasep.steady_state_trace(c)
        closed = tasep.steady_closed_form(3, j, k, tuple(p["sector"]))
        cases.append(_case({"method": "trace", "config": config}, tr, vec[c]))
        cases.append(_case({"method": "closed", "config": config, "j": j, "k": k}, closed, expect,
                           closed == expect == tr))
    return cases


@register("tasep_threeway", {"q0", "tasep", "trace"}, {"n_max": 3, "L_max": 6},
          summary="kernel, trace and closed form agree on the block-ordered configurations")
def _tasep_threeway(p, rng):
    cases = []
    for n in range(1, p["n_max"] + 1):
        for L in range(n + 1, p["L_max"] + 1):
            for sizes in compositions(L - (n + 1), n + 1):
                sizes = tuple(s + 1 for s in sizes)
                vec = tasep.steady_state(sizes)
                for j in range(0, n + 1):
                    for k in range(j, n + 1):
                        config = tasep.closed_form_config(n, j, k, sizes)
                        closed = tasep.steady_closed_form(n, j, k, sizes)
                        kern = vec[config]
                        tr = tasep.steady_state_trace(config, n)
                        cases.append(_case({"n": n, "sizes": list(sizes), "j": j, "k": k,
                                            "config": tasep.format_config(config)},
                                           f"kernel={_fmt(kern)} trace={_fmt(tr)}", f"closed={closed}",
                                           kern == tr == closed))
    return cases


# ---- Schubert calculus ----------------------------------------------------------------
@register("mock_schubert", {"q0", "lattice", "schubert"}, {"m_values": [2, 3]},
          summary="even-index vacuum expectations against modified Schubert polynomials")
def _mock_schubert(p, rng):
    cases = []
    for m in p["m_values"]:
        n = 2 * m - 2
        for w in permutations(range(1, m + 1)):
            idx = [2 * (w[k] - 1) for k in range(m - 1, -1, -1)]
            zs = [f"z{k}" for k in range(m, 0, -1)]
            lhs = vacuum_expectation(x_word(n, idx, zs))
            pre = LaurentPoly.const(1)
            for k in range(1, m + 1):
                pre = pre * var(f"z{k}", m - k)
            rhs = pre * sch.schubert_poly(w, modified=True)
            cases.append(_case({"n": n, "w": list(w)}, lhs, rhs))
    return cases


def _random_inputs(rng, count, nvars=3):
    names = [f"z{k}" for k in range(1, nvars + 1)]
    return [sch.random_laurent(names, rng) for _ in range(count)]


@register("dd_braid", {"schubert"}, {"samples": 4, "vars": 4}, summary="braid relation for the modified divided differences")
def _dd_braid(p, rng):
    cases = []
    for f in _random_inputs(rng, p["samples"], p["vars"]):
        for i in range(1, p["vars"] - 1):
            cases.append(_case({"i": i, "f": str(f)}, sch.modified_word((i, i + 1, i), f),
                               sch.modified_word((i + 1, i, i + 1), f)))
    return cases


@register("dd_idem", {"schubert"}, {"samples": 4, "vars": 3}, summary="D_i D_i = -D_i")
def _dd_idem(p, rng):
    cases = []
    for f in _random_inputs(rng, p["samples"], p["vars"]):
        for i in range(1, p["vars"]):
            cases.append(_case({"i": i, "f": str(f)}, sch.modified_word((i, i), f), -sch.modified_word((i,), f)))
    return cases


@register("dd_leibniz", {"schubert"}, {"samples": 4, "vars": 3}, summary="twisted Leibniz rule for D_i")
def _dd_leibniz(p, rng):
    cases = []
    inputs = _random_inputs(rng, 2 * p["samples"], p["vars"])
    for f, g in zip(inputs[::2], inputs[1::2]):
        for i in range(1, p["vars"]):
            lhs = sch.modified_divided_difference(i, f * g)
            rhs = var(f"z{i + 1}") * sch.divided_difference(i, f) * g + sch.swap_vars(f, i) * \
                sch.modified_divided_difference(i, g)
            cases.append(_case({"i": i, "f": str(f), "g": str(g)}, lhs, rhs))
    return cases


@register("dd_relation", {"schubert"}, {"samples": 4, "vars": 3},
          summary="both rewritings of D_i through the ordinary divided difference")
def _dd_relation(p, rng):
    cases = []
    for f in _random_inputs(rng, p["samples"], p["vars"]):
        for i in range(1, p["vars"]):
            d = sch.modified_divided_difference(i, f)
            a = sch.modified_via_partial_conjugation(i, f)
            b = sch.modified_via_partial_sum(i, f)
            cases.append(_case({"i": i, "f": str(f)}, d, a, d == a == b))
    return cases


@register("dd_relopprod", {"schubert"}, {"samples": 4, "vars": 4},
          summary="D_i D_{i+1} D_i as a six-term combination of ordinary divided differences")
def _dd_relopprod(p, rng):
    cases = []
    for f in _random_inputs(rng, p["samples"], p["vars"]):
        for i in range(1, p["vars"] - 1):
            cases.append(_case({"i": i, "f": str(f)}, sch.modified_word((i, i + 1, i), f),
                               sch.braid_triple_expansion(i, f)))
    return cases


def _reduced_words_up_to(m, max_len):
    seen = set()
    for w in permutations(range(1, m + 1)):
        for word in sch.reduced_words(sch.Permutation(w)):
            if 0 < len(word) <= max_len:
                seen.add(word)
    return sorted(seen, key=lambda x: (len(x), x))


@register("dd_c_recursion", {"schubert"}, {"m": 4, "max_len": 4, "samples": 1},
          summary="expansion coefficients c(I, J) reproduce D_I on random inputs")
def _dd_c_recursion(p, rng):
    cases = []
    names = [f"z{k}" for k in range(1, p["m"] + 1)]
    for I in _reduced_words_up_to(p["m"], p["max_len"]):
        exp = sch.expand_D_in_partial(I, p["m"])
        for _ in range(p["samples"]):
            f = sch.random_laurent(names, rng)
            cases.append(_case({"I": list(I), "f": str(f), "terms": len(exp)}, sch.apply_expansion(exp, f),
                               sch.modified_word(I, f)))
    return cases


@register("dd_yb", {"schubert"}, {"samples": 3, "series_degree": 3},
          summary="Yang-Baxter relation for R_i(u) built from D_i")
def _dd_yb(p, rng):
    cases = []
    for f in _random_inputs(rng, p["samples"], 3):
        r = sch.yb_element_check(1, f, "symbol")
        cases.append(_case({"mode": "symbol", "f": str(f)}, r["lhs"], r["rhs"], r["equal"]))
    r = sch.yb_element_check(1, var("z1"), "series", p["series_degree"])
    cases.append(_case({"mode": "series", "degree": p["series_degree"], "f": "z1"}, r["lhs"], r["rhs"], r["equal"]))
    return cases


@register("schubert_words", {"schubert"}, {"m_values": [3, 4]},
          summary="modified and classical Schubert polynomials do not depend on the chain to w_0")
def _schubert_words(p, rng):
    cases = []
    for m in p["m_values"]:
        for w in permutations(range(1, m + 1)):
            chains = sch.chains_to_longest(sch.Permutation(w))
            for modified in (True, False):
                vals = {str(sch.schubert_poly(w, modified, c)) for c in chains}
                cases.append(_case({"w": list(w), "modified": modified, "chains": len(chains)},
                                   f"{len(vals)} distinct", "1 distinct", len(vals) == 1))
    return cases


@register("nonneg", {"schubert"}, {"m_values": [3, 4]},
          summary="modified Schubert polynomials have nonnegative coefficients")
def _nonneg(p, rng):
    cases = []
    for m in p["m_values"]:
        for w in permutations(range(1, m + 1)):
            poly = sch.schubert_poly(w)
            cases.append(_case({"w": list(w)}, poly, "nonnegative coefficients", sch.has_nonnegative_coefficients(poly)))
    return cases


# ---- generic-q entries -----------------------------------------------------------------
def _wtrace_cases(kind, p):
    cases = []
    for m in range(0, p["m_max"] + 1):
        for n in range(0, p["n_max"] + 1):
            if m + n == 0:
                continue
            zs, ws = _vars("z", m), _vars("w", n)
            word = x_word(3, [3] * m + [1] * n, zs + ws, GENERIC)
            lhs = weighted_trace(word, TraceWeights.for_rank(3, kind), p["cap"])
            rhs = oracles.weighted_trace_rhs(3, m, n, kind, p["cap"], p["form"])
            cases.append(_case({"N": 3, "m": m, "n": n, "cap": p["cap"], "form": p["form"]}, lhs, rhs))
    return cases


@register("wtrace_A", {"generic", "lattice", "trace"}, {"m_max": 3, "n_max": 3, "cap": 3, "form": "corrected"},
          summary="Tr^A of X_3^m X_1^n as a truncated series")
def _wtrace_a(p, rng):
    return _wtrace_cases("A", p)


@register("wtrace_B", {"generic", "lattice", "trace"}, {"m_max": 3, "n_max": 3, "cap": 3, "form": "corrected"},
          summary="Tr^B of X_3^m X_1^n as a truncated series")
def _wtrace_b(p, rng):
    return _wtrace_cases("B", p)


@register("wtrace_special", {"generic", "lattice"}, {"m_max": 3, "n_max": 3},
          summary="vacuum value of X_3^m X_1^n, exact in q")
def _wtrace_special(p, rng):
    cases = []
    for m in range(0, p["m_max"] + 1):
        for n in range(0, p["n_max"] + 1):
            zs, ws = _vars("z", m), _vars("w", n)
            lhs = vacuum_expectation(x_word(3, [3] * m + [1] * n, zs + ws, GENERIC))
            cases.append(_case({"m": m, "n": n}, lhs, oracles.wtrace_special_rhs(m, n)))
    return cases


@register("qloop_general", {"generic", "lattice"}, {"ell_max": 3, "n_max": 3, "occ_max": 2},
          summary="dual expectations of Y columns against the disjoint-column sum")
def _qloop_general(p, rng):
    cases = []
    for ell in range(1, p["ell_max"] + 1):
        for n in range(1, p["n_max"] + 1):
            for bra in product(range(p["occ_max"] + 1), repeat=ell):
                if sum(bra) > n:
                    continue
                lhs = dual_expectation(bra, y_word(ell, n))
                cases.append(_case({"ell": ell, "n": n, "bra": list(bra)}, lhs, oracles.qloop_general_rhs(bra, n)))
    return cases


@register("qloop_binary", {"generic", "lattice"}, {"ell_max": 5, "n_max": 3},
          summary="0/1 bras give the q-deformed loop elementary functions")
def _qloop_binary(p, rng):
    cases = []
    for ell in range(1, p["ell_max"] + 1):
        for n in range(1, p["n_max"] + 1):
            for bits in product((0, 1), repeat=ell):
                if sum(bits) > n:
                    continue
                lhs = dual_expectation(bits, y_word(ell, n))
                cases.append(_case({"ell": ell, "n": n, "bra": list(bits)}, lhs, oracles.qloop_binary_rhs(bits, n)))
    return cases


@register("qloop_eqvars", {"generic", "lattice"}, {"ell_max": 4, "n_max": 4},
          summary="equal colour variables give [m]_q! e_m")
def _qloop_eqvars(p, rng):
    cases = []
    for ell in range(1, p["ell_max"] + 1):
        for n in range(1, p["n_max"] + 1):
            collapse = {grid_variable("z", k, j): var(f"z{k}") for k in range(1, n + 1) for j in range(1, ell + 1)}
            for bits in product((0, 1), repeat=ell):
                m = sum(bits)
                lhs = dual_expectation(bits, y_word(ell, n)).substitute(collapse)
                cases.append(_case({"ell": ell, "n": n, "bra": list(bits)}, lhs, oracles.qloop_eqvars_rhs(m, n)))
    return cases


@register("vac_action", {"q0", "lattice"}, {"n_max": 5},
          summary="X_n(z)|vac> = z^n |vac> and <vac|X_0(z) = <vac|")
def _vac_action(p, rng):
    cases = []
    z = var("z")
    for n in range(1, p["n_max"] + 1):
        nl = len(sites(n))
        vac = vacuum(nl)
        got = build_x_operator(n, n, "z").apply({vac: LaurentPoly.const(1)})
        cases.append(_case({"n": n, "side": "ket"}, str({str(k): str(v) for k, v in got.items()}),
                           str({str(vac): str(z**n)}), got == {vac: z**n}))
        x0 = build_x_operator(n, 0, "z")
        bad = []
        for s in basis_states(nl, 1 if n > 3 else 2):
            coef = x0.apply({s: LaurentPoly.const(1)}).get(vac, LaurentPoly.const(0))
            want = LaurentPoly.const(1 if s == vac else 0)
            if coef != want:
                bad.append(s)
        cases.append(_case({"n": n, "side": "bra"}, f"{len(bad)} mismatched rows", "0 mismatched rows", not bad))
    return cases


# ---- conjectures -------------------------------------------------------------------------
@register("conj_commute", {"generic", "lattice"}, {"ranks": [3, 4], "occupation": {"3": 2, "4": 1}},
          conjecture=True, summary="[X_j(z), X_j(w)] = 0 for the generic-q operators")
def _conj_commute(p, rng):
    cases = []
    for N in p["ranks"]:
        nl = len(sites(N))
        states = basis_states(nl, int(p["occupation"].get(str(N), 1)))
        for j in range(N + 1):
            a = build_x_operator(N, j, "z", GENERIC) @ build_x_operator(N, j, "w", GENERIC)
            b = build_x_operator(N, j, "w", GENERIC) @ build_x_operator(N, j, "z", GENERIC)
            res = a.residual_on(b, states)
            cases.append(_case({"N": N, "j": j, "states": len(states)}, f"{len(res)} nonzero commutator entries",
                               "0 nonzero commutator entries", not res))
    return cases


@register("conj_dd", {"schubert"}, {"n_max": 3, "max_degree": 4, "shifted_i": [2]}, conjecture=True,
          summary="staircase product of D_i against a conjugated product of d_i")
def _conj_dd(p, rng):
    cases = []
    for n in range(1, p["n_max"] + 1):
        r = sch.conjecture_D_product(n, 1, p["max_degree"], "literal", seed=rng.randint(0, 10**6))
        cases.append(_case({"n": n, "i": 1, "reading": "literal", "max_degree": p["max_degree"],
                            "inputs": r["inputs_checked"]},
                           "agree" if r["agree"] else str(r["counterexample"]), "agree", r["agree"]))
        for i in p["shifted_i"]:
            r = sch.conjecture_D_product(n, i, p["max_degree"] - 1, "shifted", seed=rng.randint(0, 10**6))
            cases.append(_case({"n": n, "i": i, "reading": "shifted", "max_degree": p["max_degree"] - 1,
                                "inputs": r["inputs_checked"]},
                               "agree" if r["agree"] else str(r["counterexample"]), "agree", r["agree"]))
    return cases


# ---- running ---------------------------------------------------------------------------------
SUITE_ALIASES = {
    "q0-only": lambda c: "generic" not in c.tags,
    "schubert-suite": lambda c: "schubert" in c.tags,
}


def select(suite: str):
    """Registry keys matched by a suite name: 'all', an alias, a tag, or an entry name."""
    if suite == "all":
        return sorted(REGISTRY)
    if suite in SUITE_ALIASES:
        return sorted(k for k, c in REGISTRY.items() if SUITE_ALIASES[suite](c))
    if suite in REGISTRY:
        return [suite]
    hits = sorted(k for k, c in REGISTRY.items() if suite in c.tags)
    if not hits:
        raise KeyError(f"unknown suite or check {suite!r}")
    return hits


def verify(name: str, params: dict | None = None, seed: int = 1, timing: bool = False) -> dict:
    """Run one registry entry; failures are recorded, never raised."""
    check = REGISTRY[name]
    merged = dict(check.defaults)
    merged.update(params or {})
    rng = random.Random(f"{seed}:{name}")
    start = time.perf_counter()
    try:
        cases = check.fn(merged, rng)
        error = None
    except TetraError as exc:
        cases, error = [], f"{type(exc).__name__}: {exc}"
    ok = error is None and all(c["ok"] for c in cases)
    if not ok:
        status = FAIL
    else:
        status = EVIDENCE if check.conjecture else PASS
    report = {
        "name": name,
        "tags": sorted(check.tags),
        "summary": check.summary,
        "params": merged,
        "seed": seed,
        "status": status,
        "cases": cases,
        "n_cases": len(cases),
        "n_failed": sum(1 for c in cases if not c["ok"]),
    }
    if error:
        report["error"] = error
    if timing:
        report["runtime_s"] = round(time.perf_counter() - start, 3)
    return report


def run_suite(suite: str = "all", seed: int = 1, timing: bool = False, params: dict | None = None) -> dict:
    names = select(suite)
    entries = [verify(n, (params or {}).get(n), seed, timing) for n in names]
    counts = {s: sum(1 for e in entries if e["status"] == s) for s in (PASS, FAIL, EVIDENCE)}
    return {"suite": suite, "seed": seed, "entries": entries, "counts": counts, "ok": counts[FAIL] == 0}
