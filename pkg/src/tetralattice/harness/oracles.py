"""Closed-form right-hand sides, built only from exactalg and symfun.

None of these touch the lattice, so comparing them with partition functions
is an independent check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from ..exactalg import FormalSeries, LaurentPoly, q_binomial, q_factorial, q_pochhammer_series, var
from ..symfun import (
    elementary,
    grid_variable,
    ordered_set_partitions,
    pair_product,
    power_product,
    schur_bialternant,
    schur_point,
)


# ---- Schur-type vacuum expectations ---------------------------------------
def staircase_exponents(indices, sizes):
    """Exponents (i_k - m + k)^{|z_k|} for a strictly decreasing index word."""
    m = len(indices)
    return [i - m + k for k, (i, s) in enumerate(zip(indices, sizes), 1) for _ in range(s)]


def schur_corr_rhs(indices, blocks):
    """prod_k z_k^{m-k} s_lambda(z) for blocks of variable names."""
    m = len(indices)
    pre = LaurentPoly.const(1)
    for k, block in enumerate(blocks, 1):
        for z in block:
            pre = pre * var(z, m - k)
    flat = [z for block in blocks for z in block]
    return pre * schur_bialternant(staircase_exponents(indices, [len(b) for b in blocks]), flat)


def tensor_schur_rhs(dec, inc, zs, ws):
    """prod z_j^{k-j} prod w_j^{n_j} s_{(m_1-k+1, ..., m_k)}(z) for one decreasing and one increasing run."""
    k = len(dec)
    pre = LaurentPoly.const(1)
    for j, z in enumerate(zs, 1):
        pre = pre * var(z, k - j)
    for nj, w in zip(inc, ws):
        pre = pre * var(w, nj)
    lam = [dec[j - 1] - k + j for j in range(1, k + 1)]
    return pre * schur_bialternant(lam, zs)


def trace_fact_rhs(blocks):
    """prod_j z_j^j where blocks[j] lists the variables of X_j."""
    out = LaurentPoly.const(1)
    for j, block in enumerate(blocks):
        for z in block:
            out = out * var(z, j)
    return out


def tasep_probgen_rhs(n, j, k, blocks):
    """Prefactor times s_{(k+1-j)^{|z_[k+1,n]|}}(z_[0,j-1], z_[k+1,n])."""
    pre = LaurentPoly.const(1)
    for ell in range(k + 1, n + 1):
        for z in blocks[ell]:
            pre = pre * var(z, ell + j - k - 1)
    for ell in range(0, k + 1):
        for z in blocks[ell]:
            pre = pre * var(z, ell)
    top = [z for ell in range(k + 1, n + 1) for z in blocks[ell]]
    low = [z for ell in range(0, j) for z in blocks[ell]]
    return pre * schur_bialternant([k + 1 - j] * len(top), low + top)


# ---- symmetric-function identities at points ------------------------------
def _seq(blocks):
    return [e for e, s in blocks for _ in range(s)]


def _inv_diff(a, b):
    return 1 / (a - b)


def _inv_one_minus_ratio(a, b):
    return 1 / (1 - a / b)


def jlp_sides(m1, m2, s1, s2, pts):
    """Shuffle identity for two decreasing runs m1 (lower) and m2 (upper)."""
    k1, k2 = len(m1), len(m2)
    n1 = sum(s1)
    lhs_blocks = [(m2[j] - k1 - k2 + j + 1, s2[j]) for j in range(k2)]
    lhs_blocks += [(m1[j] - k1 + j + 1, s1[j]) for j in range(k1)]
    lhs = schur_point(_seq(lhs_blocks), pts)
    inner1 = _seq([(m1[j] - k1 + j + 1, s1[j]) for j in range(k1)])
    inner2 = _seq([(m2[j] + n1 - k1 - k2 + j + 1, s2[j]) for j in range(k2)])
    rhs = Fraction(0)
    for w1, w2 in ordered_set_partitions(pts, [n1, sum(s2)]):
        rhs += pair_product(w2, w1, _inv_diff) * schur_point(inner1, w1) * schur_point(inner2, w2)
    return lhs, rhs


def fnr_sides(n, sizes, idx, pts):
    """idx = (i_2, ..., i_m); sizes = (|z_1|, ..., |z_m|)."""
    m = len(sizes)
    inner = [(idx[k - 2] - m + k, sizes[k - 1]) for k in range(2, m + 1)]
    lhs = schur_point(_seq([(n - m + 1, sizes[0])] + inner), pts)
    rhs = Fraction(0)
    for w1, rest in ordered_set_partitions(pts, [sizes[0], sum(sizes[1:])]):
        rhs += schur_point(_seq(inner), rest) * power_product(w1, n + 1 - m + len(rest)) * pair_product(w1, rest, _inv_diff)
    return lhs, rhs


def _gm_exponents(idx, m, reading):
    ex = [idx[k - 1] - m + k for k in range(1, m)]
    if reading == "printed":
        ex[-1] = idx[-1] + 1
    return ex


def gm_sides(sizes, idx, pts, reading="derived"):
    """idx = (i_1, ..., i_{m-1}); the last block carries exponent 0."""
    m = len(sizes)
    ex = _gm_exponents(idx, m, reading)
    lhs = schur_point(_seq(list(zip(ex, sizes[:-1])) + [(0, sizes[-1])]), pts)
    shifted = _seq([(e + sizes[-1], s) for e, s in zip(ex, sizes[:-1])])
    rhs = Fraction(0)
    for wa, wm in ordered_set_partitions(pts, [sum(sizes[:-1]), sizes[-1]]):
        rhs += pair_product(wa, wm, _inv_diff) * schur_point(shifted, wa)
    return lhs, rhs


def unified_sides(n, sizes, idx, pts, reading="derived"):
    """idx = (i_2, ..., i_{m-1}); first block n-m+1, last block 0."""
    m = len(sizes)
    mid = [idx[k - 2] - m + k for k in range(2, m)]
    if reading == "printed" and mid:
        mid[-1] = idx[-1] + 1
    lhs_blocks = [(n - m + 1, sizes[0])] + list(zip(mid, sizes[1:-1])) + [(0, sizes[-1])]
    lhs = schur_point(_seq(lhs_blocks), pts)
    inner = _seq([(idx[k - 2] - m + k + 1, sizes[k - 1]) for k in range(2, m)])
    rhs = Fraction(0)
    for w1, wb, wm in ordered_set_partitions(pts, [sizes[0], sum(sizes[1:-1]), sizes[-1]]):
        t = pair_product(wb, w1, _inv_one_minus_ratio) * pair_product(wm, w1, _inv_one_minus_ratio)
        t *= pair_product(wm, wb, _inv_one_minus_ratio)
        t *= power_product(w1, n + 1 - m) / power_product(wb, 1)
        rhs += t * schur_point(inner, wb)
    return lhs, rhs


def symmetrized_commutation_weight(split, m):
    """1 / (prod_k w_k^{m-k} prod_{j<k} (1 - w_k/w_j)) for one splitting."""
    w = Fraction(1)
    for k, block in enumerate(split, 1):
        w /= power_product(block, m - k)
    for j in range(m):
        for k in range(j + 1, m):
            w *= pair_product(split[k], split[j], _inv_one_minus_ratio)
    return w


# ---- weighted traces ---------------------------------------------------------
def _e(k, xs):
    total = LaurentPoly.const(0)
    for combo in combinations(xs, k):
        p = LaurentPoly.const(1)
        for x in combo:
            p = p * x
        total = total + p
    return total


def weighted_trace_rhs(N, m, n, kind, cap, form="corrected", zbase="z", wbase="w"):
    """Closed form of Tr^A / Tr^B (X_N^m X_{N-2}^n) with weights t{j}{k}, Q{j}{k}.

    ``form='literal'`` follows the printed statement, where the inner
    factors carry -q^{2l} t and no alternating sign; ``'corrected'`` puts
    (-1)^l in front and q^{2l} t inside, which is what the derivation gives
    and what reduces to the q-deformed elementary corollary at t = Q = 0.
    """
    if form not in ("corrected", "literal"):
        raise ValueError("form is 'corrected' or 'literal'")
    if kind not in ("A", "B"):
        raise ValueError("kind is 'A' or 'B'")
    site_list = [(j, k) for j in range(1, N) for k in range(1, N - j + 1)]
    capped = frozenset(f"t{j}{k}" for j, k in site_list) | frozenset(f"Q{j}{k}" for j, k in site_list)
    S = lambda p: FormalSeries(p, capped, cap)  # noqa: E731
    q = var("q")

    def poch(arg, j, k):
        return q_pochhammer_series(arg, var(f"Q{j}{k}"), capped, cap)

    qn = q**n
    pre_terms = []
    for k in range(1, N - 1):
        pre_terms.append((qn * var(f"t1{k}"), 1, k))
        pre_terms.append((qn * var(f"t2{k}"), 2, k))
    for j, k in site_list:
        if j >= 3:
            pre_terms.append((var(f"t{j}{k}"), j, k))
    pre = S(1)
    for arg, j, k in pre_terms:
        pre = pre / poch(arg, j, k) if kind == "A" else pre * poch(-arg, j, k)

    zinv = [var(f"{zbase}{k}") ** -1 for k in range(1, m + 1)]
    ws = [var(f"{wbase}{k}") for k in range(1, n + 1)]
    t_last = var(f"t1{N - 1}")
    total = S(0)
    for i in range(min(m, n) + 1):
        inner = S(0)
        for ell in range(i + 1):
            c = q_binomial(i, ell, "q^2") * q ** (ell * (ell + 1))
            if form == "corrected":
                c = c * (-1) ** ell
                arg = q ** (2 * ell) * t_last
            else:
                arg = -(q ** (2 * ell)) * t_last
            if kind == "A":
                inner = inner + S(c) / poch(arg, 1, N - 1)
            else:
                inner = inner + S(c) * poch(-arg, 1, N - 1)
        total = total + S(_e(i, zinv) * _e(i, ws)) * inner
    return pre * total


def wtrace_special_rhs(m, n, zbase="z", wbase="w"):
    """(z_1...z_m)^{-1} sum_l prod_{k<=l}(1 - q^{2k}) e_{m-l}(z) e_l(w)."""
    zs = [f"{zbase}{k}" for k in range(1, m + 1)]
    ws = [f"{wbase}{k}" for k in range(1, n + 1)]
    q = var("q")
    total = LaurentPoly.const(0)
    for ell in range(0, min(m, n) + 1):
        c = LaurentPoly.const(1)
        for k in range(1, ell + 1):
            c = c * (1 - q ** (2 * k))
        total = total + c * elementary(m - ell, zs) * elementary(ell, ws)
    den = LaurentPoly.const(1)
    for z in zs:
        den = den * var(z, -1)
    return total * den


# ---- q-loop functions -------------------------------------------------------------
def qloop_general_rhs(bra, n, base="z"):
    """Sum over disjoint decreasing column choices with q^{s(j,k,p)} weights."""
    bra = tuple(bra)
    q = var("q")
    total = LaurentPoly.const(0)

    def rec(j, used, chosen):
        nonlocal total
        if j == len(bra):
            w = LaurentPoly.const(1)
            for jj, cols in enumerate(chosen):
                for col in cols:
                    s = sum(1 for p in range(jj) for c in chosen[p] if c > col)
                    w = w * var(grid_variable(base, col, jj + 1)) * q**s
            total = total + w
            return
        free = [c for c in range(1, n + 1) if c not in used]
        for cols in combinations(free, bra[j]):
            rec(j + 1, used | set(cols), chosen + [cols])

    rec(0, frozenset(), [])
    return total


def qloop_binary_rhs(bits, n, base="z"):
    """Sum over sigma in S_m and j_1 < ... < j_m of q^{Inv} prod z_{j_r}^{(sigma(k_r))}."""
    ks = [pos for pos, b in enumerate(bits, 1) if b]
    if any(b not in (0, 1) for b in bits):
        raise ValueError("binary bras only")
    q = var("q")
    total = LaurentPoly.const(0)
    for sigma in permutations(ks):
        inv = sum(1 for a in range(len(sigma)) for b in range(a + 1, len(sigma)) if sigma[a] > sigma[b])
        for cols in combinations(range(1, n + 1), len(ks)):
            mono = LaurentPoly.monomial(1, {grid_variable(base, c, s): 1 for c, s in zip(cols, sigma)})
            total = total + mono * q**inv
    return total


def qloop_eqvars_rhs(m, n, base="z"):
    """[m]_q! e_m(z_1, ..., z_n)."""
    return q_factorial(m, "q") * elementary(m, [f"{base}{k}" for k in range(1, n + 1)])


# ---- explicit rank-3 generic operators ---------------------------------------
# each term: (scalar text, {site: kind}); site operators on distinct sites commute
EXPLICIT_N3 = {
    0: [
        ("1", {}),
        ("z", {(1, 1): "APlus"}),
        ("z^2", {(1, 2): "APlus", (2, 1): "APlus"}),
        ("z", {(1, 2): "APlus", (2, 1): "APlus", (1, 1): "AMinus"}),
        ("-q*z", {(1, 2): "APlus", (1, 1): "Kdiag"}),
        ("z", {(2, 1): "APlus", (1, 1): "Kdiag"}),
    ],
    1: [
        ("1", {(1, 2): "APlus", (1, 1): "AMinus", (2, 1): "Kdiag"}),
        ("z", {(1, 2): "APlus", (2, 1): "Kdiag"}),
        ("1", {(1, 1): "Kdiag", (2, 1): "Kdiag"}),
    ],
    2: [
        ("1", {(1, 1): "APlus", (2, 1): "AMinus", (1, 2): "Kdiag"}),
        ("z^-1", {(2, 1): "AMinus", (1, 2): "Kdiag"}),
        ("1", {(1, 1): "Kdiag", (1, 2): "Kdiag"}),
    ],
    3: [
        ("1", {}),
        ("z^-1", {(1, 1): "APlus", (1, 2): "AMinus", (2, 1): "AMinus"}),
        ("z^-1", {(1, 1): "AMinus"}),
        ("z^-2", {(1, 2): "AMinus", (2, 1): "AMinus"}),
        ("z^-1", {(1, 2): "AMinus", (1, 1): "Kdiag"}),
        ("-q*z^-1", {(2, 1): "AMinus", (1, 1): "Kdiag"}),
    ],
}
