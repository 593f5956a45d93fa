"""Divided differences, modified Schubert polynomials and related operator checks.

Two operators act on Laurent polynomials in z1, ..., zm:

    d_i f = (f - s_i f) / (z_i - z_{i+1})
    D_i f = (z_{i+1}/z_i) (z_i f - z_{i+1} s_i f) / (z_i - z_{i+1})

Operator words follow the composition convention D_I = D_{i_k} ... D_{i_1},
so i_1 acts first.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .errors import NotReduced, OutOfRange
from .exactalg import LaurentPoly, laurent_div_exact, var, var_index


def zvar(i: int, base: str = "z") -> str:
    return f"{base}{i}"


# ---- permutations ------------------------------------------------------------
class Permutation(tuple):
    """One-line notation [w(1), ..., w(m)]."""

    def __new__(cls, one_line):
        w = tuple(int(x) for x in one_line)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise OutOfRange(f"{list(w)} is not a permutation of 1..{len(w)}")
        return super().__new__(cls, w)

    @classmethod
    def identity(cls, m):
        return cls(range(1, m + 1))

    @classmethod
    def longest(cls, m):
        return cls(range(m, 0, -1))

    @property
    def size(self):
        return len(self)

    def length(self) -> int:
        return sum(1 for a in range(len(self)) for b in range(a + 1, len(self)) if self[a] > self[b])

    def right_mult(self, i: int):
        """w s_i: swap positions i and i+1."""
        w = list(self)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(w)

    def left_mult(self, i: int):
        """s_i w: swap the values i and i+1."""
        return Permutation(i + 1 if x == i else i if x == i + 1 else x for x in self)

    def right_descents(self):
        return [i for i in range(1, len(self)) if self[i - 1] > self[i]]

    def __str__(self):
        return "[" + ",".join(map(str, self)) + "]"


def product_of(word, m: int) -> Permutation:
    """s_{a_1} s_{a_2} ... s_{a_k} in S_m."""
    w = Permutation.identity(m)
    for a in word:
        w = w.right_mult(a)
    return w


def is_reduced(word, m: int) -> bool:
    return product_of(word, m).length() == len(word)


def reduced_words(w: Permutation):
    """All reduced words of w, obtained by peeling right descents."""
    return _reduced_words(tuple(w))


@lru_cache(maxsize=None)
def _reduced_words(w):
    perm = Permutation(w)
    if perm.length() == 0:
        return ((),)
    out = []
    for d in perm.right_descents():
        for word in _reduced_words(tuple(perm.right_mult(d))):
            out.append(word + (d,))
    return tuple(sorted(set(out)))


def chains_to_longest(w: Permutation):
    """Index sequences (i_1, ..., i_k) with w s_{i_1} ... s_{i_k} = w_0, each step raising the length.

    These are exactly the reduced words of w^{-1} w_0.
    """
    m = len(w)
    w0 = Permutation.longest(m)
    inv = [0] * m
    for pos, val in enumerate(w):
        inv[val - 1] = pos + 1
    u = Permutation(inv[w0[j] - 1] for j in range(m))  # w^{-1} w_0
    return reduced_words(u)


# ---- operators ------------------------------------------------------------
def _check_index(i):
    if i < 1:
        raise OutOfRange("divided differences are indexed from 1")


def swap_vars(f: LaurentPoly, i: int, base: str = "z") -> LaurentPoly:
    return f.swap(zvar(i, base), zvar(i + 1, base))


def divided_difference(i: int, f, base: str = "z") -> LaurentPoly:
    """(f - s_i f) / (z_i - z_{i+1})."""
    _check_index(i)
    f = LaurentPoly.coerce(f)
    diff = f - swap_vars(f, i, base)
    if diff.is_zero():
        return diff
    return laurent_div_exact(diff, var(zvar(i, base)) - var(zvar(i + 1, base)))


def modified_divided_difference(i: int, f, base: str = "z") -> LaurentPoly:
    """(z_{i+1}/z_i) (z_i f - z_{i+1} s_i f) / (z_i - z_{i+1})."""
    _check_index(i)
    f = LaurentPoly.coerce(f)
    zi, zj = var(zvar(i, base)), var(zvar(i + 1, base))
    num = zi * f - zj * swap_vars(f, i, base)
    if num.is_zero():
        return num
    return laurent_div_exact(num, zi - zj) * zj * zi**-1


def modified_via_partial_conjugation(i: int, f, base: str = "z") -> LaurentPoly:
    """D_i as (z_{i+1}/z_i) d_i z_i."""
    zi, zj = var(zvar(i, base)), var(zvar(i + 1, base))
    return zj * zi**-1 * divided_difference(i, zi * LaurentPoly.coerce(f), base)


def modified_via_partial_sum(i: int, f, base: str = "z") -> LaurentPoly:
    """D_i as (z_{i+1}/z_i)(1 + z_{i+1} d_i)."""
    f = LaurentPoly.coerce(f)
    zi, zj = var(zvar(i, base)), var(zvar(i + 1, base))
    return zj * zi**-1 * (f + zj * divided_difference(i, f, base))


def apply_word(op, word, f, base: str = "z") -> LaurentPoly:
    """op_{i_k} ... op_{i_1} f for word = (i_1, ..., i_k)."""
    f = LaurentPoly.coerce(f)
    for i in word:
        f = op(i, f, base)
    return f


def partial_word(word, f, base: str = "z"):
    return apply_word(divided_difference, word, f, base)


def modified_word(word, f, base: str = "z"):
    return apply_word(modified_divided_difference, word, f, base)


# ---- Schubert polynomials ---------------------------------------------------
def staircase_monomial(m: int, base: str = "z") -> LaurentPoly:
    return LaurentPoly.monomial(1, {zvar(k, base): m - k for k in range(1, m)})


def schubert_poly(w, modified: bool = True, word=None, base: str = "z") -> LaurentPoly:
    """Classical (modified=False) or modified Schubert polynomial of w.

    Starting from z1^{m-1} ... z_{m-1} at w_0, apply D_i (or d_i) along a
    chain w_0 -> ... -> w, so that the result is op_{i_1} ... op_{i_k} applied
    to the seed for a chain (i_1, ..., i_k) from ``chains_to_longest``.
    ``word`` picks the chain explicitly; any valid chain gives the same answer.
    """
    w = Permutation(w)
    m = len(w)
    chains = chains_to_longest(w)
    if word is None:
        word = chains[0]
    else:
        word = tuple(word)
        if word not in chains:
            raise NotReduced(f"{word} is not a descent chain from w_0 to {w}")
    # i_k acts first
    op = modified_divided_difference if modified else divided_difference
    f = staircase_monomial(m, base)
    for i in reversed(word):
        f = op(i, f, base)
    return f


# ---- D in terms of d -----------------------------------------------------------
def expand_D_in_partial(I, m: int | None = None, base: str = "z") -> dict:
    """Coefficients c(I, J) with D_I = sum_J c(I, J) d_J.

    Subwords J with the same product permutation give the same operator d_J,
    so the coefficients are merged per permutation.  Keys are the first
    subword J of I (in application order j_1, ..., j_l) found for each
    permutation.
    """
    I = tuple(I)
    m = m if m is not None else (max(I) + 1 if I else 1)
    if not is_reduced(I, m):
        raise NotReduced(f"{I} is not a reduced word in S_{m}")
    one = LaurentPoly.const(1)
    # key: permutation u with d_J = d_u; value: (J, coefficient)
    coeffs = {Permutation.identity(m): ((), one)}
    for i in I:
        zi, zj = var(zvar(i, base)), var(zvar(i + 1, base))
        lin, quad = zj * zi**-1, zj * zj * zi**-1
        nxt = {}
        for u, (J, c) in coeffs.items():
            stay = lin * c + quad * divided_difference(i, c, base)
            _accumulate(nxt, u, J, stay)
            up = u.left_mult(i)
            if up.length() == u.length() + 1:
                _accumulate(nxt, up, J + (i,), quad * swap_vars(c, i, base))
        coeffs = {u: v for u, v in nxt.items() if not v[1].is_zero()}
    return {J: c for J, c in coeffs.values()}


def _accumulate(table, key, J, c):
    if key in table:
        J0, c0 = table[key]
        table[key] = (J0, c0 + c)
    else:
        table[key] = (J, c)


def apply_expansion(expansion: dict, f, base: str = "z") -> LaurentPoly:
    total = LaurentPoly.const(0)
    for J, c in expansion.items():
        total = total + c * partial_word(J, f, base)
    return total


def braid_triple_expansion(i: int, f, base: str = "z") -> LaurentPoly:
    """The six-term closed form for D_i D_{i+1} D_i, applied to f."""
    z1, z2, z3 = (var(zvar(i + r, base)) for r in range(3))
    d = lambda word: partial_word(word, f, base)  # noqa: E731
    # d_a d_b means d_b acts first
    inner = (
        LaurentPoly.coerce(f)
        + (z2 + z3) * d((i,))
        + z3 * d((i + 1,))
        + z2 * z3 * d((i + 1, i))
        + z3 * z3 * d((i, i + 1))
        + z2 * z3 * z3 * d((i, i + 1, i))
    )
    return z3 * z3 * z1**-2 * inner


# ---- Yang-Baxter element ----------------------------------------------------------
def _r_apply(i, e, f, base):
    """R_i with e standing for exp(u): f + (1 - e) D_i f."""
    return f + (1 - e) * modified_divided_difference(i, f, base)


def _exp_series(u: str, degree: int) -> LaurentPoly:
    term, total = LaurentPoly.const(1), LaurentPoly.const(1)
    for k in range(1, degree + 1):
        term = term * var(u) * Fraction(1, k)
        total = total + term
    return total


def _exp_sum(u, v, degree):
    """exp(u+v) truncated at total degree ``degree``."""
    s = var(u) + var(v)
    term, total = LaurentPoly.const(1), LaurentPoly.const(1)
    for k in range(1, degree + 1):
        term = term * s * Fraction(1, k)
        total = total + term
    return total


def _truncate(p: LaurentPoly, names, degree):
    """Drop terms whose total degree in ``names`` exceeds ``degree``."""
    idx = [var_index(n) for n in names]
    return LaurentPoly._raw({m: c for m, c in p._t.items() if sum(m[j] for j in idx if j < len(m)) <= degree})


def yb_element_check(i: int = 1, f=None, mode: str = "symbol", degree: int = 3, u: str = "u", v: str = "v",
                     base: str = "z") -> dict:
    """Check R_i(u) R_{i+1}(u+v) R_i(v) f = R_{i+1}(v) R_i(u+v) R_{i+1}(u) f.

    ``mode='symbol'`` uses formal symbols E_u, E_v with E_{u+v} = E_u E_v;
    ``mode='series'`` expands exp to ``degree`` and compares truncations.
    """
    if f is None:
        f = var(zvar(i, base))
    f = LaurentPoly.coerce(f)
    if mode == "symbol":
        eu, ev = var("E" + u), var("E" + v)
        euv = eu * ev
    elif mode == "series":
        eu, ev, euv = _exp_series(u, degree), _exp_series(v, degree), _exp_sum(u, v, degree)
    else:
        raise ValueError("mode is 'symbol' or 'series'")
    lhs = _r_apply(i, eu, _r_apply(i + 1, euv, _r_apply(i, ev, f, base), base), base)
    rhs = _r_apply(i + 1, ev, _r_apply(i, euv, _r_apply(i + 1, eu, f, base), base), base)
    if mode == "series":
        lhs, rhs = _truncate(lhs, (u, v), degree), _truncate(rhs, (u, v), degree)
    return {"mode": mode, "degree": degree if mode == "series" else None, "input": str(f),
            "lhs": str(lhs), "rhs": str(rhs), "equal": lhs == rhs}


# ---- conjecture tester ------------------------------------------------------------
def _shifted_index(n, i, j, reading):
    return n + 2 - j if reading == "literal" else n + 2 * i - j


def conjecture_sides(n: int, i: int, f, reading: str = "literal", base: str = "z"):
    """Both sides of the staircase D-product conjecture applied to f.

    ``reading='literal'`` uses the conjugating variables z_{n+2-j}; the
    ``'shifted'`` reading uses z_{n+2i-j}, which agrees for i = 1 and keeps
    the indices inside i..i+n for larger i.
    """
    if reading not in ("literal", "shifted"):
        raise ValueError("reading is 'literal' or 'shifted'")
    word = staircase_word(n, i)
    f = LaurentPoly.coerce(f)
    lhs = modified_word(word, f, base)
    inner, outer = LaurentPoly.const(1), LaurentPoly.const(1)
    for j in range(i + 1, n + i + 1):
        idx = _shifted_index(n, i, j, reading)
        if idx < 1:
            raise OutOfRange(f"conjugating variable z_{idx} does not exist for i={i}")
        inner = inner * var(zvar(idx, base), j - i)
        outer = outer * var(zvar(j, base), j - i) * var(zvar(idx, base), -(j - i))
    rhs = outer * partial_word(word, inner * f, base)
    return lhs, rhs


def staircase_word(n: int, i: int):
    """Application order of D_i (D_{i+1} D_i) ... (D_{i+n-1} ... D_i): rightmost factor first."""
    groups = [tuple(range(i + r, i - 1, -1)) for r in range(n)]
    # operator text reads left to right; composition applies the last group first
    seq = []
    for g in reversed(groups):
        seq.extend(reversed(g))
    return tuple(seq)


def monomials(names, max_degree: int, min_exp: int = 0):
    """Monomials in ``names`` with exponents >= min_exp and total degree <= max_degree."""
    names = list(names)

    def rec(k, left):
        if k == len(names):
            yield {}
            return
        for e in range(min_exp, left + 1):
            for rest in rec(k + 1, left - max(e, 0)):
                d = dict(rest)
                d[names[k]] = e
                yield d

    for d in rec(0, max_degree):
        yield LaurentPoly.monomial(1, d)


def random_laurent(names, rng: random.Random, terms: int = 4, lo: int = -2, hi: int = 3) -> LaurentPoly:
    p = LaurentPoly.const(0)
    for _ in range(terms):
        exps = {n: rng.randint(lo, hi) for n in names}
        p = p + LaurentPoly.monomial(rng.randint(-5, 5) or 1, exps)
    return p


def conjecture_D_product(n: int, i: int = 1, max_degree: int = 4, reading: str = "literal", seed: int = 1,
                         random_samples: int = 3, base: str = "z") -> dict:
    """Compare both sides on monomials up to ``max_degree`` and on seeded random Laurent polynomials."""
    if n < 1 or i < 1:
        raise OutOfRange("need n >= 1 and i >= 1")
    names = [zvar(k, base) for k in range(1, n + i + 1)]
    rng = random.Random(seed)
    checked, counterexample = 0, None
    inputs = list(monomials(names, max_degree))
    inputs += [random_laurent(names, rng) for _ in range(random_samples)]
    for f in inputs:
        lhs, rhs = conjecture_sides(n, i, f, reading, base)
        checked += 1
        if lhs != rhs:
            counterexample = {"input": str(f), "lhs": str(lhs), "rhs": str(rhs)}
            break
    return {"n": n, "i": i, "reading": reading, "max_degree": max_degree, "inputs_checked": checked,
            "agree": counterexample is None, "counterexample": counterexample}


def has_nonnegative_coefficients(p: LaurentPoly) -> bool:
    return all(c >= 0 for c in p.coefficients())
