"""Symmetric-function oracles: Schur, elementary, loop elementary, Kostka numbers.

Nothing here touches the lattice code, so these functions can serve as
independent right-hand sides for the partition-function identities.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import prod

from .errors import DegeneratePoint, OutOfRange
from .exactalg import LaurentPoly, laurent_div_exact, var


# ---- partitions ------------------------------------------------------------
def normalize_partition(parts):
    """Strip trailing zeros; reject sequences that are not weakly decreasing."""
    parts = list(parts)
    if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise OutOfRange(f"{parts} is not a partition")
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def block_sequence(blocks):
    """Expand [(exponent, multiplicity), ...] into the staircase sequence."""
    seq = []
    for lam, mult in blocks:
        if mult < 0:
            raise OutOfRange("block multiplicity must be nonnegative")
        seq.extend([lam] * mult)
    return tuple(seq)


def partitions(total: int, max_parts: int | None = None, max_part: int | None = None):
    """Partitions of ``total`` in reverse lexicographic order."""
    max_part = total if max_part is None else max_part

    def rec(rest, cap, left):
        if rest == 0:
            yield ()
            return
        if left == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first, None if left is None else left - 1):
                yield (first,) + tail

    yield from rec(total, max_part, max_parts)


def compositions(total: int, parts: int):
    """Weak compositions of ``total`` into ``parts`` nonnegative entries."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for tail in compositions(total - first, parts - 1):
            yield (first,) + tail


# ---- Schur polynomials ----------------------------------------------------
def _perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def alternant(exponents, variables) -> LaurentPoly:
    """det(z_i^{e_j}) by Leibniz expansion."""
    n = len(variables)
    if len(exponents) != n:
        raise OutOfRange("one exponent per variable")
    if len(set(exponents)) < n:
        return LaurentPoly.const(0)
    total = LaurentPoly.const(0)
    for p in permutations(range(n)):
        mono = LaurentPoly.monomial(_perm_sign(p), {variables[p[j]]: exponents[j] for j in range(n)})
        total = total + mono
    return total


@lru_cache(maxsize=4096)
def _schur_cached(seq, variables):
    n = len(variables)
    exps = tuple(seq[j] + n - 1 - j for j in range(n))
    num = alternant(exps, variables)
    if num.is_zero():
        return num
    # divide by the Vandermonde one linear factor at a time
    for a in range(n):
        for b in range(a + 1, n):
            num = laurent_div_exact(num, var(variables[a]) - var(variables[b]))
    return num


def schur_bialternant(lam, variables) -> LaurentPoly:
    """s_lam(variables) as the alternant quotient.

    ``lam`` may be any integer sequence no longer than ``variables``; it is
    zero-padded and the alternant ratio is taken literally, which returns
    the sign-normalized Schur function or zero for non-partitions.
    """
    variables = tuple(variables)
    lam = tuple(lam)
    if len(lam) > len(variables):
        if any(lam[len(variables):]):
            return LaurentPoly.const(0)
        lam = lam[: len(variables)]
    seq = lam + (0,) * (len(variables) - len(lam))
    return _schur_cached(seq, variables)


def schur_point(lam, points) -> Fraction:
    """s_lam at exact rational points via Gaussian elimination of both alternants."""
    pts = [Fraction(p) for p in points]
    n = len(pts)
    lam = tuple(lam)
    if len(lam) > n:
        if any(lam[n:]):
            return Fraction(0)
        lam = lam[:n]
    seq = lam + (0,) * (n - len(lam))
    if len(set(pts)) < n:
        raise DegeneratePoint("Schur evaluation via alternants needs distinct points")
    num = _det([[p ** (seq[j] + n - 1 - j) for j in range(n)] for p in pts])
    den = prod((pts[a] - pts[b] for a in range(n) for b in range(a + 1, n)), start=Fraction(1))
    return num / den


def _det(rows):
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


# ---- tableaux ------------------------------------------------------------
def _horizontal_strips(mu, size, max_len):
    """Partitions nu containing mu with nu/mu a horizontal strip of ``size`` cells."""
    mu = (list(mu) + [0])[:max_len]

    def rec(row, left, acc):
        if row == len(mu):
            if left == 0:
                yield tuple(x for x in acc if x)
            return
        cap = left if row == 0 else min(left, mu[row - 1] - mu[row])
        for add in range(cap, -1, -1):
            yield from rec(row + 1, left - add, acc + [mu[row] + add])

    yield from rec(0, size, [])


def semistandard_tableaux(lam, max_entry: int):
    """All SSYT of shape ``lam`` with entries <= max_entry, as tuples of rows."""
    lam = normalize_partition(lam)
    if len(lam) > max_entry:
        return []
    cells = [(r, c) for r, row in enumerate(lam) for c in range(row)]
    filling = {}
    out = []

    def rec(idx):
        if idx == len(cells):
            out.append(tuple(tuple(filling[(r, c)] for c in range(lam[r])) for r in range(len(lam))))
            return
        r, c = cells[idx]
        lo = 1
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, max_entry + 1):
            filling[(r, c)] = v
            rec(idx + 1)
        filling.pop((r, c), None)

    rec(0)
    return out


def schur_from_tableaux(lam, variables) -> LaurentPoly:
    """s_lam as the generating function of semistandard tableaux."""
    variables = list(variables)
    total = LaurentPoly.const(0)
    for t in semistandard_tableaux(lam, len(variables)):
        counts = {}
        for row in t:
            for v in row:
                counts[variables[v - 1]] = counts.get(variables[v - 1], 0) + 1
        total = total + LaurentPoly.monomial(1, counts)
    return total


def kostka(lam, alpha) -> int:
    """K_{lam, alpha}: the number of SSYT of shape lam and content alpha."""
    lam = normalize_partition(lam)
    alpha = [a for a in alpha]
    if any(a < 0 for a in alpha):
        raise OutOfRange("content must be nonnegative")
    if sum(lam) != sum(alpha):
        return 0
    # fill letters 1, 2, ... as successive horizontal strips
    states = {(): 1}
    for size in alpha:
        nxt = {}
        for mu, cnt in states.items():
            for nu in _horizontal_strips(mu, size, len(lam)):
                if len(nu) <= len(lam) and all(a <= b for a, b in zip(nu, lam)):
                    nxt[nu] = nxt.get(nu, 0) + cnt
        states = nxt
    return states.get(lam, 0)


# ---- elementary functions --------------------------------------------------
def elementary(k: int, variables) -> LaurentPoly:
    variables = list(variables)
    if k < 0 or k > len(variables):
        return LaurentPoly.const(0) if k != 0 else LaurentPoly.const(1)
    total = LaurentPoly.const(0)
    for combo in combinations(variables, k):
        total = total + LaurentPoly.monomial(1, {v: 1 for v in combo})
    return total


def grid_variable(base: str, i: int, color: int) -> str:
    """Registry name of the coloured variable z_i^{(color)}."""
    return f"{base}{i}_{color}"


def loop_color(a: int, r: int, ell: int) -> int:
    """Colour of the r-th factor (r = 0, 1, ...) starting from colour a, cyclic mod ell."""
    return (a - 1 + r) % ell + 1


def loop_elementary(k: int, a: int, ell: int, n: int, base: str = "z") -> LaurentPoly:
    """e_k^{(a)} = sum_{i_1 < ... < i_k} z_{i_1}^{(a)} z_{i_2}^{(a+1)} ... with colours mod ell."""
    if k < 0 or k > n:
        raise OutOfRange(f"need 0 <= k <= n, got k={k}, n={n}")
    total = LaurentPoly.const(0)
    for combo in combinations(range(1, n + 1), k):
        total = total + LaurentPoly.monomial(
            1, {grid_variable(base, i, loop_color(a, r, ell)): 1 for r, i in enumerate(combo)}
        )
    return total


def loop_elementary_paths(k: int, a: int, ell: int, n: int, base: str = "z") -> LaurentPoly:
    """Lattice-path sum for e_k^{(a)}.

    Paths run through columns 1..n, rising by at most one level per column;
    a rise from level h to h+1 in column i has weight z_i^{(colour of level h)}.
    Computed by dynamic programming over (column, level).
    """
    layer = {0: LaurentPoly.const(1)}
    for i in range(1, n + 1):
        nxt = {}
        for h, w in layer.items():
            nxt[h] = nxt.get(h, LaurentPoly.const(0)) + w
            if h < k:
                step = w * var(grid_variable(base, i, loop_color(a, h, ell)))
                nxt[h + 1] = nxt.get(h + 1, LaurentPoly.const(0)) + step
        layer = nxt
    return layer.get(k, LaurentPoly.const(0))


# ---- block symmetrization ----------------------------------------------------
def ordered_set_partitions(items, sizes):
    """Ordered splittings of ``items`` into consecutive blocks of the given sizes."""
    items = list(items)
    if not sizes:
        if not items:
            yield ()
        return
    first, rest = sizes[0], sizes[1:]
    for chosen in combinations(range(len(items)), first):
        block = tuple(items[i] for i in chosen)
        remaining = [x for i, x in enumerate(items) if i not in chosen]
        for tail in ordered_set_partitions(remaining, rest):
            yield (block,) + tail


def _check_distinct(points):
    if len(set(points)) != len(points):
        raise DegeneratePoint("evaluation points must be pairwise distinct")


def symmetrize_blocks(blocks, eval_points) -> Fraction:
    """Hall-Littlewood-at-t=0 symmetrization of prod w_i^{lam_i}.

    ``blocks`` is a list of (size |z_i|, exponent lam_i).  The sum runs over
    ordered splittings (w_1, ..., w_m) of the points with |w_i| = |z_i| and
    weight prod_{j<k} prod_{a in w_k, b in w_j} (1 - a/b)^{-1}.
    """
    pts = [Fraction(p) for p in eval_points]
    _check_distinct(pts)
    sizes = [s for s, _ in blocks]
    if sum(sizes) != len(pts):
        raise OutOfRange("block sizes must add up to the number of points")
    total = Fraction(0)
    for split in ordered_set_partitions(pts, sizes):
        w = Fraction(1)
        for (_, lam), block in zip(blocks, split):
            for a in block:
                w *= a**lam
        for j in range(len(split)):
            for k in range(j + 1, len(split)):
                for a in split[k]:
                    for b in split[j]:
                        w /= 1 - a / b
        total += w
    return total


def pair_product(xs, ys, fn) -> Fraction:
    """prod over a in xs, b in ys of fn(a, b)."""
    out = Fraction(1)
    for a in xs:
        for b in ys:
            out *= fn(a, b)
    return out


def power_product(xs, e) -> Fraction:
    out = Fraction(1)
    for a in xs:
        out *= Fraction(a) ** e
    return out


def schur_at_ones(lam, n_vars: int) -> int:
    """s_lam(1^n) by the hook-content formula."""
    lam = normalize_partition(lam)
    if len(lam) > n_vars:
        return 0
    conj = [sum(1 for p in lam if p > c) for c in range(lam[0])] if lam else []
    value = Fraction(1)
    for r, row in enumerate(lam):
        for c in range(row):
            hook = (row - c - 1) + (conj[c] - r - 1) + 1
            value *= Fraction(n_vars + c - r, hook)
    return int(value)
