"""Stationary states of the multispecies TASEP on a ring.

Adjacent sites (i, i+1), including the wrap-around pair (L, 1), holding
species alpha > beta swap at unit rate.  The generator restricted to a sector
is built exactly and its kernel is solved by fraction-free elimination; the
matrix-product side evaluates plain traces of X-operators at z = 1.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import EmptySector, KernelDimensionError, OutOfRange
from .pfunc import plain_trace, x_word
from .symfun import schur_at_ones


@dataclass(frozen=True)
class TasepSector:
    """Species multiplicities (m_0, ..., m_n)."""

    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if any(x < 0 for x in self.m):
            raise EmptySector("multiplicities must be nonnegative")

    @property
    def species(self):
        return len(self.m) - 1

    @property
    def sites(self):
        return sum(self.m)

    def configs(self):
        """All configurations of the sector in lexicographic order."""
        counts = list(self.m)
        L = self.sites
        out = []

        def rec(prefix):
            if len(prefix) == L:
                out.append(tuple(prefix))
                return
            for s in range(len(counts)):
                if counts[s]:
                    counts[s] -= 1
                    prefix.append(s)
                    rec(prefix)
                    prefix.pop()
                    counts[s] += 1

        rec([])
        return out

    def sorted_config(self):
        """The weakly decreasing configuration n, ..., n, ..., 0."""
        return tuple(s for s in range(len(self.m) - 1, -1, -1) for _ in range(self.m[s]))

    def contains(self, config) -> bool:
        return tuple(config.count(s) for s in range(len(self.m))) == self.m and len(config) == self.sites


def sector_of(config) -> TasepSector:
    config = tuple(config)
    n = max(config, default=0)
    return TasepSector(tuple(config.count(s) for s in range(n + 1)))


def parse_config(text: str):
    """'3,0,0,2,1' or '30021' (single-digit species)."""
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise OutOfRange(f"cannot read configuration {text!r}") from None


def format_config(config) -> str:
    return "".join(map(str, config)) if all(s < 10 for s in config) else ",".join(map(str, config))


@dataclass
class RationalMatrix:
    configs: list
    rows: list  # rows[r][c] exact entries

    @property
    def size(self):
        return len(self.configs)

    def column_sums(self):
        return [sum(self.rows[r][c] for r in range(self.size)) for c in range(self.size)]


def _moves(config):
    L = len(config)
    for i in range(L):
        j = (i + 1) % L
        a, b = config[i], config[j]
        if a > b:
            new = list(config)
            new[i], new[j] = b, a
            yield tuple(new)


def build_generator(n: int, L: int, sector) -> RationalMatrix:
    """Generator H with H[tau][sigma] = rate sigma -> tau; columns sum to zero."""
    sector = sector if isinstance(sector, TasepSector) else TasepSector(sector)
    if sector.species != n or sector.sites != L:
        raise EmptySector(f"sector {sector.m} does not describe {n} species on {L} sites")
    if L < 2:
        raise EmptySector("the ring needs at least two sites")
    configs = sector.configs()
    if not configs:
        raise EmptySector(f"sector {sector.m} is empty")
    index = {c: k for k, c in enumerate(configs)}
    size = len(configs)
    rows = [[0] * size for _ in range(size)]
    for col, sigma in enumerate(configs):
        for tau in _moves(sigma):
            rows[index[tau]][col] += 1
            rows[col][col] -= 1
    return RationalMatrix(configs, rows)


def _kernel(rows):
    """Basis of the right kernel of an integer matrix by fraction-free row reduction."""
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((k for k in range(r, n_rows) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(n_rows):
            if k != r and m[k][c] != 0:
                a, b = m[r][c], m[k][c]
                m[k] = [a * x - b * y for x, y in zip(m[k], m[r])]
                g = reduce(gcd, m[k], 0)
                if g > 1:
                    m[k] = [x // g for x in m[k]]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for row, c in enumerate(pivots):
            vec[c] = Fraction(-m[row][f], m[row][c])
        basis.append(vec)
    return basis


def steady_state_kernel(gen: RationalMatrix, normalize_at=None) -> dict:
    """Kernel vector of the generator scaled to 1 at the weakly decreasing configuration."""
    basis = _kernel(gen.rows)
    if len(basis) != 1:
        raise KernelDimensionError(f"kernel has dimension {len(basis)}, expected 1")
    vec = basis[0]
    if normalize_at is None:
        normalize_at = tuple(sorted(gen.configs[0], reverse=True))
    normalize_at = tuple(normalize_at)
    try:
        scale = vec[gen.configs.index(normalize_at)]
    except ValueError:
        raise OutOfRange(f"{normalize_at} is not in the sector") from None
    return {c: v / scale for c, v in zip(gen.configs, vec)}


def steady_state(sector) -> dict:
    sector = sector if isinstance(sector, TasepSector) else TasepSector(sector)
    gen = build_generator(sector.species, sector.sites, sector)
    return steady_state_kernel(gen, sector.sorted_config())


def steady_state_trace(config, n: int | None = None, M_max: int = 12):
    """Tr(X_{s_1}(1) ... X_{s_L}(1)) over the q0 Fock spaces of rank n."""
    config = tuple(config)
    n = max(config) if n is None else n
    if set(range(n + 1)) - set(config):
        raise OutOfRange("every species 0..n must be present for the trace to be finite")
    word = x_word(n, config, [Fraction(1)] * len(config))
    value = plain_trace(word, M_max=M_max)
    return value.constant_term()


def closed_form_config(n: int, j: int, k: int, sizes) -> tuple:
    """(n^{m_n}, ..., (k+1)^{m_{k+1}}, (j-1)^{m_{j-1}}, ..., 0^{m_0}, k^{m_k}, ..., j^{m_j})."""
    sizes = tuple(sizes)
    if len(sizes) != n + 1:
        raise OutOfRange("one block size per species 0..n")
    if not 0 <= j <= k <= n:
        raise OutOfRange("need 0 <= j <= k <= n")
    order = list(range(n, k, -1)) + list(range(j - 1, -1, -1)) + list(range(k, j - 1, -1))
    return tuple(s for s in order for _ in range(sizes[s]))


def steady_closed_form(n: int, j: int, k: int, sizes) -> int:
    """s_{(k+1-j)^{|z_[k+1,n]|}}(1^{|z_[0,j-1]| + |z_[k+1,n]|})."""
    sizes = tuple(sizes)
    if len(sizes) != n + 1:
        raise OutOfRange("one block size per species 0..n")
    if k < j:
        raise OutOfRange("the closed form needs k >= j")
    top = sum(sizes[k + 1:])
    low = sum(sizes[:j])
    return schur_at_ones((k + 1 - j,) * top, low + top)


def rotation_classes(configs):
    seen, classes = set(), []
    for c in configs:
        if c in seen:
            continue
        cls = sorted({c[r:] + c[:r] for r in range(len(c))})
        seen.update(cls)
        classes.append(cls)
    return classes


def export_csv(vector: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["config", "value"])
    for c in sorted(vector):
        w.writerow([format_config(c), str(vector[c])])
    return buf.getvalue()
