"""Partition functions: vacuum and dual expectations, plain and weighted traces.

Words are evaluated right to left, starting from a basis ket, so only states
reachable from the seed are ever materialized.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import NotStabilized, OutOfRange, ParseError
from .exactalg import FormalSeries, LaurentPoly, q_pochhammer, var
from .fock import GENERIC, MODELS, Q0, sites
from .vertexmodel import build_x_ij, build_x_operator, build_y_operator, y_variable


# ---- words ---------------------------------------------------------------
@dataclass(frozen=True)
class XFactor:
    n: int
    i: int
    z: object = "z"

    def lines(self):
        return len(sites(self.n))

    def operator(self, model, M):
        return build_x_operator(self.n, self.i, self.z, model, M)

    def __str__(self):
        return f"X(n={self.n},i={self.i},z={self.z})"


@dataclass(frozen=True)
class XijFactor:
    n: int
    i: int
    j: int

    def lines(self):
        return len(sites(self.n))

    def operator(self, model, M):
        if model != Q0:
            raise ValueError("X_{i,j} exists only in the q0 model")
        return build_x_ij(self.n, self.i, self.j, M)

    def __str__(self):
        return f"Xij(n={self.n},i={self.i},j={self.j})"


@dataclass(frozen=True)
class YFactor:
    """Column k of Y_l^{(l)}; line j carries the variable ``{z}{k}_{j}``."""

    ell: int
    k: int
    z: str = "z"

    def lines(self):
        return self.ell

    def operator(self, model, M):
        if model != GENERIC:
            raise ValueError("Y columns exist only in the generic model")
        base = self.z
        return build_y_operator(self.ell, lambda j, k: y_variable(base, k, j), M)(self.k)

    def __str__(self):
        return f"Y(l={self.ell},k={self.k},z={self.z})"


@dataclass(frozen=True)
class OperatorWord:
    factors: tuple
    model: str = Q0
    n_lines: int = field(default=None)

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        counts = {f.lines() for f in self.factors}
        if len(counts) > 1:
            raise ValueError("all factors must act on the same Fock lines")
        if self.n_lines is None:
            object.__setattr__(self, "n_lines", counts.pop() if counts else 0)
        elif counts and counts != {self.n_lines}:
            raise ValueError("factor rank does not match n_lines")

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return " ".join(str(f) for f in self.factors)

    def rotated(self, r: int):
        r %= max(len(self.factors), 1)
        return OperatorWord(self.factors[r:] + self.factors[:r], self.model, self.n_lines)


def x_word(n: int, indices, variables, model: str = Q0) -> OperatorWord:
    """Word X_{i_1}(z_1) ... X_{i_m}(z_m)."""
    indices, variables = list(indices), list(variables)
    if len(indices) != len(variables):
        raise ValueError("one spectral variable per factor")
    return OperatorWord(tuple(XFactor(n, i, z) for i, z in zip(indices, variables)), model, len(sites(n)))


def y_word(ell: int, n_cols: int, base: str = "z") -> OperatorWord:
    """Y_l(z_1) ... Y_l(z_n) as a product of columns."""
    return OperatorWord(tuple(YFactor(ell, k, base) for k in range(1, n_cols + 1)), GENERIC, ell)


_FACTOR_RE = re.compile(r"(Xij|X|Y)\(([^)]*)\)")


def _spectral(value: str):
    if re.fullmatch(r"-?\d+(/\d+)?", value):
        return Fraction(value)
    return value


def parse_word(text: str, model: str = Q0) -> OperatorWord:
    """Parse 'X(n=3,i=2,z=z1) X(n=3,i=1,z=z2)', 'Xij(n=3,i=1,j=2)' or 'Y(l=5,k=1,z=z)'."""
    factors = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _FACTOR_RE.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse operator word at {text[pos:]!r}")
        kind, body = m.groups()
        args = {}
        for part in filter(None, (p.strip() for p in body.split(","))):
            if "=" not in part:
                raise ParseError(f"expected key=value in {part!r}")
            k, v = (s.strip() for s in part.split("=", 1))
            args[k] = v
        try:
            if kind == "X":
                factors.append(XFactor(int(args["n"]), int(args["i"]), _spectral(args.get("z", "z"))))
            elif kind == "Xij":
                factors.append(XijFactor(int(args["n"]), int(args["i"]), int(args["j"])))
            else:
                factors.append(YFactor(int(args["l"]), int(args["k"]), args.get("z", "z")))
        except KeyError as exc:
            raise ParseError(f"missing argument {exc} in {m.group(0)!r}") from None
        pos = m.end()
    return OperatorWord(tuple(factors), model)


# ---- evaluation -------------------------------------------------------------
def auto_cutoff(word: OperatorWord) -> int:
    """Each factor raises any occupation by at most one."""
    return len(word) + 1


def apply_word(word: OperatorWord, vec: dict, M=None, prune=None) -> dict:
    """Apply the factors right to left to ``vec``.

    ``prune(state, remaining)`` may discard intermediate states that cannot
    contribute to the final quantity.
    """
    ops = [f.operator(word.model, M) for f in word.factors]
    for idx in range(len(ops) - 1, -1, -1):
        vec = ops[idx].apply(vec)
        if prune is not None:
            vec = {s: c for s, c in vec.items() if not prune(s, idx)}
        if not vec:
            break
    return vec


def vacuum_expectation(word: OperatorWord) -> LaurentPoly:
    """<Omega| word |Omega> with the automatic cutoff."""
    vac = (0,) * word.n_lines
    M = auto_cutoff(word)

    def prune(s, remaining):
        return max(s, default=0) > remaining

    vec = apply_word(word, {vac: LaurentPoly.const(1)}, M, prune)
    return vec.get(vac, LaurentPoly.const(0))


def dual_expectation(bra, word: OperatorWord) -> LaurentPoly:
    """<<bra| word |Omega> with the normalized dual bra."""
    bra = tuple(bra)
    if len(bra) != word.n_lines:
        raise OutOfRange(f"bra has {len(bra)} lines, word acts on {word.n_lines}")
    vac = (0,) * word.n_lines
    M = max(auto_cutoff(word), max(bra, default=0))

    def prune(s, remaining):
        return any(abs(a - b) > remaining for a, b in zip(s, bra))

    vec = apply_word(word, {vac: LaurentPoly.const(1)}, M, prune)
    return vec.get(bra, LaurentPoly.const(0))


def diagonal_element(word: OperatorWord, state) -> LaurentPoly:
    """<<s| word |s> computed exactly (no truncation of intermediate states)."""
    state = tuple(state)

    def prune(s, remaining):
        return any(abs(a - b) > remaining for a, b in zip(s, state))

    vec = apply_word(word, {state: LaurentPoly.const(1)}, None, prune)
    return vec.get(state, LaurentPoly.const(0))


@dataclass
class TraceResult:
    value: LaurentPoly
    stabilized_at: int
    history: list


def _shell(n_lines, M):
    """States whose largest occupation is exactly M."""
    for s in product(range(M + 1), repeat=n_lines):
        if max(s, default=0) == M:
            yield s


def plain_trace(word: OperatorWord, M_start: int = 1, M_max: int = 12, with_meta: bool = False):
    """Tr(word) over the q0 Fock spaces, returned once two consecutive cutoffs agree."""
    if word.model != Q0:
        raise ValueError("plain traces are defined for the q0 model")
    if M_start < 0 or M_max < M_start:
        raise OutOfRange("need 0 <= M_start <= M_max")
    total = LaurentPoly.const(0)
    history = []
    for M in range(0, M_max + 1):
        shell = LaurentPoly.const(0)
        for s in _shell(word.n_lines, M):
            shell = shell + diagonal_element(word, s)
        total = total + shell
        if M >= M_start:
            history.append((M, total))
            if len(history) >= 2 and history[-2][1] == total:
                res = TraceResult(total, history[-2][0], history)
                return res if with_meta else total
    raise NotStabilized(f"trace of {word} did not stabilize up to cutoff {M_max}")


# ---- weighted traces -------------------------------------------------------
@dataclass(frozen=True)
class TraceWeights:
    """Per-line weight variables; ``kind`` 'A' uses t^m/(Q;Q)_m and 'B' adds Q^{m(m-1)/2}."""

    t: tuple
    Q: tuple
    kind: str = "A"

    def __post_init__(self):
        if self.kind not in ("A", "B"):
            raise ValueError("trace kind is 'A' or 'B'")
        if len(self.t) != len(self.Q):
            raise ValueError("one (t, Q) pair per line")

    @classmethod
    def for_rank(cls, n: int, kind: str = "A"):
        """Variables t{k}{l}, Q{k}{l} for every site (k, l) of D_n."""
        ss = sites(n)
        return cls(tuple(f"t{k}{l}" for k, l in ss), tuple(f"Q{k}{l}" for k, l in ss), kind)

    @property
    def capped(self):
        return frozenset(self.t) | frozenset(self.Q)

    def site_weight(self, line: int, m: int, cap: int) -> FormalSeries:
        t, Q = var(self.t[line]), var(self.Q[line])
        num = t**m
        if self.kind == "B":
            num = num * Q ** (m * (m - 1) // 2)
        den = FormalSeries(q_pochhammer(Q, Q, m), self.capped, cap)
        return FormalSeries(num, self.capped, cap) / den


def weighted_trace(word: OperatorWord, weights: TraceWeights, cap: int = 4) -> FormalSeries:
    """Tr^A or Tr^B of ``word`` as a series truncated at total degree ``cap`` in t and Q."""
    if word.model != GENERIC:
        raise ValueError("weighted traces are defined for the generic model")
    if len(weights.t) != word.n_lines:
        raise ValueError("weights must cover every Fock line")
    total = FormalSeries(0, weights.capped, cap)
    cache = {}
    for s in product(range(cap + 1), repeat=word.n_lines):
        if sum(s) > cap:
            continue
        diag = diagonal_element(word, s)
        if diag.is_zero():
            continue
        w = FormalSeries(1, weights.capped, cap)
        for line, m in enumerate(s):
            key = (line, m)
            if key not in cache:
                cache[key] = weights.site_weight(line, m, cap)
            w = w * cache[key]
        total = total + w * diag
    return total
