"""Bosonic Fock spaces on the triangular index set D_n.

Two oscillator algebras act on a single Fock line |m>:

* q = 0 model:  b+|m> = |m+1>,  b-|m> = |m-1> (|-1> = 0),  t|m> = delta_{m,0}|m>
* generic q:    a+|m> = |m+1>,  a-|m> = (1 - q^{2m})|m-1>,  k|m> = q^m |m>

The ket pairing is <m|m'> = delta_{m,m'} (q^2; q^2)_m, and the normalized dual
<<m| = <m| / (q^2; q^2)_m pairs to delta_{m,m'}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CutoffExceeded, OutOfRange
from .exactalg import LaurentPoly, q_pochhammer, var

Q0 = "q0"
GENERIC = "generic"
MODELS = (Q0, GENERIC)

ID, BPLUS, BMINUS, TPROJ, APLUS, AMINUS, KDIAG = "Id", "BPlus", "BMinus", "TProj", "APlus", "AMinus", "Kdiag"
Q0_KINDS = frozenset({ID, BPLUS, BMINUS, TPROJ})
GENERIC_KINDS = frozenset({ID, APLUS, AMINUS, KDIAG})
CREATION = frozenset({BPLUS, APLUS})


@lru_cache(maxsize=None)
def sites(n: int) -> tuple:
    """D_n = {(k, l) : k, l >= 1, k + l <= n} in lexicographic order."""
    if n < 0:
        raise OutOfRange("rank must be nonnegative")
    return tuple((k, l) for k in range(1, n) for l in range(1, n - k + 1))


@lru_cache(maxsize=None)
def site_position(n: int) -> dict:
    return {s: i for i, s in enumerate(sites(n))}


@lru_cache(maxsize=None)
def _q_power(e: int) -> LaurentPoly:
    return var("q", e) if e else LaurentPoly.const(1)


@lru_cache(maxsize=None)
def _one_minus_q2m(m: int) -> LaurentPoly:
    return 1 - var("q", 2 * m)


def site_action(kind: str, m: int, cutoff: int | None = None):
    """Action of one site operator on |m>: list of (m', coefficient)."""
    if kind == ID:
        return [(m, LaurentPoly.const(1))]
    if kind in CREATION:
        if cutoff is not None and m + 1 > cutoff:
            raise CutoffExceeded(f"creation on occupation {m} exceeds cutoff {cutoff}")
        return [(m + 1, LaurentPoly.const(1))]
    if kind == BMINUS:
        return [(m - 1, LaurentPoly.const(1))] if m > 0 else []
    if kind == AMINUS:
        return [(m - 1, _one_minus_q2m(m))] if m > 0 else []
    if kind == TPROJ:
        return [(m, LaurentPoly.const(1))] if m == 0 else []
    if kind == KDIAG:
        return [(m, _q_power(m))]
    raise ValueError(f"unknown site operator {kind!r}")


@dataclass(frozen=True)
class SiteOp:
    kind: str
    site: tuple


@dataclass(frozen=True)
class OccupationState:
    """Basis vector of the truncated multi-Fock space over D_n."""

    n: int
    occ: tuple
    cutoff: int

    def __post_init__(self):
        if len(self.occ) != len(sites(self.n)):
            raise OutOfRange(f"state needs {len(sites(self.n))} occupations, got {len(self.occ)}")
        if any(m < 0 for m in self.occ):
            raise OutOfRange("occupations are nonnegative")
        if any(m > self.cutoff for m in self.occ):
            raise CutoffExceeded(f"occupation above cutoff {self.cutoff}")

    @classmethod
    def vacuum(cls, n: int, cutoff: int):
        return cls(n, (0,) * len(sites(n)), cutoff)

    @classmethod
    def from_dict(cls, n: int, occ: dict, cutoff: int):
        pos = site_position(n)
        vec = [0] * len(pos)
        for s, m in occ.items():
            vec[pos[tuple(s)]] = m
        return cls(n, tuple(vec), cutoff)

    def __getitem__(self, site):
        return self.occ[site_position(self.n)[tuple(site)]]

    def is_vacuum(self):
        return not any(self.occ)

    def as_dict(self):
        return dict(zip(sites(self.n), self.occ))

    def __str__(self):
        return format_state(self.n, self.occ)


def format_state(n: int, occ: tuple) -> str:
    """Canonical text: sorted '(k,l):m' pairs, zero occupations omitted."""
    parts = [f"({k},{l}):{m}" for (k, l), m in zip(sites(n), occ) if m]
    return "{" + ", ".join(parts) + "}"


def apply_site_op(op: SiteOp, state: OccupationState, q: str = "q"):
    """Apply a site operator to a basis state: zero or one (state, coefficient)."""
    if q != "q":
        raise ValueError("the quantum parameter is the registry variable 'q'")
    i = site_position(state.n)[tuple(op.site)]
    out = []
    for m2, c in site_action(op.kind, state.occ[i], state.cutoff):
        occ = state.occ[:i] + (m2,) + state.occ[i + 1:]
        out.append((OccupationState(state.n, occ, state.cutoff), c))
    return out


def pairing(bra_occ: int, ket_occ: int, q: str = "q", normalized: bool = False) -> LaurentPoly:
    """<m|m'> = delta (q^2;q^2)_m, or delta for the normalized dual <<m|."""
    if bra_occ != ket_occ:
        return LaurentPoly.const(0)
    if normalized:
        return LaurentPoly.const(1)
    q2 = var(q, 2)
    return q_pochhammer(q2, q2, bra_occ)


# ---- single-line operator algebra used for relation checks ---------------
def _apply_word(word, m, cutoff):
    """Apply site operators right to left to |m>; returns {m': coeff}."""
    vec = {m: LaurentPoly.const(1)}
    for kind in reversed(word):
        nxt = {}
        for mm, c in vec.items():
            for m2, c2 in site_action(kind, mm, cutoff):
                nxt[m2] = nxt.get(m2, LaurentPoly.const(0)) + c * c2
        vec = {k: v for k, v in nxt.items() if v}
    return vec


def _apply_expr(expr, m, cutoff):
    total = {}
    for coef, word in expr:
        for m2, c in _apply_word(word, m, cutoff).items():
            total[m2] = total.get(m2, LaurentPoly.const(0)) + c * coef
    return {k: v for k, v in total.items() if v}


def _relations(model):
    one = LaurentPoly.const(1)
    q = var("q")
    if model == Q0:
        return {
            "t b+ = 0": ([(one, [TPROJ, BPLUS])], []),
            "b- t = 0": ([(one, [BMINUS, TPROJ])], []),
            "b+ b- = 1 - t": ([(one, [BPLUS, BMINUS])], [(one, []), (-one, [TPROJ])]),
            "b- b+ = 1": ([(one, [BMINUS, BPLUS])], [(one, [])]),
        }
    if model == GENERIC:
        return {
            "k a+ = q a+ k": ([(one, [KDIAG, APLUS])], [(q, [APLUS, KDIAG])]),
            "q k a- = a- k": ([(q, [KDIAG, AMINUS])], [(one, [AMINUS, KDIAG])]),
            "a- a+ = 1 - q^2 k^2": ([(one, [AMINUS, APLUS])], [(one, []), (-q * q, [KDIAG, KDIAG])]),
            "a+ a- = 1 - k^2": ([(one, [APLUS, AMINUS])], [(one, []), (-one, [KDIAG, KDIAG])]),
        }
    raise ValueError(f"unknown model {model!r}")


def oscillator_relation_check(model: str, M: int) -> dict:
    """Check the oscillator relations on |m>, m <= M - 1.

    Returns ``{"model", "cutoff", "relations": {name: bool}, "violations": [...]}``.
    """
    if M < 2:
        raise OutOfRange("cutoff must be at least 2")
    results, violations = {}, []
    for name, (lhs, rhs) in _relations(model).items():
        ok = True
        for m in range(M):
            if _apply_expr(lhs, m, M) != _apply_expr(rhs, m, M):
                ok = False
                violations.append({"relation": name, "state": m})
                break
        results[name] = ok
    return {"model": model, "cutoff": M, "relations": results, "violations": violations}
