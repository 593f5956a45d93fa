"""Operator-valued vertex models built from tetrahedral L-operators.

An L-operator element [L]_{ij}^{ab} maps the edge pair (i, j) to (a, b) and
acts on one Fock line.  Throughout, ``i``/``a`` are the edges of the first
line through a vertex and ``j``/``b`` those of the second, matching
L(v_i (x) v_j) = sum v_a (x) v_b [L]_{ij}^{ab}.

X_i^{(n)}(z) lives on the triangle D_n.  Vertex (k, l) acts on the Fock line
F_{k,l}; it receives ``i`` from (k, l-1) (or a free, summed bottom edge when
l = 1) and ``j`` from (k+1, l) (or the fixed colour c_l when k = n - l).  Its
``a`` output feeds (k, l+1) and must equal c_{n+1-k} at the top of the
column; its ``b`` output feeds (k-1, l) and, at k = 1, is the top boundary
edge alpha_l.  The fixed colours are c_p = 1 for p <= i and 0 otherwise, and
alpha_n = c_n.  In the q = 0 model the spectral variable enters only through
z^{alpha_1 + ... + alpha_n}; in the generic model it sits inside L(z).

Y_l^{(l)} is a single column crossing l Fock lines: the vertical edge enters
blue at line l and leaves freely at line 1, every horizontal input is summed
and every horizontal output is blue.  Only three local configurations survive,
which is what pins the convention down.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CutoffExceeded, OutOfRange
from .exactalg import LaurentPoly, var, var_index
from .fock import (
    AMINUS,
    APLUS,
    BMINUS,
    BPLUS,
    GENERIC,
    ID,
    KDIAG,
    MODELS,
    Q0,
    TPROJ,
    format_state,
    site_position,
    sites,
)

# (i, j, a, b) -> (site operator, power of z, scalar sign, extra power of q)
_Q0_TABLE = {
    (0, 0, 0, 0): (ID, 0, 1, 0),
    (1, 1, 1, 1): (ID, 0, 1, 0),
    (1, 0, 0, 1): (BPLUS, 0, 1, 0),
    (0, 1, 1, 0): (BMINUS, 0, 1, 0),
    (0, 1, 0, 1): (TPROJ, 0, 1, 0),
}

_SIXTH_SIGN = -1


def _generic_table():
    return {
        (0, 0, 0, 0): (ID, 0, 1, 0),
        (1, 1, 1, 1): (ID, 0, 1, 0),
        (1, 0, 0, 1): (APLUS, 1, 1, 0),
        (0, 1, 1, 0): (AMINUS, -1, 1, 0),
        (0, 1, 0, 1): (KDIAG, 0, 1, 0),
        (1, 0, 1, 0): (KDIAG, 0, _SIXTH_SIGN, 1),
    }


def l_table(model: str) -> dict:
    """Nonzero L-operator elements of ``model`` keyed by (i, j, a, b)."""
    if model == Q0:
        return dict(_Q0_TABLE)
    if model == GENERIC:
        return _generic_table()
    raise ValueError(f"unknown model {model!r}")


def l_element(model: str, i: int, j: int, a: int, b: int):
    """The element [L]_{ij}^{ab} as (site kind, scalar LaurentPoly) or None."""
    entry = l_table(model).get((i, j, a, b))
    if entry is None:
        return None
    kind, ze, sign, qe = entry
    scalar = LaurentPoly.monomial(sign, {"z": ze, "q": qe})
    return kind, scalar


def _outgoing(model):
    out = {}
    for (i, j, a, b), entry in l_table(model).items():
        out.setdefault((i, j), []).append(((a, b), entry))
    return out


@contextmanager
def flipped_sixth_vertex():
    """Temporarily replace -q k by +q k (mutation testing only)."""
    global _SIXTH_SIGN
    old = _SIXTH_SIGN
    _SIXTH_SIGN = -old
    clear_caches()
    try:
        yield
    finally:
        _SIXTH_SIGN = old
        clear_caches()


# ---- lattice specifications --------------------------------------------
@dataclass(frozen=True)
class Vertex:
    """One L-operator in a lattice.

    Inputs are ('free',), ('fixed', c) or ('edge', key); outputs are
    ('fixed', c), ('edge', key), ('top',) for a weighted boundary edge, or
    ('free',).  ``spectral`` indexes the spectral variable of the vertex.
    """

    line: int
    i_in: tuple
    j_in: tuple
    a_out: tuple
    b_out: tuple
    spectral: int = 0


@lru_cache(maxsize=None)
def x_lattice(n: int, i: int, order: str = "row") -> tuple:
    """Vertices of X_i^{(n)} in a topological order ('row' or 'column')."""
    if not 0 <= i <= n:
        raise OutOfRange(f"need 0 <= i <= n, got i={i}, n={n}")
    c = [None] + [1 if p <= i else 0 for p in range(1, n + 1)]
    pos = site_position(n)
    if order == "row":
        keys = [(k, l) for l in range(1, n) for k in range(n - l, 0, -1)]
    elif order == "column":
        keys = [(k, l) for k in range(n - 1, 0, -1) for l in range(1, n - k + 1)]
    else:
        raise ValueError(f"unknown traversal order {order!r}")
    verts = []
    for k, l in keys:
        i_in = ("free",) if l == 1 else ("edge", ("A", k, l - 1))
        j_in = ("fixed", c[l]) if k == n - l else ("edge", ("B", k + 1, l))
        a_out = ("fixed", c[n + 1 - k]) if l == n - k else ("edge", ("A", k, l))
        b_out = ("top",) if k == 1 else ("edge", ("B", k, l))
        verts.append(Vertex(pos[(k, l)], i_in, j_in, a_out, b_out, 0))
    return tuple(verts)


def x_top_constant(n: int, i: int) -> int:
    """alpha_n = c_n, the top boundary edge carried by no vertex."""
    return 1 if n <= i else 0


@lru_cache(maxsize=None)
def y_lattice(ell: int) -> tuple:
    """Vertices of one Y_l^{(l)} column, processed from line l up to line 1."""
    if ell < 1:
        raise OutOfRange("Y needs at least one Fock line")
    verts = []
    for j in range(ell, 0, -1):
        j_in = ("fixed", 0) if j == ell else ("edge", ("V", j + 1))
        b_out = ("free",) if j == 1 else ("edge", ("V", j))
        verts.append(Vertex(j - 1, ("free",), j_in, ("fixed", 0), b_out, j - 1))
    return tuple(verts)


# ---- state-aware enumeration --------------------------------------------
def _qpoly_mul_site(poly, kind, m):
    """Multiply a {q-exponent: int} dict by the coefficient of ``kind`` on |m>."""
    if kind == KDIAG:
        return {e + m: c for e, c in poly.items()}
    if kind == AMINUS:
        out = dict(poly)
        for e, c in poly.items():
            v = out.get(e + 2 * m, 0) - c
            if v:
                out[e + 2 * m] = v
            else:
                out.pop(e + 2 * m, None)
        return out
    return poly


def _new_occ(kind, m):
    if kind == ID or kind == KDIAG:
        return m
    if kind == APLUS or kind == BPLUS:
        return m + 1
    if kind == AMINUS or kind == BMINUS:
        return m - 1 if m > 0 else None
    if kind == TPROJ:
        return m if m == 0 else None
    raise ValueError(kind)


def enumerate_transitions(verts, model, occ, n_spectral, top_const=0):
    """Sum over admissible colourings of ``verts`` acting on the basis state ``occ``.

    Returns {(out_occ, z_exponents): {q_exponent: int}}.  In the q0 model the
    single z exponent is the number of red top edges plus ``top_const``.
    """
    outgoing = _outgoing(model)
    nv = len(verts)
    out = list(occ)
    edges = {}
    results = {}
    q0 = model == Q0
    zexp = [0] * n_spectral

    def rec(idx, coef, top):
        if idx == nv:
            if q0:
                key = (tuple(out), (top + top_const,))
            else:
                key = (tuple(out), tuple(zexp))
            acc = results.setdefault(key, {})
            for e, c in coef.items():
                v = acc.get(e, 0) + c
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
            return
        v = verts[idx]
        if v.i_in[0] == "free":
            i_opts = (0, 1)
        elif v.i_in[0] == "fixed":
            i_opts = (v.i_in[1],)
        else:
            i_opts = (edges[v.i_in[1]],)
        if v.j_in[0] == "fixed":
            jj = v.j_in[1]
        else:
            jj = edges[v.j_in[1]]
        line = v.line
        m = occ[line]
        for ii in i_opts:
            for (a, b), (kind, ze, sign, qe) in outgoing.get((ii, jj), ()):
                if v.a_out[0] == "fixed" and a != v.a_out[1]:
                    continue
                if v.b_out[0] == "fixed" and b != v.b_out[1]:
                    continue
                m2 = _new_occ(kind, m)
                if m2 is None:
                    continue
                if v.a_out[0] == "edge":
                    edges[v.a_out[1]] = a
                if v.b_out[0] == "edge":
                    edges[v.b_out[1]] = b
                new_coef = _qpoly_mul_site(coef, kind, m)
                if sign != 1 or qe:
                    new_coef = {e + qe: c * sign for e, c in new_coef.items()}
                if not new_coef:
                    continue
                out[line] = m2
                zexp[v.spectral] += ze
                rec(idx + 1, new_coef, top + (b if v.b_out[0] == "top" else 0))
                zexp[v.spectral] -= ze
                out[line] = m

    rec(0, {0: 1}, 0)
    return {k: c for k, c in results.items() if c}


def _qdict_to_poly(d):
    return LaurentPoly._raw({_qexp(e): c for e, c in d.items() if c})


def _qexp(e):
    i = var_index("q")
    if not e:
        return ()
    r = [0] * (i + 1)
    r[i] = e
    return tuple(r)


_X_CACHE: dict = {}
_Y_CACHE: dict = {}


def clear_caches():
    _X_CACHE.clear()
    _Y_CACHE.clear()


def x_transitions(n: int, i: int, model: str, occ: tuple, order: str = "row"):
    """X_i^{(n)} on a basis state: list of (out_state, z exponent, coefficient in q)."""
    key = (n, i, model, occ, order)
    hit = _X_CACHE.get(key)
    if hit is None:
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
        raw = enumerate_transitions(x_lattice(n, i, order), model, occ, 1, x_top_constant(n, i))
        hit = tuple(sorted((o, ze[0], _qdict_to_poly(c)) for (o, ze), c in raw.items()))
        _X_CACHE[key] = hit
    return hit


def y_transitions(ell: int, occ: tuple):
    """One Y column on a basis state: list of (out_state, z exponents by line, coefficient)."""
    key = (ell, occ)
    hit = _Y_CACHE.get(key)
    if hit is None:
        raw = enumerate_transitions(y_lattice(ell), GENERIC, occ, ell)
        hit = tuple(sorted((o, ze, _qdict_to_poly(c)) for (o, ze), c in raw.items()))
        _Y_CACHE[key] = hit
    return hit


def x_terms(n: int, i: int, model: str):
    """Symbolic expansion of X_i^{(n)} as a sum of products of site operators.

    Returns a sorted list of (kinds, z exponent, scalar) where ``kinds`` maps
    each site of D_n to its operator and ``scalar`` is +-q^e as a LaurentPoly.
    """
    verts = x_lattice(n, i)
    outgoing = _outgoing(model)
    nd = len(sites(n))
    terms = []
    edges = {}
    kinds = [ID] * nd
    top_const = x_top_constant(n, i)

    def rec(idx, zexp, sign, qe, top):
        if idx == len(verts):
            e = top + top_const if model == Q0 else zexp
            terms.append((tuple(kinds), e, LaurentPoly.monomial(sign, {"q": qe})))
            return
        v = verts[idx]
        i_opts = (0, 1) if v.i_in[0] == "free" else ((v.i_in[1],) if v.i_in[0] == "fixed" else (edges[v.i_in[1]],))
        jj = v.j_in[1] if v.j_in[0] == "fixed" else edges[v.j_in[1]]
        for ii in i_opts:
            for (a, b), (kind, ze, s, dq) in outgoing.get((ii, jj), ()):
                if v.a_out[0] == "fixed" and a != v.a_out[1]:
                    continue
                if v.b_out[0] == "fixed" and b != v.b_out[1]:
                    continue
                if v.a_out[0] == "edge":
                    edges[v.a_out[1]] = a
                if v.b_out[0] == "edge":
                    edges[v.b_out[1]] = b
                kinds[v.line] = kind
                rec(idx + 1, zexp + ze, sign * s, qe + dq, top + (b if v.b_out[0] == "top" else 0))
                kinds[v.line] = ID

    rec(0, 0, 1, 0, 0)
    return sorted(terms, key=lambda t: (t[1], t[0], str(t[2])))


# ---- sparse operators ---------------------------------------------------
def _vec_add(target, occ, poly):
    cur = target.get(occ)
    s = poly if cur is None else cur + poly
    if s:
        target[occ] = s
    else:
        target.pop(occ, None)


_POW_CACHE: dict = {}


def spectral_power(z, e: int):
    """z^e for a variable name or an exact rational."""
    if isinstance(z, str):
        key = (z, e)
        p = _POW_CACHE.get(key)
        if p is None:
            p = var(z, e) if e else LaurentPoly.const(1)
            _POW_CACHE[key] = p
        return p
    if isinstance(z, LaurentPoly):
        return z**e
    z = Fraction(z)
    if z == 0 and e < 0:
        from .errors import PoleAtZero

        raise PoleAtZero("spectral value 0 with a negative power")
    return LaurentPoly.const(z**e)


def _check_cutoff(occ, cutoff):
    if cutoff is not None and occ and max(occ) > cutoff:
        raise CutoffExceeded(f"occupation {max(occ)} exceeds cutoff {cutoff}")


class SparseOperator:
    """Finitely supported operator on basis states, materialized lazily.

    ``source`` maps a basis state to {state: coefficient}; columns are cached
    as they are requested, so the operator is effectively closed over the
    states reachable from whatever seeds it is applied to.
    """

    def __init__(self, n_lines: int, model: str, source=None, action=None, cutoff=None, label=""):
        self.n_lines = n_lines
        self.model = model
        self.cutoff = cutoff
        self.label = label
        self._source = source
        self._action = dict(action) if action else {}

    def column(self, occ):
        col = self._action.get(occ)
        if col is None:
            if self._source is None:
                col = {}
            else:
                col = {o: c for o, c in self._source(occ).items() if c}
                for o in col:
                    _check_cutoff(o, self.cutoff)
            self._action[occ] = col
        return col

    def apply(self, vec: dict) -> dict:
        out = {}
        for occ, c in vec.items():
            for o2, c2 in self.column(occ).items():
                _vec_add(out, o2, c * c2)
        return out

    def apply_basis(self, occ) -> dict:
        return dict(self.column(occ))

    def _check_compatible(self, other):
        if self.n_lines != other.n_lines or self.model != other.model:
            raise ValueError("operators act on different spaces or models")

    def compose(self, other):
        """self o other (other acts first)."""
        self._check_compatible(other)
        return SparseOperator(
            self.n_lines,
            self.model,
            source=lambda occ: self.apply(other.apply_basis(occ)),
            cutoff=_min_cutoff(self.cutoff, other.cutoff),
            label=f"({self.label})({other.label})",
        )

    def __matmul__(self, other):
        return self.compose(other)

    def scale(self, c):
        c = LaurentPoly.coerce(c)
        return SparseOperator(
            self.n_lines,
            self.model,
            source=lambda occ: {o: v * c for o, v in self.column(occ).items()},
            cutoff=self.cutoff,
            label=f"{c}*{self.label}",
        )

    def __add__(self, other):
        self._check_compatible(other)

        def src(occ):
            out = dict(self.column(occ))
            for o, c in other.column(occ).items():
                _vec_add(out, o, c)
            return out

        return SparseOperator(self.n_lines, self.model, source=src, cutoff=_min_cutoff(self.cutoff, other.cutoff))

    def __sub__(self, other):
        return self + other.scale(-1)

    def materialize(self, seeds):
        """Restrict to the given in-states, returning a fully materialized copy."""
        return SparseOperator(
            self.n_lines, self.model, action={s: self.column(s) for s in seeds}, cutoff=self.cutoff, label=self.label
        )

    def residual_on(self, other, states):
        """States on which self and other differ, with the difference vector."""
        bad = []
        for s in states:
            a, b = self.column(s), other.column(s)
            if a != b:
                diff = dict(a)
                for o, c in b.items():
                    _vec_add(diff, o, -c)
                bad.append((s, diff))
        return bad

    def equals_on(self, other, states) -> bool:
        return not self.residual_on(other, states)

    def dump(self, n=None):
        """Sorted (in-state, out-state, coefficient) text triples of materialized columns."""
        fmt = (lambda o: format_state(n, o)) if n is not None else str
        rows = []
        for s in sorted(self._action):
            for o in sorted(self._action[s]):
                rows.append((fmt(s), fmt(o), str(self._action[s][o])))
        return rows


def _min_cutoff(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def identity(n_lines: int, model: str) -> SparseOperator:
    return SparseOperator(n_lines, model, source=lambda occ: {occ: LaurentPoly.const(1)}, label="1")


def compose(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    return a.compose(b)


def build_x_operator(n: int, i: int, z="z", model: str = Q0, M: int | None = None, order: str = "row"):
    """X_i^{(n)}(z) as a lazily materialized sparse operator on the D_n Fock lines."""
    if M is not None and M < 1:
        raise OutOfRange("cutoff must be positive")

    def src(occ):
        out = {}
        for o, e, c in x_transitions(n, i, model, occ, order):
            _vec_add(out, o, c * spectral_power(z, e))
        return out

    return SparseOperator(len(sites(n)), model, source=src, cutoff=M, label=f"X_{i}^({n})({z})")


def build_x_ij(n: int, i: int, j: int, M: int | None = None):
    """The z^j component X_{i,j}^{(n)} of the q = 0 operator."""

    def src(occ):
        out = {}
        for o, e, c in x_transitions(n, i, Q0, occ):
            if e == j:
                _vec_add(out, o, c)
        return out

    return SparseOperator(len(sites(n)), Q0, source=src, cutoff=M, label=f"X_{i},{j}^({n})")


def y_variable(base: str, k: int, j: int) -> str:
    """Registry name of z_k^{(j)}."""
    return f"{base}{k}_{j}"


def build_y_operator(ell: int, z_grid=None, M: int | None = None):
    """Column factory for Y_l^{(l)}: ``factory(k)`` is the column with variables z_grid[(j, k)].

    ``z_grid`` defaults to the names z{k}_{j}; it may also be a callable
    (j, k) -> variable name or rational value.
    """
    if z_grid is None:
        grid = lambda j, k: y_variable("z", k, j)  # noqa: E731
    elif callable(z_grid):
        grid = z_grid
    else:
        grid = lambda j, k: z_grid[(j, k)]  # noqa: E731

    def factory(k):
        def src(occ):
            out = {}
            for o, zes, c in y_transitions(ell, occ):
                w = c
                for j, e in enumerate(zes, start=1):
                    if e:
                        w = w * spectral_power(grid(j, k), e)
                _vec_add(out, o, w)
            return out

        return SparseOperator(ell, GENERIC, source=src, cutoff=M, label=f"Y_{ell}(col {k})")

    return factory


def vacuum(n_lines: int) -> tuple:
    return (0,) * n_lines


def basis_states(n_lines: int, max_occ: int):
    """All basis states with every occupation <= max_occ, in lexicographic order."""
    from itertools import product

    return list(product(range(max_occ + 1), repeat=n_lines))
