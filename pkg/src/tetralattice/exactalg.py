"""Exact sparse Laurent polynomials, truncated formal series and q-series helpers.

Variables live in a process-global registry.  Internally a monomial is a tuple
of exponents indexed by registration order with trailing zeros stripped, so the
registry can grow without invalidating existing polynomials.  Everything that
is printed or compared for ordering uses the natural order of variable names
instead, which makes the canonical text independent of registration history.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import NonTerminating, NotDivisible, OutOfRange, ParseError, PoleAtZero

__all__ = [
    "LaurentPoly",
    "FormalSeries",
    "var",
    "const",
    "parse_poly",
    "laurent_arith",
    "laurent_div_exact",
    "substitute",
    "q_pochhammer",
    "q_pochhammer_series",
    "q_binomial",
    "q_integer",
    "q_factorial",
]

_NAMES: list[str] = []
_INDEX: dict[str, int] = {}
_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def _natural_key(name):
    return tuple((0, int(tok)) if tok.isdigit() else (1, tok) for tok in re.findall(r"\d+|\D+", name))


def var_index(name: str) -> int:
    """Index of ``name`` in the registry, registering it on first use."""
    idx = _INDEX.get(name)
    if idx is None:
        if not _NAME_RE.match(name):
            raise ValueError(f"invalid variable name {name!r}")
        idx = len(_NAMES)
        _NAMES.append(name)
        _INDEX[name] = idx
    return idx


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _add_exp(a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    r = list(a)
    for i, e in enumerate(b):
        r[i] += e
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


def _neg_exp(a):
    return tuple(-e for e in a)


def _exp_from_dict(d):
    if not d:
        return ()
    idx = {var_index(k): e for k, e in d.items() if e}
    if not idx:
        return ()
    r = [0] * (max(idx) + 1)
    for i, e in idx.items():
        r[i] = e
    return tuple(r)


def _fmt_coef(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Immutable sparse Laurent polynomial with exact rational coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for mono, c in dict(terms).items():
                if isinstance(mono, dict):
                    mono = _exp_from_dict(mono)
                else:
                    mono = tuple(mono)
                    while mono and mono[-1] == 0:
                        mono = mono[:-1]
                c = _norm(Fraction(c)) if not isinstance(c, int) else c
                if c:
                    t[mono] = t.get(mono, 0) + c
                    if not t[mono]:
                        del t[mono]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t):
        p = cls.__new__(cls)
        p._t = t
        p._hash = None
        return p

    # ---- constructors -------------------------------------------------
    @classmethod
    def const(cls, c):
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1):
        return cls._raw({_exp_from_dict({name: exp}): 1})

    @classmethod
    def monomial(cls, coef, exps: dict):
        coef = _norm(Fraction(coef)) if not isinstance(coef, int) else coef
        return cls._raw({_exp_from_dict(exps): coef} if coef else {})

    @staticmethod
    def coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        if isinstance(x, str):
            return parse_poly(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # ---- basic queries -------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def __len__(self):
        return len(self._t)

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and () in self._t)

    def constant_term(self):
        return self._t.get((), 0)

    def is_monomial(self):
        return len(self._t) == 1

    def variables(self):
        used = set()
        for mono in self._t:
            used.update(i for i, e in enumerate(mono) if e)
        return sorted((_NAMES[i] for i in used), key=_natural_key)

    def degree(self, name: str) -> int:
        i = var_index(name)
        return max((m[i] if i < len(m) else 0) for m in self._t) if self._t else 0

    def min_degree(self, name: str) -> int:
        i = var_index(name)
        return min((m[i] if i < len(m) else 0) for m in self._t) if self._t else 0

    def coefficient(self, exps: dict):
        return self._t.get(_exp_from_dict(exps), 0)

    def items(self):
        """Yield ``(coef, {name: exp})`` in canonical order."""
        for mono, c in self._sorted_terms():
            yield c, {_NAMES[i]: e for i, e in enumerate(mono) if e}

    def coefficients(self):
        return list(self._t.values())

    # ---- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for m, c in b.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = _norm(v)
            else:
                t.pop(m, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return LaurentPoly._raw({})
                return LaurentPoly._raw({m: _norm(c * other) for m, c in self._t.items()})
            return NotImplemented
        if len(other._t) == 1:
            (m2, c2), = other._t.items()
            return self.mul_term(m2, c2)
        if len(self._t) == 1:
            (m1, c1), = self._t.items()
            return other.mul_term(m1, c1)
        t = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = _add_exp(m1, m2)
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    del t[m]
        return LaurentPoly._raw({m: _norm(c) for m, c in t.items()})

    __rmul__ = __mul__

    def mul_term(self, mono, coef=1):
        """Multiply by ``coef * x^mono`` (internal exponent tuple)."""
        if not coef:
            return LaurentPoly._raw({})
        if not mono:
            if coef == 1:
                return self
            return LaurentPoly._raw({m: _norm(c * coef) for m, c in self._t.items()})
        return LaurentPoly._raw({_add_exp(m, mono): _norm(c * coef) for m, c in self._t.items()})

    def __pow__(self, k: int):
        if k < 0:
            if len(self._t) != 1:
                raise NotDivisible("negative power of a non-monomial")
            (m, c), = self._t.items()
            return LaurentPoly._raw({tuple(k * e for e in m): _norm(Fraction(1) / Fraction(c) ** (-k))})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        return laurent_div_exact(self, LaurentPoly.coerce(other))

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # ---- transformations ----------------------------------------------
    def substitute(self, bindings: dict):
        return substitute(self, bindings)

    def permute_vars(self, mapping: dict):
        """Rename variables according to ``mapping`` (applied simultaneously)."""
        idx_map = {var_index(a): var_index(b) for a, b in mapping.items()}
        t = {}
        for m, c in self._t.items():
            d = {}
            for i, e in enumerate(m):
                if e:
                    j = idx_map.get(i, i)
                    d[j] = d.get(j, 0) + e
            if d:
                r = [0] * (max(d) + 1)
                for j, e in d.items():
                    r[j] = e
                while r and r[-1] == 0:
                    r.pop()
                key = tuple(r)
            else:
                key = ()
            v = t.get(key, 0) + c
            if v:
                t[key] = v
            else:
                t.pop(key, None)
        return LaurentPoly._raw(t)

    def swap(self, a: str, b: str):
        return self.permute_vars({a: b, b: a})

    def map_coefficients(self, fn):
        t = {}
        for m, c in self._t.items():
            v = _norm(Fraction(fn(c)))
            if v:
                t[m] = v
        return LaurentPoly._raw(t)

    # ---- canonical form -----------------------------------------------
    def _sorted_terms(self):
        order = sorted(range(len(_NAMES)), key=lambda i: _natural_key(_NAMES[i]))

        def key(item):
            m = item[0]
            vec = [m[i] if i < len(m) else 0 for i in order]
            return (-sum(vec), [-e for e in vec])

        return sorted(self._t.items(), key=key)

    def __str__(self):
        if not self._t:
            return "0"
        order = sorted(range(len(_NAMES)), key=lambda i: _natural_key(_NAMES[i]))
        out = []
        for mono, c in self._sorted_terms():
            factors = []
            for i in order:
                e = mono[i] if i < len(mono) else 0
                if e == 1:
                    factors.append(_NAMES[i])
                elif e:
                    factors.append(f"{_NAMES[i]}^{e}")
            neg = c < 0
            a = -c if neg else c
            if factors:
                body = "*".join(factors)
                if a != 1:
                    body = f"{_fmt_coef(a)}*{body}"
            else:
                body = _fmt_coef(a)
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def var(name: str, exp: int = 1) -> LaurentPoly:
    return LaurentPoly.var(name, exp)


def const(c) -> LaurentPoly:
    return LaurentPoly.const(c)


# ---- parsing -------------------------------------------------------------
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    pos, toks = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {pos} in {text!r}")
        num, name, sym = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("var", name))
        else:
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r} in {text!r}")
            toks.append(("sym", sym))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None or (sym is not None and tok != ("sym", sym)):
            raise ParseError(f"expected {sym or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        p = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            rhs = self.term()
            p = p + rhs if op == "+" else p - rhs
        return p

    def term(self):
        p = self.unary()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            rhs = self.unary()
            p = p * rhs if op == "*" else p / (rhs.constant_term() if rhs.is_constant() else rhs)
        return p

    def unary(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            sign = 1
            if self.peek() == ("sym", "-"):
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"integer exponent expected in {self.text!r}")
            return base ** (sign * val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return LaurentPoly.const(val)
        if kind == "var":
            return LaurentPoly.var(val)
        if val == "(":
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_poly(text: str) -> LaurentPoly:
    """Parse the canonical text form (and ordinary arithmetic expressions)."""
    parser = _Parser(text)
    if not parser.toks:
        raise ParseError("empty polynomial text")
    p = parser.expr()
    if parser.i != len(parser.toks):
        raise ParseError(f"trailing input in {text!r}")
    return p


# ---- module-level operations --------------------------------------------
def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _grlex_key(m):
    return (sum(m), m)


def laurent_div_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``num / den`` in the Laurent ring.

    Leading-term division under graded lex.  The quotient's degree in each
    variable is confined to a box computed from the degree ranges of ``num``
    and ``den``; a candidate term outside the box proves non-divisibility,
    which also guarantees termination.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return num
    if den.is_monomial():
        (m, c), = den._t.items()
        return num.mul_term(_neg_exp(m), Fraction(1) / Fraction(c))
    width = max(max((len(m) for m in num._t), default=0), max((len(m) for m in den._t), default=0))

    def span(p):
        lo, hi = [0] * width, [0] * width
        first = True
        for m in p._t:
            v = list(m) + [0] * (width - len(m))
            if first:
                lo, hi, first = v[:], v[:], False
            else:
                lo = [min(a, b) for a, b in zip(lo, v)]
                hi = [max(a, b) for a, b in zip(hi, v)]
        return lo, hi

    nlo, nhi = span(num)
    dlo, dhi = span(den)
    qlo = [a - b for a, b in zip(nlo, dlo)]
    qhi = [a - b for a, b in zip(nhi, dhi)]
    if any(a > b for a, b in zip(qlo, qhi)):
        raise NotDivisible(f"{num} is not divisible by {den}")
    lead_d = max(den._t, key=lambda m: _grlex_key(tuple(m) + (0,) * (width - len(m))))
    lead_c = Fraction(den._t[lead_d])
    rem = dict(num._t)
    quot = {}
    while rem:
        lead_r = max(rem, key=lambda m: _grlex_key(tuple(m) + (0,) * (width - len(m))))
        qm = _add_exp(lead_r, _neg_exp(lead_d))
        v = list(qm) + [0] * (width - len(qm))
        if len(v) > width or any(e < lo or e > hi for e, lo, hi in zip(v, qlo, qhi)):
            raise NotDivisible(f"{num} is not divisible by {den}")
        qc = _norm(Fraction(rem[lead_r]) / lead_c)
        quot[qm] = qc
        for dm, dc in den._t.items():
            m = _add_exp(dm, qm)
            val = rem.get(m, 0) - qc * dc
            if val:
                rem[m] = _norm(val)
            else:
                rem.pop(m, None)
    return LaurentPoly._raw(quot)


def substitute(p: LaurentPoly, bindings: dict) -> LaurentPoly:
    """Substitute rationals or polynomials for variables, exactly."""
    if not bindings:
        return p
    bind = {}
    for name, val in bindings.items():
        if isinstance(val, LaurentPoly):
            if val.is_constant():
                val = val.constant_term()
        elif isinstance(val, str):
            val = parse_poly(val)
        elif not isinstance(val, (int, Fraction)):
            val = Fraction(val)
        bind[var_index(name)] = val
    result = {}
    cache = {}
    for mono, c in p._t.items():
        coef = Fraction(c)
        rest = list(mono)
        poly_factor = None
        for i, e in enumerate(mono):
            if not e or i not in bind:
                continue
            rest[i] = 0
            val = bind[i]
            if isinstance(val, LaurentPoly):
                key = (i, e)
                if key not in cache:
                    cache[key] = val ** e
                poly_factor = cache[key] if poly_factor is None else poly_factor * cache[key]
            else:
                if val == 0:
                    if e < 0:
                        raise PoleAtZero(f"{_NAMES[i]} bound to 0 with exponent {e}")
                    coef = Fraction(0)
                    break
                coef *= Fraction(val) ** e
        if not coef:
            continue
        while rest and rest[-1] == 0:
            rest.pop()
        term = LaurentPoly._raw({tuple(rest): _norm(coef)})
        if poly_factor is not None:
            term = term * poly_factor
        for m, v in term._t.items():
            s = result.get(m, 0) + v
            if s:
                result[m] = _norm(s)
            else:
                result.pop(m, None)
    return LaurentPoly._raw(result)


# ---- formal series -----------------------------------------------------
class FormalSeries:
    """Laurent polynomial truncated by a total-degree cap on a set of variables.

    A term survives when the sum of its exponents over ``capped`` is at most
    ``cap``.  Capped variables must occur with nonnegative exponents, so the
    truncation is a ring homomorphism onto the quotient by the discarded ideal.
    """

    __slots__ = ("poly", "capped", "cap", "_idx")

    def __init__(self, poly, capped, cap: int):
        self.capped = frozenset(capped)
        self.cap = int(cap)
        self._idx = tuple(sorted(var_index(v) for v in self.capped))
        self.poly = self._truncate(LaurentPoly.coerce(poly))

    def _cdeg(self, m):
        d = 0
        for i in self._idx:
            if i < len(m):
                e = m[i]
                if e < 0:
                    raise OutOfRange(f"negative exponent of capped variable {_NAMES[i]}")
                d += e
        return d

    def capped_degree(self, p: LaurentPoly):
        return min((self._cdeg(m) for m in p._t), default=0)

    def _truncate(self, p):
        return LaurentPoly._raw({m: c for m, c in p._t.items() if self._cdeg(m) <= self.cap})

    def _wrap(self, p):
        s = FormalSeries.__new__(FormalSeries)
        s.capped, s.cap, s._idx = self.capped, self.cap, self._idx
        s.poly = self._truncate(p)
        return s

    def _lift(self, other):
        if isinstance(other, FormalSeries):
            if other.capped != self.capped or other.cap != self.cap:
                raise ValueError("series with different caps cannot be combined")
            return other.poly
        return LaurentPoly.coerce(other)

    def __add__(self, other):
        return self._wrap(self.poly + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.poly - self._lift(other))

    def __rsub__(self, other):
        return self._wrap(self._lift(other) - self.poly)

    def __neg__(self):
        return self._wrap(-self.poly)

    def __mul__(self, other):
        rhs = self._lift(other)
        # multiply grouped by capped degree so discarded products are never formed
        a = self._by_degree(self.poly)
        b = self._by_degree(rhs)
        acc = LaurentPoly.const(0)
        for da, pa in a.items():
            for db, pb in b.items():
                if da + db <= self.cap:
                    acc = acc + pa * pb
        return self._wrap(acc)

    __rmul__ = __mul__

    def _by_degree(self, p):
        groups = {}
        for m, c in p._t.items():
            groups.setdefault(self._cdeg(m), {})[m] = c
        return {d: LaurentPoly._raw(t) for d, t in groups.items()}

    def inverse(self):
        """Multiplicative inverse; the capped-degree-0 part must be a unit monomial."""
        groups = self._by_degree(self.poly)
        c0 = groups.get(0)
        if c0 is None or not c0.is_monomial():
            raise NotDivisible("series constant part is not a unit")
        inv0 = c0 ** -1
        r = self._wrap((self.poly - c0) * inv0)
        total = self._wrap(LaurentPoly.const(1))
        power = total
        for _ in range(self.cap):
            power = power * (-r)
            if power.poly.is_zero():
                break
            total = total + power
        return total * inv0

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.poly * (Fraction(1) / Fraction(other)))
        if not isinstance(other, FormalSeries):
            other = self._wrap(LaurentPoly.coerce(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * self._lift(other)

    def __eq__(self, other):
        if isinstance(other, FormalSeries):
            return self.capped == other.capped and self.cap == other.cap and self.poly == other.poly
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return self.poly == self._truncate(LaurentPoly.coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.capped, self.cap, self.poly))

    def substitute(self, bindings):
        return self._wrap(substitute(self.poly, bindings))

    def __str__(self):
        caps = ",".join(sorted(self.capped, key=_natural_key))
        return f"{self.poly} + O(deg({caps})>{self.cap})"

    def __repr__(self):
        return f"FormalSeries({str(self)!r})"


# ---- q-series ------------------------------------------------------------
def _as_poly(x):
    if isinstance(x, str):
        return LaurentPoly.var(x) if _NAME_RE.match(x) else parse_poly(x)
    return LaurentPoly.coerce(x)


def q_pochhammer(a, q, n: int) -> LaurentPoly:
    """Finite product (a; q)_n = (1 - a)(1 - a q)...(1 - a q^{n-1})."""
    if n < 0:
        raise OutOfRange("q-Pochhammer length must be nonnegative")
    a, q = _as_poly(a), _as_poly(q)
    result = LaurentPoly.const(1)
    shift = LaurentPoly.const(1)
    for _ in range(n):
        result = result * (1 - a * shift)
        shift = shift * q
    return result


def q_pochhammer_series(a, q, capped, cap: int) -> FormalSeries:
    """(a; q)_inf truncated to total capped degree ``cap``."""
    a, q = _as_poly(a), _as_poly(q)
    one = FormalSeries(LaurentPoly.const(1), capped, cap)
    if a.is_zero():
        return one
    deg_a = one.capped_degree(a)
    deg_q = one.capped_degree(q) if not q.is_zero() else None
    if deg_a < 1 or (deg_q is not None and deg_q < 1):
        raise NonTerminating("(a; q)_inf needs a and q of positive capped degree")
    result = one
    factor = a
    r = 0
    while not factor.is_zero() and deg_a + r * (deg_q or 0) <= cap:
        result = result * (1 - factor)
        factor = factor * q
        r += 1
        if deg_q is None:
            break
    return result


def _gauss_binomial_coeffs(n, k):
    """Coefficient list of the Gaussian binomial [n, k] in an abstract variable."""
    rows = {0: [1]}
    for m in range(1, n + 1):
        new = {}
        for j in range(0, min(m, k) + 1):
            left = rows.get(j - 1, []) if j >= 1 else []
            right = rows.get(j, []) if j <= m - 1 else []
            length = max(len(left), len(right) + j)
            coeffs = [0] * length
            for d, c in enumerate(left):
                coeffs[d] += c
            for d, c in enumerate(right):
                coeffs[d + j] += c
            new[j] = coeffs
        rows = new
    return rows.get(k, [1] if k == 0 else [])


def q_binomial(n: int, k: int, q="q") -> LaurentPoly:
    """Gaussian binomial coefficient as a polynomial in ``q`` (a name or a polynomial)."""
    if not (0 <= k <= n):
        raise OutOfRange(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    qp = _as_poly(q)
    result = LaurentPoly.const(0)
    power = LaurentPoly.const(1)
    for c in _gauss_binomial_coeffs(n, k):
        if c:
            result = result + power * c
        power = power * qp
    return result


def q_integer(n: int, q="q") -> LaurentPoly:
    """[n]_q = 1 + q + ... + q^{n-1}."""
    qp = _as_poly(q)
    return sum((qp ** j for j in range(n)), LaurentPoly.const(0))


def q_factorial(n: int, q="q") -> LaurentPoly:
    result = LaurentPoly.const(1)
    for j in range(1, n + 1):
        result = result * q_integer(j, q)
    return result
