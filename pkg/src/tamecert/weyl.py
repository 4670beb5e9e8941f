"""The Weyl algebra over Q in normal order.

Coordinates are numbered ``0 .. dim-1``.  The first ``base`` of them are
ungraded base coordinates (printed ``x1, x2, ...``) and the remaining ones
are fiber coordinates (printed ``t1, t2, ...``); their derivations print as
``Dx<i>`` and ``Dt<i>``.  A term ``(alpha, beta) -> c`` stands for
``c * x^alpha * D^beta`` with every position factor to the left.
"""
from __future__ import annotations

import functools
import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from . import _backend
from .exact import Q, fmt_q


class WeylDimensionError(ValueError):
    pass


def _canon(c):
    # integral rationals are kept as ints: exact, and much cheaper to multiply
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _canon_terms(terms: dict) -> dict:
    return {k: _canon(v) for k, v in terms.items()}


@functools.total_ordering
class _NegInf:
    """Degree of the zero operator; below every rational."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return 0

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


class WeightVector:
    """Positive weights of the fiber coordinates plus a count of base ones."""

    __slots__ = ("weights", "base_count")

    def __init__(self, weights: Iterable, base_count: int = 0):
        ws = tuple(Q(x) for x in weights)
        if any(x <= 0 for x in ws):
            raise ValueError("fiber weights must be strictly positive")
        if base_count < 0:
            raise ValueError("base_count must be nonnegative")
        self.weights = ws
        self.base_count = base_count

    @property
    def d(self) -> int:
        return len(self.weights)

    @property
    def dim(self) -> int:
        return self.base_count + len(self.weights)

    @property
    def trace(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def normalized(self) -> tuple["WeightVector", Fraction]:
        """``(w / beta, beta)`` with ``w / beta`` coprime positive integers."""
        g = 0
        l = 1
        for x in self.weights:
            g = gcd(g, x.numerator)
            l = lcm(l, x.denominator)
        beta = Fraction(g, l) if g else Fraction(1)
        return WeightVector([x / beta for x in self.weights], self.base_count), beta

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.weights)

    def __eq__(self, other):
        return isinstance(other, WeightVector) and (self.weights, self.base_count) == (other.weights, other.base_count)

    def __hash__(self):
        return hash((self.weights, self.base_count))

    def __repr__(self):
        ws = ", ".join(str(x) for x in self.weights)
        return f"WeightVector(({ws}), base_count={self.base_count})"


class WeylElement:
    """Normal-ordered differential operator with polynomial coefficients."""

    __slots__ = ("dim", "terms", "base")

    def __init__(self, dim: int, terms: Mapping | None = None, base: int = 0):
        if not 0 <= base <= dim:
            raise WeylDimensionError("base count out of range")
        clean = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != dim or len(b) != dim:
                raise WeylDimensionError("exponent length does not match dim")
            c = _canon(Q(c))
            if c:
                v = _canon(clean.get((a, b), 0) + c)
                if v:
                    clean[(a, b)] = v
                else:
                    del clean[(a, b)]
        self.dim = dim
        self.terms = clean
        self.base = base

    # --- constructors ------------------------------------------------------
    @classmethod
    def _raw(cls, dim, terms, base):
        obj = cls.__new__(cls)
        obj.dim, obj.terms, obj.base = dim, terms, base
        return obj

    @classmethod
    def const(cls, c, dim: int, base: int = 0) -> "WeylElement":
        z = (0,) * dim
        return cls(dim, {(z, z): c}, base)

    @classmethod
    def monomial(cls, alpha: Sequence[int], beta: Sequence[int], c=1, base: int = 0) -> "WeylElement":
        return cls(len(alpha), {(tuple(alpha), tuple(beta)): c}, base)

    @classmethod
    def pos(cls, i: int, dim: int, base: int = 0) -> "WeylElement":
        """The coordinate function of index ``i`` (0-based)."""
        a = [0] * dim
        a[i] = 1
        return cls.monomial(a, [0] * dim, 1, base)

    @classmethod
    def der(cls, i: int, dim: int, base: int = 0) -> "WeylElement":
        b = [0] * dim
        b[i] = 1
        return cls.monomial([0] * dim, b, 1, base)

    # --- arithmetic --------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, WeylElement):
            raise TypeError("expected a WeylElement")
        if other.dim != self.dim:
            raise WeylDimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _lift(self, other):
        if isinstance(other, WeylElement):
            self._check(other)
            return other
        return WeylElement.const(other, self.dim, self.base)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _canon(v)
            else:
                out.pop(k, None)
        return WeylElement._raw(self.dim, out, self.base)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.dim, {k: -c for k, c in self.terms.items()}, self.base)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "WeylElement":
        c = _canon(Q(c))
        if not c:
            return WeylElement._raw(self.dim, {}, self.base)
        return WeylElement._raw(self.dim, {k: _canon(c * v) for k, v in self.terms.items()}, self.base)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = WeylElement.const(1, self.dim, self.base)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == WeylElement.const(other, self.dim)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"WeylElement({to_text(self)!r}, dim={self.dim})"

    def __str__(self):
        return to_text(self)


def multiply(p: WeylElement, q: WeylElement) -> WeylElement:
    """Product ``p * q`` brought back to normal order."""
    p._check(q)
    return WeylElement._raw(p.dim, _canon_terms(_backend.weyl_mul_terms(p.terms, q.terms, p.dim)), p.base)


def mul_euler(p: WeylElement, w: WeightVector, c=0) -> WeylElement:
    """``p * (eta + c)`` for the Euler field of ``w``, without the general product."""
    if p.dim != w.dim:
        raise WeylDimensionError("weight vector does not match dim")
    full = [0] * w.base_count + [_canon(n) for n in w.weights]
    return WeylElement._raw(p.dim, _canon_terms(_backend.weyl_mul_euler(p.terms, full, _canon(Q(c)))), p.base)


def euler_poly(b: "BPoly", w: WeightVector) -> WeylElement:
    """``b(eta)`` as the ordered product of its linear factors."""
    out = WeylElement.const(1, w.dim, w.base_count)
    for r in b.root_list():
        out = mul_euler(out, w, -r)
    return out


def commutator(p: WeylElement, q: WeylElement) -> WeylElement:
    return multiply(p, q) - multiply(q, p)


def euler_field(w: WeightVector) -> WeylElement:
    """``sum_i n_i t_i D_{t_i}`` over the fiber coordinates."""
    dim = w.dim
    terms = {}
    for j, n in enumerate(w.weights):
        e = [0] * dim
        e[w.base_count + j] = 1
        terms[(tuple(e), tuple(e))] = n
    return WeylElement(dim, terms, w.base_count)


def fiber_monomial(w: WeightVector, alpha: Sequence[int]) -> WeylElement:
    """``t^alpha`` for a fiber multi-index."""
    a = [0] * w.base_count + list(alpha)
    return WeylElement.monomial(a, [0] * w.dim, 1, w.base_count)


def v_degree(p: WeylElement, w: WeightVector):
    """Weighted V-degree: ``max(sum beta_i n_i - sum alpha_i n_i)`` over terms."""
    if p.dim != w.dim:
        raise WeylDimensionError("weight vector does not match dim")
    if p.is_zero():
        return NEG_INF
    b0 = w.base_count
    best = None
    for (a, b) in p.terms:
        s = Fraction(0)
        for j, n in enumerate(w.weights):
            s += (b[b0 + j] - a[b0 + j]) * n
        if best is None or s > best:
            best = s
    return best


def fourier(p: WeylElement) -> WeylElement:
    """Algebra automorphism ``x_i -> D_i``, ``D_i -> -x_i``."""
    dim = p.dim
    out = WeylElement._raw(dim, {}, p.base)
    zero = (0,) * dim
    for (a, b), c in p.terms.items():
        # x^a D^b  ->  D^a (-x)^b
        sign = -1 if sum(b) % 2 else 1
        left = {(zero, a): 1}
        right = {(b, zero): sign * c}
        out = out + WeylElement._raw(dim, _canon_terms(_backend.weyl_mul_terms(left, right, dim)), p.base)
    return out


def sign_flip(p: WeylElement) -> WeylElement:
    """Pullback by ``x -> -x`` (so also ``D -> -D``)."""
    out = {}
    for (a, b), c in p.terms.items():
        out[(a, b)] = -c if (sum(a) + sum(b)) % 2 else c  # parity of total degree
    return WeylElement._raw(p.dim, out, p.base)


def theta(dim: int, base: int | None = None) -> WeylElement:
    """Euler operator ``sum_i x_i D_i`` over all coordinates."""
    base = dim if base is None else base
    terms = {}
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        terms[(tuple(e), tuple(e))] = Fraction(1)
    return WeylElement(dim, terms, base)


# --- polynomials in one variable, stored by roots ---------------------------

class BPoly:
    """Monic polynomial in T given by its roots with multiplicities."""

    __slots__ = ("roots",)

    def __init__(self, roots: Mapping | Iterable = ()):
        acc: dict[Fraction, int] = {}
        items = roots.items() if isinstance(roots, Mapping) else ((r, 1) for r in roots)
        for r, m in items:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            r = Q(r)
            acc[r] = acc.get(r, 0) + int(m)
        self.roots = dict(sorted(acc.items()))

    @property
    def degree(self) -> int:
        return sum(self.roots.values())

    def root_list(self) -> list[Fraction]:
        return [r for r, m in self.roots.items() for _ in range(m)]

    def coeffs(self) -> list[Fraction]:
        """Ascending coefficients."""
        c = [Fraction(1)]
        for r in self.root_list():
            nxt = [Fraction(0)] * (len(c) + 1)
            for i, x in enumerate(c):
                nxt[i + 1] += x
                nxt[i] -= r * x
            c = nxt
        return c

    def __call__(self, x):
        if isinstance(x, WeylElement):
            return self.at_operator(x)
        out = Fraction(1)
        for r in self.root_list():
            out *= Q(x) - r
        return out

    def at_operator(self, eta: WeylElement) -> WeylElement:
        """``prod (eta - r)``, one factor at a time."""
        out = WeylElement.const(1, eta.dim, eta.base)
        for r in self.root_list():
            out = multiply(out, eta - r)
        return out

    def contains(self, other: "BPoly") -> bool:
        """Multiset inclusion ``other <= self``."""
        return all(self.roots.get(r, 0) >= m for r, m in other.roots.items())

    def __mul__(self, other: "BPoly") -> "BPoly":
        acc = dict(self.roots)
        for r, m in other.roots.items():
            acc[r] = acc.get(r, 0) + m
        return BPoly(acc)

    def __eq__(self, other):
        return isinstance(other, BPoly) and self.roots == other.roots

    def __hash__(self):
        return hash(tuple(self.roots.items()))

    def __repr__(self):
        def factor(r):
            return f"(T + {-r})" if r <= 0 else f"(T - {r})"

        return "BPoly(" + "".join(factor(r) + (f"^{m}" if m > 1 else "") for r, m in self.roots.items()) + ")"

    def to_json(self) -> list[dict]:
        return [{"root": fmt_q(r), "multiplicity": m} for r, m in self.roots.items()]

    @classmethod
    def from_json(cls, data) -> "BPoly":
        return cls({Q(d["root"]): int(d["multiplicity"]) for d in data})


# --- text form --------------------------------------------------------------

def _var(i: int, base: int, deriv: bool) -> str:
    name = f"x{i + 1}" if i < base else f"t{i - base + 1}"
    return ("D" + name) if deriv else name


def _mono(a, b, base) -> str:
    parts = []
    for i, e in enumerate(a):
        if e:
            parts.append(_var(i, base, False) + (f"^{e}" if e > 1 else ""))
    for i, e in enumerate(b):
        if e:
            parts.append(_var(i, base, True) + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


def to_text(p: WeylElement) -> str:
    """Render as e.g. ``3*t1^2*Dt1 - 1/2*x1*Dt2``.

    Terms are sorted lexicographically by their monomial text, with the
    constant term last.
    """
    if p.is_zero():
        return "0"
    chunks = []
    monos = sorted(((_mono(a, b, p.base), (a, b)) for (a, b) in p.terms), key=lambda m: (m[0] == "", m[0]))
    for mono, key in monos:
        c = p.terms[key]
        mag = abs(c)
        mag_s = str(mag)
        if mono:
            body = mono if mag == 1 else f"{mag_s}*{mono}"
        else:
            body = mag_s
        if not chunks:
            chunks.append(("-" if c < 0 else "") + body)
        else:
            chunks.append((" - " if c < 0 else " + ") + body)
    return "".join(chunks)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>D?[xt]\d+)(?:\^(?P<pow>\d+))?|(?P<op>[-+*]))")


class WeylParseError(ValueError):
    pass


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WeylParseError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        yield m


def infer_base(text: str, dim: int) -> int:
    """Base count implied by variable names: all-x text uses every coordinate as base."""
    xs = [int(n) for n in re.findall(r"(?<![A-Za-z])D?x(\d+)", text)]
    ts = re.findall(r"(?<![A-Za-z])D?t(\d+)", text)
    if not ts:
        return dim
    return max(xs, default=0)


def parse(text: str, dim: int, base: int | None = None) -> WeylElement:
    """Parse operator text; factors are multiplied in the written order."""
    if base is None:
        base = infer_base(text, dim)
    if not 0 <= base <= dim:
        raise WeylParseError("more base variables than coordinates")
    total = WeylElement(dim, {}, base)
    term = None
    sign = 1
    expect_factor = True

    def index(name: str) -> tuple[int, bool]:
        deriv = name.startswith("D")
        core = name[1:] if deriv else name
        k = int(core[1:])
        if k < 1:
            raise WeylParseError(f"bad variable {name}")
        i = k - 1 if core[0] == "x" else base + k - 1
        if core[0] == "x" and k > base or i >= dim:
            raise WeylParseError(f"variable {name} out of range for dim {dim}")
        return i, deriv

    for m in _tokens(text):
        if m.group("op") in ("+", "-"):
            if expect_factor and term is not None:
                raise WeylParseError("dangling operator")
            if term is not None:
                total = total + term.scale(sign)
            sign = 1 if m.group("op") == "+" else -1
            term = None
            expect_factor = True
            continue
        if m.group("op") == "*":
            if expect_factor:
                raise WeylParseError("dangling '*'")
            expect_factor = True
            continue
        if not expect_factor:
            raise WeylParseError("missing '*' between factors")
        if m.group("num"):
            f = WeylElement.const(Fraction(m.group("num")), dim, base)
        else:
            i, deriv = index(m.group("var"))
            f = (WeylElement.der if deriv else WeylElement.pos)(i, dim, base)
            if m.group("pow"):
                f = f ** int(m.group("pow"))
        term = f if term is None else multiply(term, f)
        expect_factor = False
    if expect_factor:
        raise WeylParseError("expression ends with an operator")
    return total + term.scale(sign)
