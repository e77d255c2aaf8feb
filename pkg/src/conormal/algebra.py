"""Exact scalars, monomial orders and sparse multivariate polynomials.

Monomials are stored as single Python integers.  Every supported order is a
linear map ``e -> W e`` followed by a lexicographic comparison, so the order key
of a product is the sum of the keys.  The key is packed above a field-per-variable
copy of the exponent vector (each field carries a guard bit), which gives

* multiplication of monomials  -> integer addition,
* comparison in the order      -> integer comparison,
* divisibility                 -> one masked subtraction.

Public methods speak exponent tuples; the packed integers never leave this
module and ``groebner``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, RingMismatchError, UnknownVariableError

try:  # gmpy2 rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = Fraction

_FIELD_BITS = 16
_FIELD_MASK = (1 << (_FIELD_BITS - 1)) - 1
_DIGIT_BASE = 1 << _FIELD_BITS
MAX_EXPONENT = 1 << 14


# ---------------------------------------------------------------------------
# Coefficient fields


class RationalField:
    """The field of rational numbers, elements are reduced ``mpq`` values."""

    characteristic = 0
    name = "QQ"

    def __call__(self, value):
        if isinstance(value, str):
            value = Fraction(value.strip())
        elif isinstance(value, Mod):
            raise DomainError("cannot lift a prime-field element to QQ")
        return _mpq(value)

    @property
    def zero(self):
        return _mpq(0)

    @property
    def one(self):
        return _mpq(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _is_probable_prime(p):
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """GF(p) for a prime p > 2**15; used only as a fast probabilistic cross-check."""

    def __init__(self, p):
        p = int(p)
        if p <= 1 << 15 or not _is_probable_prime(p):
            raise DomainError(f"prime field needs a prime > 2^15, got {p}")
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, Mod):
            if value.p != p:
                raise DomainError("prime field mismatch")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, int):
            return Mod(value % p, p)
        value = Fraction(value)
        den = value.denominator % p
        if den == 0:
            raise DomainError(f"denominator divisible by {p}")
        return Mod(value.numerator * pow(den, -1, p) % p, p)

    @property
    def zero(self):
        return Mod(0, self.characteristic)

    @property
    def one(self):
        return Mod(1, self.characteristic)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __repr__(self):
        return self.name


class Mod:
    """Element of GF(p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod((self.v + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod((self.v - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod((o - self.v) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v % self.p, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * pow(o, -1, self.p) % self.p, self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o * pow(self.v, -1, self.p) % self.p, self.p)

    def __pow__(self, k):
        return Mod(pow(self.v, k, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return str(self.v)


def _format_scalar(c):
    if isinstance(c, Mod):
        return str(c.v)
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


# ---------------------------------------------------------------------------
# Monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order given by a weight matrix and lexicographic tie-breaks.

    ``kind`` is one of ``lex``, ``grevlex``, ``block`` (grevlex inside each block,
    blocks compared lexicographically; ``blocks`` holds the block sizes in ring
    variable order) and ``weighted`` (weighted degree, grevlex tie-break).
    """

    kind: str = "grevlex"
    blocks: tuple = ()
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block", "weighted"):
            raise DomainError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and (not self.blocks or min(self.blocks) < 1):
            raise DomainError("block order needs positive block sizes")
        if self.kind == "weighted" and (not self.weights or min(self.weights) < 1):
            raise DomainError("weighted order needs positive integer weights")

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def block(cls, *sizes):
        return cls("block", blocks=tuple(int(s) for s in sizes))

    @classmethod
    def weighted(cls, *weights):
        return cls("weighted", weights=tuple(int(w) for w in weights))

    def rows(self, n):
        """Weight matrix rows; comparing ``[r . e for r in rows]`` lexicographically is the order."""
        if self.kind == "lex":
            return [[int(i == j) for j in range(n)] for i in range(n)]
        if self.kind == "grevlex":
            return _grevlex_rows(n, 0, n)
        if self.kind == "block":
            if sum(self.blocks) != n:
                raise DomainError(f"block sizes {self.blocks} do not cover {n} variables")
            rows, start = [], 0
            for size in self.blocks:
                rows.extend(_grevlex_rows(n, start, size))
                start += size
            return rows
        if len(self.weights) != n:
            raise DomainError(f"{len(self.weights)} weights for {n} variables")
        return [list(self.weights)] + _grevlex_rows(n, 0, n)

    def key(self, exps):
        """Order key of an exponent vector (reference implementation used by tests)."""
        return tuple(sum(r * e for r, e in zip(row, exps)) for row in self.rows(len(exps)))

    def __str__(self):
        if self.kind == "block":
            return "block(" + ",".join(map(str, self.blocks)) + ")"
        if self.kind == "weighted":
            return "weighted(" + ",".join(map(str, self.weights)) + ")"
        return self.kind


def _grevlex_rows(n, start, size):
    rows = [[int(start <= j < start + size) for j in range(n)]]
    for i in range(start + size - 1, start, -1):
        rows.append([-int(j == i) for j in range(n)])
    return rows


def _as_order(order):
    if isinstance(order, MonomialOrder):
        return order
    if isinstance(order, str):
        return MonomialOrder(order)
    raise DomainError(f"not a monomial order: {order!r}")


# ---------------------------------------------------------------------------
# Rings


def _split_names(variables):
    if isinstance(variables, str):
        variables = variables.replace(",", " ").split()
    names = tuple(str(v) for v in variables)
    if len(set(names)) != len(names):
        raise DomainError(f"duplicate variable names in {names}")
    return names


class PolynomialRing:
    """``field[variables]`` with a fixed monomial order; variables[0] is the largest."""

    def __init__(self, variables, order="grevlex", field=QQ):
        self.variables = _split_names(variables)
        self.order = _as_order(order)
        self.field = field
        n = len(self.variables)
        self.nvars = n
        self._index = {v: i for i, v in enumerate(self.variables)}
        rows = self.order.rows(n) if n else []
        nrows = len(rows)
        shift = _FIELD_BITS * n
        self._shift = shift
        self._mask = (1 << shift) - 1
        self._guard = sum(1 << (_FIELD_BITS * i + _FIELD_BITS - 1) for i in range(n))
        gens = []
        for i in range(n):
            c = sum(rows[r][i] * _DIGIT_BASE ** (nrows - 1 - r) for r in range(nrows))
            gens.append((c << shift) + (1 << (_FIELD_BITS * i)))
        self._gen_ints = tuple(gens)
        self._hash = hash((self.variables, self.order, self.field))

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, PolynomialRing)
            and self.variables == other.variables
            and self.order == other.order
            and self.field == other.field
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.variables)}] ({self.order})"

    # -- monomial codec -----------------------------------------------------
    def encode(self, exps):
        if len(exps) != self.nvars:
            raise DomainError(f"exponent vector {tuple(exps)} has wrong length for {self!r}")
        m = 0
        for e, g in zip(exps, self._gen_ints):
            if e:
                if e < 0 or e >= MAX_EXPONENT:
                    raise DomainError(f"exponent {e} out of range")
                m += e * g
        return m

    def decode(self, m):
        p = m & self._mask
        return tuple((p >> (_FIELD_BITS * i)) & _FIELD_MASK for i in range(self.nvars))

    def monomial_degree(self, m):
        return (m & self._mask) % ((1 << _FIELD_BITS) - 1) if self.nvars else 0

    def divides(self, a, b):
        g = self._guard
        return ((b & self._mask) + g - (a & self._mask)) & g == g

    def lcm(self, a, b):
        ea, eb = self.decode(a), self.decode(b)
        return self.encode(tuple(max(x, y) for x, y in zip(ea, eb)))

    # -- construction -------------------------------------------------------
    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r} in {self!r}") from None

    def __contains__(self, name):
        return name in self._index

    @property
    def gens(self):
        return tuple(Polynomial(self, {g: self.field.one}) for g in self._gen_ints)

    def gen(self, name):
        return Polynomial(self, {self._gen_ints[self.index(name)]: self.field.one})

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        return Polynomial(self, {0: c} if c else {})

    def from_terms(self, terms):
        """Build from an iterable of ``(coefficient, exponent_tuple)`` pairs."""
        out = {}
        for c, exps in terms:
            c = self.field(c)
            if not c:
                continue
            m = self.encode(tuple(exps))
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self, out)

    def from_dict(self, mapping):
        return self.from_terms((c, e) for e, c in mapping.items())

    def parse(self, text):
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def __call__(self, value):
        if isinstance(value, Polynomial):
            return value.to_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    # -- derived rings --------------------------------------------------------
    def with_order(self, order):
        order = _as_order(order)
        if order == self.order:
            return self
        return PolynomialRing(self.variables, order, self.field)

    def with_field(self, field):
        return PolynomialRing(self.variables, self.order, field)

    def extend(self, names, front=False, order=None):
        names = _split_names(names)
        clash = [v for v in names if v in self._index]
        if clash:
            raise DomainError(f"variable collision: {clash}")
        variables = names + self.variables if front else self.variables + names
        if order is None:
            order = self.order if self.order.kind in ("lex", "grevlex") else "grevlex"
        return PolynomialRing(variables, order, self.field)

    def drop(self, names, order=None):
        names = set(_split_names(names))
        for v in names:
            self.index(v)
        keep = [v for v in self.variables if v not in names]
        if order is None:
            order = self.order if self.order.kind in ("lex", "grevlex") else "grevlex"
        return PolynomialRing(keep, order, self.field)

    def fresh_name(self, stem="t"):
        name, k = stem, 0
        while name in self._index:
            k += 1
            name = f"{stem}{k}"
        return name

    def random_element(self, rng, terms=4, degree=3, height=5):
        """Random sparse polynomial with integer coefficients in ``[-height, height]``."""
        out = []
        for _ in range(terms):
            d = rng.randint(0, degree)
            exps = [0] * self.nvars
            for _ in range(d):
                exps[rng.randrange(self.nvars)] += 1
            c = rng.randint(-height, height)
            out.append((c, exps))
        return self.from_terms(out)


def random_rational(rng, height=9):
    """Nonzero small-height rational from a seeded ``random.Random``."""
    while True:
        num = rng.randint(-height, height)
        if num:
            return Fraction(num, rng.randint(1, 3))


# ---------------------------------------------------------------------------
# Polynomials


def _scalar_like(x):
    return isinstance(x, (int, Rational, Mod)) or type(x) is type(_mpq(0))


class Polynomial:
    """Immutable sparse polynomial; ``terms()`` lists terms strictly descending."""

    __slots__ = ("ring", "_t", "_h", "_deg")

    def __init__(self, ring, terms):
        self.ring = ring
        self._t = terms
        self._h = None
        self._deg = None

    # -- basic queries ------------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def __len__(self):
        return len(self._t)

    def terms(self):
        """``[(coeff, exps), ...]`` sorted strictly descending in the ring order."""
        dec = self.ring.decode
        return [(self._t[m], dec(m)) for m in sorted(self._t, reverse=True)]

    def monomials(self):
        return [e for _, e in self.terms()]

    def coefficients(self):
        return [c for c, _ in self.terms()]

    def as_dict(self):
        dec = self.ring.decode
        return {dec(m): c for m, c in self._t.items()}

    def leading_monomial(self):
        self._require_nonzero()
        return self.ring.decode(max(self._t))

    def leading_coefficient(self):
        self._require_nonzero()
        return self._t[max(self._t)]

    def leading_term(self):
        self._require_nonzero()
        m = max(self._t)
        return Polynomial(self.ring, {m: self._t[m]})

    def _require_nonzero(self):
        if not self._t:
            raise DomainError("zero polynomial has no leading term")

    def total_degree(self):
        if self._deg is None:
            md = self.ring.monomial_degree
            self._deg = max((md(m) for m in self._t), default=-1)
        return self._deg

    def degree(self, var):
        i = self.ring.index(var)
        dec = self.ring.decode
        return max((dec(m)[i] for m in self._t), default=-1)

    def variables(self):
        """Names of the variables that actually occur."""
        used = [0] * self.ring.nvars
        for m in self._t:
            for i, e in enumerate(self.ring.decode(m)):
                if e:
                    used[i] = 1
        return tuple(v for v, u in zip(self.ring.variables, used) if u)

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_coefficient(self):
        return self._t.get(0, self.ring.field.zero)

    def is_homogeneous(self):
        md = self.ring.monomial_degree
        return len({md(m) for m in self._t}) <= 1

    def is_linear(self):
        return self.total_degree() <= 1

    def monic(self):
        if not self._t:
            return self
        inv = 1 / self.leading_coefficient()
        return Polynomial(self.ring, {m: c * inv for m, c in self._t.items()})

    # -- equality / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if _scalar_like(other):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.ring, frozenset(self._t.items())))
        return self._h

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if _scalar_like(other):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._t)
        for m, c in other._t.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _scalar_like(other) and not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero
            return Polynomial(self.ring, {m: v * c for m, v in self._t.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._t or not other._t:
            return self.ring.zero
        if self.total_degree() + other.total_degree() >= MAX_EXPONENT:
            raise DomainError("product degree exceeds the supported exponent range")
        out = {}
        get = out.get
        for ma, ca in self._t.items():
            for mb, cb in other._t.items():
                m = ma + mb
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _scalar_like(other) and not isinstance(other, Polynomial):
            return self * (1 / self.ring.field(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial powers need a nonnegative integer exponent")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus and maps --------------------------------------------------
    def diff(self, var):
        """Formal partial derivative."""
        if isinstance(var, Polynomial):
            var = _single_variable(var)
        i = self.ring.index(var)
        g = self.ring._gen_ints[i]
        dec = self.ring.decode
        out = {}
        for m, c in self._t.items():
            e = dec(m)[i]
            if e:
                out[m - g] = c * e
        return Polynomial(self.ring, out)

    def to_ring(self, target):
        """Re-express in ``target`` by variable name (orders and variable order may differ)."""
        if target == self.ring:
            return self if target is self.ring else Polynomial(target, self._t)
        src = self.ring
        coeff = None
        if target.field != src.field:
            if not target.field.characteristic:
                raise DomainError("cannot map polynomials back to QQ")
            coeff = target.field
        positions = []
        for v in src.variables:
            positions.append(target._index.get(v))
        gens = target._gen_ints
        out = {}
        for m, c in self._t.items():
            e = src.decode(m)
            k = 0
            for i, ei in enumerate(e):
                if ei:
                    j = positions[i]
                    if j is None:
                        raise UnknownVariableError(
                            f"variable {src.variables[i]!r} missing from {target!r}"
                        )
                    k += ei * gens[j]
            if coeff is not None:
                c = coeff(c)
                if not c:
                    continue
            out[k] = out[k] + c if k in out else c
        return Polynomial(target, {m: c for m, c in out.items() if c})

    def subs(self, bindings, ring=None):
        """Apply the ring map ``var -> bindings[var]``; unbound variables map to themselves."""
        target = ring or self.ring
        images = []
        for v in self.ring.variables:
            img = bindings.get(v)
            if img is None:
                images.append(None if v not in target else target.gen(v))
            else:
                if not isinstance(img, Polynomial):
                    img = target.constant(img)
                elif img.ring != target:
                    raise RingMismatchError(f"binding for {v} is not in {target!r}")
                images.append(img)
        for k in bindings:
            if isinstance(k, Polynomial):
                raise DomainError("bindings must be keyed by variable name")
            self.ring.index(k)
        powers = [{0: target.one, 1: img} if img is not None else None for img in images]
        result = {}
        for m, c in self._t.items():
            term = target.constant(c)
            for i, e in enumerate(self.ring.decode(m)):
                if not e:
                    continue
                cache = powers[i]
                if cache is None:
                    raise UnknownVariableError(
                        f"variable {self.ring.variables[i]!r} has no image in {target!r}"
                    )
                if e not in cache:
                    cache[e] = images[i] ** e
                term = term * cache[e]
            for tm, tc in term._t.items():
                v = result.get(tm)
                result[tm] = tc if v is None else v + tc
        return Polynomial(target, {m: c for m, c in result.items() if c})

    def evaluate(self, point):
        """Value at a point given as ``{name: scalar}`` covering every occurring variable."""
        field = self.ring.field
        vals = []
        for v in self.ring.variables:
            vals.append(field(point[v]) if v in point else None)
        total = field.zero
        for m, c in self._t.items():
            t = c
            for i, e in enumerate(self.ring.decode(m)):
                if e:
                    if vals[i] is None:
                        raise UnknownVariableError(f"no value for {self.ring.variables[i]!r}")
                    t = t * vals[i] ** e
            total = total + t
        return total

    def homogenize(self, var, ring=None):
        """Homogenize with a new variable appended to the ring; returns a polynomial of degree ``deg f``."""
        target = ring or self.ring.extend([var])
        if var in self.ring:
            raise DomainError(f"variable collision: {var!r} already in the ring")
        d = self.total_degree()
        md = self.ring.monomial_degree
        src_vars = self.ring.variables
        out = []
        for c, e in self.terms():
            named = dict(zip(src_vars, e))
            named[var] = d - md(self.ring.encode(e))
            out.append((c, tuple(named.get(v, 0) for v in target.variables)))
        return target.from_terms(out)

    def dehomogenize(self, var, ring=None):
        """Set ``var = 1`` and drop it from the ring."""
        target = ring or self.ring.drop([var])
        self.ring.index(var)
        out = []
        for c, e in self.terms():
            named = {v: k for v, k in zip(self.ring.variables, e) if v != var}
            out.append((c, tuple(named.get(v, 0) for v in target.variables)))
        return target.from_terms(out)

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        names = self.ring.variables
        for c, e in self.terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            s = _format_scalar(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _single_variable(p):
    vs = p.variables()
    if len(p) != 1 or len(vs) != 1 or p.total_degree() != 1:
        raise DomainError(f"{p} is not a variable")
    return vs[0]


def make_ring(variables, order="grevlex", field=QQ):
    """Convenience: the ring and its generators, ``R, (x, y) = make_ring("x y")``."""
    R = PolynomialRing(variables, order, field)
    return R, R.gens


def seeded_rng(seed):
    return random.Random(seed)


def exact_quotient(f, g):
    """``f / g`` for polynomials when ``g`` divides ``f`` exactly; raises otherwise."""
    if g.ring != f.ring:
        raise RingMismatchError("ring mismatch in exact division")
    if not g:
        raise DomainError("division by the zero polynomial")
    ring = f.ring
    lm = max(g._t)
    lc = g._t[lm]
    rest = dict(f._t)
    quot = {}
    while rest:
        m = max(rest)
        if not ring.divides(lm, m):
            raise DomainError(f"{g} does not divide {f}")
        shift = m - lm
        c = rest[m] / lc
        quot[shift] = c
        for gm, gc in g._t.items():
            nm = gm + shift
            v = rest.get(nm)
            v = -c * gc if v is None else v - c * gc
            if v:
                rest[nm] = v
            else:
                rest.pop(nm, None)
    return Polynomial(ring, quot)
