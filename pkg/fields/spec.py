"""
Exact scalar fields: GF(p), GF(p^n) and the rationals.

Finite field elements are canonical integer indices: the element
c_0 + c_1 w + ... + c_{n-1} w^{n-1} of GF(p)[w]/(f) has index
c_0 + c_1 p + ... + c_{n-1} p^{n-1}, so the prime subfield comes first in
enumeration order. Multiplication and inversion go through log/antilog
tables built once per (p, n, modulus). Rationals are Fraction objects.

Every FieldSpec exposes two layers:
  * raw, vectorised operations on numpy arrays (int64 indices, or object
    arrays of Fraction) used by the linear algebra kernels;
  * FieldElem, an immutable scalar wrapper with operator overloading.
"""
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import (
    DegenerateLeadingCoefficient,
    DivisionByZero,
    FieldMismatch,
    NoNonsquare,
    Unsupported,
    UnsupportedField,
)

logger = logging.getLogger(__name__)

FINITE = 'finite'
RATIONAL = 'rational'

MAX_ORDER = 2 ** 16

# Conway polynomials, coefficients low-to-high.
CONWAY_POLYNOMIALS = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
}

# Bound on |numerator| used when sampling rationals.
RATIONAL_SAMPLE_RANGE = 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def _prime_power(q: int) -> Optional[Tuple[int, int]]:
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            return (p, n) if q == 1 else None
    return (q, 1) if q >= 2 else None


# Polynomials over GF(p) as coefficient lists, low-to-high. Only used while
# building tables, so plain Python is fine here.

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _poly_trim([c % p for c in a])
    b = _poly_trim([c % p for c in b])
    lead_inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        coef = a[-1] * lead_inv % p
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a, b, modulus, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, modulus, p)


def _monic_polys(degree, p):
    for k in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(k % p)
            k //= p
        yield coeffs + [1]


def is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    """Exhaustive factor check: no monic factor of degree <= n/2."""
    f = _poly_trim([c % p for c in coeffs])
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_mod(f, g, p):
                return False
    return True


def _index_to_poly(index, p, n):
    digits = []
    for _ in range(n):
        digits.append(index % p)
        index //= p
    return _poly_trim(digits)


def _poly_to_index(poly, p):
    return sum(c * p ** i for i, c in enumerate(poly))


class _Tables(NamedTuple):
    exp: np.ndarray
    log: np.ndarray
    generator: int


@lru_cache(maxsize=None)
def _build_tables(p: int, n: int, modulus: Tuple[int, ...]) -> _Tables:
    q = p ** n
    mod = list(modulus)
    if q == 2:
        candidates = [1]
    elif n > 1:
        # x itself is primitive for Conway moduli
        candidates = [p] + [g for g in range(2, q) if g != p]
    else:
        candidates = list(range(2, q))
    for g in candidates:
        g_poly = _index_to_poly(g, p, n)
        exp = np.zeros(q - 1, dtype=np.int64)
        cur = [1]
        ok = True
        for k in range(q - 1):
            idx = _poly_to_index(cur, p)
            if k > 0 and idx == 1:
                ok = False
                break
            exp[k] = idx
            cur = _poly_mulmod(cur, g_poly, mod, p) if n > 1 else [cur[0] * g % p]
        if ok:
            log = np.zeros(q, dtype=np.int64)
            log[exp] = np.arange(q - 1, dtype=np.int64)
            logger.debug(f"Built GF({p}^{n}) tables with generator index {g}")
            return _Tables(exp=exp, log=log, generator=g)
    raise UnsupportedField(f"No multiplicative generator found for GF({p}^{n}) modulus {modulus}")


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: int = 0
    n: int = 1
    modulus: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == RATIONAL:
            if self.p or self.n != 1 or self.modulus:
                raise UnsupportedField("The rational field takes no p, n or modulus")
            return
        if self.kind != FINITE:
            raise UnsupportedField(f"Unknown field kind: {self.kind}")
        if not is_prime(self.p):
            raise UnsupportedField(f"{self.p} is not prime")
        if self.n < 1 or not 2 <= self.p ** self.n <= MAX_ORDER:
            raise UnsupportedField(f"GF({self.p}^{self.n}) is outside the supported range 2..{MAX_ORDER}")
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise UnsupportedField(f"Modulus must be monic of degree {self.n}: {self.modulus}")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise UnsupportedField(f"Modulus coefficients must lie in 0..{self.p - 1}")
        if self.n > 1 and not is_irreducible_mod_p(self.modulus, self.p):
            raise UnsupportedField(f"Modulus {self.modulus} is reducible over GF({self.p})")

    # construction

    @classmethod
    def finite(cls, p: int, n: int = 1, modulus: Optional[Sequence[int]] = None) -> 'FieldSpec':
        if not is_prime(p) or n < 1 or p ** n > MAX_ORDER:
            raise UnsupportedField(f"GF({p}^{n}) is not a supported finite field")
        if modulus is None:
            if n == 1:
                modulus = (0, 1)
            elif (p, n) in CONWAY_POLYNOMIALS:
                modulus = CONWAY_POLYNOMIALS[(p, n)]
            else:
                modulus = least_primitive_modulus(p, n)
        return cls(FINITE, p, n, tuple(int(c) % p for c in modulus))

    @classmethod
    def rational(cls) -> 'FieldSpec':
        return cls(RATIONAL)

    @classmethod
    def parse(cls, token: str) -> 'FieldSpec':
        """Parse a command-line token: gf3, gf2^3, gf9, rational."""
        text = token.strip().lower()
        if text in ('rational', 'q', 'qq'):
            return cls.rational()
        match = re.fullmatch(r'gf\(?(\d+)(?:\^(\d+))?\)?', text)
        if not match:
            raise UnsupportedField(f"Cannot parse field token: {token!r}")
        base = int(match.group(1))
        if match.group(2):
            if not is_prime(base):
                raise UnsupportedField(f"gfP^N needs a prime P, got {base}")
            return cls.finite(base, int(match.group(2)))
        split = _prime_power(base)
        if split is None:
            raise UnsupportedField(f"{base} is not a prime power")
        return cls.finite(*split)

    # descriptive

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise Unsupported("The rational field has no finite order")
        return self.p ** self.n

    @property
    def characteristic(self) -> int:
        return self.p if self.is_finite else 0

    @property
    def token(self) -> str:
        if self.is_rational:
            return 'rational'
        return f"gf{self.p}" if self.n == 1 else f"gf{self.p}^{self.n}"

    def __str__(self):
        if self.is_rational:
            return 'Q'
        return f"GF({self.p})" if self.n == 1 else f"GF({self.p}^{self.n})"

    def to_json(self) -> dict:
        if self.is_rational:
            return {'kind': RATIONAL}
        return {'kind': FINITE, 'p': self.p, 'n': self.n, 'modulus': list(self.modulus)}

    @property
    def _tables(self) -> _Tables:
        return _build_tables(self.p, self.n, self.modulus)

    # scalars

    def __call__(self, value) -> 'FieldElem':
        """Integer embedding (k -> k mod p), or a Fraction/'a/b' string over Q."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch(f"{value.field} element used in {self}")
            return value
        return FieldElem(self, self.embed(value))

    def element(self, index: int) -> 'FieldElem':
        """Element by canonical index (finite fields)."""
        if not 0 <= index < self.order:
            raise ValueError(f"Index {index} out of range for {self}")
        return FieldElem(self, int(index))

    def wrap(self, raw) -> 'FieldElem':
        return FieldElem(self, int(raw) if self.is_finite else Fraction(raw))

    def embed(self, value):
        if self.is_rational:
            if isinstance(value, str):
                return Fraction(value)
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"{value} has no image in {self}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def iter_elements(self):
        for index in range(self.order):
            yield FieldElem(self, index)

    @property
    def zero(self):
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self):
        return Fraction(1) if self.is_rational else 1

    # raw, vectorised arithmetic

    def zeros(self, shape) -> np.ndarray:
        if self.is_rational:
            return np.full(shape, Fraction(0), dtype=object)
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def array(self, values) -> np.ndarray:
        """Raw array from nested lists of ints, Fractions or FieldElems."""
        def convert(v):
            if isinstance(v, FieldElem):
                if v.field != self:
                    raise FieldMismatch(f"{v.field} element used in {self}")
                return v.value
            return self.embed(v)

        data = np.asarray(values, dtype=object)
        flat = [convert(v) for v in data.flat]
        if self.is_rational:
            out = np.empty(len(flat), dtype=object)
            out[:] = flat
            return out.reshape(data.shape)
        return np.asarray(flat, dtype=np.int64).reshape(data.shape)

    def copy(self, a) -> np.ndarray:
        return np.array(a, dtype=object if self.is_rational else np.int64, copy=True)

    def is_zero(self, a):
        return np.asarray(a == 0, dtype=bool) if isinstance(a, np.ndarray) else a == 0

    def _digitwise(self, a, b, op):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.n):
            out += (op(a // place % self.p, b // place % self.p) % self.p) * place
            place *= self.p
        return out

    def add(self, a, b):
        if self.is_rational:
            return a + b
        if self.n == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), b)
        return self._digitwise(a, b, np.add)

    def sub(self, a, b):
        if self.is_rational:
            return a - b
        if self.n == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), b)
        return self._digitwise(a, b, np.subtract)

    def neg(self, a):
        if self.is_rational:
            return -a
        return self.sub(0, a)

    def mul(self, a, b):
        if self.is_rational:
            return a * b
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return a * b % self.p
        t = self._tables
        prod = t.exp[(t.log[a] + t.log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv(self, a):
        if self.is_rational:
            if isinstance(a, np.ndarray):
                if np.any(a == 0):
                    raise DivisionByZero("Inverse of zero")
                return _object_map(lambda x: 1 / x, a)
            if a == 0:
                raise DivisionByZero("Inverse of zero")
            return 1 / Fraction(a)
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero(f"Inverse of zero in {self}")
        t = self._tables
        return t.exp[(-t.log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k: int):
        if self.is_rational:
            if isinstance(a, np.ndarray):
                return _object_map(lambda x: x ** k, a)
            return Fraction(a) ** k
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            return self.power(self.inv(a), -k)
        if k == 0:
            return np.ones_like(a)
        t = self._tables
        return np.where(a == 0, 0, t.exp[(t.log[a] * k) % (self.order - 1)])

    def sum(self, a, axis=0):
        """Field sum along an axis."""
        a = np.asarray(a)
        if a.shape[axis] == 0:
            shape = a.shape[:axis] + a.shape[axis + 1:]
            return self.zeros(shape)
        if self.is_rational:
            return a.sum(axis=axis)
        if self.n == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        out = 0
        place = 1
        for _ in range(self.n):
            out = out + (((a // place) % self.p).sum(axis=axis) % self.p) * place
            place *= self.p
        return np.asarray(out, dtype=np.int64)

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product of 2-D raw arrays."""
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"Shape mismatch {a.shape} @ {b.shape}")
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if self.is_rational:
            return np.asarray(a @ b, dtype=object)
        if self.n == 1:
            return (a @ b) % self.p
        return self.sum(self.mul(a[:, :, None], b[None, :, :]), axis=1)

    def random(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.is_finite:
            return rng.integers(0, self.order, size=size, dtype=np.int64)
        ints = rng.integers(-RATIONAL_SAMPLE_RANGE, RATIONAL_SAMPLE_RANGE + 1, size=size)
        return _object_map(lambda v: Fraction(int(v)), ints)

    # serialisation

    def to_json_value(self, raw):
        if self.is_finite:
            return int(raw)
        value = Fraction(raw)
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"

    def from_json_value(self, value):
        if self.is_rational:
            if isinstance(value, bool) or not isinstance(value, (int, str)):
                raise ValueError(f"Rational entries are ints or 'a/b' strings, got {value!r}")
            return Fraction(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"Finite field entries are integers, got {value!r}")
        if value < 0:
            return self.embed(value)
        if value >= self.order:
            raise ValueError(f"Index {value} out of range for {self}")
        return value

    def format_value(self, raw) -> str:
        if self.is_rational:
            return str(Fraction(raw))
        if self.n == 1:
            return str(int(raw))
        coeffs = _index_to_poly(int(raw), self.p, self.n)
        if not coeffs:
            return '0'
        terms = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if not c:
                continue
            mono = '' if i == 0 else ('w' if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return '+'.join(terms)


def _object_map(func, arr) -> np.ndarray:
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, value in np.ndenumerate(arr):
        out[idx] = func(value)
    return out


def least_primitive_modulus(p: int, n: int) -> Tuple[int, ...]:
    """Least monic irreducible of degree n (index order) whose root generates GF(p^n)*."""
    for coeffs in _monic_polys(n, p):
        if coeffs[0] == 0 or not is_irreducible_mod_p(coeffs, p):
            continue
        q = p ** n
        x = [0, 1]
        cur = [1]
        order = 0
        for k in range(1, q):
            cur = _poly_mulmod(cur, x, coeffs, p)
            if cur == [1]:
                order = k
                break
        if order == q - 1:
            return tuple(coeffs)
    raise UnsupportedField(f"No primitive modulus of degree {n} over GF({p})")


class FieldElem:
    """Immutable scalar of a FieldSpec."""

    __slots__ = ('field', 'value')

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'value', Fraction(value) if field.is_rational else int(value))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"Cannot combine {self.field} with {other.field}")
            return other.value
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field.embed(int(other) if isinstance(other, np.integer) else other)
        return NotImplemented

    def _wrap(self, raw):
        return FieldElem(self.field, raw)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.power(self.value, k))

    def inverse(self) -> 'FieldElem':
        return self._wrap(self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction, np.integer)):
            if self.field.is_rational:
                return self.value == other
            # only the representatives 0..p-1 of the prime subfield equal an integer
            return self.value < self.field.p and self.value == other
        return NotImplemented

    def __hash__(self):
        if self.field.is_rational or self.value < self.field.p:
            return hash(self.value)
        return hash((self.field, self.value))

    def __int__(self):
        if self.field.is_rational:
            return int(self.value)
        return self.value

    def __repr__(self):
        return f"FieldElem({self.field}, {self.field.format_value(self.value)})"

    def __str__(self):
        return self.field.format_value(self.value)

    def to_json(self):
        return self.field.to_json_value(self.value)


# Scalar operations

def _same_field(a: FieldElem, b: FieldElem) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatch(f"Cannot combine {a.field} with {b.field}")
    return a.field


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return FieldElem(_same_field(a, b), a.field.add(a.value, b.value))


def sub(a: FieldElem, b: FieldElem) -> FieldElem:
    return FieldElem(_same_field(a, b), a.field.sub(a.value, b.value))


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return FieldElem(_same_field(a, b), a.field.mul(a.value, b.value))


def inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def trace_raw(field: FieldSpec, a):
    if not field.is_finite:
        raise Unsupported("Trace is defined for finite fields only")
    total = a
    x = a
    for _ in range(field.n - 1):
        x = field.power(x, field.p)
        total = field.add(total, x)
    return total


def trace(a: FieldElem) -> FieldElem:
    """Tr(a) = a + a^p + ... + a^(p^(n-1)), an element of the prime subfield."""
    value = int(trace_raw(a.field, a.value))
    assert value < a.field.p, "trace left the prime subfield"
    return FieldElem(a.field, value)


def is_square(a: FieldElem) -> bool:
    field = a.field
    if field.is_rational:
        value = a.value
        if value == 0:
            return True
        if value < 0:
            return False
        return (math.isqrt(value.numerator) ** 2 == value.numerator
                and math.isqrt(value.denominator) ** 2 == value.denominator)
    if field.p == 2:
        raise Unsupported("Every element of GF(2^n) is a square")
    if a.value == 0:
        return True
    # the table generator is a non-square, so squares are the even powers
    return int(field._tables.log[a.value]) % 2 == 0


def sqrt(a: FieldElem) -> FieldElem:
    field = a.field
    if field.is_rational:
        if not is_square(a):
            raise Unsupported(f"{a} is not a square in Q")
        v = a.value
        return FieldElem(field, Fraction(math.isqrt(v.numerator), math.isqrt(v.denominator)))
    if a.value == 0:
        return a
    if field.p == 2:
        return a ** (field.order // 2)
    if not is_square(a):
        raise Unsupported(f"{a} is not a square in {field}")
    t = field._tables
    return FieldElem(field, int(t.exp[int(t.log[a.value]) // 2]))


@lru_cache(maxsize=None)
def find_nonsquare(field: FieldSpec) -> FieldElem:
    """Least non-square in enumeration order; -1 over Q."""
    if field.is_rational:
        return field(-1)
    if field.p == 2:
        raise NoNonsquare(f"{field} has no non-squares")
    for index in range(1, field.order):
        elem = FieldElem(field, index)
        if not is_square(elem):
            return elem
    raise NoNonsquare(f"{field} has no non-squares")


@lru_cache(maxsize=None)
def least_trace_one(field: FieldSpec) -> FieldElem:
    traces = trace_raw(field, field.elements())
    index = int(np.flatnonzero(traces == 1)[0])
    return FieldElem(field, index)


def quadratic_roots(a: FieldElem, b: FieldElem, c: FieldElem) -> list:
    """All roots of a t^2 + b t + c by exhaustive evaluation (finite fields)."""
    _same_field(a, b)
    field = _same_field(a, c)
    if not field.is_finite:
        raise Unsupported("Exhaustive root search needs a finite field")
    t = field.elements()
    values = field.add(field.add(field.mul(a.value, field.mul(t, t)), field.mul(b.value, t)), c.value)
    return [FieldElem(field, int(r)) for r in t[values == 0]]


def quadratic_irreducible(a: FieldElem, b: FieldElem, c: FieldElem) -> bool:
    _same_field(a, b)
    field = _same_field(a, c)
    if a.value == 0:
        raise DegenerateLeadingCoefficient("Leading coefficient is zero")
    if field.characteristic == 2:
        if b.value == 0:
            return False
        return trace(a * c / (b * b)).value == 1
    disc = b * b - 4 * a * c
    if disc.value == 0:
        return False
    return not is_square(disc)


def squarefree_class(a: FieldElem) -> Tuple[int, Fraction]:
    """For nonzero rational a, return (d, s) with a = d * s^2 and d a square-free integer."""
    if not a.field.is_rational or a.value == 0:
        raise Unsupported("Square classes are computed for nonzero rationals")
    value = a.value
    # a = num/den = (num*den) / den^2
    n = value.numerator * value.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    d = 1
    root = 1
    f = 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            root *= f
        if n % f == 0:
            n //= f
            d *= f
        f += 1
    d *= n
    return sign * d, Fraction(root, value.denominator)
