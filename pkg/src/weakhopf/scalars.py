"""Exact fields: the rationals, prime fields GF(p) and simple extensions Q[x]/(f).

Rational scalars are plain ``int`` / ``fractions.Fraction`` values (an integral
value may be either; both compare and hash equal).  Prime-field and extension
scalars are small immutable wrapper objects tagged with their field.

Every algorithm in the package divides only through ``field.inv`` so that the
``int / int -> float`` trap never fires.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DescriptorMismatch, DivisionByZero, NoSuchRoot


class Field:
    """Base class.  Subclasses are cached so equal fields are usually identical."""

    characteristic = 0
    zero: object
    one: object

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, a, b):
        return self.coerce(a) * self.inv(b)

    def parse(self, s: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    @property
    def descriptor(self) -> dict:
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(repr(sorted(self.descriptor.items())))

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor})"


# ---------------------------------------------------------------------------
# Rationals


def _clean_text(s: str) -> str:
    return str(s).strip().replace("−", "-").replace(" ", "")


def _rat(x):
    """Normalise a rational to int when integral."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Rationals(Field):
    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return _rat(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (FpElem, ExtElem)):
            raise DescriptorMismatch(f"{x!r} is not a rational")
        raise TypeError(f"cannot coerce {x!r} to a rational")

    def inv(self, x):
        x = self.coerce(x)
        if x == 0:
            raise DivisionByZero("inverse of 0")
        return _rat(Fraction(1) / x)

    def parse(self, s):
        try:
            return _rat(Fraction(_clean_text(s)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {s!r}") from exc

    def format(self, x):
        return str(_rat(Fraction(x)))

    @property
    def descriptor(self):
        return {"field": "Q"}


QQ = Rationals()


# ---------------------------------------------------------------------------
# Prime fields


class FpElem:
    __slots__ = ("v", "field")

    def __init__(self, v: int, field: "PrimeField"):
        self.v = v % field.p
        self.field = field

    def _other(self, o):
        if isinstance(o, FpElem):
            if o.field.p != self.field.p:
                raise DescriptorMismatch(f"GF({self.field.p}) vs GF({o.field.p})")
            return o.v
        if isinstance(o, bool) or not isinstance(o, int):
            if isinstance(o, (Fraction, ExtElem)):
                raise DescriptorMismatch(f"GF({self.field.p}) vs {o!r}")
            return NotImplemented
        return o

    def __add__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else FpElem(self.v + o, self.field)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else FpElem(self.v - o, self.field)

    def __rsub__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else FpElem(o - self.v, self.field)

    def __mul__(self, o):
        o = self._other(o)
        return NotImplemented if o is NotImplemented else FpElem(self.v * o, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.v, self.field)

    def __truediv__(self, o):
        return self * self.field.inv(o)

    def __rtruediv__(self, o):
        return self.field.inv(self) * o

    def __pow__(self, n: int):
        if n < 0:
            return self.field.inv(self) ** (-n)
        return FpElem(pow(self.v, n, self.field.p), self.field)

    def __eq__(self, o):
        if isinstance(o, FpElem):
            return o.field.p == self.field.p and o.v == self.v
        if isinstance(o, int):
            return self.v == o % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(("Fp", self.field.p, self.v))

    def __repr__(self):
        return f"{self.v} (mod {self.field.p})"


class PrimeField(Field):
    def __init__(self, p: int):
        from sympy import isprime

        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise ValueError(f"{p!r} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = FpElem(0, self)
        self.one = FpElem(1, self)

    def coerce(self, x):
        if isinstance(x, FpElem):
            if x.field.p != self.p:
                raise DescriptorMismatch(f"GF({x.field.p}) element in GF({self.p})")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return FpElem(x, self)
        if isinstance(x, Fraction):
            return FpElem(x.numerator, self) * self.inv(x.denominator)
        if isinstance(x, str):
            return self.parse(x)
        raise DescriptorMismatch(f"cannot coerce {x!r} into GF({self.p})")

    def inv(self, x):
        x = self.coerce(x)
        if x.v == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.p})")
        return FpElem(pow(x.v, -1, self.p), self)

    def parse(self, s):
        t = _clean_text(s)
        try:
            if "/" in t:
                a, b = t.split("/")
                return self.coerce(int(a)) * self.inv(int(b))
            return FpElem(int(t), self)
        except ValueError as exc:
            raise ValueError(f"bad GF({self.p}) literal {s!r}") from exc

    def format(self, x):
        return str(self.coerce(x).v)

    @property
    def descriptor(self):
        return {"field": "Fp", "p": self.p}


# ---------------------------------------------------------------------------
# Polynomials over Q (coefficient lists, low to high)


def _trim(c: Sequence) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(_rat(Fraction(a)) for a in c)


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b):
    """Quotient and remainder of a by nonzero b in Q[x]."""
    a = list(a)
    b = _trim(b)
    if not b:
        raise DivisionByZero("polynomial division by 0")
    lead_inv = Fraction(1) / b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * lead_inv
        if c == 0:
            continue
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    return _trim(q), _trim(a[: len(b) - 1])


def poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


# ---------------------------------------------------------------------------
# Simple extensions Q[x]/(f)

_TERM = re.compile(r"^(-?\d+(?:/\d+)?)?(x(?:\^(\d+))?)?$")


class ExtElem:
    __slots__ = ("c", "field")

    def __init__(self, coeffs, field: "Extension"):
        self.c = coeffs  # canonical: reduced, trimmed
        self.field = field

    def _other(self, o):
        if isinstance(o, ExtElem):
            if o.field is not self.field and o.field != self.field:
                raise DescriptorMismatch("extension fields differ")
            return o.c
        if isinstance(o, bool):
            o = int(o)
        if isinstance(o, (int, Fraction)):
            return _trim([o])
        if isinstance(o, FpElem):
            raise DescriptorMismatch(f"{o!r} is not in {self.field!r}")
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        n = max(len(o), len(self.c))
        s = [
            (self.c[i] if i < len(self.c) else 0) + (o[i] if i < len(o) else 0)
            for i in range(n)
        ]
        return ExtElem(_trim(s), self.field)

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(tuple(-a for a in self.c), self.field)

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return ExtElem(poly_sub(self.c, o), self.field)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return ExtElem(self.field._reduce(poly_mul(self.c, o)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self * self.field.inv(o)

    def __rtruediv__(self, o):
        return self.field.inv(self) * o

    def __pow__(self, n: int):
        if n < 0:
            return self.field.inv(self) ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        try:
            o = self._other(o)
        except DescriptorMismatch:
            return False
        if o is NotImplemented:
            return o
        return self.c == o

    def __hash__(self):
        if len(self.c) <= 1:
            return hash(self.c[0] if self.c else 0)
        return hash(("ext", self.c))

    def __repr__(self):
        return self.field.format(self)


class Extension(Field):
    """Q[x]/(modulus) for a monic modulus given low-to-high."""

    def __init__(self, modulus: Sequence):
        mod = _trim([QQ.coerce(a) for a in modulus])
        if len(mod) < 2:
            raise ValueError("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = mod
        self.degree = len(mod) - 1
        if self.degree <= 4 and not _is_irreducible(mod):
            raise ValueError(f"modulus {list(map(str, mod))} is reducible over Q")
        self.zero = ExtElem((), self)
        self.one = ExtElem((1,), self)
        self.gen = ExtElem(self._reduce((0, 1)), self)

    def _reduce(self, c):
        c = list(c)
        n = self.degree
        f = self.modulus
        for i in range(len(c) - 1, n - 1, -1):
            a = c[i]
            if a == 0:
                continue
            for j in range(n + 1):
                c[i - n + j] -= a * f[j]
        return _trim(c[:n])

    def coerce(self, x):
        if isinstance(x, ExtElem):
            if x.field is not self and x.field != self:
                raise DescriptorMismatch("extension fields differ")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction)):
            return ExtElem(_trim([x]), self)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (list, tuple)):
            return ExtElem(self._reduce(_trim([QQ.coerce(a) for a in x])), self)
        raise DescriptorMismatch(f"cannot coerce {x!r} into {self!r}")

    def inv(self, x):
        x = self.coerce(x)
        if not x.c:
            raise DivisionByZero("inverse of 0")
        # extended Euclid: s*x + t*f = g
        r0, r1 = self.modulus, x.c
        s0, s1 = (), (1,)
        while r1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        if len(r0) != 1:
            raise DivisionByZero(f"{self.format(x)} is a zero divisor modulo the modulus")
        g = Fraction(1) / r0[0]
        return ExtElem(self._reduce(_trim([g * a for a in s0])), self)

    def parse(self, s):
        t = _clean_text(s)
        if t in ("", "0"):
            return self.zero
        coeffs: dict[int, Fraction] = {}
        for term in t.split("+"):
            m = _TERM.match(term)
            if not term or not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad extension literal {s!r}")
            c = Fraction(m.group(1)) if m.group(1) is not None else Fraction(1)
            k = 0 if m.group(2) is None else int(m.group(3) or 1)
            coeffs[k] = coeffs.get(k, 0) + c
        top = max(coeffs)
        return ExtElem(self._reduce(_trim([coeffs.get(i, 0) for i in range(top + 1)])), self)

    def format(self, x):
        x = self.coerce(x)
        if not x.c:
            return "0"
        parts = []
        for k, a in enumerate(x.c):
            if a == 0:
                continue
            a = QQ.format(a)
            parts.append(a if k == 0 else f"{a}x" if k == 1 else f"{a}x^{k}")
        return "+".join(parts)

    @property
    def descriptor(self):
        return {"field": "QExt", "modulus": [QQ.format(a) for a in self.modulus]}


def _is_irreducible(mod) -> bool:
    from sympy import Poly, QQ as SQQ, Rational, symbols

    x = symbols("x")
    expr = sum(Rational(Fraction(a).numerator, Fraction(a).denominator) * x**i for i, a in enumerate(mod))
    return Poly(expr, x, domain=SQQ).is_irreducible


# ---------------------------------------------------------------------------
# Descriptors, presets, roots of unity


@lru_cache(maxsize=None)
def _prime_field(p):
    return PrimeField(p)


@lru_cache(maxsize=None)
def _extension(modulus: tuple):
    return Extension(modulus)


def make_field(desc) -> Field:
    """Build (or fetch the cached) field for a descriptor dict such as ``{"field": "Fp", "p": 5}``."""
    if isinstance(desc, Field):
        return desc
    kind = desc.get("field")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return _prime_field(int(desc["p"]))
    if kind == "QExt":
        return _extension(tuple(QQ.coerce(a) for a in desc["modulus"]))
    raise ValueError(f"unknown field descriptor {desc!r}")


def cyclotomic_modulus(n: int) -> list:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    from sympy import Poly, cyclotomic_poly, symbols

    x = symbols("x")
    return [int(c) for c in reversed(Poly(cyclotomic_poly(n, x), x).all_coeffs())]


CYCLOTOMIC_PRESETS = range(1, 13)


def cyclotomic_field(n: int) -> Field:
    """Q(zeta_n) via the preset modulus Phi_n; n <= 2 gives Q itself."""
    if n not in CYCLOTOMIC_PRESETS:
        raise ValueError(f"no cyclotomic preset for n={n} (supported: 1..12)")
    if n <= 2:
        return QQ
    return make_field({"field": "QExt", "modulus": cyclotomic_modulus(n)})


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive_root(field: Field, q, n: int) -> bool:
    one = field.one
    if q ** n != one:
        return False
    return all(q ** (n // r) != one for r in _prime_factors(n))


def root_of_unity(field: Field, n: int):
    """A primitive n-th root of unity in ``field``; raises NoSuchRoot if none is found."""
    if n < 1:
        raise ValueError("n must be positive")
    if field.characteristic and n % field.characteristic == 0:
        raise NoSuchRoot(f"characteristic {field.characteristic} divides {n}")
    if n == 1:
        return field.one
    if isinstance(field, Rationals):
        if n == 2:
            return -1
        raise NoSuchRoot(f"Q has no primitive {n}-th root of unity")
    if isinstance(field, PrimeField):
        p = field.p
        if (p - 1) % n:
            raise NoSuchRoot(f"{n} does not divide {p}-1")
        for a in range(2, p):
            q = field.coerce(a)
            if is_primitive_root(field, q, n):
                return q
        raise NoSuchRoot(f"no primitive {n}-th root in GF({p})")  # pragma: no cover
    if n == 2:
        return field.coerce(-1)
    # powers of +-x cover every root of unity that is a power of the generator
    for base in (field.gen, -field.gen):
        order = _multiplicative_order(field, base, bound=4 * field.degree**2 + 8)
        if order and order % n == 0:
            q = base ** (order // n)
            if is_primitive_root(field, q, n):
                return q
    raise NoSuchRoot(f"no primitive {n}-th root of unity found in {field!r}")


def _multiplicative_order(field, a, bound):
    x = a
    for k in range(1, bound + 1):
        if x == field.one:
            return k
        x = x * a
    return None
