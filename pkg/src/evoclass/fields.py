"""Exact fields: odd prime fields F_p, their quadratic extensions F_{p^2}, and Q.

Elements are plain Python values so they hash, compare and sort cheaply:

* ``PrimeField``: ``int`` residues in ``[0, p)``
* ``QuadraticField``: ``Fp2Element`` codes ``a + b*p`` (an ``int`` subclass)
  standing for ``a + b*w`` with ``w**2`` the least quadratic non-residue mod ``p``
* ``Rationals``: ``fractions.Fraction``

A field object does all arithmetic; elements never carry their field.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

ROOT_SEARCH_BOUND = 10**6

_OPS = ("add", "sub", "mul", "div")


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface. Subclasses provide the primitive operations."""

    kind: str
    finite: bool

    def arith(self, a, b, op: str):
        if op not in _OPS:
            raise FieldError(f"unknown operation {op!r}")
        return getattr(self, op)(a, b)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def dot(self, xs, ys):
        total = self.zero
        for x, y in zip(xs, ys):
            if x != self.zero and y != self.zero:
                total = self.add(total, self.mul(x, y))
        return total

    def vec(self, values):
        return tuple(self(v) for v in values)

    def __repr__(self) -> str:
        return self.name


class PrimeField(Field):
    kind = "fp"
    finite = True

    def __init__(self, p: int):
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if not is_prime(p):
            raise FieldError(f"{p} is not an odd prime")
        self.p = p
        self.zero = 0
        self.one = 1
        self.size = p
        self.characteristic = p
        self.name = f"F_{p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __call__(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def elements(self):
        return range(self.p)

    def from_code(self, code: int):
        return int(code)

    def kth_root(self, a, k: int) -> list:
        """All x in F_p with x**k == a, ascending; found by exhaustion."""
        if k < 1:
            raise FieldError("root degree must be positive")
        if self.p > ROOT_SEARCH_BOUND:
            raise FieldError(f"root search above bound {ROOT_SEARCH_BOUND}")
        return list(_fp_roots(self.p, k).get(a % self.p, ()))

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(s) % self.p

    def to_json(self) -> dict:
        return {"kind": "fp", "p": self.p}


@lru_cache(maxsize=64)
def _fp_roots(p: int, k: int) -> dict:
    table: dict[int, list[int]] = {}
    for x in range(p):
        table.setdefault(pow(x, k, p), []).append(x)
    return {a: tuple(xs) for a, xs in table.items()}


class Fp2Element(int):
    """An ``int`` code tagged as an element of F_{p^2} so coercion is idempotent."""

    __slots__ = ()


class QuadraticField(Field):
    """F_{p^2} = F_p(w), w**2 = n for the least non-residue n."""

    kind = "fp2"
    finite = True

    def __init__(self, p: int):
        self.base = PrimeField(p)
        self.p = p
        self.nonresidue = next(n for n in range(2, p) if pow(n, (p - 1) // 2, p) == p - 1)
        self.zero = Fp2Element(0)
        self.one = Fp2Element(1)
        self.size = p * p
        self.characteristic = p
        self.name = f"F_{p}^2"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.p == self.p

    def __hash__(self):
        return hash(("fp2", self.p))

    def _split(self, a):
        return a % self.p, a // self.p

    def _join(self, x, y):
        return Fp2Element(x % self.p + (y % self.p) * self.p)

    def from_code(self, code: int):
        return Fp2Element(code)

    def __call__(self, value):
        if isinstance(value, Fp2Element):
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, tuple):
            return self._join(*value)
        return self._join(self.base(value), 0)

    def add(self, a, b):
        (x1, y1), (x2, y2) = self._split(a), self._split(b)
        return self._join(x1 + x2, y1 + y2)

    def sub(self, a, b):
        (x1, y1), (x2, y2) = self._split(a), self._split(b)
        return self._join(x1 - x2, y1 - y2)

    def neg(self, a):
        x, y = self._split(a)
        return self._join(-x, -y)

    def mul(self, a, b):
        (x1, y1), (x2, y2) = self._split(a), self._split(b)
        return self._join(x1 * x2 + self.nonresidue * y1 * y2, x1 * y2 + x2 * y1)

    def inv(self, a):
        x, y = self._split(a)
        norm = (x * x - self.nonresidue * y * y) % self.p
        if norm == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        t = pow(norm, -1, self.p)
        return self._join(x * t, -y * t)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        return [Fp2Element(c) for c in range(self.p * self.p)]

    def kth_root(self, a, k: int) -> list:
        if k < 1:
            raise FieldError("root degree must be positive")
        if self.size > ROOT_SEARCH_BOUND:
            raise FieldError(f"root search above bound {ROOT_SEARCH_BOUND}")
        return [x for x in self.elements() if self.pow(x, k) == a]

    def format(self, a) -> str:
        x, y = self._split(a)
        if y == 0:
            return str(x)
        return f"{x}+{y}w"

    def parse(self, s: str):
        s = s.replace(" ", "")
        m = re.fullmatch(r"(-?\d+)(?:\+(-?\d+)w)?", s)
        if m is None:
            m2 = re.fullmatch(r"(-?\d+)w", s)
            if m2 is None:
                return self._join(self.base.parse(s), 0)
            return self._join(0, int(m2.group(1)))
        return self._join(int(m.group(1)), int(m.group(2) or 0))

    def to_json(self) -> dict:
        return {"kind": "fp2", "p": self.p}


class Rationals(Field):
    kind = "q"
    finite = False

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.characteristic = 0
        self.name = "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("q")

    def __call__(self, value):
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def kth_root(self, a, k: int) -> list:
        """Rational k-th roots of ``a`` (at most two)."""
        if k < 1:
            raise FieldError("root degree must be positive")
        a = Fraction(a)
        if a == 0:
            return [Fraction(0)]
        if a < 0 and k % 2 == 0:
            return []
        num = _int_root(abs(a.numerator), k)
        den = _int_root(a.denominator, k)
        if num is None or den is None:
            return []
        r = Fraction(num, den)
        if a < 0:
            return [-r]
        return [-r, r] if k % 2 == 0 else [r]

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        return Fraction(s.strip())

    def to_json(self) -> dict:
        return {"kind": "q"}


def _int_root(n: int, k: int):
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**k
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


Q = Rationals()


def field_from_json(spec: dict) -> Field:
    kind = spec.get("kind")
    if kind == "q":
        return Q
    if kind == "fp":
        return PrimeField(int(spec["p"]))
    if kind == "fp2":
        return QuadraticField(int(spec["p"]))
    raise FieldError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> Field:
    """Parse the CLI spelling: ``q``, ``fp:P`` or ``fp2:P``."""
    text = text.strip().lower()
    if text in ("q", "qq", "rationals"):
        return Q
    kind, _, p = text.partition(":")
    if kind in ("fp", "fp2") and p.isdigit():
        return field_from_json({"kind": kind, "p": int(p)})
    raise FieldError(f"cannot parse field {text!r}; use q, fp:P or fp2:P")
