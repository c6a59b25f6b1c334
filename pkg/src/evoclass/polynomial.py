"""Exact bivariate polynomials in (alpha, beta) over Q."""

from __future__ import annotations

from fractions import Fraction


class Polynomial2:
    """Sparse map {(i, j): c} for c * alpha**i * beta**j; zero terms are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def constant(cls, c) -> "Polynomial2":
        return cls({(0, 0): c})

    @classmethod
    def alpha(cls) -> "Polynomial2":
        return cls({(1, 0): 1})

    @classmethod
    def beta(cls) -> "Polynomial2":
        return cls({(0, 1): 1})

    @staticmethod
    def _lift(other):
        return other if isinstance(other, Polynomial2) else Polynomial2.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Polynomial2(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial2({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return Polynomial2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial2.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial2):
            other = Polynomial2.constant(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> tuple:
        """(deg in alpha, deg in beta); (-1, -1) for the zero polynomial."""
        if not self.terms:
            return (-1, -1)
        return max(i for i, _ in self.terms), max(j for _, j in self.terms)

    def evaluate(self, a, b, field=None):
        """Value at (a, b); over ``field`` when given, else with Fractions."""
        if field is None:
            return sum((c * Fraction(a) ** i * Fraction(b) ** j for (i, j), c in self.terms.items()),
                       Fraction(0))
        a, b = field(a), field(b)
        return field.sum(field.mul(field(c), field.mul(field.pow(a, i), field.pow(b, j)))
                         for (i, j), c in self.terms.items())

    def unit_ratio(self, other: "Polynomial2"):
        """The constant u with self == u * other, or None."""
        if self.is_zero() or other.is_zero():
            return Fraction(1) if self.is_zero() and other.is_zero() else None
        if self.terms.keys() != other.terms.keys():
            return None
        k = next(iter(self.terms))
        u = self.terms[k] / other.terms[k]
        return u if self == other * u else None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            mono = "*".join(s for s in (
                f"a^{i}" if i > 1 else ("a" if i == 1 else ""),
                f"b^{j}" if j > 1 else ("b" if j == 1 else ""),
            ) if s)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)
