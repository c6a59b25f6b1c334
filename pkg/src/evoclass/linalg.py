"""Row reduction and subspaces over an exact field."""

from __future__ import annotations

from dataclasses import dataclass


def rref(field, rows):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    zero = field.zero
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != zero), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(x, inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(field, rows) -> int:
    return len(rref(field, rows)[1])


def kernel(field, rows, ncols: int):
    """Basis of {x : A x = 0} for A given by ``rows`` (each of length ncols)."""
    red, pivots = rref(field, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = field.neg(row[f])
        basis.append(tuple(v))
    return basis


def solve(field, rows, rhs, ncols: int):
    """One solution x of A x = rhs, or None when inconsistent."""
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def reduce_vector(field, basis, pivots, v):
    """Reduce v against an RREF basis (zeroing its pivot coordinates)."""
    v = list(v)
    for row, pc in zip(basis, pivots):
        c = v[pc]
        if c != field.zero:
            v = [field.sub(x, field.mul(c, y)) for x, y in zip(v, row)]
    return tuple(v)


def mat_mul(field, a, b):
    bt = list(zip(*b))
    return [tuple(field.dot(row, col) for col in bt) for row in a]


def transpose(a):
    return [tuple(col) for col in zip(*a)]


def identity(field, n: int):
    return [tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)]


def is_invertible(field, matrix) -> bool:
    return rank(field, matrix) == len(matrix)


def inverse(field, matrix):
    n = len(matrix)
    aug = [tuple(row) + idrow for row, idrow in zip(matrix, identity(field, n))]
    red, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


@dataclass(frozen=True)
class Subspace:
    """Subspace of field^n stored by its RREF basis; equality is basis equality."""

    field: object
    n: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, field, n: int, vectors) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {n}")
        red, piv = rref(field, vectors)
        return cls(field, n, tuple(red), tuple(piv))

    @classmethod
    def zero(cls, field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def coordinate(cls, field, n: int, indices) -> "Subspace":
        """Span of the standard basis vectors e_i, i in ``indices`` (0-based)."""
        vecs = []
        for i in sorted(set(indices)):
            v = [field.zero] * n
            v[i] = field.one
            vecs.append(v)
        return cls.span(field, n, vecs)

    @classmethod
    def full(cls, field, n: int) -> "Subspace":
        return cls.coordinate(field, n, range(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return all(x == self.field.zero for x in self.reduce(v))

    def reduce(self, v):
        return reduce_vector(self.field, self.basis, self.pivots, v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(v in self for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.n, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        """{f : f.v = 0 for all v} under the standard pairing."""
        return Subspace.span(self.field, self.n, kernel(self.field, self.basis, self.n))

    def intersect(self, other: "Subspace") -> "Subspace":
        return (self.annihilator() + other.annihilator()).annihilator()

    def is_coordinate(self) -> bool:
        one, zero = self.field.one, self.field.zero
        return all(
            sum(1 for x in row if x != zero) == 1 and row[pc] == one
            for row, pc in zip(self.basis, self.pivots)
        )

    def coordinate_indices(self):
        if not self.is_coordinate():
            raise ValueError("not a coordinate subspace")
        return list(self.pivots)

    def embed(self, n: int, offset: int = 0) -> "Subspace":
        """Pad basis vectors with zeros into field^n starting at ``offset``."""
        z = self.field.zero
        vecs = [(z,) * offset + row + (z,) * (n - offset - self.n) for row in self.basis]
        return Subspace.span(self.field, n, vecs)

    def format(self, prefix: str = "e") -> str:
        parts = []
        for row in self.basis:
            terms = []
            for i, x in enumerate(row):
                if x == self.field.zero:
                    continue
                coef = self.field.format(x)
                terms.append(f"{prefix}{i + 1}" if coef == "1" else f"{coef}*{prefix}{i + 1}")
            parts.append("+".join(terms))
        return "<" + ", ".join(parts) + ">"
