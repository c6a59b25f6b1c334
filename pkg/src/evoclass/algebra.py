"""Evolution algebras given by the squares of a natural basis."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .fields import Field, field_from_json
from .linalg import Subspace, kernel


@dataclass(frozen=True)
class EvolutionAlgebra:
    """Row i of ``squares`` holds the coordinates of e_i^2.

    Products of distinct basis vectors vanish by construction, so
    (sum x_i e_i)(sum y_j e_j) = sum x_i y_i squares[i].
    """

    field: Field
    squares: tuple
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        rows = tuple(tuple(self.field(x) for x in row) for row in self.squares)
        for row in rows:
            if len(row) != len(rows):
                raise ValueError("structure matrix must be square")
        object.__setattr__(self, "squares", rows)

    @classmethod
    def from_products(cls, field, dim: int, products: dict, name: str = "") -> "EvolutionAlgebra":
        """Build from ``{i: {j: c}}`` meaning e_i^2 has coefficient c on e_j (1-based)."""
        rows = [[field.zero] * dim for _ in range(dim)]
        for i, terms in products.items():
            for j, c in terms.items():
                rows[i - 1][j - 1] = field(c)
        return cls(field, tuple(tuple(r) for r in rows), name)

    @classmethod
    def zero(cls, field, dim: int, name: str = "") -> "EvolutionAlgebra":
        return cls.from_products(field, dim, {}, name)

    @property
    def dim(self) -> int:
        return len(self.squares)

    def basis_vector(self, i: int):
        """e_{i+1} as a coordinate tuple (``i`` is 0-based)."""
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))

    def multiply(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError(f"vectors must have length {self.dim}")
        F = self.field
        out = [F.zero] * self.dim
        for xi, yi, row in zip(x, y, self.squares):
            c = F.mul(xi, yi)
            if c == F.zero:
                continue
            for j, r in enumerate(row):
                if r != F.zero:
                    out[j] = F.add(out[j], F.mul(c, r))
        return tuple(out)

    def power_chain(self):
        """E^<1> = E, E^<k+1> = E^<k> E, until zero or stabilisation."""
        F = self.field
        current = Subspace.full(F, self.dim)
        chain = [current]
        while current.dim:
            gens = []
            for v in current.basis:
                for j, xj in enumerate(v):
                    if xj != F.zero:
                        gens.append(tuple(F.mul(xj, r) for r in self.squares[j]))
            nxt = Subspace.span(F, self.dim, gens)
            if nxt == current:
                break
            chain.append(nxt)
            current = nxt
        return chain

    def nilpotency_index(self):
        """Least n with E^<n> = 0, or None when the algebra is not nilpotent."""
        chain = self.power_chain()
        if chain[-1].dim:
            return None
        return len(chain)

    def is_nilpotent(self) -> bool:
        return self.nilpotency_index() is not None

    def zero_rows(self):
        return [i for i, row in enumerate(self.squares) if all(x == self.field.zero for x in row)]

    def annihilator(self) -> Subspace:
        """span{e_i : e_i^2 = 0}."""
        return Subspace.coordinate(self.field, self.dim, self.zero_rows())

    def annihilator_bruteforce(self) -> Subspace:
        """{x : x e_j = 0 for all j}, solved as a linear system."""
        F, n = self.field, self.dim
        rows = []
        for j in range(n):
            ej = self.basis_vector(j)
            # coefficient of x_i in (x e_j)_t
            for t in range(n):
                rows.append(tuple(self.multiply(self.basis_vector(i), ej)[t] for i in range(n)))
        rows = [r for r in rows if any(x != F.zero for x in r)]
        return Subspace.span(F, n, kernel(F, rows, n))

    def square_space(self) -> Subspace:
        """E^<2>, the span of all e_i^2."""
        return Subspace.span(self.field, self.dim, self.squares)

    def direct_sum(self, other: "EvolutionAlgebra", name: str = "") -> "EvolutionAlgebra":
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        z = self.field.zero
        rows = [row + (z,) * other.dim for row in self.squares]
        rows += [(z,) * self.dim + row for row in other.squares]
        return EvolutionAlgebra(self.field, tuple(rows), name)

    def has_annihilator_component(self):
        """(True, r) when e_r^2 = 0 and e_r occurs in no square, else (False, None).

        ``r`` is 0-based.
        """
        F = self.field
        for r in self.zero_rows():
            if all(row[r] == F.zero for row in self.squares):
                return True, r
        return False, None

    def permuted(self, order) -> "EvolutionAlgebra":
        """Relabel so that new e_{k+1} is old e_{order[k]+1}."""
        rows = [tuple(self.squares[i][j] for j in order) for i in order]
        return EvolutionAlgebra(self.field, tuple(rows), self.name)

    def with_field(self, field: Field) -> "EvolutionAlgebra":
        src = self.field
        rows = [[field(src.format(x)) for x in row] for row in self.squares]
        return EvolutionAlgebra(field, tuple(tuple(r) for r in rows), self.name)

    def table(self) -> str:
        """Nonzero products, e.g. ``e1^2=e2, e2^2=e3+2*e4``."""
        F = self.field
        parts = []
        for i, row in enumerate(self.squares):
            terms = []
            for j, x in enumerate(row):
                if x == F.zero:
                    continue
                coef = F.format(x)
                terms.append(f"e{j + 1}" if coef == "1" else f"{coef}*e{j + 1}")
            if terms:
                parts.append(f"e{i + 1}^2=" + "+".join(terms))
        return ", ".join(parts) if parts else "all products are zero"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "field": self.field.to_json(),
            "squares": [[self.field.format(x) for x in row] for row in self.squares],
        }

    @classmethod
    def from_json(cls, data: dict, field: Field | None = None) -> "EvolutionAlgebra":
        F = field or field_from_json(data.get("field", {"kind": "q"}))
        dim = int(data["dim"])
        rows = tuple(tuple(F(str(x)) for x in row) for row in data["squares"])
        if len(rows) != dim:
            raise ValueError(f"declared dim {dim} but {len(rows)} rows")
        return cls(F, rows, data.get("name", ""))


def load_algebra(path) -> EvolutionAlgebra:
    with open(path) as fh:
        return EvolutionAlgebra.from_json(json.load(fh))
