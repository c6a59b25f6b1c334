"""Annihilator extensions E_theta and their inverse construction."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import EvolutionAlgebra
from .cocycles import classes_independent, coboundary_space, joint_radical
from .linalg import Subspace

DEPENDENT = "classes [theta_j] are linearly dependent in H"
RADICAL = "theta^perp meets ann(E) nontrivially"


class Inadmissible(ValueError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NoAnnihilator(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionSpec:
    base: EvolutionAlgebra
    thetas: tuple

    def __post_init__(self):
        F = self.base.field
        thetas = tuple(tuple(F(x) for x in t) for t in self.thetas)
        for t in thetas:
            if len(t) != self.base.dim:
                raise ValueError(f"cocycle {t} does not match base dimension {self.base.dim}")
        object.__setattr__(self, "thetas", thetas)

    @property
    def ext_dim(self) -> int:
        return len(self.thetas)

    @property
    def dim(self) -> int:
        return self.base.dim + self.ext_dim

    def radical(self) -> Subspace:
        return joint_radical(self.base.field, self.thetas, self.base.dim)

    def to_json(self, base_name: str | None = None) -> dict:
        F = self.base.field
        return {
            "base": base_name or self.base.name,
            "field": F.to_json(),
            "thetas": [[F.format(x) for x in t] for t in self.thetas],
        }


def check_admissible(spec: ExtensionSpec):
    """None when admissible, otherwise the name of the violated condition."""
    base = spec.base
    if not classes_independent(base, spec.thetas, coboundary_space(base)):
        return DEPENDENT
    if spec.radical().intersect(base.annihilator()).dim:
        return RADICAL
    return None


def extend(spec: ExtensionSpec, force: bool = False, name: str = "") -> EvolutionAlgebra:
    """E_theta: row i < m is the base row followed by theta_1(e_i,e_i), ..., theta_k(e_i,e_i)."""
    if not force:
        violation = check_admissible(spec)
        if violation:
            raise Inadmissible(violation)
    base, F = spec.base, spec.base.field
    k = spec.ext_dim
    rows = [row + tuple(t[i] for t in spec.thetas) for i, row in enumerate(base.squares)]
    rows += [(F.zero,) * (base.dim + k)] * k
    return EvolutionAlgebra(F, tuple(rows), name)


def ann_of_extension(spec: ExtensionSpec) -> Subspace:
    """(theta^perp cap ann(E)) + V inside E + V."""
    base = spec.base
    n = spec.dim
    inner = spec.radical().intersect(base.annihilator()).embed(n)
    V = Subspace.coordinate(base.field, n, range(base.dim, n))
    return inner + V


def reconstruct(A: EvolutionAlgebra):
    """Split A = E + ann(A) along its natural basis.

    Returns ``(base, spec, order)``: ``order`` lists the old basis indices in
    the new order (non-annihilator vectors first), ``base`` carries the
    projected product P(e_i e_j), and ``extend(spec, force=True)`` equals
    ``A.permuted(order)`` exactly.
    """
    ann = A.zero_rows()
    if not ann:
        raise NoAnnihilator("ann(A) = 0; A is not an annihilator extension")
    keep = [i for i in range(A.dim) if i not in ann]
    order = keep + ann
    rows = tuple(tuple(A.squares[i][j] for j in keep) for i in keep)
    base = EvolutionAlgebra(A.field, rows)
    thetas = tuple(tuple(A.squares[i][j] for i in keep) for j in ann)
    return base, ExtensionSpec(base, thetas), order
