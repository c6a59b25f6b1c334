"""Diagonal cocycles Z, coboundaries B, classes H = Z/B, radicals and Psi.

A cocycle on an m-dimensional evolution algebra is stored as the tuple of
its diagonal values theta(e_i, e_i); off-diagonal values are zero.
"""

from __future__ import annotations

from itertools import combinations, product

from .linalg import Subspace, rref, reduce_vector


class Unsupported(Exception):
    """The requested computation is outside what is implemented for this field."""


def delta(field, m: int, *indices):
    """sum of delta_{e_i,e_i} over the given 1-based indices."""
    v = [field.zero] * m
    for i in indices:
        v[i - 1] = field.add(v[i - 1], field.one)
    return tuple(v)


def coboundary_space(A) -> Subspace:
    """B(E x E, F) = span of delta f_j for the dual basis of an RREF basis of E^<2>.

    For v in E^<2> the coefficient on the j-th RREF basis vector is the entry
    of v at that vector's pivot, so delta f_j = (e_i^2 [pivot_j])_i.
    """
    E2 = A.square_space()
    gens = [tuple(row[pc] for row in A.squares) for pc in E2.pivots]
    return Subspace.span(A.field, A.dim, gens)


def class_space(A):
    """Canonical representatives of a basis of H: delta_{e_i,e_i} for the
    non-pivot columns of B's RREF, in increasing order."""
    B = coboundary_space(A)
    return [delta(A.field, A.dim, i + 1) for i in range(A.dim) if i not in B.pivots]


def class_coordinates(A, theta, B: Subspace | None = None):
    """Coordinates of [theta] in the basis returned by :func:`class_space`."""
    B = B or coboundary_space(A)
    r = reduce_vector(A.field, B.basis, B.pivots, theta)
    return tuple(r[i] for i in range(A.dim) if i not in B.pivots)


def class_subspace(A, thetas, B: Subspace | None = None) -> tuple:
    """Canonical (RREF) basis of the span of the classes [theta_j] in H."""
    B = B or coboundary_space(A)
    coords = [class_coordinates(A, t, B) for t in thetas]
    if not coords or not coords[0]:
        return ()
    return tuple(rref(A.field, coords)[0])


def classes_independent(A, thetas, B: Subspace | None = None) -> bool:
    return len(class_subspace(A, thetas, B)) == len(thetas)


def in_coboundaries(A, theta) -> bool:
    return theta in coboundary_space(A)


def same_class(A, theta, other) -> bool:
    F = A.field
    return tuple(F.sub(x, y) for x, y in zip(theta, other)) in coboundary_space(A)


def radical(field, theta) -> Subspace:
    """theta^perp = span{e_i : theta(e_i, e_i) = 0}."""
    return Subspace.coordinate(field, len(theta), [i for i, x in enumerate(theta) if x == field.zero])


def radical_dim(field, theta) -> int:
    return sum(1 for x in theta if x == field.zero)


def joint_radical(field, thetas, m: int) -> Subspace:
    idx = [i for i in range(m) if all(t[i] == field.zero for t in thetas)]
    return Subspace.coordinate(field, m, idx)


def psi_tuple(field, thetas) -> tuple:
    if not thetas:
        raise ValueError("Psi of an empty tuple")
    m = len(thetas[0])
    if any(len(t) != m for t in thetas):
        raise ValueError("cocycles on different base dimensions")
    return tuple(sorted((radical_dim(field, t) for t in thetas), reverse=True))


def psi_subspace(A, thetas, method: str = "auto") -> tuple:
    """Lexicographic maximum of Psi over all tuples whose classes span the
    same subspace of H as the classes of ``thetas``.

    ``method``: "exhaustive" (finite fields: every basis change in GL_s and
    every coboundary shift), "zero_pattern" (any field, s <= 2: decide by
    linear algebra which zero sets a representative can have), or "auto".
    """
    F = A.field
    B = coboundary_space(A)
    s = len(thetas)
    if s == 0:
        raise ValueError("Psi of an empty tuple")
    if not classes_independent(A, thetas, B):
        raise ValueError("classes are linearly dependent in H")
    if method == "auto":
        method = "exhaustive" if F.finite else "zero_pattern"
    if method == "exhaustive":
        return _psi_exhaustive(A, thetas, B)
    if method == "zero_pattern":
        return _psi_zero_pattern(A, thetas, B)
    raise ValueError(f"unknown method {method!r}")


def _coboundary_elements(F, B: Subspace):
    for coeffs in product(F.elements(), repeat=B.dim):
        v = [F.zero] * B.n
        for c, row in zip(coeffs, B.basis):
            if c != F.zero:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
        yield tuple(v)


def _gl(F, s: int):
    for entries in product(F.elements(), repeat=s * s):
        g = [entries[i * s:(i + 1) * s] for i in range(s)]
        if len(rref(F, g)[1]) == s:
            yield g


def _psi_exhaustive(A, thetas, B: Subspace) -> tuple:
    F = A.field
    if not F.finite:
        raise Unsupported("exhaustive Psi needs a finite field")
    shifts = list(_coboundary_elements(F, B))
    best = None
    # Shifts act independently on each vector of the new tuple, so each
    # vector's radical can be maximised separately for a fixed basis change.
    for g in _gl(F, len(thetas)):
        dims = []
        for row in g:
            v = [F.zero] * A.dim
            for c, t in zip(row, thetas):
                if c != F.zero:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, t)]
            dims.append(max(
                sum(1 for x, b in zip(v, sh) if F.add(x, b) == F.zero) for sh in shifts
            ))
        cand = tuple(sorted(dims, reverse=True))
        if best is None or cand > best:
            best = cand
    return best


def _vanishing_classes(A, L: Subspace, B: Subspace, S) -> Subspace:
    """Image in H-coordinates of {v in L : v_i = 0 for i in S}."""
    F = A.field
    sub = L.intersect(Subspace.coordinate(F, A.dim, [i for i in range(A.dim) if i not in S]))
    coords = [class_coordinates(A, v, B) for v in sub.basis]
    h = A.dim - B.dim
    return Subspace.span(F, h, coords) if coords else Subspace.zero(F, h)


def _psi_zero_pattern(A, thetas, B: Subspace) -> tuple:
    s = len(thetas)
    if s > 2:
        raise Unsupported("zero-pattern Psi is implemented for subspaces of dimension <= 2")
    F, m = A.field, A.dim
    L = Subspace.span(F, m, list(thetas)) + B
    images = {}
    for size in range(m, -1, -1):
        for S in combinations(range(m), size):
            W = _vanishing_classes(A, L, B, S)
            if W.dim:
                images[S] = W
    if s == 1:
        return (max(len(S) for S in images),)
    best = None
    keys = sorted(images, key=len, reverse=True)
    for S1 in keys:
        for S2 in keys:
            if len(S2) > len(S1):
                continue
            if (images[S1] + images[S2]).dim >= 2:
                cand = (len(S1), len(S2))
                if best is None or cand > best:
                    best = cand
    return best
