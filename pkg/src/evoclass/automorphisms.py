"""Automorphisms, their action on cocycles, and the orbit test for extensions.

Matrices follow the column convention: column i of ``phi`` is phi(e_i).
Matrices are lists of row tuples.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .cocycles import Unsupported, class_subspace, coboundary_space, radical_dim
from .extensions import ExtensionSpec, check_admissible
from .linalg import Subspace, is_invertible, kernel, rref

DEFAULT_BUDGET = 10**8


class BudgetExceeded(Unsupported):
    pass


def column(phi, i: int):
    return tuple(row[i] for row in phi)


def apply(field, phi, x):
    return tuple(field.dot(row, x) for row in phi)


def is_homomorphism(A, B, phi) -> bool:
    """phi(e_i) phi(e_j) == phi(e_i e_j) for all i <= j, phi: A -> B."""
    F = A.field
    if len(phi) != B.dim or any(len(row) != A.dim for row in phi):
        raise ValueError("matrix shape does not match the algebras")
    cols = [column(phi, i) for i in range(A.dim)]
    zero = (F.zero,) * B.dim
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = B.multiply(cols[i], cols[j])
            rhs = apply(F, phi, A.squares[i]) if i == j else zero
            if lhs != rhs:
                return False
    return True


def is_isomorphism(A, B, phi) -> bool:
    return A.dim == B.dim and is_invertible(A.field, phi) and is_homomorphism(A, B, phi)


def is_automorphism(A, phi) -> bool:
    if len(phi) != A.dim:
        raise ValueError(f"expected a {A.dim}x{A.dim} matrix")
    return is_isomorphism(A, A, phi)


def pullback(field, phi, theta):
    """The full matrix phi^T diag(theta) phi."""
    m = len(phi)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            row.append(field.sum(
                field.mul(field.mul(phi[k][i], theta[k]), phi[k][j])
                for k in range(m) if theta[k] != field.zero
            ))
        out.append(tuple(row))
    return out


def act_on_cocycle(field, phi, theta):
    """phi theta as a diagonal cocycle, or None when phi is not in S_theta."""
    P = pullback(field, phi, theta)
    m = len(P)
    if any(P[i][j] != field.zero for i in range(m) for j in range(m) if i != j):
        return None
    return tuple(P[i][i] for i in range(m))


def in_stabiliser(field, phi, thetas) -> bool:
    return all(act_on_cocycle(field, phi, t) is not None for t in thetas)


def radical_dim_invariance(field, phi, theta):
    """(dim theta^perp, dim (phi theta)^perp); raises if they differ."""
    image = act_on_cocycle(field, phi, theta)
    if image is None:
        raise ValueError("phi is not in S_theta")
    before, after = radical_dim(field, theta), radical_dim(field, image)
    if before != after:
        raise AssertionError(f"radical dimension changed: {before} -> {after}")
    return before, after


def gl_v_action(field, psi, thetas):
    """theta'_j = sum_i psi[j][i] theta_i."""
    k = len(thetas)
    if len(psi) != k or not is_invertible(field, psi):
        raise ValueError("psi must be an invertible k x k matrix")
    m = len(thetas[0])
    return tuple(
        tuple(field.sum(field.mul(psi[j][i], thetas[i][t]) for i in range(k)) for t in range(m))
        for j in range(k)
    )


def block_map(field, phi, psi):
    """The map x + v -> phi(x) + psi(v) on E + V."""
    m, k = len(phi), len(psi)
    z = field.zero
    rows = [tuple(phi[i]) + (z,) * k for i in range(m)]
    rows += [(z,) * m + tuple(psi[i]) for i in range(k)]
    return rows


# ---------------------------------------------------------------------------
# enumeration

def _characteristic_subspaces(A):
    """Subspaces every isomorphism must respect, in a fixed order."""
    chain = A.power_chain()
    ann = A.annihilator()
    return list(chain[1:]) + [ann] + [ann.intersect(S) for S in chain[1:]]


def _paired_subspaces(A, B):
    """Aligned characteristic subspaces of A and B, or None if their dimensions differ."""
    SA, SB = _characteristic_subspaces(A), _characteristic_subspaces(B)
    if len(SA) != len(SB) or any(x.dim != y.dim for x, y in zip(SA, SB)):
        return None
    return [(x, y) for x, y in zip(SA, SB) if 0 < x.dim < A.dim]


def _column_order(A):
    F = A.field
    support = [{j for j, x in enumerate(row) if x != F.zero} for row in A.squares]
    done, order = set(), []
    while len(order) < A.dim:
        ready = [i for i in range(A.dim) if i not in done and support[i] - {i} <= done and i not in support[i]]
        if not ready:
            ready = [min(i for i in range(A.dim) if i not in done)]
        order.append(ready[0])
        done.add(ready[0])
    return order


TABLE_LIMIT = 1024


@lru_cache(maxsize=32)
def _grid(q: int, d: int):
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(q), repeat=d)), dtype=np.int64)


@lru_cache(maxsize=8)
def _tables(field):
    """Addition/multiplication tables over element codes 0..q-1."""
    q = field.size
    add = np.array([[field.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    mul = np.array([[field.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    neg = np.array([field.neg(a) for a in range(q)], dtype=np.int64)
    return add, mul, neg


class _Search:
    """Column-by-column search for isomorphisms A -> T (T = A for automorphisms)."""

    def __init__(self, A, keep_diagonal, budget, target=None, pairs=None):
        self.A = A
        self.T = A if target is None else target
        self.F = A.field
        self.m = A.dim
        self.thetas = [tuple(t) for t in keep_diagonal]
        self.budget = budget
        self.nodes = 0
        self.order = _column_order(A)
        if pairs is None:
            pairs = [(S, S) for S in _characteristic_subspaces(A) if 0 < S.dim < A.dim]
        self.fixed_constraints = {}
        for i in range(self.m):
            e = A.basis_vector(i)
            rows = []
            for SA, ST in pairs:
                if e in SA:
                    rows.extend(ST.annihilator().basis)
            self.fixed_constraints[i] = rows
        self.vectorised = self.F.finite and self.F.size <= TABLE_LIMIT
        if self.vectorised:
            self.add, self.mul, self.neg = _tables(self.F)
            self.M = np.array(self.T.squares, dtype=np.int64).reshape(self.m, self.m)

    def _linear_rows(self, i, cols):
        F, M = self.F, self.T.squares
        rows = list(self.fixed_constraints[i])
        for j, cj in cols.items():
            for t in range(self.m):
                rows.append(tuple(F.mul(cj[k], M[k][t]) for k in range(self.m)))
            for th in self.thetas:
                rows.append(tuple(F.mul(cj[k], th[k]) for k in range(self.m)))
        return [r for r in rows if any(x != F.zero for x in r)]

    def _square_target(self, i, cols):
        """phi(e_i^2) when every column it needs is fixed, else None."""
        F = self.F
        row = self.A.squares[i]
        need = [l for l, x in enumerate(row) if x != F.zero]
        if any(l not in cols for l in need) or i in need:
            return None
        out = [F.zero] * self.m
        for l in need:
            out = [F.add(o, F.mul(row[l], c)) for o, c in zip(out, cols[l])]
        return tuple(out)

    def _candidates(self, i, cols):
        F, m = self.F, self.m
        K = kernel(F, self._linear_rows(i, cols), m)
        target = self._square_target(i, cols)
        span_rows, span_piv = rref(F, list(cols.values())) if cols else ([], [])
        if self.vectorised:
            return self._candidates_vectorised(K, target, span_rows, span_piv)
        out = []
        span = Subspace(F, m, tuple(span_rows), tuple(span_piv))
        for coeffs in product(F.elements(), repeat=len(K)):
            c = [F.zero] * m
            for a, kv in zip(coeffs, K):
                if a != F.zero:
                    c = [F.add(x, F.mul(a, y)) for x, y in zip(c, kv)]
            c = tuple(c)
            if target is not None and self.T.multiply(c, c) != target:
                continue
            if c in span:
                continue
            out.append(c)
        return out

    def _candidates_vectorised(self, K, target, span_rows, span_piv):
        add, mul, neg = self.add, self.mul, self.neg
        m = self.m
        grid = _grid(self.F.size, len(K))
        cand = np.zeros((len(grid), m), dtype=np.int64)
        for j, kv in enumerate(K):
            cand = add[cand, mul[grid[:, j:j + 1], np.array(kv, dtype=np.int64)[None, :]]]
        if target is not None:
            sq = mul[cand, cand]
            res = np.zeros_like(cand)
            for k in range(m):
                res = add[res, mul[sq[:, k:k + 1], self.M[k][None, :]]]
            cand = cand[np.all(res == np.array(target, dtype=np.int64), axis=1)]
        red = cand
        for r, pc in zip(span_rows, span_piv):
            red = add[red, mul[neg[red[:, pc:pc + 1]], np.array(r, dtype=np.int64)[None, :]]]
        cand = cand[np.any(red != 0, axis=1)]
        code = self.F.from_code
        return [tuple(code(x) for x in c.tolist()) for c in cand]

    def run(self):
        yield from self._extend({}, 0)

    def _extend(self, cols, depth):
        if depth == self.m:
            phi = [tuple(cols[i][r] for i in range(self.m)) for r in range(self.m)]
            if is_isomorphism(self.A, self.T, phi):
                yield phi
            return
        i = self.order[depth]
        for c in self._candidates(i, cols):
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise BudgetExceeded(f"automorphism search exceeded {self.budget} nodes")
            cols[i] = c
            yield from self._extend(cols, depth + 1)
            del cols[i]


def enumerate_aut(A, keep_diagonal=(), budget: int | None = DEFAULT_BUDGET):
    """Yield every automorphism of A over a finite field.

    With ``keep_diagonal`` the search is restricted to the intersection of the
    S_theta groups, i.e. automorphisms whose pullback of each given cocycle
    stays diagonal. Columns are fixed one at a time; the pairwise product
    constraints and the S_theta conditions are linear in the new column, so
    candidates are drawn from a kernel and then filtered by the square rule.
    """
    if not A.field.finite:
        raise Unsupported("automorphism enumeration needs a finite field")
    return _Search(A, keep_diagonal, budget).run()


def find_isomorphism(A, B, budget: int | None = DEFAULT_BUDGET):
    """Some isomorphism A -> B (column convention) or None; exhaustive over a finite field."""
    if A.field != B.field:
        raise ValueError("algebras over different fields")
    if A.dim != B.dim:
        return None
    if not A.field.finite:
        raise Unsupported("isomorphism search needs a finite field")
    pairs = _paired_subspaces(A, B)
    if pairs is None:
        return None
    return next(_Search(A, (), budget, target=B, pairs=pairs).run(), None)


def count_aut(A, budget: int | None = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in enumerate_aut(A, budget=budget))


def _check_tuple(A, thetas, label):
    violation = check_admissible(ExtensionSpec(A, thetas))
    if violation:
        raise ValueError(f"{label} is not admissible: {violation}")


def orbit_images(A, varthetas, budget: int | None = DEFAULT_BUDGET):
    """Map each class subspace reachable as <[phi vartheta_i]> (phi in S_vartheta)
    to the first witness phi found."""
    B = coboundary_space(A)
    F = A.field
    images = {}
    for phi in enumerate_aut(A, keep_diagonal=varthetas, budget=budget):
        moved = [act_on_cocycle(F, phi, t) for t in varthetas]
        images.setdefault(class_subspace(A, moved, B), phi)
    return images


def maps_onto(A, phi, thetas, varthetas, B=None) -> bool:
    """phi in S_vartheta and <[phi vartheta_i]> = <[theta_i]>."""
    F = A.field
    moved = [act_on_cocycle(F, phi, t) for t in varthetas]
    if any(t is None for t in moved):
        return False
    B = B or coboundary_space(A)
    return class_subspace(A, moved, B) == class_subspace(A, thetas, B)


def same_orbit(A, thetas, varthetas, budget: int | None = DEFAULT_BUDGET, hints=(),
               exhaustive: bool = True):
    """Decide E_theta ~ E_vartheta through base automorphisms.

    Returns ``(True, phi)`` with a verified witness, or ``(False, None)`` when
    the exhaustive search over S_vartheta finds none. ``hints`` are candidate
    matrices tried first; with ``exhaustive=False`` only they are tried and a
    miss raises :class:`Unsupported`.
    """
    thetas, varthetas = [tuple(t) for t in thetas], [tuple(t) for t in varthetas]
    if len(thetas) != len(varthetas):
        raise ValueError("tuples of different length")
    _check_tuple(A, thetas, "theta")
    _check_tuple(A, varthetas, "vartheta")
    B = coboundary_space(A)
    for phi in hints:
        if is_automorphism(A, phi) and maps_onto(A, phi, thetas, varthetas, B):
            return True, [tuple(r) for r in phi]
    if not exhaustive:
        raise Unsupported("no hint matched and exhaustive search was disabled")
    target = class_subspace(A, thetas, B)
    F = A.field
    for phi in enumerate_aut(A, keep_diagonal=varthetas, budget=budget):
        moved = [act_on_cocycle(F, phi, t) for t in varthetas]
        if class_subspace(A, moved, B) == target:
            return True, phi
    return False, None
