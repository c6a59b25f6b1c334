"""Fingerprints, isomorphism verdicts, extension enumeration and reports."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field
from itertools import product

from . import catalog
from .algebra import EvolutionAlgebra
from .automorphisms import (
    DEFAULT_BUDGET, BudgetExceeded, act_on_cocycle, find_isomorphism, orbit_images, same_orbit,
)
from .cocycles import Unsupported, class_space, class_subspace, coboundary_space, psi_subspace
from .extensions import ExtensionSpec, check_admissible, extend, reconstruct
from .fields import Q
from .linalg import Subspace, identity, inverse, kernel, mat_mul, rref, solve

BUDGET_ENV = "EVOCLASS_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


@dataclass(frozen=True)
class RunConfig:
    field: object = Q
    dim: int | None = None
    budget: int = dc_field(default_factory=default_budget)
    max_prime: int = catalog.PRIME_BOUND
    fmt: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.budget <= 0 or self.max_prime <= 0:
            raise ValueError("budgets must be positive")
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown output format {self.fmt!r}")


# ---------------------------------------------------------------------------
# invariants

def split_components(A: EvolutionAlgebra):
    """(core, k) with A ~ core + F^k (zero summands) and ann(core) inside core^2.

    k = dim ann(A) - dim(ann(A) cap A^2). The splitting keeps a natural basis:
    non-annihilator basis vectors only move by annihilator vectors.
    """
    F, n = A.field, A.dim
    ann, sq = A.annihilator(), A.square_space()
    k = ann.dim - ann.intersect(sq).dim
    if k == 0:
        return A, 0
    zero = A.zero_rows()
    us, span = [], sq
    for j in zero:
        e = A.basis_vector(j)
        if e not in span:
            us.append(e)
            span = span + Subspace.span(F, n, [e])
        if len(us) == k:
            break
    # functionals f_j vanishing on A^2 with f_j(u_l) = delta_jl
    rows = list(sq.basis)
    funcs = []
    for j in range(k):
        others = [u for l, u in enumerate(us) if l != j]
        ker = kernel(F, rows + others, n)
        v = next(x for x in ker if F.dot(x, us[j]) != F.zero)
        funcs.append(tuple(F.div(c, F.dot(v, us[j])) for c in v))

    def project(x):
        out = list(x)
        for f, u in zip(funcs, us):
            c = F.dot(f, x)
            if c != F.zero:
                out = [F.sub(a, F.mul(c, b)) for a, b in zip(out, u)]
        return tuple(out)

    keep = [i for i in range(n) if i not in zero]
    basis = [project(A.basis_vector(i)) for i in keep]
    ann_core = Subspace.span(F, n, [project(A.basis_vector(j)) for j in zero])
    basis += list(ann_core.basis)
    # coordinates of each square in the new basis
    cols = list(zip(*basis))
    rows_core = []
    for b in basis:
        sq_b = A.multiply(b, b)
        x = solve(F, [tuple(r) for r in cols], sq_b, len(basis))
        rows_core.append(x)
    return EvolutionAlgebra(F, tuple(rows_core), A.name), k


def fingerprint(A: EvolutionAlgebra, psi_method: str = "auto") -> tuple:
    """Isomorphism invariants as ((name, value), ...), coarse to fine."""
    core, k = split_components(A)
    out = [("dim", A.dim),
           ("power-chain dims", tuple(S.dim for S in A.power_chain())),
           ("ann dim", A.annihilator().dim),
           ("annihilator components", k)]
    base_fp = psi = None
    if core.dim and core.zero_rows() and core.nilpotency_index() is not None:
        base, spec, _ = reconstruct(core)
        base_fp = fingerprint(base, psi_method)
        try:
            psi = psi_subspace(base, spec.thetas, psi_method)
        except Unsupported:
            psi = "unavailable"
    out += [("base fingerprint", base_fp), ("Psi", psi)]
    return tuple(out)


def fingerprint_json(fp) -> dict:
    if fp is None:
        return None
    return {k: (fingerprint_json(v) if k == "base fingerprint" else
                (list(v) if isinstance(v, tuple) else v)) for k, v in fp}


# ---------------------------------------------------------------------------
# isomorphism verdicts

ISOMORPHIC = "Isomorphic"
NON_ISOMORPHIC = "NonIsomorphic"
INCONCLUSIVE = "Inconclusive"
ORBIT_INVARIANT = "Aut(base)-orbit of the extension subspace"


@dataclass
class Verdict:
    status: str
    invariant: str | None = None
    values: tuple | None = None
    witness: list | None = None
    detail: str = ""

    def to_json(self, field=None) -> dict:
        fmt = (lambda x: field.format(x)) if field is not None else str
        return {
            "status": self.status,
            "invariant": self.invariant,
            "values": None if self.values is None else [str(v) for v in self.values],
            "witness": None if self.witness is None else [[fmt(x) for x in row] for row in self.witness],
            "detail": self.detail,
        }


def _validate(A, B):
    if A.field != B.field:
        raise ValueError(f"field mismatch: {A.field} vs {B.field}")
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    for X in (A, B):
        if not X.is_nilpotent():
            raise ValueError(f"{X.name or 'algebra'} is not nilpotent")
        if not X.zero_rows():
            raise ValueError(f"{X.name or 'algebra'} has zero annihilator")


def _permutation(order):
    """Matrix of A -> A.permuted(order): e_{order[k]} maps to e_k."""
    n = len(order)
    return [tuple(1 if order[r] == c else 0 for c in range(n)) for r in range(n)]


def extension_isomorphism(base, thetas, varthetas, phi):
    """Block map E_theta -> E_vartheta from phi in S_vartheta with <[phi vartheta]> = <[theta]>."""
    F, m, s = base.field, base.dim, len(thetas)
    M = base.squares
    rows = [tuple(t[l] for t in thetas) + tuple(M[l][c] for c in range(m)) for l in range(m)]
    psi, fs = [], []
    for t in varthetas:
        target = act_on_cocycle(F, phi, t)
        x = solve(F, rows, target, s + m)
        if x is None:
            raise ValueError("phi does not carry vartheta onto theta")
        psi.append(x[:s])
        fs.append(x[s:])
    # phi vartheta_i = sum_j psi[i][j] theta_j + delta f_i
    z = F.zero
    top = [tuple(phi[r]) + (z,) * s for r in range(m)]
    bottom = [tuple(fs[i]) + tuple(psi[i][j] for j in range(s)) for i in range(s)]
    return top + bottom


def _orbit_route(A, B, budget):
    """Orbit test when A and B are split extensions of the same base matrix.

    Returns a verified witness A -> B, False when the exhaustive orbit search
    refutes isomorphism, or None when the route does not apply.
    """
    if not A.field.finite:
        return None
    if split_components(A)[1] or split_components(B)[1]:
        return None
    base_a, spec_a, order_a = reconstruct(A)
    base_b, spec_b, order_b = reconstruct(B)
    if base_a.squares != base_b.squares:
        return None
    found, phi = same_orbit(base_a, spec_a.thetas, spec_b.thetas, budget)
    if not found:
        return False
    F = A.field
    block = extension_isomorphism(base_a, spec_a.thetas, spec_b.thetas, phi)
    pa, pb = _permutation(order_a), _permutation(order_b)
    pa = [tuple(F(x) for x in r) for r in pa]
    pb = [tuple(F(x) for x in r) for r in pb]
    return mat_mul(F, inverse(F, pb), mat_mul(F, block, pa))


def isocheck(A: EvolutionAlgebra, B: EvolutionAlgebra, budget: int | None = None) -> Verdict:
    """Three stages: invariant mismatch, verified witness, or inconclusive."""
    from .automorphisms import is_isomorphism

    budget = default_budget() if budget is None else budget
    _validate(A, B)
    fa, fb = fingerprint(A), fingerprint(B)
    for (name, va), (_, vb) in zip(fa, fb):
        if va != vb:
            return Verdict(NON_ISOMORPHIC, name, (va, vb), detail=f"{name} differs")
    F = A.field
    if A.squares == B.squares:
        return Verdict(ISOMORPHIC, witness=identity(F, A.dim), detail="identical structure matrices")
    try:
        w = _orbit_route(A, B, budget)
        if w is False:
            return Verdict(NON_ISOMORPHIC, ORBIT_INVARIANT,
                           detail="exhaustive search over S_vartheta found no phi")
        if w is None:
            w = find_isomorphism(A, B, budget)
            if w is None:
                return Verdict(NON_ISOMORPHIC, "isomorphism search",
                               detail="exhaustive search over maps respecting the characteristic subspaces")
    except BudgetExceeded as exc:
        return Verdict(INCONCLUSIVE, detail=str(exc))
    except Unsupported as exc:
        return Verdict(INCONCLUSIVE, detail=str(exc))
    if not is_isomorphism(A, B, w):
        raise AssertionError("constructed witness failed verification")
    return Verdict(ISOMORPHIC, witness=w, detail="verified witness")


# ---------------------------------------------------------------------------
# enumeration of extensions

@dataclass
class Bucket:
    thetas: tuple
    algebra: EvolutionAlgebra
    subspaces: list
    matches: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        F = self.algebra.field
        return {
            "thetas": [[F.format(x) for x in t] for t in self.thetas],
            "table": self.algebra.table(),
            "orbit_size": len(self.subspaces),
            "matches": self.matches,
        }


@dataclass
class Enumeration:
    base: str
    ext_dim: int
    field: object
    buckets: list
    partial: bool = False
    admissible: int = 0
    message: str = ""

    def to_json(self) -> dict:
        return {"base": self.base, "ext_dim": self.ext_dim, "field": self.field.name,
                "admissible_subspaces": self.admissible, "partial": self.partial,
                "message": self.message, "buckets": [b.to_json() for b in self.buckets]}


def _subspaces(F, h: int, k: int):
    """All k-dimensional subspaces of F^h as RREF row tuples, sorted."""
    seen = set()
    vectors = [v for v in product(F.elements(), repeat=h) if any(x != F.zero for x in v)]
    for combo in product(vectors, repeat=k):
        red, piv = rref(F, combo)
        if len(piv) == k:
            seen.add(tuple(red))
    return sorted(seen)


def _thetas_from_coords(base, reps, coords):
    F = base.field
    out = []
    for row in coords:
        t = [F.zero] * base.dim
        for c, r in zip(row, reps):
            if c != F.zero:
                t = [F.add(x, F.mul(c, y)) for x, y in zip(t, r)]
        out.append(tuple(t))
    return tuple(out)


def enumerate_extensions(base: EvolutionAlgebra, k: int, budget: int | None = None,
                         base_name: str = "") -> Enumeration:
    """One representative per Aut(base)-orbit of admissible k-dimensional subspaces of H."""
    F = base.field
    if not F.finite:
        raise Unsupported("enumeration needs a finite field")
    budget = default_budget() if budget is None else budget
    reps = class_space(base)
    subs = _subspaces(F, len(reps), k) if k <= len(reps) else []
    admissible = []
    for S in subs:
        thetas = _thetas_from_coords(base, reps, S)
        if check_admissible(ExtensionSpec(base, thetas)) is None:
            admissible.append((S, thetas))
    order = sorted(admissible, key=lambda st: st[1])
    seen, buckets = set(), []
    result = Enumeration(base_name or base.name, k, F, buckets, admissible=len(admissible))
    for S, thetas in order:
        if S in seen:
            continue
        try:
            images = orbit_images(base, thetas, budget)
        except BudgetExceeded as exc:
            result.partial, result.message = True, str(exc)
            break
        members = sorted(images)
        seen.update(members)
        buckets.append(Bucket(thetas, extend(ExtensionSpec(base, thetas)), members))
    return result


def match_catalog(result: Enumeration, dim: int) -> dict:
    """Attach catalog entries derived from the enumerated base to their buckets.

    Returns {label: bucket index or None} for every instantiated entry.
    """
    F = result.field
    base = catalog.get(result.base, field=F)
    B = coboundary_space(base)
    index = {}
    for i, b in enumerate(result.buckets):
        for S in b.subspaces:
            index[S] = i
    out = {}
    for name in catalog.names(dim):
        e = catalog.entry(name)
        d = e.derivation
        if d is None or d["kind"] != "extension" or d["base"] != result.base:
            continue
        for a in catalog.sample_parameters(e, F):
            label = name if a is None else f"{name}[alpha={F.format(a)}]"
            thetas = catalog.derivation_thetas(e, F, a)
            if check_admissible(ExtensionSpec(base, thetas)) is not None:
                out[label] = None
                continue
            i = index.get(class_subspace(base, thetas, B))
            out[label] = i
            if i is not None:
                result.buckets[i].matches.append(label)
    return out


# ---------------------------------------------------------------------------
# catalog verification and reports

def verify_dim(dim: int, config: RunConfig | None = None, with_aut: bool = False) -> dict:
    config = config or RunConfig()
    F = config.field
    entries = []
    for name in catalog.names(dim):
        e = catalog.entry(name)
        checks = [catalog.verify_entry(name, a, F, with_aut=with_aut)
                  for a in catalog.sample_parameters(e, F)]
        wit = catalog.verify_witnesses(name, bound=config.max_prime, seed=config.seed)
        entries.append({"name": name, "checks": checks, "witnesses": wit,
                        "pass": all(c["pass"] for c in checks) and wit["pass"]})
    return {"dim": dim, "field": F.name, "entries": entries,
            "pass": all(e["pass"] for e in entries)}


def format_verify(report: dict) -> str:
    lines = [f"verify dim {report['dim']} over {report['field']}"]
    for e in report["entries"]:
        n_wit = len(e["witnesses"]["witnesses"])
        status = "PASS" if e["pass"] else "FAIL"
        lines.append(f"  {e['name']:<8} {status}  samples={len(e['checks'])} witnesses={n_wit}")
        for c in e["checks"]:
            for key, v in c["checks"].items():
                if not v["pass"]:
                    lines.append(f"      {key}: expected {v['expected']} got {v['actual']}")
        for w in e["witnesses"]["witnesses"]:
            if not w["pass"]:
                lines.append(f"      witness {w['label']} failed: {w['samples']}")
    total = len(report["entries"])
    passed = sum(e["pass"] for e in report["entries"])
    lines.append(f"{passed}/{total} entries pass")
    return "\n".join(lines) + "\n"


def _format_vector(F, v, prefix="d"):
    terms = []
    for i, x in enumerate(v):
        if x == F.zero:
            continue
        s = F.format(x)
        name = f"{prefix}{i + 1}{i + 1}"
        terms.append(name if s == "1" else f"{s}*{name}")
    return "+".join(terms) or "0"


def _psi_samples(e):
    out = []
    for a in catalog.sample_parameters(e, Q):
        fp = dict(fingerprint(catalog.get(e.name, a, Q), "zero_pattern"))
        out.append((None if a is None else Q.format(a), fp["Psi"]))
    return out


ORBIT_RULE = ("E_5_18[alpha] ~ E_5_18[beta] iff beta in {alpha, 1/alpha, 1-alpha, 1/(1-alpha), "
              "alpha/(alpha-1), (alpha-1)/alpha}")
RIGIDITY_RULE = "E_5_23[alpha] ~ E_5_23[beta] iff alpha = beta"


def report(dim: int = 5) -> dict:
    """The classification table for one dimension, deterministic."""
    blocks = []
    for name in catalog.names(dim):
        e = catalog.entry(name)
        d = e.derivation
        block = {
            "name": name,
            "table": e.table or "all products are zero",
            "parameter": e.parameter,
            "ann": "<" + ", ".join("+".join(f"e{i}" for i in v) for v in e.ann) + ">",
            "nilpotency": e.nilpotency,
            "construction": None,
            "psi": [[a, None if p is None else list(p)] for a, p in _psi_samples(e)],
            "notes": e.notes,
        }
        if d is not None and d["kind"] == "sum":
            block["construction"] = f"{d['base']} + E_1_1"
        elif d is not None:
            block["construction"] = {"base": d["base"], "thetas": [
                "+".join(f"{c}*d{i + 1}{i + 1}" if c != "1" else f"d{i + 1}{i + 1}"
                         for i, c in enumerate(t) if c != "0") for t in d["thetas"]]}
        if name == "E_5_18":
            block["isomorphisms"] = ORBIT_RULE
        if name == "E_5_23":
            block["isomorphisms"] = RIGIDITY_RULE
        blocks.append(block)
    return {"dim": dim, "count": len(blocks), "blocks": blocks}


def format_report(rep: dict) -> str:
    lines = [f"Nilpotent evolution algebras of dimension {rep['dim']}: {rep['count']} families", ""]
    for b in rep["blocks"]:
        head = b["name"]
        if b["parameter"]:
            excl = b["parameter"]["excluded"]
            head += " (alpha in F" + (f" minus {{{', '.join(excl)}}}" if excl else "") + ")"
        lines.append(head)
        lines.append(f"  table: {b['table']}")
        lines.append(f"  ann: {b['ann']}   nilpotency index: {b['nilpotency']}")
        c = b["construction"]
        if isinstance(c, dict):
            lines.append(f"  base: {c['base']}   theta: ({', '.join(c['thetas'])})")
        elif c:
            lines.append(f"  annihilator component: {c}")
        psi = ", ".join(f"{'' if a is None else 'alpha=' + a + ': '}{tuple(p) if p else '-'}"
                        for a, p in b["psi"])
        lines.append(f"  Psi: {psi}")
        if "isomorphisms" in b:
            lines.append(f"  isomorphisms: {b['isomorphisms']}")
        if b["notes"]:
            lines.append(f"  note: {b['notes']}")
        lines.append("")
    return "\n".join(lines)


def write_report(dim: int, out_dir) -> tuple:
    os.makedirs(out_dir, exist_ok=True)
    rep = report(dim)
    txt = os.path.join(out_dir, f"report_dim{dim}.txt")
    js = os.path.join(out_dir, f"report_dim{dim}.json")
    with open(txt, "w") as fh:
        fh.write(format_report(rep))
    with open(js, "w") as fh:
        json.dump(rep, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return txt, js


def coverage(field, dim: int = 5, budget: int | None = None) -> dict:
    """Enumerate every base feeding dimension ``dim`` and locate each catalog entry.

    Bases: every (dim-1)-dimensional entry with one extra coordinate, plus
    every base named in a derivation. Passes when each instantiated entry
    lies in exactly one bucket and no bucket holds two different entries
    other than members of one family.
    """
    wanted = {(n, 1) for n in catalog.names(dim - 1)}
    for name in catalog.names(dim):
        d = catalog.entry(name).derivation
        if d and d["kind"] == "extension":
            wanted.add((d["base"], dim - catalog.entry(d["base"]).dim))
    runs, ok = [], True
    for base_name, k in sorted(wanted):
        result = enumerate_extensions(catalog.get(base_name, field=field), k, budget, base_name)
        located = match_catalog(result, dim)
        clashes = [b.matches for b in result.buckets
                   if len({m.split("[")[0] for m in b.matches}) > 1]
        missing = [label for label, i in located.items() if i is None]
        run_ok = not result.partial and not missing and not clashes
        ok &= run_ok
        runs.append({"base": base_name, "ext_dim": k, "buckets": len(result.buckets),
                     "unmatched_buckets": sum(1 for b in result.buckets if not b.matches),
                     "located": located, "missing": missing, "clashes": clashes,
                     "partial": result.partial, "pass": run_ok})
    return {"field": field.name, "dim": dim, "runs": runs, "pass": ok}
