"""Lattice cones, fans, Hilbert bases and toric ideals in rank at most 3.

Everything is exact and enumerative: dual cones come from solving tight
subsystems over Q, Hilbert bases from lattice points in a bounding box, and
toric ideals from an elimination Groebner basis.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .errors import DimensionError, UnsupportedDimensionError
from .groebner import Ideal, buchberger
from .ideal_ops import EliminationOrder
from .poly import DEGREVLEX, MonomialOrder, Polynomial, PolyRing

MAX_RANK = 3
MAX_TORIC_GENS = 6


def primitive(v: Sequence) -> tuple:
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = math.lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _nullspace(rows: Sequence[Sequence], D: int) -> list:
    if not rows:
        return [tuple(int(i == j) for j in range(D)) for i in range(D)]
    return [primitive(list(v)) for v in sympy.Matrix([list(r) for r in rows]).nullspace()]


def _rank(rows) -> int:
    return sympy.Matrix([list(r) for r in rows]).rank() if rows else 0


@dataclass(frozen=True)
class Cone:
    """Cone generated by primitive integer rays in Z^D."""

    rays: tuple
    D: int

    def __init__(self, rays: Sequence[Sequence[int]], D: int | None = None):
        rays = [tuple(int(x) for x in r) for r in rays]
        if D is None:
            if not rays:
                raise ValueError("rank is required for the zero cone")
            D = len(rays[0])
        if any(len(r) != D for r in rays):
            raise DimensionError(f"all rays must have length {D}")
        prim = []
        for r in rays:
            if not any(r):
                continue
            p = primitive(r)
            if p not in prim:
                prim.append(p)
        object.__setattr__(self, "rays", tuple(sorted(prim)))
        object.__setattr__(self, "D", D)

    @property
    def dim(self) -> int:
        return _rank(self.rays)

    def contains(self, v: Sequence) -> bool:
        """Exact membership via the inequalities of the dual cone."""
        return all(_dot(u, v) >= 0 for u in dual_cone(self).rays)

    def is_pointed(self) -> bool:
        return dual_cone(self).dim == self.D

    def lineality(self) -> list:
        """Basis of the largest linear subspace contained in the cone."""
        return _nullspace(dual_cone(self).rays, self.D)

    def __str__(self):
        return "cone(" + ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.rays) + ")"


def _check_rank(D):
    if D > MAX_RANK:
        raise UnsupportedDimensionError(f"rank {D} exceeds the supported maximum {MAX_RANK}")


def dual_cone(c: Cone) -> Cone:
    """Generators of ``{u : <u, v> >= 0 for all rays v}``.

    The lineality part is spanned by ``±`` a basis of the orthogonal
    complement of the rays; the pointed part is generated by directions tight
    on ``k - 1`` independent rays inside the span of the rays (``k`` its rank).
    """
    _check_rank(c.D)
    rays = list(c.rays)
    lin = _nullspace(rays, c.D) if rays else _nullspace([], c.D)
    k = _rank(rays)
    gens = set()
    for b in lin:
        gens.add(b)
        gens.add(tuple(-x for x in b))
    if k > 0:
        for subset in itertools.combinations(rays, k - 1):
            for v in _nullspace(list(subset) + lin, c.D):
                for s in (v, tuple(-x for x in v)):
                    dots = [_dot(s, r) for r in rays]
                    if all(d >= 0 for d in dots) and any(d > 0 for d in dots):
                        gens.add(s)
    return Cone(sorted(gens), c.D)


def is_regular(c: Cone) -> bool:
    """True iff the rays extend to a Z-basis: independent with coprime maximal minors."""
    rays = list(c.rays)
    if not rays:
        return True
    k = len(rays)
    if _rank(rays) < k:
        return False
    minors = [
        int(sympy.Matrix([[r[j] for j in cols] for r in rays]).det())
        for cols in itertools.combinations(range(c.D), k)
    ]
    return math.gcd(*minors) == 1


@dataclass(frozen=True)
class Fan:
    cones: tuple
    D: int

    def __init__(self, cones: Sequence[Cone], D: int | None = None):
        cones = tuple(cones)
        if D is None:
            if not cones:
                raise ValueError("rank is required for the empty fan")
            D = cones[0].D
        if any(c.D != D for c in cones):
            raise DimensionError("cones of different rank")
        object.__setattr__(self, "cones", cones)
        object.__setattr__(self, "D", D)

    def maximal_cones(self) -> list:
        out = []
        for c in self.cones:
            if not any(set(c.rays) < set(o.rays) for o in self.cones):
                if c not in out:
                    out.append(c)
        return out

    @property
    def rays(self) -> list:
        return sorted({r for c in self.cones for r in c.rays})

    def faces_meet_properly(self) -> bool:
        """Pairwise intersections of maximal cones are common faces (ray containment)."""
        ms = self.maximal_cones()
        for a, b in itertools.combinations(ms, 2):
            common = set(a.rays) & set(b.rays)
            face = Cone(sorted(common), self.D)
            if face not in self.cones and common:
                return False
        return True


def projective_fan(D: int) -> Fan:
    """Fan of projective D-space: rays ``e_1..e_D`` and ``-(e_1+..+e_D)``,
    one cone per proper subset of the rays."""
    if not 1 <= D <= MAX_RANK:
        raise UnsupportedDimensionError(f"projective_fan supports 1 <= D <= {MAX_RANK}")
    vs = [tuple(int(i == j) for j in range(D)) for i in range(D)] + [tuple([-1] * D)]
    cones = []
    for size in range(D + 1):
        for subset in itertools.combinations(vs, size):
            cones.append(Cone(list(subset), D))
    return Fan(cones, D)


@dataclass(frozen=True)
class Completeness:
    complete: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.complete


def _boundary_directions(D):
    seen = []
    for i in range(D):
        for s in (-1, 1):
            seen.append(tuple(s if j == i else 0 for j in range(D)))
    for v in itertools.product((-1, 0, 1), repeat=D):
        if any(v) and v not in seen:
            seen.append(v)
    return seen


def is_complete(f: Fan, samples: int = 200, seed: int = 0) -> Completeness:
    """Check that the cones cover every tested direction.

    Tests all directions in ``{-1,0,1}^D`` (unit directions first), then
    ``samples`` seeded random integer directions; returns the first
    uncovered direction as witness.
    """
    _check_rank(f.D)
    cones = f.maximal_cones()
    duals = [dual_cone(c).rays for c in cones]

    def covered(v):
        return any(all(_dot(u, v) >= 0 for u in d) for d in duals)

    rng = random.Random(seed)
    dirs = _boundary_directions(f.D)
    for _ in range(samples):
        v = tuple(rng.randint(-20, 20) for _ in range(f.D))
        if any(v):
            dirs.append(v)
    for v in dirs:
        if not covered(v):
            return Completeness(False, v)
    return Completeness(True)


# ---------------------------------------------------------------------------
# Hilbert bases
# ---------------------------------------------------------------------------


def _integer_kernel(rows: Sequence[Sequence[int]], D: int):
    """Unimodular ``U`` (columns) and ``r`` with ``U[:, r:]`` a Z-basis of the kernel."""
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(D)] for i in range(D)]  # U[i] is column i

    def colop(dst, src, k):  # col_dst -= k * col_src
        for row in A:
            row[dst] -= k * row[src]
        for i in range(D):
            U[dst][i] -= k * U[src][i]

    def swap(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        U[a], U[b] = U[b], U[a]

    pivot = 0
    for row in A:
        if pivot >= D:
            break
        while True:
            nz = [j for j in range(pivot, D) if row[j] != 0]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(row[j]))
            swap(pivot, j)
            done = True
            for k in range(pivot + 1, D):
                if row[k]:
                    colop(k, pivot, row[k] // row[pivot])
                    if row[k]:
                        done = False
            if done:
                pivot += 1
                break
    return [tuple(col) for col in U], pivot


def _pointed_hilbert_basis(rays, D):
    """Irreducible lattice points of a pointed cone (enumerated in the zonotope box)."""
    if not rays:
        return []
    cone = Cone(rays, D)
    ineqs = dual_cone(cone).rays
    lo = [sum(min(r[i], 0) for r in cone.rays) for i in range(D)]
    hi = [sum(max(r[i], 0) for r in cone.rays) for i in range(D)]

    def inside(v):
        return all(_dot(u, v) >= 0 for u in ineqs)

    pts = [
        v
        for v in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        if any(v) and inside(v)
    ]
    basis = []
    for v in pts:
        reducible = any(
            w != v and inside(tuple(a - b for a, b in zip(v, w))) for w in pts
        )
        if not reducible:
            basis.append(v)
    return sorted(basis)


def hilbert_basis(c: Cone) -> list:
    """Minimal generating set of the semigroup of lattice points in ``c``.

    For a cone with lineality, the lineality lattice contributes ``±`` a
    Z-basis and the pointed quotient cone contributes its lifted Hilbert basis.
    """
    _check_rank(c.D)
    D = c.D
    dual = dual_cone(c).rays
    U, r = _integer_kernel(dual, D)
    lin = U[r:]
    if not lin:
        return _pointed_hilbert_basis(c.rays, D)
    # coordinates with respect to the columns of U; the last D - r span the lineality
    Uinv = sympy.Matrix([list(col) for col in U]).T.inv()
    proj = []
    for ray in c.rays:
        y = Uinv * sympy.Matrix(ray)
        head = tuple(int(y[i]) for i in range(r))
        if any(head):
            proj.append(head)
    out = set()
    for b in lin:
        out.add(tuple(b))
        out.add(tuple(-x for x in b))
    for h in _pointed_hilbert_basis(proj, r):
        lifted = tuple(sum(h[k] * U[k][i] for k in range(r)) for i in range(D))
        out.add(lifted)
    return sorted(out)


# ---------------------------------------------------------------------------
# Toric ideals
# ---------------------------------------------------------------------------


def toric_ideal(
    gens: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    order: MonomialOrder = DEGREVLEX,
) -> Ideal:
    """Kernel of ``u_i -> t^{a_i}`` as a binomial ideal in one variable per point.

    Computed by eliminating ``t_1..t_D`` and an inverse variable ``s`` from
    ``<u_i t^{a_i^-} - t^{a_i^+}> + <s t_1...t_D - 1>``.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        raise ValueError("need at least one lattice point")
    D = len(gens[0])
    if any(len(g) != D for g in gens):
        raise DimensionError("lattice points of different rank")
    _check_rank(D)
    m = len(gens)
    if m > MAX_TORIC_GENS:
        raise UnsupportedDimensionError(f"at most {MAX_TORIC_GENS} generators supported")
    names = tuple(names) if names is not None else tuple(f"u{i + 1}" for i in range(m))
    base = PolyRing.from_names(names)
    big = base.extend([f"_t{k + 1}" for k in range(D)] + ["_s"])
    n = big.nvars
    polys = []
    for i, a in enumerate(gens):
        neg = [0] * n
        pos = [0] * n
        neg[i] = 1
        for k, ak in enumerate(a):
            if ak < 0:
                neg[m + k] = -ak
            else:
                pos[m + k] = ak
        polys.append(big.monomial(neg) - big.monomial(pos))
    s_t = [0] * m + [1] * (D + 1)
    polys.append(big.monomial(s_t) - big.one())
    gb = buchberger(Ideal(polys, big), EliminationOrder(m, D + 1, order))
    kept = [
        Polynomial._raw(base, {mono[:m]: c for mono, c in g.terms.items()})
        for g in gb.elements
        if all(not any(mono[m:]) for mono in g.terms)
    ]
    ideal = Ideal(kept, base)
    buchberger(ideal, order)
    return ideal


def monomial_map_image(f: Polynomial, gens: Sequence[Sequence[int]]) -> Polynomial:
    """Image of ``f`` under ``u_i -> t^{a_i}`` as a Laurent polynomial in ``t``."""
    D = len(gens[0])
    ring = PolyRing(D, f.ring.field, tuple(f"t{k + 1}" for k in range(D)))
    out = ring.zero()
    for mono, c in f.terms.items():
        e = [sum(mono[i] * gens[i][k] for i in range(len(gens))) for k in range(D)]
        out = out + Polynomial._raw(ring, {tuple(e): c})
    return out
