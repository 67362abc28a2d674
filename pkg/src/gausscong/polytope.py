"""Newton polytopes of Laurent polynomials.

Vertex enumeration, the face lattice, facet inequalities, containment
tests and grading-form selection, all in exact rational arithmetic.
Input supports are small (at most a few hundred lattice points), so the
algorithms favour robustness over asymptotics: extremality is decided by
exact feasibility tests and facets are enumerated from vertex subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import exactlp
from .algebra import LaurentPolynomial


class NotAVertex(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GradingForm:
    """Integer linear form used to grade and truncate series expansions."""

    weights: tuple

    def __call__(self, vec) -> int:
        return sum(w * v for w, v in zip(self.weights, vec))


@dataclass(frozen=True)
class Face:
    """A face of a Newton polytope.

    ``supporting_form . w >= offset`` holds on the whole polytope, with
    equality exactly on the support points listed in ``members``.
    """

    supporting_form: tuple
    offset: int
    members: tuple
    dim: int


class NewtonPolytope:
    """Convex hull data of a finite set of integer lattice points."""

    __slots__ = ("ambient_dim", "points", "vertices", "dim", "_base", "_directions",
                 "_equations", "_facets")

    def __init__(self, points):
        pts = sorted({tuple(p) for p in points})
        if not pts:
            raise ValueError("empty point set")
        self.ambient_dim = len(pts[0])
        self.points = tuple(pts)
        self._base = pts[0]
        dirs = [tuple(a - b for a, b in zip(p, self._base)) for p in pts[1:]]
        reduced, pivots = exactlp.rref(dirs) if dirs else ([], [])
        self.dim = len(pivots)
        self._directions = [reduced[i] for i in range(len(pivots))]
        self._equations = self._affine_equations()
        self.vertices = tuple(p for p in pts if self._is_extreme(p))
        self._facets = None

    # -- construction helpers ------------------------------------------------

    def _affine_equations(self):
        """Integer (h, d) with h.x = d on the affine hull of the points."""
        if self.dim == self.ambient_dim:
            return ()
        normals = exactlp.nullspace(self._directions) if self._directions else [
            [Fraction(1) if j == i else Fraction(0) for j in range(self.ambient_dim)]
            for i in range(self.ambient_dim)
        ]
        out = []
        for n in normals:
            h = _integerize(n)
            d = sum(a * b for a, b in zip(h, self._base))
            out.append((h, d))
        return tuple(out)

    def _is_extreme(self, p) -> bool:
        others = [q for q in self.points if q != p]
        if not others:
            return True
        return not exactlp.in_convex_hull(p, others)

    # -- facet data ------------------------------------------------------------

    def facet_inequalities(self):
        """Integer (h, d) pairs with h.x >= d on the polytope, tight on a facet."""
        if self._facets is None:
            self._facets = self._enumerate_facets()
        return self._facets

    def _local(self, p):
        """Coordinates of p in the affine basis of the hull (length = dim)."""
        diff = [Fraction(a - b) for a, b in zip(p, self._base)]
        coords = []
        rem = list(diff)
        for direction in self._directions:
            # directions are rref rows: leading entries give coordinates greedily
            lead = next(i for i, v in enumerate(direction) if v != 0)
            c = rem[lead] / direction[lead]
            coords.append(c)
            rem = [r - c * d for r, d in zip(rem, direction)]
        return coords

    def _enumerate_facets(self):
        d = self.dim
        if d == 0:
            return ()
        verts = list(self.vertices)
        local = {v: self._local(v) for v in self.points}
        seen = set()
        facets = []
        for subset in itertools.combinations(verts, d):
            vecs = [
                [a - b for a, b in zip(local[s], local[subset[0]])]
                for s in subset[1:]
            ]
            normals = exactlp.nullspace(vecs) if vecs else [[Fraction(1)]]
            if len(normals) != 1:
                continue
            n_loc = normals[0]
            c = sum(a * b for a, b in zip(n_loc, local[subset[0]]))
            vals = {p: sum(a * b for a, b in zip(n_loc, local[p])) for p in self.points}
            if all(vals[p] >= c for p in self.points):
                pass
            elif all(vals[p] <= c for p in self.points):
                n_loc = [-v for v in n_loc]
                c = -c
                vals = {p: -v for p, v in vals.items()}
            else:
                continue
            members = tuple(p for p in self.points if vals[p] == c)
            if members in seen or len(members) == len(self.points):
                continue
            seen.add(members)
            facets.append((self._lift_form(n_loc), members))
        out = []
        for h, members in facets:
            d_off = min(sum(a * b for a, b in zip(h, p)) for p in self.points)
            out.append((h, d_off, members))
        out.sort(key=lambda t: (t[0], t[1]))
        return tuple(out)

    def _lift_form(self, n_loc):
        """Ambient integer form whose restriction to the hull matches n_loc."""
        # h(x) = n_loc . local(x); local() is affine-linear, so build h by
        # evaluating on coordinate perturbations within the affine hull.
        # Express h as sum over directions: local coordinates are linear in x.
        # Solve for an ambient row vector H with H . (p - base) = n_loc . local(p).
        rows = [list(d) for d in self._directions]
        targets = []
        for i in range(len(rows)):
            unit = [Fraction(1) if j == i else Fraction(0) for j in range(len(rows))]
            targets.append(sum(a * b for a, b in zip(n_loc, unit)))
        # H restricted to span(directions): solve rows^T-structured system by rref
        # Build system: for each direction vector v_i: H . v_i = target_i.
        sol = exactlp.solve_linear(rows, targets)
        return _integerize(sol)

    def contains_point(self, p) -> bool:
        for h, d in self._equations:
            if sum(a * b for a, b in zip(h, p)) != d:
                return False
        for h, d, _ in self.facet_inequalities():
            if sum(a * b for a, b in zip(h, p)) < d:
                return False
        return True

    def __repr__(self):
        return f"NewtonPolytope(dim={self.dim}, vertices={list(self.vertices)})"


def _integerize(vec):
    """Scale a rational vector to coprime integers (sign preserved)."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def newton_polytope(P: LaurentPolynomial) -> NewtonPolytope:
    """Newton polytope of a nonzero Laurent polynomial."""
    if P.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return NewtonPolytope(P.support())


def polytope_contains(inner: NewtonPolytope, outer: NewtonPolytope) -> bool:
    """Exact containment test conv(inner) <= conv(outer)."""
    if inner.ambient_dim != outer.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {inner.ambient_dim} vs {outer.ambient_dim}"
        )
    return all(outer.contains_point(v) for v in inner.vertices)


def faces(NP: NewtonPolytope) -> list[Face]:
    """All faces of every dimension, including the polytope itself.

    Each face carries an integer supporting form; faces are sorted by
    (dimension, member list).
    """
    zero = (0,) * NP.ambient_dim
    full = Face(zero, 0, NP.points, NP.dim)
    if NP.dim == 0:
        return [full]
    facet_faces = []
    for h, d, members in NP.facet_inequalities():
        facet_faces.append(Face(h, d, members, _members_dim(members)))
    known = {f.members: f for f in facet_faces}
    frontier = list(facet_faces)
    while frontier:
        nxt = []
        for f in frontier:
            for g in facet_faces:
                inter = tuple(p for p in f.members if p in g.members)
                if not inter or inter in known or inter == f.members:
                    continue
                form = tuple(a + b for a, b in zip(f.supporting_form, g.supporting_form))
                face = Face(form, f.offset + g.offset, inter, _members_dim(inter))
                known[inter] = face
                nxt.append(face)
        frontier = nxt
    out = [full] + list(known.values())
    out.sort(key=lambda f: (f.dim, f.members))
    return out


def _members_dim(members) -> int:
    if len(members) == 1:
        return 0
    base = members[0]
    dirs = [[a - b for a, b in zip(p, base)] for p in members[1:]]
    return exactlp.matrix_rank(dirs)


def face_of_form(NP: NewtonPolytope, form) -> Face:
    """The face of NP on which the integer form attains its minimum."""
    form = tuple(form)
    vals = {p: sum(a * b for a, b in zip(form, p)) for p in NP.points}
    d = min(vals.values())
    members = tuple(p for p in NP.points if vals[p] == d)
    return Face(form, d, members, _members_dim(members))


def is_face_of(face: Face, NP: NewtonPolytope) -> bool:
    """Check that ``face`` is a genuine face of NP (by its supporting data)."""
    got = face_of_form(NP, face.supporting_form)
    return got.members == face.members and got.offset == face.offset


def grading_form(Q: LaurentPolynomial, v) -> GradingForm:
    """Integer form alpha with ``alpha(k - v) > 0`` for every support point k != v.

    Such a form exists if and only if ``v`` is a vertex of the Newton
    polytope of Q; raises :class:`NotAVertex` otherwise.
    """
    v = tuple(v)
    support = Q.support()
    if v not in support:
        raise NotAVertex(f"{v} is not in the support")
    shifted = [tuple(a - b for a, b in zip(k, v)) for k in support if k != v]
    if not shifted:
        return GradingForm((1,) * Q.nvars)
    alpha = exactlp.strictly_positive_form(shifted)
    if alpha is None:
        raise NotAVertex(f"{v} is not a vertex of the Newton polytope")
    return GradingForm(tuple(alpha))


def separating_graded_form(supports) -> GradingForm:
    """Weights (1, B, B^2, ...) attaining their minimum at a unique point of
    every listed support.

    ``B`` is one more than twice the largest coordinate magnitude across
    the supports, which makes the weighted sums injective on each
    support (a mixed-radix argument), so the argmin is always unique.
    """
    maxmag = 0
    nvars = None
    for sup in supports:
        for p in sup:
            nvars = len(p)
            maxmag = max(maxmag, max(abs(c) for c in p) if p else 0)
    if nvars is None:
        raise ValueError("no support points given")
    B = 1 + 2 * maxmag
    return GradingForm(tuple(B**i for i in range(nvars)))


def cone_contains(generators, point) -> bool:
    """Membership of a lattice point in the cone spanned by ``generators``."""
    return exactlp.in_cone(point, list(generators))
