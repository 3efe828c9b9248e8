"""
The projective plane PG(2, q), wind roses and radius-1 extended balls of F_q^3.

Points are 1-dimensional subspaces of F_q^3 written in homogeneous coordinates
(a:b:c), normalized so that the last nonzero coordinate is 1. A point is
cardinal, coast or midland when it has one, two or three nonzero coordinates.
The wind rose W(p) is the union of the three lines joining p to the cardinal
points c1 = (1:0:0), c2 = (0:1:0), c3 = (0:0:1).

The extended ball B_E[v, 1] is the set of vectors at Hamming distance at most 1
from the span of v. It is the union of the subspaces that are points of
W([v]), so wind-rose covers of PG(2, q) and ball covers of F_q^3 are the same
thing.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, total_ordering
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from quower.board import CoverReport
from quower.errors import FieldMismatchError, InputError
from quower.field import FieldElement, FieldSpec


class PointClass(Enum):
    """Number of nonzero homogeneous coordinates: 1, 2 or 3."""
    CARDINAL = 1
    COAST = 2
    MIDLAND = 3


@dataclass(frozen=True)
class Vector3:
    """A vector (x1, x2, x3) of F_q^3; zero is allowed."""
    spec: FieldSpec
    x: tuple

    def __post_init__(self):
        if len(self.x) != 3:
            raise InputError(f"F_q^3 vectors have three coordinates, got {len(self.x)}")
        object.__setattr__(self, "x", tuple(self.spec.element(c) for c in self.x))

    @classmethod
    def of(cls, spec: FieldSpec, *coords) -> Vector3:
        """Vector from three indices or coefficient vectors."""
        return cls(spec, tuple(coords))

    def is_zero(self) -> bool:
        return not any(self.x)

    def weight(self) -> int:
        """Hamming weight."""
        return sum(1 for c in self.x if c)

    def scale(self, t: FieldElement) -> Vector3:
        return Vector3(self.spec, tuple(t * c for c in self.x))

    def __add__(self, other: Vector3) -> Vector3:
        _same_field(self.spec, other.spec)
        return Vector3(self.spec, tuple(a + b for a, b in zip(self.x, other.x)))

    def __sub__(self, other: Vector3) -> Vector3:
        _same_field(self.spec, other.spec)
        return Vector3(self.spec, tuple(a - b for a, b in zip(self.x, other.x)))

    def span(self) -> ProjPoint:
        """The point [v] of PG(2, q)."""
        return ProjPoint.from_coords(self.spec, self.x)

    @property
    def key(self) -> tuple[int, int, int]:
        return tuple(c.index for c in self.x)

    def coefficient_vectors(self) -> list[list[int]]:
        return [list(c.coeffs) for c in self.x]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.x) + ")"


@total_ordering
@dataclass(frozen=True, eq=False)
class ProjPoint:
    """
    A point of PG(2, q) in canonical homogeneous coordinates.

    Build points with `ProjPoint.from_coords` (any nonzero representative) so the
    last nonzero coordinate is 1; two equal points then have identical coordinates.
    Points order by the indices of their coordinates.
    """
    spec: FieldSpec
    coords: tuple

    @classmethod
    def from_coords(cls, spec: FieldSpec, coords: Iterable) -> ProjPoint:
        coords = tuple(spec.element(c) for c in coords)
        if len(coords) != 3:
            raise InputError("homogeneous coordinates of PG(2, q) have three entries")
        last = next((c for c in reversed(coords) if c), None)
        if last is None:
            raise InputError("the zero vector spans no point of PG(2, q)")
        scale = last.inv()
        return cls(spec, tuple(c * scale for c in coords))

    @classmethod
    def of(cls, spec: FieldSpec, *coords) -> ProjPoint:
        return cls.from_coords(spec, coords)

    @property
    def key(self) -> tuple[int, int, int]:
        return tuple(c.index for c in self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.spec == other.spec and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: ProjPoint) -> bool:
        return self.key < other.key

    def vector(self) -> Vector3:
        """The canonical representative of the subspace."""
        return Vector3(self.spec, self.coords)

    def __str__(self) -> str:
        return ":".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"ProjPoint({self})"


def _same_field(a: FieldSpec, b: FieldSpec) -> None:
    if a != b:
        raise FieldMismatchError(f"objects over {a!r} and {b!r} cannot be combined")


def cardinal_points(spec: FieldSpec) -> tuple[ProjPoint, ProjPoint, ProjPoint]:
    """(c1, c2, c3)."""
    zero, one = spec.zero, spec.one
    return (ProjPoint(spec, (one, zero, zero)),
            ProjPoint(spec, (zero, one, zero)),
            ProjPoint(spec, (zero, zero, one)))


@lru_cache(maxsize=None)
def plane_points(spec: FieldSpec) -> tuple[ProjPoint, ...]:
    """All q^2 + q + 1 points, sorted."""
    elems = list(spec.elements())
    found = {ProjPoint.from_coords(spec, c) for c in product(elems, repeat=3) if any(c)}
    return tuple(sorted(found))


def vectors(spec: FieldSpec) -> list[Vector3]:
    """All q^3 vectors in canonical order."""
    elems = list(spec.elements())
    return [Vector3(spec, c) for c in product(elems, repeat=3)]


def classify(p: ProjPoint) -> PointClass:
    return PointClass(sum(1 for c in p.coords if c))


def line_through(u: ProjPoint, v: ProjPoint) -> frozenset:
    """The line <u, v>: the q + 1 points [u] and [v + t u]; {u} when u = v."""
    _same_field(u.spec, v.spec)
    if u == v:
        return frozenset({u})
    uu, vv = u.vector(), v.vector()
    line = {u}
    for t in u.spec.elements():
        line.add((vv + uu.scale(t)).span())
    return frozenset(line)


@lru_cache(maxsize=None)
def wind_rose(p: ProjPoint) -> frozenset:
    """W(p) = <p,c1> | <p,c2> | <p,c3>: 3q+1 points for midland p, 2q+1 otherwise."""
    rose = set()
    for c in cardinal_points(p.spec):
        rose |= line_through(p, c)
    return frozenset(rose)


def cross(u: Vector3, v: Vector3) -> Vector3:
    """Cross product: the coordinates of the line through [u] and [v], or the meet of two lines."""
    _same_field(u.spec, v.spec)
    (a1, a2, a3), (b1, b2, b3) = u.x, v.x
    return Vector3(u.spec, (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1))


def meet(u1: ProjPoint, v1: ProjPoint, u2: ProjPoint, v2: ProjPoint) -> ProjPoint:
    """The intersection point of the distinct lines <u1, v1> and <u2, v2>."""
    if u1 == v1 or u2 == v2:
        raise InputError("meet needs two distinct points on each line")
    point = cross(cross(u1.vector(), v1.vector()), cross(u2.vector(), v2.vector()))
    if point.is_zero():
        raise InputError("the two lines coincide")
    return point.span()


def covers_plane(centers: Iterable[ProjPoint], spec: FieldSpec | None = None) -> CoverReport:
    """Whether the wind roses of centers cover PG(2, q); the missed points are listed sorted."""
    centers = list(centers)
    if spec is None:
        if not centers:
            raise InputError("an empty family needs an explicit field")
        spec = centers[0].spec
    reached = set()
    for c in centers:
        _same_field(spec, c.spec)
        reached |= wind_rose(c)
    missed = tuple(p for p in plane_points(spec) if p not in reached)
    return CoverReport(not missed, missed)


@dataclass(frozen=True)
class ShortCover:
    """Nonzero vectors of F_q^3 whose radius-1 extended balls are claimed to cover F_q^3."""
    spec: FieldSpec
    centers: tuple

    def __post_init__(self):
        centers = tuple(self.centers)
        for v in centers:
            _same_field(self.spec, v.spec)
            if v.is_zero():
                raise InputError("extended balls need nonzero centers")
        object.__setattr__(self, "centers", centers)

    @property
    def size(self) -> int:
        return len(self.centers)

    @property
    def q(self) -> int:
        return self.spec.q


def ball_contains(v: Vector3, x: Vector3) -> bool:
    """True when x is at Hamming distance at most 1 from the span of v."""
    _same_field(v.spec, x.spec)
    if v.is_zero():
        raise InputError("extended balls need a nonzero center")
    return any((x - v.scale(t)).weight() <= 1 for t in v.spec.elements())


def _vector_indices(spec: FieldSpec) -> np.ndarray:
    q = spec.q
    grid = np.indices((q, q, q)).reshape(3, -1).T
    return grid


def is_short_cover(cover: ShortCover) -> CoverReport:
    """Brute-force check over all q^3 vectors (vectorised over element indices)."""
    spec = cover.spec
    table = spec.mul_table
    all_x = _vector_indices(spec)
    hit = np.zeros(len(all_x), dtype=bool)
    for v in cover.centers:
        multiples = table[:, list(v.key)]  # row t = t * v
        distance = (all_x[:, None, :] != multiples[None, :, :]).sum(axis=2).min(axis=1)
        hit |= distance <= 1
    elems = list(spec.elements())
    missed = tuple(Vector3(spec, tuple(elems[i] for i in all_x[j])) for j in np.flatnonzero(~hit))
    return CoverReport(not missed, missed)


def equivalence_check(points: Sequence[ProjPoint], reps: Sequence[Vector3],
                      spec: FieldSpec | None = None) -> bool:
    """
    Whether the wind roses of points cover PG(2, q) exactly when the balls of reps cover F_q^3.

    reps[i] must be a nonzero vector spanning points[i]. A False answer means
    one of the two checkers is wrong.
    """
    if len(points) != len(reps):
        raise InputError("every point needs exactly one representative")
    if spec is None:
        if not points:
            raise InputError("an empty family needs an explicit field")
        spec = points[0].spec
    for p, v in zip(points, reps):
        if v.is_zero() or v.span() != p:
            raise InputError(f"{v} does not span {p}")
    planar = covers_plane(points, spec).covered
    spatial = is_short_cover(ShortCover(spec, tuple(reps))).covered
    return planar == spatial


@dataclass(frozen=True)
class Automorphism:
    """
    Coordinate permutation with nonzero scalings: f(x)_i = scale_i * x_{sigma(i)}.

    Such maps are projective automorphisms sending cardinal points to cardinal
    points, so f(W(x)) = W(f(x)) and the class of a point is preserved.
    Indices of sigma are 0-based.
    """
    sigma: tuple
    scale: tuple

    def __post_init__(self):
        if sorted(self.sigma) != [0, 1, 2]:
            raise InputError(f"{self.sigma} is not a permutation of (0, 1, 2)")
        if len(self.scale) != 3 or not all(self.scale):
            raise InputError("automorphism scalings must be three nonzero field elements")
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "scale", tuple(self.scale))

    @classmethod
    def identity(cls, spec: FieldSpec) -> Automorphism:
        return cls((0, 1, 2), (spec.one,) * 3)

    def __call__(self, p: ProjPoint) -> ProjPoint:
        _same_field(p.spec, self.scale[0].spec)
        return ProjPoint.from_coords(p.spec, [self.scale[i] * p.coords[self.sigma[i]] for i in range(3)])

    def compose(self, other: Automorphism) -> Automorphism:
        """self after other."""
        sigma = tuple(other.sigma[self.sigma[i]] for i in range(3))
        scale = tuple(self.scale[i] * other.scale[self.sigma[i]] for i in range(3))
        return Automorphism(sigma, scale)

    def inverse(self) -> Automorphism:
        sigma = [0, 0, 0]
        scale = [None, None, None]
        for i, j in enumerate(self.sigma):
            sigma[j] = i
            scale[j] = self.scale[i].inv()
        return Automorphism(tuple(sigma), tuple(scale))


def apply_automorphism(f: Automorphism, p: ProjPoint) -> ProjPoint:
    return f(p)
