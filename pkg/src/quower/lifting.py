"""
Passing between punctured board covers of Z_{q-1}^2 and short coverings of F_q^3.

The multiplicative group of GF(q) is cyclic, so a generator g identifies
Z_{q-1} with F_q^*. Composed with (a, b) -> (a : b : 1) this gives the map

    psi(i, j) = (g^i : g^j : 1)

from the board onto the midland points of PG(2, q). It sends QW(x) onto the
midland points of W(psi(x)) and the removed diagonal onto the midland points
of the line through (0:0:1) and (1:1:0). Hence a punctured cover X lifts to
the wind-rose cover psi(X) + {(0:0:1), (1:1:0)}, i.e. to a short covering of
F_q^3 with |X| + 2 balls.

In the other direction a wind-rose cover with at most q - 2 members is first
normalized by exchange steps to one cardinal, one coast and otherwise midland
members, then moved by a coordinate automorphism onto (0:0:1) and (1:1:0) and
read back through psi.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from quower._utils import _swap_dict_keys_values
from quower.board import BoardCover, BoardPoint, BoardVariant, is_cover, quower
from quower.constructions import best_construction, known_bounds
from quower.errors import InputError, InvariantError, UnsupportedError
from quower.field import FieldElement, FieldSpec, field
from quower.log_cfg import logger
from quower.projective import (Automorphism, PointClass, ProjPoint, ShortCover,
                               cardinal_points, classify, covers_plane,
                               is_short_cover, line_through, meet, plane_points)
from quower.setcover import SolveOptions, board_cover_from, build_board_instance, solve_exact

PUNCTURED = BoardVariant.PUNCTURED


class PsiMap:
    """
    The bijection between Z_{q-1}^2 and the midland points of PG(2, q).

    Parameters
    ----------
    spec : FieldSpec
        The field GF(q).
    g : FieldElement, optional
        Generator of F_q^*; the canonical generator of `spec` by default.
    """

    def __init__(self, spec: FieldSpec, g: FieldElement | None = None):
        self.spec = spec
        self.g = spec.generator if g is None else spec.element(g)
        self.n = spec.q - 1
        self._powers = spec.power_table(self.g)
        self._logs = _swap_dict_keys_values(self._powers)

    def forward(self, x: BoardPoint) -> ProjPoint:
        """psi(i, j) = (g^i : g^j : 1)."""
        i, j = x
        return ProjPoint(self.spec, (self._powers[i % self.n], self._powers[j % self.n], self.spec.one))

    def backward(self, p: ProjPoint) -> BoardPoint:
        if p.spec != self.spec or classify(p) is not PointClass.MIDLAND:
            raise InputError(f"{p} is not a midland point of PG(2, {self.spec.q})")
        u, v, _ = p.coords
        return BoardPoint(self._logs[u], self._logs[v])

    def midland_points(self) -> list[ProjPoint]:
        """Images of all board cells in row-major order."""
        return [self.forward(BoardPoint(a, b)) for b in range(self.n) for a in range(self.n)]

    def image_of_quower(self, x: BoardPoint) -> frozenset:
        return frozenset(self.forward(y) for y in quower(self.n, x))


def _apex_points(spec: FieldSpec) -> tuple[ProjPoint, ProjPoint]:
    """(0:0:1) and (1:1:0), whose wind roses cover everything psi misses."""
    one, zero = spec.one, spec.zero
    return ProjPoint(spec, (zero, zero, one)), ProjPoint(spec, (one, one, zero))


def lift_points(centers: Iterable[BoardPoint], psi: PsiMap) -> list[ProjPoint]:
    """psi(centers) followed by (0:0:1) and (1:1:0); no coverage check."""
    points = [psi.forward(c) for c in centers]
    return points + list(_apex_points(psi.spec))


def lift(board_cover: BoardCover, q: int, psi: PsiMap | None = None) -> ShortCover:
    """
    Short covering of F_q^3 with |board_cover| + 2 balls.

    The centers are the canonical representatives of the lifted points.

    Raises
    ------
    UnsupportedError
        For q < 5.
    InputError
        When q is not a prime power, the board does not have order q - 1 or
        the centers do not cover the punctured board.
    """
    if q < 5:
        raise UnsupportedError(f"lifting needs q >= 5, got q={q}")
    spec = field(q) if psi is None else psi.spec
    if spec.q != q:
        raise InputError(f"the map is defined over GF({spec.q}), not GF({q})")
    if board_cover.n != q - 1:
        raise InputError(f"a lift to GF({q}) needs a board of order {q - 1}, got {board_cover.n}")
    report = is_cover(board_cover.with_variant(PUNCTURED))
    if not report.covered:
        raise InputError(f"the board centers miss {len(report.uncovered)} cells of D_{q - 1}")
    psi = psi or PsiMap(spec)
    points = lift_points(board_cover.sorted_centers(), psi)
    short = ShortCover(spec, tuple(p.vector() for p in points))
    check = is_short_cover(short)
    if not check.covered:
        logger.error("lift of %d centers misses %d vectors", board_cover.size, len(check.uncovered))
        raise InvariantError(f"lifted cover misses {[str(v) for v in check.uncovered[:5]]}")
    logger.info("lifted a %d-quower cover of D_%d to %d balls of GF(%d)^3",
                board_cover.size, q - 1, short.size, q)
    return short


def _dump(cover: Sequence[ProjPoint]) -> str:
    return "[" + ", ".join(f"{p} ({classify(p).name.lower()})" for p in cover) + "]"


def _dedupe(points: Iterable[ProjPoint]) -> list[ProjPoint]:
    seen, out = set(), []
    for p in points:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _zero_index(p: ProjPoint) -> int:
    """Index of the vanishing coordinate of a coast point."""
    return next(i for i, c in enumerate(p.coords) if not c)


def _nonzero_index(p: ProjPoint) -> int:
    """Index of the only nonzero coordinate of a cardinal point."""
    return next(i for i, c in enumerate(p.coords) if c)


def coast_line(spec: FieldSpec, i: int) -> list[ProjPoint]:
    """Coast points of the line opposite c_{i+1}, i.e. with coordinate i equal to 0, sorted."""
    return [p for p in plane_points(spec) if classify(p) is PointClass.COAST and not p.coords[i]]


def _check_step(cover: list[ProjPoint], spec: FieldSpec, step: str) -> None:
    report = covers_plane(cover, spec)
    if not report.covered:
        logger.error("%s broke the cover: %s", step, _dump(cover))
        raise InvariantError(f"{step} left {len(report.uncovered)} points uncovered; cover {_dump(cover)}")
    logger.debug("%s: %s", step, _dump(cover))


def _replace(cover: list[ProjPoint], old: Iterable[ProjPoint], new: Iterable[ProjPoint]) -> list[ProjPoint]:
    old = set(old)
    return _dedupe([p for p in cover if p not in old] + list(new))


def _plane_field(cover: Sequence[ProjPoint], q: int, spec: FieldSpec | None) -> FieldSpec:
    """The field of the points; `spec`, else the field of the first point, else field(q)."""
    if spec is None:
        spec = cover[0].spec if cover else field(q)
    if spec.q != q:
        raise InputError(f"{spec!r} has {spec.q} elements, not {q}")
    for p in cover:
        if p.spec != spec:
            raise InputError(f"{p} is not a point of PG(2, {q}) over {spec!r}")
    return spec


def normalize_cover(wr: Sequence[ProjPoint], q: int, spec: FieldSpec | None = None) -> list[ProjPoint]:
    """
    Exchange wind roses until one is cardinal, one is coast and the rest are midland.

    A cover with at most q - 2 members contains every coast line in one of its
    wind roses. The steps are:

    * two or more cardinal roses: keep the smallest c_i and put a coast rose on
      the line opposite c_i in place of the others;
    * no cardinal rose: the coast lines are held by coast roses p1, p2, p3
      with p_k on the line opposite c_k; W(p2) and W(p3) give way to W(c1) and
      W(x) with x the meet of <c2, p2> and <c3, p3>;
    * with one cardinal c_i, the smallest coast member on the line opposite c_i
      stays; every other coast member y on the line opposite c_m is replaced by
      the smallest midland point of <y, c_m>.

    The cover is re-checked after each step and never grows. A cover already in
    this shape comes back unchanged.

    The plane is taken over `spec`, by default over the field of the given
    points, so covers written with any modulus of GF(q) normalize.

    Raises
    ------
    InputError
        When wr does not cover PG(2, q) or mixes fields.
    UnsupportedError
        When wr has more than q - 2 members.
    InvariantError
        When an exchange finds no replacement or breaks the cover.
    """
    cover = _dedupe(wr)
    spec = _plane_field(cover, q, spec)
    if len(cover) > q - 2:
        raise UnsupportedError(f"normalization needs at most q - 2 = {q - 2} wind roses, got {len(cover)}")
    report = covers_plane(cover, spec)
    if not report.covered:
        raise InputError(f"not a wind-rose cover of PG(2, {q}): {len(report.uncovered)} points missed")
    cards = cardinal_points(spec)

    cardinals = sorted(p for p in cover if classify(p) is PointClass.CARDINAL)
    if len(cardinals) >= 2:
        keep = cardinals[0]
        i = _nonzero_index(keep)
        line = coast_line(spec, i)
        present = [p for p in line if p in cover]
        substitute = present[0] if present else line[0]
        cover = _replace(cover, cardinals[1:], [substitute])
        _check_step(cover, spec, f"cardinal exchange keeping {keep}")

    if not any(classify(p) is PointClass.CARDINAL for p in cover):
        held = []
        for k in range(3):
            on_line = [p for p in coast_line(spec, k) if p in cover]
            if not on_line:
                raise InvariantError(f"no member holds the coast line opposite {cards[k]}; cover {_dump(cover)}")
            held.append(on_line[0])
        _, p2, p3 = held
        x = meet(cards[1], p2, cards[2], p3)
        if classify(x) is not PointClass.MIDLAND:
            raise InvariantError(f"meet {x} of <c2,{p2}> and <c3,{p3}> is not midland")
        cover = _replace(cover, [p2, p3], [cards[0], x])
        _check_step(cover, spec, f"coast triple exchange with x = {x}")

    cardinal = next(p for p in cover if classify(p) is PointClass.CARDINAL)
    i = _nonzero_index(cardinal)
    opposite = [p for p in coast_line(spec, i) if p in cover]
    if not opposite:
        raise InvariantError(f"no coast member opposite {cardinal}; cover {_dump(cover)}")
    anchor = opposite[0]
    for y in sorted(p for p in cover if classify(p) is PointClass.COAST and p != anchor):
        m = _zero_index(y)
        midland = sorted(p for p in line_through(y, cards[m]) if classify(p) is PointClass.MIDLAND)
        if not midland:
            raise InvariantError(f"<{y}, {cards[m]}> has no midland point")
        cover = _replace(cover, [y], [midland[0]])
        _check_step(cover, spec, f"coast elimination of {y}")

    logger.info("normalized a %d-rose cover of PG(2, %d) to %d roses", len(wr), q, len(cover))
    return cover


def extraction_automorphism(cardinal: ProjPoint, coast: ProjPoint) -> Automorphism:
    """
    Coordinate automorphism f with f(cardinal) = (0:0:1) and f(coast) = (1:1:0).

    The coast point must lie on the line opposite the cardinal point.
    """
    i = _nonzero_index(cardinal)
    if coast.coords[i]:
        raise InputError(f"{coast} is not on the line opposite {cardinal}")
    j, k = (t for t in range(3) if t != i)
    y = coast.coords
    spec = coast.spec
    return Automorphism((j, k, i), (y[j].inv(), y[k].inv(), spec.one))


def extract(wr: Sequence[ProjPoint], q: int, psi: PsiMap | None = None) -> BoardCover:
    """
    Punctured cover of Z_{q-1}^2 with |wr| - 2 quowers from a normalized cover.

    The centers are read back through `psi`, by default the map of the
    canonical generator of the field the points live in. Pass the map used
    for the lift to recover the lifted board cover itself.

    Raises
    ------
    UnsupportedError
        For q < 7 or more than q - 2 members.
    InputError
        When wr is not a cover, not of the normalized shape or not over the
        field of `psi`.
    """
    if q < 7:
        raise UnsupportedError(f"extraction is unsupported for q={q}: it needs q >= 7")
    cover = _dedupe(wr)
    spec = _plane_field(cover, q, None if psi is None else psi.spec)
    if len(cover) > q - 2:
        raise UnsupportedError(f"extraction needs at most q - 2 = {q - 2} wind roses, got {len(cover)}")
    report = covers_plane(cover, spec)
    if not report.covered:
        raise InputError(f"not a wind-rose cover of PG(2, {q}): {len(report.uncovered)} points missed")
    by_class = {c: [p for p in cover if classify(p) is c] for c in PointClass}
    if len(by_class[PointClass.CARDINAL]) != 1 or len(by_class[PointClass.COAST]) != 1:
        raise InputError(f"extraction needs exactly one cardinal and one coast member: {_dump(cover)}")
    f = extraction_automorphism(by_class[PointClass.CARDINAL][0], by_class[PointClass.COAST][0])
    psi = psi or PsiMap(spec)
    centers = frozenset(psi.backward(f(p)) for p in by_class[PointClass.MIDLAND])
    board = BoardCover(q - 1, PUNCTURED, centers)
    check = is_cover(board)
    if not check.covered:
        logger.error("extraction through %s misses %d cells", f, len(check.uncovered))
        raise InvariantError(f"extracted centers miss {list(check.uncovered)[:5]}; cover {_dump(cover)}")
    logger.info("extracted a %d-quower cover of D_%d from %d wind roses", board.size, q - 1, len(cover))
    return board


def board_cover_for_lift(q: int, opts: SolveOptions | None = None) -> BoardCover:
    """
    Smallest punctured cover of Z_{q-1}^2 available for `lift`.

    The best construction is used when it meets the lower bound; otherwise the
    exact solver runs (under the configured time limit) and wins when smaller.
    """
    n = q - 1
    cover = best_construction(n, PUNCTURED)
    lower, _ = known_bounds(n, PUNCTURED)
    if cover.size <= lower:
        return cover
    logger.warning("construction for D_%d has %d quowers, bound %d: running the solver", n, cover.size, lower)
    inst = build_board_instance(n, PUNCTURED)
    result = solve_exact(inst, opts)
    solved = board_cover_from(inst, result)
    return solved if solved.size < cover.size else cover
