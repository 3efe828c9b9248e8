"""
Toroidal n x n boards and quowers.

The board is Z_n^2 with the first coordinate indexing the column and the second
the row; (0, 0) is the southwestern cell. Residues are stored 0-based; the
command line shows the representatives 1..n instead.

A quower on (a, b) attacks its column, its row and its (+1,+1)-diagonal. The
punctured board D_n is Z_n^2 without the main diagonal {(t, t)}; it is still
covered with quowers of the whole board, so centers may sit on the diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

import numpy as np

from quower.errors import InputError


class BoardPoint(NamedTuple):
    """A cell (a, b) of Z_n^2: column a, row b."""
    a: int
    b: int

    def row_major_key(self) -> tuple[int, int]:
        """Sort key: row first, then column."""
        return (self.b, self.a)


class BoardVariant(Enum):
    """Which cells have to be covered."""
    FULL = "full"
    PUNCTURED = "punctured"


@dataclass(frozen=True)
class CoverReport:
    """
    Outcome of a brute-force cover check.

    Attributes
    ----------
    covered : bool
        True when no element is missed.
    uncovered : tuple
        Every missed element, in the canonical order of the checked universe
        (row-major for boards).
    """
    covered: bool
    uncovered: tuple = ()

    def __bool__(self) -> bool:
        return self.covered


def _check_order(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"board order must be a positive integer, got {n!r}")


def check_point(n: int, p: BoardPoint) -> BoardPoint:
    """Validate that p is a canonical residue pair for Z_n^2 and return it as a BoardPoint."""
    _check_order(n)
    a, b = p
    if not (0 <= a < n and 0 <= b < n):
        raise InputError(f"cell {tuple(p)} is not a residue pair of Z_{n}^2")
    return BoardPoint(int(a), int(b))


@dataclass(frozen=True)
class BoardCover:
    """
    A set of quower centers claimed to cover a board variant.

    Attributes
    ----------
    n : int
        Order of the board.
    variant : BoardVariant
        Full board or punctured board.
    centers : frozenset of BoardPoint
        Quower centers; any cell of Z_n^2 is allowed, also on the removed diagonal.
    """
    n: int
    variant: BoardVariant
    centers: frozenset

    def __post_init__(self):
        _check_order(self.n)
        if not isinstance(self.variant, BoardVariant):
            object.__setattr__(self, "variant", BoardVariant(self.variant))
        object.__setattr__(self, "centers", frozenset(check_point(self.n, c) for c in self.centers))

    @property
    def size(self) -> int:
        return len(self.centers)

    def sorted_centers(self) -> list[BoardPoint]:
        """Centers in row-major order."""
        return sorted(self.centers, key=BoardPoint.row_major_key)

    def with_variant(self, variant: BoardVariant) -> BoardCover:
        """The same centers claimed for another variant."""
        return BoardCover(self.n, variant, self.centers)


def to_one_based(p: BoardPoint) -> tuple[int, int]:
    """Representatives 1..n used in the figures of the literature."""
    return (p.a + 1, p.b + 1)


def from_one_based(n: int, a: int, b: int) -> BoardPoint:
    """Cell given by arbitrary integer representatives, e.g. (n, 2) -> (n-1, 1)."""
    _check_order(n)
    return BoardPoint((a - 1) % n, (b - 1) % n)


def delta(n: int, p: BoardPoint) -> int:
    """b - a mod n. Two cells share a diagonal exactly when their deltas agree."""
    p = check_point(n, p)
    return (p.b - p.a) % n


def diagonal(n: int, p: BoardPoint) -> frozenset:
    p = check_point(n, p)
    return frozenset(BoardPoint((p.a + t) % n, (p.b + t) % n) for t in range(n))


def vertical(n: int, p: BoardPoint) -> frozenset:
    p = check_point(n, p)
    return frozenset(BoardPoint(p.a, t) for t in range(n))


def horizontal(n: int, p: BoardPoint) -> frozenset:
    p = check_point(n, p)
    return frozenset(BoardPoint(t, p.b) for t in range(n))


def quower(n: int, p: BoardPoint) -> frozenset:
    """QW(p) = D(p) | V(p) | H(p). Has 3n - 2 cells for n >= 2."""
    return diagonal(n, p) | vertical(n, p) | horizontal(n, p)


def translate(n: int, p: BoardPoint, s: int, t: int) -> BoardPoint:
    p = check_point(n, p)
    return BoardPoint((p.a + s) % n, (p.b + t) % n)


def cells(n: int, variant: BoardVariant = BoardVariant.FULL) -> list[BoardPoint]:
    """All cells of the variant in row-major order."""
    _check_order(n)
    variant = BoardVariant(variant)
    return [BoardPoint(a, b) for b in range(n) for a in range(n)
            if variant is BoardVariant.FULL or a != b]


def attacks(n: int, center: BoardPoint, cell: BoardPoint) -> bool:
    """True when cell lies in QW(center)."""
    return (center.a == cell.a or center.b == cell.b
            or (center.b - center.a) % n == (cell.b - cell.a) % n)


def _delta_grid(n: int) -> np.ndarray:
    # grid[b, a] = b - a mod n
    idx = np.arange(n)
    return np.subtract.outer(idx, idx) % n


def coverage_grid(n: int, centers: Iterable[BoardPoint]) -> np.ndarray:
    """Boolean n x n array indexed [row, column], True where some quower of centers reaches."""
    _check_order(n)
    deltas = _delta_grid(n)
    grid = np.zeros((n, n), dtype=bool)
    for c in centers:
        c = check_point(n, c)
        grid[:, c.a] = True
        grid[c.b, :] = True
        grid |= deltas == (c.b - c.a) % n
    return grid


def is_cover(cover: BoardCover) -> CoverReport:
    """Check by union marking whether every cell of the variant is attacked."""
    n = cover.n
    missed = ~coverage_grid(n, cover.centers)
    if cover.variant is BoardVariant.PUNCTURED:
        missed &= _delta_grid(n) != 0
    uncovered = tuple(BoardPoint(int(a), int(b)) for b, a in np.argwhere(missed))
    return CoverReport(not uncovered, uncovered)


def is_cover_pointwise(cover: BoardCover) -> CoverReport:
    """Cell-by-cell membership version of `is_cover`, kept as an independent check."""
    centers = list(cover.centers)
    uncovered = tuple(x for x in cells(cover.n, cover.variant)
                      if not any(attacks(cover.n, c, x) for c in centers))
    return CoverReport(not uncovered, uncovered)


def render_ascii(cover: BoardCover) -> str:
    """
    Draw the board like the figures: row n on top, column 1 on the left.

    ``Q`` marks a center, ``.`` a covered cell, ``x`` a missed cell and a blank
    the removed diagonal of a punctured board.
    """
    n = cover.n
    grid = coverage_grid(n, cover.centers)
    width = len(str(n))
    lines = []
    for b in reversed(range(n)):
        row = []
        for a in range(n):
            if BoardPoint(a, b) in cover.centers:
                mark = "Q"
            elif cover.variant is BoardVariant.PUNCTURED and a == b:
                mark = " "
            else:
                mark = "." if grid[b, a] else "x"
            row.append(mark)
        lines.append(f"{b + 1:>{width}} " + " ".join(row))
    lines.append(" " * (width + 1) + " ".join(str((a + 1) % 10) for a in range(n)))
    return "\n".join(lines)
