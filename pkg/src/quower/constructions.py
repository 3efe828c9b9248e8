"""
Explicit quower covers and the closed-form bounds on xi(n) and xi_D(n).

Every construction is written in the 1-based coordinates of its defining
formula and converted with `from_one_based`; the result is verified with
`is_cover` before it is returned.
"""
from __future__ import annotations

from quower.board import (BoardCover, BoardPoint, BoardVariant, from_one_based,
                          is_cover)
from quower.errors import InputError, InvariantError
from quower.log_cfg import logger

FULL = BoardVariant.FULL
PUNCTURED = BoardVariant.PUNCTURED

Z3_BASE = ((1, 2), (3, 1))
"""A two-center Full cover of Z_3^2 in 1-based coordinates (xi(3) = 2)."""


def _cover(n: int, variant: BoardVariant, one_based: list[tuple[int, int]], name: str) -> BoardCover:
    cover = BoardCover(n, variant, frozenset(from_one_based(n, a, b) for a, b in one_based))
    report = is_cover(cover)
    if not report.covered:
        logger.error("%s(%d) misses %d cells", name, n, len(report.uncovered))
        raise InvariantError(f"{name}({n}) does not cover the {variant.value} board: "
                             f"missed {list(report.uncovered)[:10]}")
    return cover


def cover_even_2mod4(n: int) -> BoardCover:
    """
    Full cover of Z_n^2 with n/2 quowers for n = 2 mod 4.

    The centers are (2, n), (4, n-2), ..., (n, 2); their deltas are all the even
    residues, and every cell with an even coordinate is on one of their lines.
    """
    if n < 2 or n % 4 != 2:
        raise InputError(f"cover_even_2mod4 needs n = 2 mod 4, got {n}")
    centers = [(2 * i, n + 2 - 2 * i) for i in range(1, n // 2 + 1)]
    return _cover(n, FULL, centers, "cover_even_2mod4")


def punctured_0mod4_parts(N: int) -> tuple[list, list, list]:
    """The three center families A, B, C (1-based) of the punctured cover of Z_N, N = 4n."""
    if N < 4 or N % 4 != 0:
        raise InputError(f"cover_punctured_0mod4 needs N = 0 mod 4, got {N}")
    n = N // 4
    part_a = [(2 * i, N + 2 - 2 * i) for i in range(1, n + 1)]
    part_b = [(2 * n + 2 * j, 2 * n - 2 * j) for j in range(1, n)]
    part_c = [(N, 2 * n)]
    return part_a, part_b, part_c


def cover_punctured_0mod4(N: int) -> BoardCover:
    """Punctured cover of D_N with N/2 quowers for N = 0 mod 4."""
    part_a, part_b, part_c = punctured_0mod4_parts(N)
    return _cover(N, PUNCTURED, part_a + part_b + part_c, "cover_punctured_0mod4")


def cover_full_0mod4(N: int) -> BoardCover:
    """Full cover of Z_N^2 with N/2 + 1 quowers: the punctured cover plus (1, 1) for the diagonal."""
    part_a, part_b, part_c = punctured_0mod4_parts(N)
    return _cover(N, FULL, part_a + part_b + part_c + [(1, 1)], "cover_full_0mod4")


def cover_odd_blocks(n: int) -> BoardCover:
    """
    Full cover of Z_n^2, n odd, with floor((2n+1)/3) quowers.

    Write n = 3m + r. For r in {1, 2} the board is cut into diagonal blocks of
    orders m+1, m and m+r-1; the anti-diagonals of the first two blocks cover
    the rows and columns they span, and their deltas {m, m-1, ..., -m} reach
    every cell of the last block. For r = 0 the Z_3 cover is lifted to Z_n.
    """
    if n < 3 or n % 2 == 0:
        raise InputError(f"cover_odd_blocks needs an odd n >= 3, got {n}")
    m, r = divmod(n, 3)
    if r == 0:
        return product_lift(z3_base_cover(), m)
    first = [(i, m + 2 - i) for i in range(1, m + 2)]
    second = [(m + 1 + j, 2 * m + 2 - j) for j in range(1, m + 1)]
    return _cover(n, FULL, first + second, "cover_odd_blocks")


def z3_base_cover() -> BoardCover:
    return _cover(3, FULL, list(Z3_BASE), "z3_base_cover")


def product_lift(base: BoardCover, m: int) -> BoardCover:
    """
    Lift a Full cover of Z_n^2 to a Full cover of Z_{mn}^2, m and n odd.

    The mn x mn board is cut into m^2 blocks of order n and a copy of the base
    cover is put in each block of the anti-diagonal, i.e. the copies are shifted
    by multiples of (n, -n). The result has m * |base| centers.
    """
    n = base.n
    if m < 1 or m % 2 == 0 or n % 2 == 0:
        raise InputError(f"product_lift needs odd m and n, got m={m}, n={n}")
    if base.variant is not FULL or not is_cover(base).covered:
        raise InputError("product_lift needs a verified Full cover as base")
    if m == 1:
        return base
    centers = [BoardPoint(c.a + s * n, c.b + (m - 1 - s) * n)
               for c in base.centers for s in range(m)]
    cover = BoardCover(m * n, FULL, frozenset(centers))
    if not is_cover(cover).covered:
        raise InvariantError(f"product_lift of a Z_{n} cover by {m} is not a cover")
    return cover


def known_bounds(n: int, variant: BoardVariant = FULL) -> tuple[int, int]:
    """
    Tightest (lower, upper) bounds on xi(n) (Full) or xi_D(n) (Punctured) known in closed form.

    Full: n = 2 mod 4 gives n/2 exactly, n = 0 mod 4 gives n/2 + 1 exactly and
    odd n lies in [(n+1)/2, floor((2n+1)/3)]. Punctured: even n gives n/2, odd n
    the same interval as Full. The degenerate board n = 1 has xi(1) = 1 and
    xi_D(1) = 0.
    """
    if n < 1:
        raise InputError(f"board order must be positive, got {n}")
    variant = BoardVariant(variant)
    if n == 1:
        return (1, 1) if variant is FULL else (0, 0)
    if n % 2 == 1:
        return ((n + 1) // 2, (2 * n + 1) // 3)
    if variant is PUNCTURED or n % 4 == 2:
        return (n // 2, n // 2)
    return (n // 2 + 1, n // 2 + 1)


def best_construction(n: int, variant: BoardVariant = FULL) -> BoardCover:
    """
    Smallest cover of the variant that the constructions of this module produce.

    Odd orders compare the block construction with every product lift through
    an odd divisor; a Full cover is reused unchanged as a Punctured one.
    """
    if n < 1:
        raise InputError(f"board order must be positive, got {n}")
    variant = BoardVariant(variant)
    if n == 1:
        centers = frozenset({BoardPoint(0, 0)}) if variant is FULL else frozenset()
        return BoardCover(1, variant, centers)
    if n % 4 == 2:
        return cover_even_2mod4(n).with_variant(variant)
    if n % 4 == 0:
        return cover_punctured_0mod4(n) if variant is PUNCTURED else cover_full_0mod4(n)
    best = cover_odd_blocks(n)
    for d in range(3, n, 2):
        if n % d == 0:
            lifted = product_lift(best_construction(d, FULL), n // d)
            if lifted.size < best.size:
                best = lifted
    return best.with_variant(variant)
