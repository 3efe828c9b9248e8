'''
testing toroidal boards, quowers and the brute-force cover checks
'''
import numpy as np
import pytest

from quower.board import (BoardCover, BoardPoint, BoardVariant, attacks, cells, check_point,
                          coverage_grid, delta, diagonal, from_one_based, horizontal, is_cover,
                          is_cover_pointwise, quower, render_ascii, to_one_based, translate, vertical)
from quower.constructions import Z3_BASE
from quower.errors import InputError

FULL = BoardVariant.FULL
PUNCTURED = BoardVariant.PUNCTURED


def z3_cover():
    return BoardCover(3, FULL, frozenset(from_one_based(3, a, b) for a, b in Z3_BASE))


@pytest.mark.parametrize("n", [2, 3, 4, 7, 10])
def test_quower_has_3n_minus_2_cells(n):
    for p in [BoardPoint(0, 0), BoardPoint(n - 1, 1 % n)]:
        assert len(quower(n, p)) == 3 * n - 2


def test_quower_is_union_of_its_lines():
    p = BoardPoint(2, 4)
    assert quower(6, p) == diagonal(6, p) | vertical(6, p) | horizontal(6, p)
    assert BoardPoint(3, 5) in diagonal(6, p)
    assert BoardPoint(0, 2) in diagonal(6, p)  # wraps around
    assert BoardPoint(2, 0) in vertical(6, p)
    assert BoardPoint(5, 4) in horizontal(6, p)


def test_delta_identifies_diagonals():
    n = 7
    for c in cells(n):
        for x in diagonal(n, c):
            assert delta(n, x) == delta(n, c)


@pytest.mark.parametrize("n", [4, 6, 7])
def test_equal_delta_means_same_diagonal(n):
    for c in cells(n):
        same = {x for x in cells(n) if delta(n, x) == delta(n, c)}
        assert same == diagonal(n, c)
        assert len(same) == n


@pytest.mark.parametrize("n", [4, 5, 6])
def test_quowers_move_with_translations(n):
    for s, t in [(1, 0), (0, 1), (2, 3), (n - 1, n - 1)]:
        for p in cells(n):
            moved = frozenset(translate(n, x, s, t) for x in quower(n, p))
            assert moved == quower(n, translate(n, p, s, t))


def test_cells_are_row_major():
    assert cells(2) == [BoardPoint(0, 0), BoardPoint(1, 0), BoardPoint(0, 1), BoardPoint(1, 1)]
    assert cells(3, PUNCTURED)[:2] == [BoardPoint(1, 0), BoardPoint(2, 0)]
    assert len(cells(5)) == 25
    assert len(cells(5, PUNCTURED)) == 20


def test_one_based_conversion():
    assert from_one_based(5, 5, 2) == BoardPoint(4, 1)
    assert from_one_based(5, 0, 6) == BoardPoint(4, 0)
    assert to_one_based(BoardPoint(4, 1)) == (5, 2)


def test_translate_wraps():
    assert translate(4, BoardPoint(3, 1), 2, 3) == BoardPoint(1, 0)


def test_attacks_matches_quower():
    n = 5
    center = BoardPoint(1, 3)
    reached = quower(n, center)
    for x in cells(n):
        assert attacks(n, center, x) == (x in reached)


def test_invalid_points_and_orders():
    with pytest.raises(InputError):
        check_point(3, BoardPoint(3, 0))
    with pytest.raises(InputError):
        BoardCover(3, FULL, frozenset({BoardPoint(-1, 0)}))
    with pytest.raises(InputError):
        cells(0)
    with pytest.raises(ValueError):
        BoardCover(0, FULL, frozenset())


def test_two_quowers_cover_z3():
    report = is_cover(z3_cover())
    assert report.covered
    assert report.uncovered == ()
    assert bool(report)


def test_single_quower_misses_cells():
    cover = BoardCover(3, FULL, frozenset({BoardPoint(0, 0)}))
    report = is_cover(cover)
    assert not report.covered
    assert report.uncovered == (BoardPoint(2, 1), BoardPoint(1, 2))


def test_degenerate_boards():
    assert is_cover(BoardCover(1, FULL, frozenset({BoardPoint(0, 0)}))).covered
    assert not is_cover(BoardCover(1, FULL, frozenset())).covered
    assert is_cover(BoardCover(1, PUNCTURED, frozenset())).covered


def test_punctured_ignores_diagonal():
    cover = BoardCover(3, PUNCTURED, frozenset({BoardPoint(0, 1)}))
    assert is_cover(cover).uncovered == (BoardPoint(1, 0),)
    assert is_cover(cover.with_variant(FULL)).uncovered == (BoardPoint(1, 0), BoardPoint(2, 2))


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_union_marking_agrees_with_pointwise_check(seed):
    rng = np.random.default_rng(seed)
    for _ in range(40):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(0, n + 1))
        centers = frozenset(BoardPoint(int(a), int(b)) for a, b in rng.integers(0, n, size=(k, 2)))
        for variant in (FULL, PUNCTURED):
            cover = BoardCover(n, variant, centers)
            assert is_cover(cover) == is_cover_pointwise(cover)


def test_translation_keeps_full_covers():
    cover = z3_cover()
    for s in range(3):
        for t in range(3):
            moved = BoardCover(3, FULL, frozenset(translate(3, c, s, t) for c in cover.centers))
            assert is_cover(moved).covered


def test_coverage_grid_is_indexed_by_row():
    grid = coverage_grid(4, [BoardPoint(1, 0)])
    assert grid.shape == (4, 4)
    assert grid[3, 1]           # column 1
    assert grid[0, 3]           # row 0
    assert grid[2, 3]           # diagonal through (1, 0)
    assert not grid[1, 0]


def test_sorted_centers_row_major():
    cover = BoardCover(4, FULL, frozenset({BoardPoint(3, 0), BoardPoint(0, 2), BoardPoint(1, 0)}))
    assert cover.sorted_centers() == [BoardPoint(1, 0), BoardPoint(3, 0), BoardPoint(0, 2)]


def test_render_full_board():
    assert render_ascii(z3_cover()).splitlines() == [
        "3 . . .",
        "2 Q . .",
        "1 . . Q",
        "  1 2 3",
    ]


def test_render_punctured_board_with_gap():
    cover = BoardCover(3, PUNCTURED, frozenset({BoardPoint(0, 1)}))
    assert render_ascii(cover).splitlines() == [
        "3 . .  ",
        "2 Q   .",
        "1   x .",
        "  1 2 3",
    ]
