'''
testing the lift of punctured board covers to short coverings and the way back
'''
import numpy as np
import pytest

from quower.board import BoardCover, BoardPoint, BoardVariant, cells, is_cover
from quower.constructions import cover_even_2mod4, cover_punctured_0mod4
from quower.errors import InputError, UnsupportedError
from quower.field import FieldSpec, field
from quower.lifting import (PsiMap, board_cover_for_lift, extract, extraction_automorphism, lift,
                            lift_points, normalize_cover)
from quower.projective import (Automorphism, PointClass, ProjPoint, cardinal_points, classify,
                               covers_plane, is_short_cover, line_through, plane_points, wind_rose)
from quower.setcover import board_cover_from, build_board_instance, build_windrose_instance, solve_exact

PUNCTURED = BoardVariant.PUNCTURED


def lifted_points(board_cover, q):
    return [v.span() for v in lift(board_cover, q).centers]


def lifted_points_over(board_cover, psi):
    return [v.span() for v in lift(board_cover, psi.spec.q, psi).centers]


def shape(cover):
    classes = [classify(p) for p in cover]
    return (classes.count(PointClass.CARDINAL), classes.count(PointClass.COAST),
            classes.count(PointClass.MIDLAND))


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_psi_is_a_bijection_onto_midland_points(q):
    spec = field(q)
    psi = PsiMap(spec)
    images = psi.midland_points()
    assert len(set(images)) == (q - 1) ** 2
    assert set(images) == {p for p in plane_points(spec) if classify(p) is PointClass.MIDLAND}
    for x in cells(q - 1):
        assert psi.backward(psi.forward(x)) == x


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_psi_maps_quowers_onto_wind_roses(q):
    spec = field(q)
    psi = PsiMap(spec)
    for x in cells(q - 1)[::q - 2]:
        rose = wind_rose(psi.forward(x))
        assert psi.image_of_quower(x) == {p for p in rose if classify(p) is PointClass.MIDLAND}


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_psi_maps_the_diagonal_onto_the_apex_line(q):
    spec = field(q)
    psi = PsiMap(spec)
    c3 = cardinal_points(spec)[2]
    apex_line = line_through(c3, ProjPoint.of(spec, spec.one, spec.one, spec.zero))
    diagonal = {psi.forward(BoardPoint(a, a)) for a in range(q - 1)}
    assert diagonal == {p for p in apex_line if classify(p) is PointClass.MIDLAND}


def test_psi_rejects_non_midland_points():
    spec = field(7)
    psi = PsiMap(spec)
    with pytest.raises(InputError):
        psi.backward(cardinal_points(spec)[0])
    with pytest.raises(InputError):
        psi.backward(ProjPoint.of(spec, 1, 0, 1))


def test_psi_with_another_generator():
    spec = field(7)
    psi = PsiMap(spec, 5)
    assert psi.forward(BoardPoint(1, 2)) == ProjPoint.of(spec, 5, 4, 1)
    assert psi.backward(ProjPoint.of(spec, 5, 4, 1)) == BoardPoint(1, 2)


@pytest.mark.parametrize("q, board, size", [
    (5, cover_punctured_0mod4(4), 4),
    (7, cover_even_2mod4(6), 5),
    (11, cover_even_2mod4(10), 7),
    (13, cover_punctured_0mod4(12), 8),
])
def test_lift_sizes(q, board, size):
    short = lift(board, q)
    assert short.size == size
    assert short.q == q
    assert is_short_cover(short).covered
    assert covers_plane(v.span() for v in short.centers).covered


def test_lift_of_a_non_cover_is_rejected():
    spec = field(7)
    bad = BoardCover(6, PUNCTURED, frozenset({BoardPoint(0, 1)}))
    assert not covers_plane(lift_points(bad.centers, PsiMap(spec))).covered
    with pytest.raises(InputError):
        lift(bad, 7)
    with pytest.raises(InputError):
        lift(cover_even_2mod4(6), 8)
    with pytest.raises(UnsupportedError):
        lift(BoardCover(3, PUNCTURED, frozenset({BoardPoint(0, 1), BoardPoint(1, 0)})), 4)


@pytest.mark.parametrize("q, board", [(7, cover_even_2mod4(6)), (9, cover_punctured_0mod4(8))])
def test_lifted_covers_are_already_normal(q, board):
    wr = lifted_points(board, q)
    assert normalize_cover(wr, q) == wr
    assert shape(wr) == (1, 1, board.size)


def test_normalize_drops_extra_cardinals():
    q = 9
    spec = field(q)
    wr = lifted_points(cover_punctured_0mod4(8), q)
    crowded = wr + [cardinal_points(spec)[0]]
    assert covers_plane(crowded).covered
    assert set(normalize_cover(crowded, q)) == set(wr)


def test_normalize_without_cardinals():
    q = 9
    spec = field(q)
    one, zero = spec.one, spec.zero
    c3 = cardinal_points(spec)[2]
    wr = lifted_points(cover_punctured_0mod4(8), q)
    spread = [p for p in wr if p != c3] + [ProjPoint.of(spec, zero, one, one),
                                           ProjPoint.of(spec, one, zero, one)]
    assert len(spread) == q - 2
    assert covers_plane(spread).covered
    normal = normalize_cover(spread, q)
    assert len(normal) <= len(spread)
    assert shape(normal)[:2] == (1, 1)
    assert covers_plane(normal).covered
    board = extract(normal, q)
    assert board.size == len(normal) - 2
    assert is_cover(board).covered


def test_normalize_preconditions():
    q = 7
    spec = field(q)
    wr = lifted_points(cover_even_2mod4(6), q)
    with pytest.raises(UnsupportedError):
        normalize_cover(wr + [cardinal_points(spec)[0]], q)
    with pytest.raises(InputError):
        normalize_cover(wr[:-1], q)
    with pytest.raises(InputError):
        normalize_cover(lifted_points(cover_punctured_0mod4(8), 9), 7)


def test_round_trip_q7():
    board = cover_even_2mod4(6).with_variant(PUNCTURED)
    back = extract(normalize_cover(lifted_points(board, 7), 7), 7)
    assert back == board


def test_round_trip_q9():
    board = cover_punctured_0mod4(8)
    back = extract(normalize_cover(lifted_points(board, 9), 9), 9)
    assert back.centers == board.centers
    assert back.size == 4


def test_round_trip_over_another_modulus():
    spec = FieldSpec(3, 2, (2, 1, 1))
    assert spec != field(9)
    board = cover_punctured_0mod4(8)
    for g in (spec.generator, spec.generator ** 3):
        psi = PsiMap(spec, g)
        wr = lifted_points_over(board, psi)
        assert all(p.spec == spec for p in wr)
        assert normalize_cover(wr, 9) == wr
        assert extract(normalize_cover(wr, 9), 9, psi).centers == board.centers
    with pytest.raises(InputError):
        extract(wr, 9, PsiMap(field(9)))
    with pytest.raises(InputError):
        normalize_cover(wr, 9, field(9))
    with pytest.raises(InputError):
        normalize_cover(wr + lifted_points(board, 9)[:1], 9)


def test_round_trip_q8_from_solver():
    inst = build_board_instance(7, PUNCTURED)
    board = board_cover_from(inst, solve_exact(inst))
    assert board.size == 4
    wr = lifted_points(board, 8)
    assert len(wr) == 6
    back = extract(normalize_cover(wr, 8), 8)
    assert back.centers == board.centers


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_extract_after_an_automorphism(seed):
    q = 9
    spec = field(q)
    rng = np.random.default_rng(seed)
    elems = list(spec.nonzero())
    f = Automorphism(tuple(int(i) for i in rng.permutation(3)),
                     tuple(elems[int(rng.integers(len(elems)))] for _ in range(3)))
    board = cover_punctured_0mod4(8)
    moved = [f(p) for p in lifted_points(board, q)]
    assert covers_plane(moved).covered
    back = extract(normalize_cover(moved, q), q)
    assert back.size == board.size
    assert is_cover(back).covered


def test_extraction_automorphism_targets():
    spec = field(7)
    c1 = cardinal_points(spec)[0]
    coast = ProjPoint.of(spec, 0, 3, 1)
    f = extraction_automorphism(c1, coast)
    assert f(c1) == cardinal_points(spec)[2]
    assert f(coast) == ProjPoint.of(spec, 1, 1, 0)
    with pytest.raises(InputError):
        extraction_automorphism(c1, ProjPoint.of(spec, 1, 0, 1))


def test_extract_preconditions():
    with pytest.raises(UnsupportedError):
        extract(lifted_points(cover_punctured_0mod4(4), 5), 5)
    q = 9
    spec = field(q)
    wr = lifted_points(cover_punctured_0mod4(8), q)
    with pytest.raises(InputError):
        extract(wr + [cardinal_points(spec)[0]], q)
    with pytest.raises(InputError):
        extract(wr[:-1], q)


def test_board_cover_for_lift():
    assert board_cover_for_lift(11).size == 5
    assert board_cover_for_lift(13).size == 6
    # the block construction on D_7 has 5 quowers, the solver finds 4
    solved = board_cover_for_lift(8)
    assert solved.size == 4
    assert is_cover(solved.with_variant(PUNCTURED)).covered


def test_quower_images_need_no_apex_when_covering_midland_points():
    q = 7
    psi = PsiMap(field(q))
    board = cover_even_2mod4(6)
    reached = set()
    for x in board.centers:
        reached |= psi.image_of_quower(x)
    missed = set(psi.midland_points()) - reached
    assert missed <= {psi.forward(BoardPoint(a, a)) for a in range(q - 1)}


def test_windrose_optimum_matches_lift():
    xi_d = solve_exact(build_board_instance(4, PUNCTURED)).optimum
    assert solve_exact(build_windrose_instance(5)).optimum == xi_d + 2


@pytest.mark.slow
@pytest.mark.parametrize("q, xi_d", [(7, 3), (8, 4), (9, 4)])
def test_windrose_optimum_matches_lift_slow(q, xi_d):
    assert solve_exact(build_windrose_instance(q)).optimum == xi_d + 2
    assert solve_exact(build_board_instance(q - 1, PUNCTURED)).optimum == xi_d
