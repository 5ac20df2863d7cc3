"""Paths on supports: geodesics, ascending search, roads, guided traces."""
from fractions import Fraction

import pytest

from blobshift.errors import EmptySupport
from blobshift.patterns import (
    BINARY,
    Pattern,
    essential_width_lower_bound,
    rows_of,
    sparsity,
)
from blobshift.pathcover import (
    CellPath,
    find_ascending_path,
    geodesic_witness,
    road_check,
    sturmian_word,
    trace_guided_path,
)
from blobshift.substitution import iterate_2d, plus_substitution

GOLDEN = Fraction(377, 610)  # continued-fraction approximant of 1/phi


def plus_level(n: int) -> Pattern:
    return iterate_2d(plus_substitution(), Pattern(BINARY, {(0, 0): "1"}), n)


# ------------------------------------------------------------------ geodesics


def test_geodesic_single_cell():
    p = Pattern(BINARY, {(0, 0): "1"})
    path = geodesic_witness(p, 1)
    assert path.cells == ((0, 0),)


def test_geodesic_empty_support():
    with pytest.raises(EmptySupport):
        geodesic_witness(Pattern.from_word("000"), 1)


def test_geodesic_diagonal_line():
    p = Pattern(BINARY, {(i, i): "1" for i in range(20)})
    path = geodesic_witness(p, 2)
    assert len(path) == 20
    assert path.step == 2


def test_geodesic_plus_levels_increase():
    lengths = []
    for n in range(1, 6):
        path = geodesic_witness(plus_level(n), 1)
        lengths.append(len(path))
    assert lengths == sorted(lengths)
    assert all(b > a for a, b in zip(lengths, lengths[1:]))


def test_geodesic_certifies_component_size():
    p = plus_level(3)
    path = geodesic_witness(p, 1)
    assert len(path) <= len(p.support())
    # endpoints realize the diameter on this tree-shaped support
    assert len(path) == 27  # frozen from the BFS oracle


def test_geodesic_respects_step_bound():
    p = plus_level(2)
    path = geodesic_witness(p, 1)
    for a, b in zip(path.cells, path.cells[1:]):
        assert sum(abs(x - y) for x, y in zip(a, b)) <= 1


# ------------------------------------------------------------ ascending paths


def test_ascending_vertical_column():
    p = Pattern(BINARY, {(0, y): "1" for y in range(10)})
    path = find_ascending_path(p, 1, 1)
    assert path is not None
    assert len(path) == 10
    heights = path.heights()
    assert all(b > a for a, b in zip(heights, heights[1:]))


def test_ascending_horizontal_row_absent():
    p = Pattern(BINARY, {(x, 0): "1" for x in range(10)})
    assert find_ascending_path(p, 1, 1) is None


def test_ascending_staircase():
    offsets = [int(c) for c in sturmian_word(GOLDEN, 200)]
    p = trace_guided_path([1] * 200, offsets, 120)
    path = find_ascending_path(p, 1, 3)
    assert path is not None
    assert len(path) == len(p.support())
    heights = path.heights()
    for j in range(len(heights) - 3):
        assert heights[j + 3] > heights[j]


def test_ascending_window_replay():
    p = trace_guided_path([1] * 40, [int(c) for c in sturmian_word(GOLDEN, 40)], 30)
    path = find_ascending_path(p, 1, 2)
    assert path is not None
    heights = path.heights()
    for j in range(len(heights) - 2):
        assert heights[j + 2] > heights[j]


# ----------------------------------------------------------------- road check


def test_road_check_full_cover():
    p = Pattern(BINARY, {(0, y): "1" for y in range(6)})
    path = CellPath(tuple((0, y) for y in range(6)), 1)
    assert road_check(p, path, 0)


def test_road_check_outlier():
    cells = {(0, y): "1" for y in range(6)}
    cells[(10, 3)] = "1"
    p = Pattern(BINARY, cells)
    path = CellPath(tuple((0, y) for y in range(6)), 1)
    assert not road_check(p, path, 5)
    assert road_check(p, path, 10)


def test_road_check_decorated_staircase():
    offsets = [int(c) for c in sturmian_word(GOLDEN, 60)]
    p = trace_guided_path([1] * 60, offsets, 40)
    path = find_ascending_path(p, 1, 3)
    decorated = dict(p.items())
    for (x, y) in list(p.support())[:5]:
        decorated[(x + 2, y)] = "1"
    q = Pattern(BINARY, decorated)
    assert road_check(q, path, 2)


def test_road_check_requires_path_in_support():
    p = Pattern(BINARY, {(0, 0): "1"})
    stray = CellPath(((5, 5),), 1)
    with pytest.raises(ValueError):
        road_check(p, stray, 1)


# -------------------------------------------------------------- guided traces


def test_guided_vertical_column():
    p = trace_guided_path([1] * 10, [0] * 10, 10)
    assert sorted(p.support()) == [(0, y) for y in range(11)]


def test_guided_sturmian_stays_in_strip():
    # support within the strip of the line x = alpha * y, width 2 in L1
    length = 300
    offsets = [int(c) for c in sturmian_word(GOLDEN, length)]
    p = trace_guided_path([1] * length, offsets, length)
    worst = max(abs(Fraction(x) - GOLDEN * y) for (x, y) in p.support())
    assert worst <= 2


def test_guided_zigzag_width_one():
    offsets = [1 if i % 2 == 0 else -1 for i in range(40)]
    p = trace_guided_path([1] * 40, offsets, 40)
    assert essential_width_lower_bound(rows_of(p), 1) == 1


def test_guided_row_sparsity_bounded():
    for n, length in ((2, 60), (3, 45)):
        offsets = [(i % (2 * n + 1)) - n for i in range(length)]
        steps = [1 + (i % n) for i in range(length)]
        p = trace_guided_path(steps, offsets, length)
        assert sparsity(rows_of(p)) <= n + 1


def test_guided_trace_is_connected_and_ascending():
    offsets = [int(c) for c in sturmian_word(GOLDEN, 50)]
    p = trace_guided_path([1] * 50, offsets, 50)
    from blobshift.patterns import connected_components
    assert len(connected_components(p.support(), 1)) == 1


def test_guided_validates_inputs():
    with pytest.raises(ValueError):
        trace_guided_path([0, 1], [0, 0], 2)  # vertical step below 1
    with pytest.raises(ValueError):
        trace_guided_path([1], [0], 2)  # guides shorter than the length


# ------------------------------------------------------------------- sturmian


def test_sturmian_is_balanced_prefix():
    word = sturmian_word(GOLDEN, 200)
    assert set(word) == {"0", "1"}
    # golden slope: no two consecutive zeros, no three consecutive ones
    assert "00" not in word
    assert "111" not in word


def test_sturmian_counts_track_slope():
    word = sturmian_word(GOLDEN, 610)
    assert word.count("1") == 377
