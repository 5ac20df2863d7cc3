"""Finite patterns over pointed alphabets and their support geometry.

A pattern is a finite partial map from grid cells to an alphabet with a
distinguished zero symbol. Cells are integer tuples of dimension 1 or 2;
the metric is L1 throughout. The support is the set of cells carrying a
nonzero symbol. Blobs are padded connected pieces of the support, stored
translated to a canonical origin so equality and hashing are
translation-invariant.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to call from concurrent workers.
Coordinates are Python integers, hence arbitrary precision; padded domains
cannot wrap around.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import GlueConflict, PaddingUnavailable, UnsupportedFormat

Cell = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbol list with a distinguished zero symbol."""

    symbols: tuple[str, ...]
    zero: str

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be pairwise distinct")
        if self.zero not in self.symbols:
            raise ValueError("zero symbol must be a member of the alphabet")

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)


BINARY = Alphabet(("0", "1"), "0")


def ball_offsets(dim: int, r: int) -> list[Cell]:
    """All offsets of L1 norm at most r in the given dimension."""
    if dim == 1:
        return [(d,) for d in range(-r, r + 1)]
    out = []
    for dx in range(-r, r + 1):
        rest = r - abs(dx)
        for dy in range(-rest, rest + 1):
            out.append((dx, dy))
    return out


def translate_cell(cell: Cell, v: Cell) -> Cell:
    return tuple(a + b for a, b in zip(cell, v))


class Pattern:
    """Finite map cell -> symbol, defined exactly on its domain."""

    __slots__ = ("alphabet", "_values", "_dim", "_support", "_hash")

    def __init__(self, alphabet: Alphabet, values: Mapping[Cell, str]):
        values = dict(values)
        dim = None
        for cell, symbol in values.items():
            if dim is None:
                dim = len(cell)
                if dim not in (1, 2):
                    raise ValueError("patterns are 1- or 2-dimensional")
            elif len(cell) != dim:
                raise ValueError("mixed cell dimensions in one pattern")
            if symbol not in alphabet.symbols:
                raise ValueError(f"symbol {symbol!r} not in alphabet")
        self.alphabet = alphabet
        self._values = values
        self._dim = 1 if dim is None else dim
        self._support = None
        self._hash = None

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_word(cls, word: str, alphabet: Alphabet = BINARY,
                  start: int = 0) -> "Pattern":
        """1D pattern on the interval [start, start + len(word))."""
        return cls(alphabet, {(start + i,): c for i, c in enumerate(word)})

    @classmethod
    def from_rows(cls, rows: list[str], alphabet: Alphabet = BINARY) -> "Pattern":
        """2D pattern from text rows given top to bottom.

        The bottom-left grid corner lands at the origin; ``.`` is read as
        the zero symbol and ``?`` leaves a cell outside the domain.
        """
        values: dict[Cell, str] = {}
        height = len(rows)
        for rix, row in enumerate(rows):
            y = height - 1 - rix
            for x, ch in enumerate(row):
                if ch == "?":
                    continue
                values[(x, y)] = alphabet.zero if ch == "." else ch
        return cls(alphabet, values)

    # -- basic views ------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dim

    @property
    def domain(self) -> frozenset:
        return frozenset(self._values)

    def cells(self) -> Iterator[Cell]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self._values

    def value(self, cell: Cell) -> str:
        return self._values[cell]

    def get(self, cell: Cell, default: str | None = None) -> str | None:
        return self._values.get(cell, default)

    def items(self):
        return self._values.items()

    def support(self) -> frozenset:
        if self._support is None:
            zero = self.alphabet.zero
            self._support = frozenset(
                c for c, s in self._values.items() if s != zero)
        return self._support

    def is_zero(self) -> bool:
        return not self.support()

    def bounding_box(self) -> tuple[Cell, Cell] | None:
        """(min corner, max corner) of the domain, or None when empty."""
        if not self._values:
            return None
        cols = list(zip(*self._values))
        return (tuple(min(c) for c in cols), tuple(max(c) for c in cols))

    # -- pure transformations ---------------------------------------------

    def translate(self, v: Cell) -> "Pattern":
        return Pattern(self.alphabet,
                       {translate_cell(c, v): s for c, s in self._values.items()})

    def restrict(self, cells: Iterable[Cell]) -> "Pattern":
        vals = self._values
        return Pattern(self.alphabet, {c: vals[c] for c in cells})

    def to_word(self) -> str:
        """The 1D pattern's symbols in cell order; domain must be an interval."""
        if self._dim != 1:
            raise ValueError("to_word needs a 1D pattern")
        if not self._values:
            return ""
        xs = sorted(c[0] for c in self._values)
        if xs[-1] - xs[0] + 1 != len(xs):
            raise ValueError("domain is not a contiguous interval")
        return "".join(self._values[(x,)] for x in range(xs[0], xs[-1] + 1))

    # -- equality ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.alphabet == other.alphabet and self._values == other._values

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self._values.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Pattern(dim={self._dim}, cells={len(self._values)}, support={len(self.support())})"


class Blob:
    """An r-padded pattern around one r-connected support component.

    Stored in canonical translation (lexicographically least support cell
    at the origin). Two blobs are equal exactly when their supports and the
    values on them agree; the padding is determined by the support and the
    radius, so it does not enter the comparison.
    """

    __slots__ = ("pattern", "radius", "_key")

    def __init__(self, pattern: Pattern, radius: int):
        self.pattern = pattern
        self.radius = radius
        self._key = None

    def support(self) -> frozenset:
        return self.pattern.support()

    def _support_key(self):
        if self._key is None:
            self._key = frozenset(
                (c, self.pattern.value(c)) for c in self.pattern.support())
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Blob):
            return NotImplemented
        return self._support_key() == other._support_key()

    def __hash__(self) -> int:
        return hash(self._support_key())

    def __repr__(self) -> str:
        return f"Blob(radius={self.radius}, support={len(self.support())})"


# -- connectivity ----------------------------------------------------------


def connected_components(cells: Iterable[Cell], r: int) -> list[frozenset]:
    """Partition cells into maximal r-connected subsets.

    Two cells are adjacent when their L1 distance is at most r. Components
    come back ordered by their lexicographically least member.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    cellset = set(cells)
    if not cellset:
        return []
    dim = len(next(iter(cellset)))
    offsets = [o for o in ball_offsets(dim, r) if any(o)]
    seen: set[Cell] = set()
    components = []
    for start in sorted(cellset):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        frontier = [start]
        while frontier:
            cell = frontier.pop()
            for off in offsets:
                nb = translate_cell(cell, off)
                if nb in cellset and nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    frontier.append(nb)
        components.append(frozenset(comp))
    return components


def blobs(pattern: Pattern, r: int) -> list[tuple[Blob, Cell]]:
    """Decompose the support into r-blobs with their anchors.

    Each blob is translated so its least support cell sits at the origin;
    the anchor records where that cell sat in the pattern. Raises
    :class:`PaddingUnavailable` when a component's r-padding exits the
    pattern's domain: a finite window can certify blobs, not guess them.
    """
    out = []
    for comp, padded, truncated in _blob_scan(pattern, r):
        if truncated:
            raise PaddingUnavailable(
                f"padding of component at {min(comp)} exits the domain")
        anchor = min(comp)
        neg = tuple(-a for a in anchor)
        out.append((Blob(pattern.restrict(padded).translate(neg), r), anchor))
    return out


def _blob_scan(pattern: Pattern, r: int):
    """Yield (component, padded cells within domain, truncated flag)."""
    dim = pattern.dimension
    offsets = ball_offsets(dim, r)
    for comp in connected_components(pattern.support(), r):
        padded = set()
        truncated = False
        for cell in comp:
            for off in offsets:
                p = translate_cell(cell, off)
                if p in pattern:
                    padded.add(p)
                else:
                    truncated = True
        yield comp, padded, truncated


def zero_glue(p: Pattern, q: Pattern) -> Pattern:
    """Union of two patterns whose overlap is all-zero on both sides."""
    if p.alphabet != q.alphabet:
        raise ValueError("zero_glue needs a common alphabet")
    if p.dimension != q.dimension and len(p) and len(q):
        raise ValueError("zero_glue needs a common dimension")
    small, large = (p, q) if len(p) <= len(q) else (q, p)
    zero = p.alphabet.zero
    values = dict(large.items())
    for cell, symbol in small.items():
        prior = values.get(cell)
        if prior is None:
            values[cell] = symbol
        elif prior != zero or symbol != zero:
            raise GlueConflict(cell)
    return Pattern(p.alphabet, values)


def occurrences(pattern: Pattern, probe: Pattern,
                window: Iterable[Cell] | None = None) -> list[Cell]:
    """All translations v placing probe inside pattern with equal values.

    An empty probe matches vacuously everywhere, so a search window is
    required in that case and is returned sorted.
    """
    if len(probe) == 0:
        if window is None:
            raise ValueError("empty probe needs an explicit search window")
        return sorted(window)
    anchor = min(probe.cells())
    probe_items = list(probe.items())
    hits = []
    for base in pattern.cells():
        v = tuple(b - a for b, a in zip(base, anchor))
        for cell, symbol in probe_items:
            if pattern.get(translate_cell(cell, v)) != symbol:
                break
        else:
            hits.append(v)
    return sorted(hits)


# -- width, sparsity, density ------------------------------------------------


def interval_cover_count(xs: Iterable[int], r: int) -> int:
    """Greedy minimum number of radius-r intervals covering the points.

    Greedy left-to-right is optimal for 1D interval covering.
    """
    count = 0
    end = None
    for x in sorted(xs):
        if end is None or x > end:
            count += 1
            end = x + 2 * r
    return count


def essential_width_lower_bound(rows: list[Pattern], r: int) -> int:
    """Minimal m with every row's support coverable by m radius-r intervals.

    A lower bound for the essential width of anything extending the rows;
    finite windows cannot certify more than a bound.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    best = 0
    for row in rows:
        if row.dimension != 1:
            raise ValueError("essential width is computed over 1D rows")
        best = max(best, interval_cover_count((c[0] for c in row.support()), r))
    return best


def sparsity(rows: list[Pattern]) -> int:
    """Maximum nonzero count over the rows."""
    return max((len(row.support()) for row in rows), default=0)


def rows_of(pattern: Pattern) -> list[Pattern]:
    """Split a pattern into its 1D rows, ordered by ascending height."""
    if pattern.dimension == 1:
        return [pattern]
    by_y: dict[int, dict[Cell, str]] = {}
    for (x, y), symbol in pattern.items():
        by_y.setdefault(y, {})[(x,)] = symbol
    return [Pattern(pattern.alphabet, by_y[y]) for y in sorted(by_y)]


def density_window(pattern: Pattern, window: int) -> Fraction:
    """Max nonzero density over all length-`window` subwords, exactly."""
    word = pattern.to_word()
    if not 1 <= window <= len(word):
        raise ValueError("window must satisfy 1 <= window <= pattern length")
    zero = pattern.alphabet.zero
    flags = [0 if c == zero else 1 for c in word]
    count = sum(flags[:window])
    best = count
    for i in range(window, len(flags)):
        count += flags[i] - flags[i - window]
        if count > best:
            best = count
    return Fraction(best, window)


def sparse_not_uniform_family(n: int) -> Pattern:
    """Binary word on [-n, n*n + n] supported on the multiples of n in [0, n*n].

    The family is sparse at every member but the nonzero counts grow with
    n, so no uniform sparsity constant works across the family.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    support = {i for i in range(0, n * n + 1, n)}
    values = {(x,): ("1" if x in support else "0")
              for x in range(-n, n * n + n + 1)}
    return Pattern(BINARY, values)


def pad(pattern: Pattern, r: int) -> Pattern:
    """Extend the domain by the radius-r ball around it, filled with zeros."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if len(pattern) == 0:
        return pattern
    values = dict(pattern.items())
    zero = pattern.alphabet.zero
    offsets = ball_offsets(pattern.dimension, r)
    for cell in pattern.cells():
        for off in offsets:
            values.setdefault(translate_cell(cell, off), zero)
    return Pattern(pattern.alphabet, values)


# -- text format -------------------------------------------------------------
#
# line 1: "dims W" (1D) or "dims W H" (2D)
# line 2: "alphabet <zero><others...>" as single characters
# optional line 3: "origin X" or "origin X Y" when the domain's bounding
# corner is not the origin (keeps round trips bit-exact for translates)
# then the rows, top to bottom; "." is an alias for zero, "?" marks cells
# outside the domain.


def format_pattern(pattern: Pattern) -> str:
    for symbol in pattern.alphabet.symbols:
        if len(symbol) != 1 or symbol in ".?":
            raise UnsupportedFormat(
                f"text format needs single-character symbols, got {symbol!r}")
    alpha = pattern.alphabet
    others = [s for s in alpha.symbols if s != alpha.zero]
    alpha_line = "alphabet " + alpha.zero + "".join(others)
    box = pattern.bounding_box()
    if box is None:
        header = "dims 0" if pattern.dimension == 1 else "dims 0 0"
        return header + "\n" + alpha_line + "\n"
    lo, hi = box

    def cell_char(cell: Cell) -> str:
        symbol = pattern.get(cell)
        if symbol is None:
            return "?"
        return "." if symbol == alpha.zero else symbol

    lines = []
    if pattern.dimension == 1:
        lines.append(f"dims {hi[0] - lo[0] + 1}")
        lines.append(alpha_line)
        if lo[0] != 0:
            lines.append(f"origin {lo[0]}")
        lines.append("".join(cell_char((x,)) for x in range(lo[0], hi[0] + 1)))
    else:
        lines.append(f"dims {hi[0] - lo[0] + 1} {hi[1] - lo[1] + 1}")
        lines.append(alpha_line)
        if lo != (0, 0):
            lines.append(f"origin {lo[0]} {lo[1]}")
        for y in range(hi[1], lo[1] - 1, -1):
            lines.append("".join(cell_char((x, y))
                                 for x in range(lo[0], hi[0] + 1)))
    return "\n".join(lines) + "\n"


def parse_pattern(text: str) -> Pattern:
    lines = [ln for ln in text.splitlines()]
    if len(lines) < 2 or not lines[0].startswith("dims "):
        raise UnsupportedFormat("pattern text must start with a dims line")
    dims = lines[0].split()[1:]
    if not lines[1].startswith("alphabet "):
        raise UnsupportedFormat("second line must declare the alphabet")
    chars = lines[1][len("alphabet "):].strip()
    if not chars:
        raise UnsupportedFormat("alphabet must list at least the zero symbol")
    alphabet = Alphabet(tuple(chars), chars[0])
    body = lines[2:]
    origin = [0, 0]
    if body and body[0].startswith("origin "):
        origin = [int(v) for v in body[0].split()[1:]]
        body = body[1:]
    rows = [ln for ln in body if ln != ""]

    def decode(ch: str) -> str | None:
        if ch == "?":
            return None
        if ch == ".":
            return alphabet.zero
        if ch not in alphabet.symbols:
            raise UnsupportedFormat(f"character {ch!r} not in the alphabet")
        return ch

    if len(dims) == 1:
        width = int(dims[0])
        if width == 0:
            return Pattern(alphabet, {})
        if len(rows) != 1 or len(rows[0]) != width:
            raise UnsupportedFormat("1D pattern needs exactly one row of"
                                    " the declared width")
        values = {}
        for x, ch in enumerate(rows[0]):
            symbol = decode(ch)
            if symbol is not None:
                values[(origin[0] + x,)] = symbol
        return Pattern(alphabet, values)
    if len(dims) == 2:
        width, height = int(dims[0]), int(dims[1])
        if width == 0 and height == 0:
            return Pattern(alphabet, {})
        if len(rows) != height or any(len(r) != width for r in rows):
            raise UnsupportedFormat("row grid does not match declared dims")
        ox = origin[0]
        oy = origin[1] if len(origin) > 1 else 0
        values = {}
        for rix, row in enumerate(rows):
            y = oy + height - 1 - rix
            for x, ch in enumerate(row):
                symbol = decode(ch)
                if symbol is not None:
                    values[(ox + x, y)] = symbol
        return Pattern(alphabet, values)
    raise UnsupportedFormat("dims line must declare one or two extents")
