"""One-dimensional cellular automata on finite-support configurations,
plus order searches in the topological full group of the full shift.

The probes work on the two witness families that finite machinery can
actually exhaust: finite-support configurations (evolved directly) and
spatially periodic configurations (evolved as cyclic words). Verdicts
carry replayable witnesses and an explicit inconclusive tag; none of this
decides anything about the full space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping

from .errors import (
    NotInvertible,
    NotZeroPreserving,
    SizeLimit,
    UnsupportedFormat,
)
from .patterns import Alphabet, BINARY


@dataclass(frozen=True)
class CARule:
    """Radius-rho local rule: (2 rho + 1)-word -> symbol, total."""

    alphabet: Alphabet
    radius: int
    table: Mapping[str, str]

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        width = 2 * self.radius + 1
        for word, out in self.table.items():
            if len(word) != width:
                raise ValueError(f"table key {word!r} is not a {width}-word")
            if out not in self.alphabet.symbols:
                raise ValueError(f"table value {out!r} not in the alphabet")
        expected = len(self.alphabet.symbols) ** width
        if len(self.table) != expected:
            raise ValueError("rule table must be total")

    @property
    def zero_preserving(self) -> bool:
        zero = self.alphabet.zero
        return self.table[zero * (2 * self.radius + 1)] == zero


@dataclass(frozen=True)
class FiniteConfig:
    """Finite-support configuration: a word at an offset, zeros outside.

    Canonical form never carries a leading or trailing zero; the all-zero
    configuration is the empty word at offset 0.
    """

    alphabet: Alphabet
    offset: int
    word: str

    def __post_init__(self):
        zero = self.alphabet.zero
        if self.word and (self.word[0] == zero or self.word[-1] == zero):
            raise ValueError("canonical form trims boundary zeros")
        if not self.word and self.offset != 0:
            raise ValueError("the all-zero configuration sits at offset 0")

    @classmethod
    def make(cls, word: str, offset: int = 0,
             alphabet: Alphabet = BINARY) -> "FiniteConfig":
        zero = alphabet.zero
        start, end = 0, len(word)
        while start < end and word[start] == zero:
            start += 1
        while end > start and word[end - 1] == zero:
            end -= 1
        if start == end:
            return cls(alphabet, 0, "")
        return cls(alphabet, offset + start, word[start:end])

    def is_zero(self) -> bool:
        return not self.word

    def support_size(self) -> int:
        zero = self.alphabet.zero
        return sum(1 for c in self.word if c != zero)

    def cell(self, i: int) -> str:
        if self.offset <= i < self.offset + len(self.word):
            return self.word[i - self.offset]
        return self.alphabet.zero


def step(rule: CARule, config: FiniteConfig) -> FiniteConfig:
    """One application of the rule; support grows at most rho per side."""
    rho = rule.radius
    zero = rule.alphabet.zero
    if config.is_zero():
        return config
    lo = config.offset - rho
    hi = config.offset + len(config.word) + rho
    padded = zero * (2 * rho) + config.word + zero * (2 * rho)
    width = 2 * rho + 1
    out = []
    for i in range(lo, hi):
        start = i - config.offset + rho
        out.append(rule.table[padded[start:start + width]])
    return FiniteConfig.make("".join(out), lo, rule.alphabet)


def evolve(rule: CARule, config: FiniteConfig,
           steps: int) -> list[FiniteConfig]:
    """Trajectory [c, f(c), ..., f^steps(c)] for a zero-preserving rule."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if not rule.zero_preserving:
        raise NotZeroPreserving("finite evolution needs a zero-preserving rule")
    out = [config]
    for t in range(steps):
        nxt = step(rule, out[-1])
        if not nxt.is_zero():
            # light cone: support stays within rho*t of the original
            assert nxt.offset >= config.offset - rule.radius * (t + 1)
            assert (nxt.offset + len(nxt.word)
                    <= config.offset + len(config.word) + rule.radius * (t + 1))
        out.append(nxt)
    return out


def canonical_configs(alphabet: Alphabet, max_width: int) -> Iterator[FiniteConfig]:
    """Nonzero canonical configurations by width, then lexicographically."""
    zero = alphabet.zero
    nonzero = [s for s in alphabet.symbols if s != zero]
    for width in range(1, max_width + 1):
        if width == 1:
            for s in nonzero:
                yield FiniteConfig(alphabet, 0, s)
            continue
        for first in nonzero:
            for middle in product(alphabet.symbols, repeat=width - 2):
                for last in nonzero:
                    yield FiniteConfig(alphabet, 0, first + "".join(middle) + last)


def find_glider(rule: CARule, max_width: int,
                max_time: int) -> tuple[FiniteConfig, int, int] | None:
    """First enumerated config whose trajectory revisits a translate.

    Returns (config, n, m) with f^n(config) equal to the config shifted by
    m. Finite nonzero configurations are never shift-periodic, so every
    revisit qualifies, including m = 0.
    """
    if not rule.zero_preserving:
        raise NotZeroPreserving("glider search needs a zero-preserving rule")
    for seed in canonical_configs(rule.alphabet, max_width):
        current = seed
        for n in range(1, max_time + 1):
            current = step(rule, current)
            if current.word == seed.word:
                return seed, n, -current.offset
            if current.is_zero():
                break
    return None


# -- nilpotency ---------------------------------------------------------------


@dataclass(frozen=True)
class NilpotencyVerdict:
    tag: str  # nilpotent_on_probe | not_nilpotent | inconclusive
    steps: int | None = None
    witness: dict = field(default_factory=dict)


def _cycle_step(rule: CARule, word: str) -> str:
    """The rule acting on a cyclic word (a spatially periodic point)."""
    n = len(word)
    rho = rule.radius
    out = []
    for i in range(n):
        nb = "".join(word[(i + d) % n] for d in range(-rho, rho + 1))
        out.append(rule.table[nb])
    return "".join(out)


def _cyclic_words(alphabet: Alphabet, max_len: int) -> Iterator[str]:
    """One representative per rotation class, all-zero excluded."""
    zero = alphabet.zero
    seen = set()
    for length in range(1, max_len + 1):
        for tup in product(alphabet.symbols, repeat=length):
            word = "".join(tup)
            if word == zero * length:
                continue
            canon = min(word[i:] + word[:i] for i in range(length))
            if canon in seen:
                continue
            seen.add(canon)
            yield canon


def nilpotency_probe(rule: CARule, max_width: int,
                     max_time: int) -> NilpotencyVerdict:
    """Bounded nilpotency probe over finite and periodic witnesses.

    Nilpotent-on-probe reports the max death time over all canonical
    finite configurations of bounded width, provided the cyclic words die
    too. A glider or a surviving cycle is a definite counterexample; a
    survivor without either is inconclusive at this probe size.
    """
    if not rule.zero_preserving:
        raise NotZeroPreserving("the probe needs a zero-preserving rule")
    deaths = [0]
    survivor = None
    for seed in canonical_configs(rule.alphabet, max_width):
        current = seed
        died = False
        for t in range(1, max_time + 1):
            current = step(rule, current)
            if current.is_zero():
                deaths.append(t)
                died = True
                break
            if current.word == seed.word:
                return NilpotencyVerdict(
                    "not_nilpotent",
                    witness={"kind": "glider", "word": seed.word,
                             "time": t, "shift": -current.offset})
        if not died:
            survivor = survivor or seed.word
    zero = rule.alphabet.zero
    for word in _cyclic_words(rule.alphabet, max_width):
        current = word
        seen = {current}
        for t in range(1, max_time + 1):
            current = _cycle_step(rule, current)
            if current == zero * len(current):
                deaths.append(t)
                break
            if current in seen:
                return NilpotencyVerdict(
                    "not_nilpotent",
                    witness={"kind": "periodic", "word": word, "time": t})
            seen.add(current)
        else:
            survivor = survivor or word
    if survivor is None:
        return NilpotencyVerdict("nilpotent_on_probe", steps=max(deaths))
    return NilpotencyVerdict("inconclusive",
                             witness={"survivor": survivor})


def asymptotic_profile(rule: CARule, config: FiniteConfig,
                       horizon: int) -> list[int]:
    """Nonzero-cell counts along the trajectory, step 0 included."""
    return [c.support_size() for c in evolve(rule, config, horizon)]


# -- topological full group -----------------------------------------------------


@dataclass(frozen=True)
class TFGElement:
    """Shift-cocycle table: central (2 rho + 1)-window -> shift in [-rho, rho]."""

    alphabet: Alphabet
    radius: int
    table: Mapping[str, int]

    def __post_init__(self):
        width = 2 * self.radius + 1
        for word, shift in self.table.items():
            if len(word) != width:
                raise ValueError(f"table key {word!r} is not a {width}-word")
            if abs(shift) > self.radius:
                raise ValueError("shift exceeds the radius")
        expected = len(self.alphabet.symbols) ** width
        if len(self.table) != expected:
            raise ValueError("cocycle table must be total")

    def shift_of(self, window: str) -> int:
        return self.table[window]


def tfg_validate(element: TFGElement) -> TFGElement:
    """Check injectivity of the induced map on all windows of width 4 rho + 1.

    The induced map sends x to its translate by the central window's
    shift, so two points can only collide when one is a translate of the
    other by at most 2 rho; scanning every offset in that range over all
    joint windows is a complete injectivity check, and 4 rho + 1 cells
    cover the widest case.
    """
    rho = element.radius
    if rho == 0:
        shifts = set(element.table.values())
        if len(shifts) > 1:
            word = min(element.table)
            raise NotInvertible(word, 0)
        return element
    symbols = element.alphabet.symbols
    width = 2 * rho + 1
    for j in range(1, 2 * rho + 1):
        span = j + width
        for tup in product(symbols, repeat=span):
            word = "".join(tup)
            if element.table[word[:width]] - element.table[word[j:j + width]] == j:
                raise NotInvertible(word, j)
    return element


def compose(outer: TFGElement, inner: TFGElement) -> TFGElement:
    """outer after inner, via cocycle addition along the inner shift."""
    if outer.alphabet != inner.alphabet:
        raise ValueError("composition needs a common alphabet")
    radius = outer.radius + inner.radius
    width = 2 * radius + 1
    symbols = outer.alphabet.symbols
    count = len(symbols) ** width
    if count > 2 ** 22:
        raise SizeLimit(f"composed table would have {count} entries")
    iw = 2 * inner.radius + 1
    ow = 2 * outer.radius + 1
    table = {}
    for tup in product(symbols, repeat=width):
        word = "".join(tup)
        ic = radius - inner.radius
        c_inner = inner.table[word[ic:ic + iw]]
        oc = radius + c_inner - outer.radius
        c_outer = outer.table[word[oc:oc + ow]]
        table[word] = c_inner + c_outer
    return TFGElement(outer.alphabet, radius, table)


def identity_element(alphabet: Alphabet = BINARY) -> TFGElement:
    return TFGElement(alphabet, 0, {s: 0 for s in alphabet.symbols})


def shift_element(alphabet: Alphabet = BINARY, amount: int = 1) -> TFGElement:
    rho = abs(amount)
    width = 2 * rho + 1
    table = {"".join(t): amount
             for t in product(alphabet.symbols, repeat=width)}
    return TFGElement(alphabet, rho, table)


def block_swap_element() -> TFGElement:
    """Involution exchanging the two cells of every aligned '10' block.

    Shift +1 when cells 0,1 read '10'; shift -1 when cells -1,0 read
    '10'; 0 otherwise. The two triggers are mutually exclusive and each
    image window triggers the opposite rule, so the element squares to
    the identity.
    """
    table = {}
    for tup in product("01", repeat=3):
        word = "".join(tup)
        if word[1:] == "10":
            table[word] = 1
        elif word[:2] == "10":
            table[word] = -1
        else:
            table[word] = 0
    return TFGElement(BINARY, 1, table)


def is_identity(element: TFGElement) -> bool:
    return all(v == 0 for v in element.table.values())


@dataclass(frozen=True)
class OrderVerdict:
    tag: str  # torsion | infinite_order | inconclusive
    order: int | None = None
    witness: dict = field(default_factory=dict)


def cocycle_on_cycle(element: TFGElement, word: str, position: int) -> int:
    """Cocycle value at a rotation of a periodic word."""
    rho = element.radius
    n = len(word)
    window = "".join(word[(position + d) % n] for d in range(-rho, rho + 1))
    return element.table[window]


def tfg_order_search(element: TFGElement, max_order: int,
                     max_period: int) -> OrderVerdict:
    """Torsion via symbolic powers, infinite order via periodic drift.

    Composing the element with itself keeps the accumulated cocycle
    exact, so an all-zero table certifies the order. On a periodic point
    the orbit state is the shift total mod the period; once a state
    repeats with nonzero drift, the cocycle totals are strictly monotone
    along that subsequence forever, certifying infinite order.
    """
    power = element
    for n in range(1, max_order + 1):
        if is_identity(power):
            return OrderVerdict("torsion", order=n)
        if n < max_order:
            power = compose(element, power)

    for period in range(1, max_period + 1):
        for tup in product(element.alphabet.symbols, repeat=period):
            word = "".join(tup)
            total = 0
            seen = {0: (0, 0)}
            for t in range(1, max_order + 1):
                total += cocycle_on_cycle(element, word, total % period)
                state = total % period
                if state in seen:
                    prev_t, prev_total = seen[state]
                    drift = total - prev_total
                    if drift != 0:
                        return OrderVerdict(
                            "infinite_order",
                            witness={"word": word, "k": t - prev_t,
                                     "drift": drift})
                    break
                seen[state] = (t, total)
    return OrderVerdict("inconclusive")


# -- rule files -----------------------------------------------------------------
#
# "ca <alphabet> radius <rho>" then "<word> -> <symbol>" lines for local
# rules or "<word> -> shift <k>" lines for cocycle tables; a final
# "* -> ..." wildcard supplies the default.


def _parse_rule_lines(text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("ca "):
        raise UnsupportedFormat("rule text must start with 'ca'")
    head = lines[0].split()
    if len(head) != 4 or head[2] != "radius":
        raise UnsupportedFormat("header must read 'ca <alphabet> radius <rho>'")
    chars = head[1]
    alphabet = Alphabet(tuple(chars), chars[0])
    radius = int(head[3])
    entries = []
    default = None
    for line in lines[1:]:
        left, arrow, right = line.partition("->")
        if not arrow:
            raise UnsupportedFormat(f"expected '->' in {line!r}")
        left, right = left.strip(), right.strip()
        if left == "*":
            default = right
        else:
            entries.append((left, right))
    return alphabet, radius, entries, default


def parse_ca_rule(text: str) -> CARule:
    alphabet, radius, entries, default = _parse_rule_lines(text)
    width = 2 * radius + 1
    table = {}
    if default is not None:
        table = {"".join(t): default
                 for t in product(alphabet.symbols, repeat=width)}
    for word, out in entries:
        table[word] = out
    return CARule(alphabet, radius, table)


def parse_tfg_element(text: str) -> TFGElement:
    alphabet, radius, entries, default = _parse_rule_lines(text)

    def shift_of(right: str) -> int:
        parts = right.split()
        if len(parts) != 2 or parts[0] != "shift":
            raise UnsupportedFormat(f"expected 'shift <k>', got {right!r}")
        return int(parts[1])

    width = 2 * radius + 1
    table = {}
    if default is not None:
        value = shift_of(default)
        table = {"".join(t): value
                 for t in product(alphabet.symbols, repeat=width)}
    for word, right in entries:
        table[word] = shift_of(right)
    return TFGElement(alphabet, radius, table)


# -- canned rules ----------------------------------------------------------------


def zero_rule(alphabet: Alphabet = BINARY) -> CARule:
    return CARule(alphabet, 0, {s: alphabet.zero for s in alphabet.symbols})


def identity_rule(alphabet: Alphabet = BINARY) -> CARule:
    return CARule(alphabet, 0, {s: s for s in alphabet.symbols})


def shift_rule(alphabet: Alphabet = BINARY) -> CARule:
    """f(x)_i = x_(i+1): contents drift one cell to the left."""
    table = {"".join(t): t[2]
             for t in product(alphabet.symbols, repeat=3)}
    return CARule(alphabet, 1, table)


def xor_rule() -> CARule:
    """f(x)_i = x_i xor x_(i+1) over the binary alphabet."""
    table = {}
    for t in product("01", repeat=3):
        word = "".join(t)
        table[word] = str(int(word[1]) ^ int(word[2]))
    return CARule(BINARY, 1, table)


def decrement_rule() -> CARule:
    """Pointwise max(a - 1, 0) on the alphabet 0,1,2."""
    alphabet = Alphabet(("0", "1", "2"), "0")
    table = {"0": "0", "1": "0", "2": "1"}
    return CARule(alphabet, 0, table)
