"""Pattern generation: iterate geometric rules, grow and render block grids.

Level-by-level (breadth-first) generation so a single substitution step is
a first-class, testable operation.  Random rules consume exactly one PRNG
draw per brick, in lexicographic (y, x, type_id) order, which pins down the
whole stream for reproducibility.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .rng import SplitMix64
from .rules import RuleError, SubstitutionRule

MAX_DEPTH = 12  # default allocation guard; override per call if you mean it


class OverlapError(RuleError):
    """Two bricks overlap; the rule is not a valid tiling substitution."""


@dataclass(frozen=True)
class Brick:
    """A placed brick occupying [x, x+width) x [y, y+height)."""

    type_id: str
    x: int
    y: int
    width: int
    height: int


@dataclass(frozen=True)
class Pattern:
    rule_name: str
    level: int
    seed_type: Optional[str]
    rng_seed: Optional[int]
    bricks: Tuple[Brick, ...]

    def __len__(self):
        return len(self.bricks)

    @property
    def area(self) -> int:
        return sum(b.width * b.height for b in self.bricks)

    def bbox(self) -> Tuple[int, int, int, int]:
        """(min_x, min_y, max_x, max_y) of the covered region."""
        if not self.bricks:
            raise ValueError("empty pattern has no bounding box")
        return (min(b.x for b in self.bricks),
                min(b.y for b in self.bricks),
                max(b.x + b.width for b in self.bricks),
                max(b.y + b.height for b in self.bricks))


@dataclass(frozen=True)
class LetterGrid:
    """Rows (bottom-to-top) of letter ids; lambda1^n x lambda2^n from one seed."""

    rows: Tuple[Tuple[str, ...], ...]
    level: int
    seed_letter: Optional[str] = None


_ORDER = lambda b: (b.y, b.x, b.type_id)  # noqa: E731  draw + output order


def check_no_overlap(bricks: Iterable[Brick]) -> None:
    """Sweep over x; active y-intervals stay disjoint or we raise OverlapError."""
    events = []  # (x, kind, y0, y1); removals sort before insertions
    for b in bricks:
        events.append((b.x, 1, b.y, b.y + b.height))
        events.append((b.x + b.width, 0, b.y, b.y + b.height))
    events.sort()
    active: List[Tuple[int, int]] = []  # disjoint (y0, y1), sorted
    for x, kind, y0, y1 in events:
        if kind == 0:
            active.pop(bisect.bisect_left(active, (y0, y1)))
            continue
        i = bisect.bisect_left(active, (y0, y1))
        if i > 0 and active[i - 1][1] > y0:
            raise OverlapError(f"bricks overlap near x={x}, y={y0}")
        if i < len(active) and active[i][0] < y1:
            raise OverlapError(f"bricks overlap near x={x}, y={y0}")
        active.insert(i, (y0, y1))


def _choose_option(options, rng):
    if len(options) == 1:
        return options[0]
    draw = rng.next_u64()
    # compare draw/2^64 against cumulative probabilities, exactly
    acc = Fraction(0)
    for opt in options[:-1]:
        acc += opt.probability.value
        if draw * acc.denominator < acc.numerator << 64:
            return opt
    return options[-1]


def _substitute_bricks(rule: SubstitutionRule, bricks, rng) -> Tuple[Brick, ...]:
    sizes = {t.id: (t.width, t.height) for t in rule.types}
    out = []
    for b in sorted(bricks, key=_ORDER):
        opt = _choose_option(rule.images[b.type_id], rng)
        ax, ay = rule.lambda1 * b.x, rule.lambda2 * b.y
        for pl in opt.placements:
            w, h = sizes[pl.type_id]
            out.append(Brick(pl.type_id, ax + pl.dx, ay + pl.dy, w, h))
    out.sort(key=_ORDER)
    check_no_overlap(out)
    return tuple(out)


def _require_geometric(rule):
    if rule.engine != "geometric":
        raise RuleError(f"rule '{rule.name}' is a block rule;"
                        " use iterate_block + render_grid")


def _check_brick_types(rule, bricks):
    for b in bricks:
        t = rule.get_type(b.type_id)
        if (t.width, t.height) != (b.width, b.height):
            raise RuleError(f"brick {b.type_id}@({b.x},{b.y}) has size"
                            f" {b.width}x{b.height}, rule says {t.width}x{t.height}")


def iterate(rule: SubstitutionRule, seed_type: str, n: int,
            rng_seed: Optional[int] = None, max_depth: int = MAX_DEPTH) -> Pattern:
    """Apply the rule n times to a single seed brick at the origin."""
    _require_geometric(rule)
    seed = rule.get_type(seed_type)
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    if n > max_depth:
        raise ValueError(f"depth {n} exceeds max_depth={max_depth}")
    if rule.is_parametric:
        raise RuleError(f"rule '{rule.name}' has unbound parameter p; bind it first")
    rng = None
    if rule.is_random:
        if rng_seed is None:
            raise RuleError(f"rule '{rule.name}' is random; rng_seed is required")
        rng = SplitMix64(rng_seed)
    bricks = (Brick(seed.id, 0, 0, seed.width, seed.height),)
    for _ in range(n):
        bricks = _substitute_bricks(rule, bricks, rng)
    return Pattern(rule.name, n, seed_type,
                   rng_seed if rule.is_random else None, bricks)


def substitute_once(rule: SubstitutionRule, pattern: Pattern,
                    rng: Optional[SplitMix64] = None) -> Pattern:
    """One substitution step; pass the same SplitMix64 across steps to
    reproduce what iterate does with a single stream."""
    _require_geometric(rule)
    _check_brick_types(rule, pattern.bricks)
    if rule.is_parametric:
        raise RuleError(f"rule '{rule.name}' has unbound parameter p; bind it first")
    if rule.is_random and rng is None:
        raise RuleError(f"rule '{rule.name}' is random; an rng is required")
    bricks = _substitute_bricks(rule, pattern.bricks, rng)
    return Pattern(rule.name, pattern.level + 1, pattern.seed_type,
                   pattern.rng_seed, bricks)


def iterate_block(rule: SubstitutionRule, seed_letter: str, n: int,
                  max_depth: int = MAX_DEPTH) -> LetterGrid:
    """Grow a letter grid by block substitution, n levels from one letter."""
    if rule.engine != "block":
        raise RuleError(f"rule '{rule.name}' is not a block rule")
    rule.get_type(seed_letter)
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    if n > max_depth:
        raise ValueError(f"depth {n} exceeds max_depth={max_depth}")
    rows: List[List[str]] = [[seed_letter]]
    for _ in range(n):
        new_rows: List[List[str]] = []
        for row in rows:
            stack: List[List[str]] = [[] for _ in range(rule.lambda2)]
            for letter in row:
                img = rule.blocks[letter]
                for r in range(rule.lambda2):
                    stack[r].extend(img.cells[r])
            new_rows.extend(stack)
        rows = new_rows
    return LetterGrid(tuple(tuple(r) for r in rows), n, seed_letter)


def render_grid(rule: SubstitutionRule, grid: LetterGrid) -> Pattern:
    """Turn a letter grid into bricks: row R starts at x = skew*R and letters
    lie side by side with their own widths."""
    widths = {t.id: t.width for t in rule.types}
    bricks = []
    for r, row in enumerate(grid.rows):
        x = rule.skew * r
        for letter in row:
            w = widths[letter]
            bricks.append(Brick(letter, x, r, w, 1))
            x += w
    bricks.sort(key=_ORDER)
    return Pattern(rule.name, grid.level, grid.seed_letter, None, tuple(bricks))


def generate_pattern(rule: SubstitutionRule, seed_type: str, n: int,
                     rng_seed: Optional[int] = None,
                     max_depth: int = MAX_DEPTH) -> Pattern:
    """Engine dispatch: iterate for geometric rules, grow + render for block."""
    if rule.engine == "block":
        return render_grid(rule, iterate_block(rule, seed_type, n, max_depth))
    return iterate(rule, seed_type, n, rng_seed, max_depth)


def ptm_oracle(i: int, j: int) -> str:
    """Letter of the 2D Prouhet-Thue-Morse array at column i, row j:
    parity of binary digit sums, XORed."""
    return "1" if (bin(i).count("1") + bin(j).count("1")) % 2 else "0"


# ---------------------------------------------------------------------------
# pattern text format: header line, then one `type_id x y width height` per
# line, sorted by (y, x)

_HEADER_RE = re.compile(r"#\s*rule=(\S+)\s+n=(\d+)\s+seed=(\S+)\s*$")


def format_pattern(pattern: Pattern) -> str:
    seed = "-" if pattern.rng_seed is None else str(pattern.rng_seed)
    lines = [f"# rule={pattern.rule_name} n={pattern.level} seed={seed}"]
    for b in sorted(pattern.bricks, key=_ORDER):
        lines.append(f"{b.type_id} {b.x} {b.y} {b.width} {b.height}")
    return "\n".join(lines) + "\n"


def parse_pattern(text: str) -> Pattern:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty pattern text")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise ValueError(f"bad pattern header: {lines[0]!r}")
    rule_name, level = m.group(1), int(m.group(2))
    rng_seed = None if m.group(3) == "-" else int(m.group(3))
    bricks = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 5:
            raise ValueError(f"bad pattern line: {ln!r}")
        tid, x, y, w, h = parts[0], *map(int, parts[1:])
        bricks.append(Brick(tid, x, y, w, h))
    bricks.sort(key=_ORDER)
    return Pattern(rule_name, level, None, rng_seed, tuple(bricks))
