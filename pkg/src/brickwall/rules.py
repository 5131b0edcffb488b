"""Substitution rule model, the line-oriented rule DSL, and rule validation.

A rule maps every brick type to one or more image options.  Geometric rules
place image bricks at integer offsets relative to the expanded anchor
(lambda1*x, lambda2*y); block rules rewrite letters into lambda2 rows of
lambda1 letters and are rendered to bricks separately.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

# fallback fill colors (warm masonry tones), cycled in type order
PALETTE = ("#ff9900", "#cc6633", "#c57339", "#ff8000", "#b3b3ff", "#6d6d93")

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RuleError(ValueError):
    """Any problem with a substitution rule."""


class RuleSyntaxError(RuleError):
    """DSL syntax or structural error, with source position."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.line = line
        self.col = col
        if line is not None:
            where = f"line {line}"
            if col is not None:
                where += f", col {col}"
            message = f"{where}: {message}"
        super().__init__(message)


class RuleValidationError(RuleError):
    """Raised by parse_rule when semantic validation fails."""

    def __init__(self, diagnostics: List[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("invalid rule: " + "; ".join(self.diagnostics))


@dataclass(frozen=True)
class Prob:
    """Exact probability, possibly linear in the coin parameter: const + coeff*p."""

    const: Fraction
    coeff: Fraction = _ZERO

    @property
    def is_parametric(self) -> bool:
        return self.coeff != 0

    @property
    def value(self) -> Fraction:
        if self.is_parametric:
            raise RuleError("probability depends on unbound parameter p")
        return self.const

    def bind(self, p: Fraction) -> "Prob":
        return Prob(self.const + self.coeff * p)

    def __str__(self):
        if self.coeff == 0:
            return f"{self.const.numerator}/{self.const.denominator}"
        if self.const == 0 and self.coeff == 1:
            return "p"
        if self.const == 1 and self.coeff == -1:
            return "1-p"
        return f"{self.const} + {self.coeff}*p"


@dataclass(frozen=True)
class BrickType:
    id: str
    width: int
    height: int
    color: str

    @property
    def area(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class Placement:
    type_id: str
    dx: int
    dy: int


@dataclass(frozen=True)
class ImageOption:
    probability: Prob
    placements: Tuple[Placement, ...]


@dataclass(frozen=True)
class BlockImage:
    # rows ordered bottom-to-top, lambda2 rows of lambda1 letter ids
    cells: Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class SubstitutionRule:
    name: str
    engine: str  # "geometric" or "block"
    lambda1: int
    lambda2: int
    skew: int
    types: Tuple[BrickType, ...]
    images: Mapping[str, Tuple[ImageOption, ...]] = field(default_factory=dict)
    blocks: Mapping[str, BlockImage] = field(default_factory=dict)

    @property
    def type_ids(self) -> Tuple[str, ...]:
        return tuple(t.id for t in self.types)

    @property
    def expansion(self) -> int:
        return self.lambda1 * self.lambda2

    @property
    def is_random(self) -> bool:
        return any(len(opts) > 1 for opts in self.images.values())

    @property
    def is_parametric(self) -> bool:
        return any(opt.probability.is_parametric
                   for opts in self.images.values() for opt in opts)

    def get_type(self, type_id: str) -> BrickType:
        for t in self.types:
            if t.id == type_id:
                return t
        raise RuleError(f"unknown brick type '{type_id}' in rule '{self.name}'")

    def bind(self, p) -> "SubstitutionRule":
        """Substitute a concrete value for the parameter p in all probabilities."""
        p = Fraction(p)
        if not self.is_parametric:
            raise RuleError(f"rule '{self.name}' takes no parameter p")
        if not 0 <= p <= 1:
            raise RuleError(f"parameter p={p} outside [0, 1]")
        images = {tid: tuple(ImageOption(opt.probability.bind(p), opt.placements)
                             for opt in opts)
                  for tid, opts in self.images.items()}
        return SubstitutionRule(self.name, self.engine, self.lambda1, self.lambda2,
                                self.skew, self.types, images, self.blocks)


def _rects_overlap(x1, y1, w1, h1, x2, y2, w2, h2) -> bool:
    # open-rectangle intersection: touching edges do not count
    return x1 < x2 + w2 and x2 < x1 + w1 and y1 < y2 + h2 and y2 < y1 + h1


def _sum_str(const: Fraction, coeff: Fraction) -> str:
    if coeff == 0:
        return str(const)
    if const == 0:
        return f"{coeff}*p"
    return f"{const} + {coeff}*p"


def validate_rule(rule: SubstitutionRule) -> List[str]:
    """Semantic diagnostics: probability sums, area identity, image overlaps.

    Empty list means the rule is sound.  Structural problems (unknown ids,
    bad dimensions) are the parser's job and raise instead.
    """
    diags: List[str] = []
    if rule.engine == "geometric":
        for t in rule.types:
            opts = rule.images.get(t.id, ())
            if not opts:
                diags.append(f"{t.id}: no image options")
                continue
            const = sum((o.probability.const for o in opts), _ZERO)
            coeff = sum((o.probability.coeff for o in opts), _ZERO)
            if const != 1 or coeff != 0:
                diags.append(f"{t.id}: probabilities sum to {_sum_str(const, coeff)}")
            target = rule.expansion * t.area
            for k, opt in enumerate(opts):
                pr = opt.probability
                lo, hi = pr.const, pr.const + pr.coeff  # values at p=0 and p=1
                if min(lo, hi) < 0 or max(lo, hi) > 1:
                    diags.append(f"{t.id} option {k}: probability {pr} outside [0, 1]")
                area = 0
                for pl in opt.placements:
                    try:
                        area += rule.get_type(pl.type_id).area
                    except RuleError:
                        diags.append(f"{t.id} option {k}: unknown type '{pl.type_id}'")
                if area != target:
                    diags.append(f"{t.id} option {k}: area {area} != {target}")
                rects = [(pl.dx, pl.dy, rule.get_type(pl.type_id).width,
                          rule.get_type(pl.type_id).height)
                         for pl in opt.placements
                         if any(t2.id == pl.type_id for t2 in rule.types)]
                for i in range(len(rects)):
                    for j in range(i + 1, len(rects)):
                        if _rects_overlap(*rects[i], *rects[j]):
                            diags.append(f"{t.id} option {k}: placements"
                                         f" {i} and {j} overlap")
    else:
        for t in rule.types:
            if t.height != 1:
                diags.append(f"{t.id}: block letters must have height 1, got {t.height}")
            img = rule.blocks.get(t.id)
            if img is None:
                diags.append(f"{t.id}: no block image")
                continue
            if len(img.cells) != rule.lambda2:
                diags.append(f"{t.id}: block image has {len(img.cells)} rows,"
                             f" expected {rule.lambda2}")
            for r, row in enumerate(img.cells):
                if len(row) != rule.lambda1:
                    diags.append(f"{t.id}: block row {r} has {len(row)} letters,"
                                 f" expected {rule.lambda1}")
    return diags


# ---------------------------------------------------------------------------
# DSL
#
#   rule <name>
#   engine geometric | engine block skew <int>
#   expansion <lambda1> <lambda2>
#   brick <id> <width> <height> [color #rrggbb]
#   image <id> [prob <num>/<den> | prob p | prob 1-p] { <id> @ <dx> <dy> ; ... }
#   block <id> { row: <id> <id> ... ; row: ... }     (rows bottom-to-top)
#   end
#
# One statement per line; '#' starts a comment.

_TOKEN_RE = re.compile(r"[{};@]|[^\s{};@]+")


def _strip_comment(line: str) -> str:
    # '#' opens a comment at line start or when followed by whitespace/EOL;
    # '#rrggbb' color values survive
    i = line.find("#")
    while i != -1:
        at_start = line[:i].strip() == ""
        spaced = i + 1 >= len(line) or line[i + 1].isspace()
        if at_start or spaced:
            return line[:i]
        i = line.find("#", i + 1)
    return line


def _tokenize(line: str):
    """Tokens with 1-based column positions; {, }, ; and @ are single tokens."""
    return [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(_strip_comment(line))]


class _Line:
    def __init__(self, lineno, tokens):
        self.lineno = lineno
        self.tokens = tokens
        self.pos = 0

    def error(self, message):
        col = self.tokens[self.pos - 1][1] if 0 < self.pos <= len(self.tokens) else None
        raise RuleSyntaxError(message, self.lineno, col)

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, what="token"):
        if self.pos >= len(self.tokens):
            raise RuleSyntaxError(f"expected {what}", self.lineno,
                                  self.tokens[-1][1] if self.tokens else None)
        tok = self.tokens[self.pos][0]
        self.pos += 1
        return tok

    def take_int(self, what="integer"):
        tok = self.take(what)
        try:
            return int(tok)
        except ValueError:
            self.error(f"expected {what}, got '{tok}'")

    def expect(self, literal):
        tok = self.take(f"'{literal}'")
        if tok != literal:
            self.error(f"expected '{literal}', got '{tok}'")

    def done(self):
        if self.pos < len(self.tokens):
            self.pos += 1
            self.error(f"trailing token '{self.tokens[self.pos - 1][0]}'")


def _parse_prob(ln: _Line) -> Prob:
    tok = ln.take("probability")
    if tok == "p":
        return Prob(_ZERO, _ONE)
    if tok == "1-p":
        return Prob(_ONE, Fraction(-1))
    try:
        return Prob(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        ln.error(f"bad probability '{tok}' (want num/den, p, or 1-p)")


def parse_rule(text: str, validate: bool = True) -> SubstitutionRule:
    """Parse rule DSL source into a SubstitutionRule.

    With validate=True (the default) semantic diagnostics raise
    RuleValidationError; pass validate=False to collect them yourself
    via validate_rule.
    """
    name = None
    engine = None
    skew = 0
    lambda1 = lambda2 = None
    types: List[BrickType] = []
    images: Dict[str, List[ImageOption]] = {}
    blocks: Dict[str, BlockImage] = {}
    ended = False
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        last_line = lineno
        ln = _Line(lineno, tokens)
        if ended:
            ln.take()
            ln.error("statement after 'end'")
        head = ln.take("statement")

        if head == "rule":
            if name is not None:
                ln.error("duplicate 'rule' statement")
            name = ln.take("rule name")
            ln.done()
        elif head == "engine":
            kind = ln.take("engine kind")
            if kind == "geometric":
                engine = "geometric"
            elif kind == "block":
                engine = "block"
                ln.expect("skew")
                skew = ln.take_int("skew value")
            else:
                ln.error(f"unknown engine '{kind}'")
            ln.done()
        elif head == "expansion":
            lambda1 = ln.take_int("lambda1")
            lambda2 = ln.take_int("lambda2")
            if lambda1 < 1 or lambda2 < 1:
                ln.error(f"non-positive expansion {lambda1} {lambda2}")
            ln.done()
        elif head == "brick":
            tid = ln.take("brick id")
            if any(t.id == tid for t in types):
                ln.error(f"duplicate type id '{tid}'")
            width = ln.take_int("width")
            height = ln.take_int("height")
            if width < 1 or height < 1:
                ln.error(f"non-positive dimension {width}x{height} for '{tid}'")
            color = None
            if ln.peek() == "color":
                ln.take()
                color = ln.take("color value")
            ln.done()
            if color is None:
                color = PALETTE[len(types) % len(PALETTE)]
            types.append(BrickType(tid, width, height, color))
        elif head == "image":
            tid = ln.take("type id")
            prob = Prob(_ONE)
            if ln.peek() == "prob":
                ln.take()
                prob = _parse_prob(ln)
            ln.expect("{")
            placements: List[Placement] = []
            while True:
                tok = ln.take("placement or '}'")
                if tok == "}":
                    break
                ref = tok
                ln.expect("@")
                dx = ln.take_int("dx")
                dy = ln.take_int("dy")
                placements.append(Placement(ref, dx, dy))
                tok = ln.take("';' or '}'")
                if tok == "}":
                    break
                if tok != ";":
                    ln.error(f"expected ';' or '}}', got '{tok}'")
            ln.done()
            images.setdefault(tid, []).append(ImageOption(prob, tuple(placements)))
        elif head == "block":
            tid = ln.take("letter id")
            if tid in blocks:
                ln.error(f"duplicate block image for '{tid}'")
            ln.expect("{")
            rows: List[Tuple[str, ...]] = []
            row: List[str] = []
            while True:
                tok = ln.take("row or '}'")
                if tok == "}":
                    if row:
                        rows.append(tuple(row))
                    break
                if tok == ";":
                    if row:
                        rows.append(tuple(row))
                        row = []
                    continue
                if tok == "row:":
                    if row:
                        rows.append(tuple(row))
                        row = []
                    continue
                row.append(tok)
            ln.done()
            if not rows:
                ln.error(f"empty block image for '{tid}'")
            blocks[tid] = BlockImage(tuple(rows))
        elif head == "end":
            ln.done()
            ended = True
        else:
            ln.error(f"unknown statement '{head}'")

    def fail(msg):
        raise RuleSyntaxError(msg, last_line or 1)

    if name is None:
        fail("missing 'rule' statement")
    if not ended:
        fail("missing 'end'")
    if engine is None:
        fail("missing 'engine' statement")
    if lambda1 is None:
        fail("missing 'expansion' statement")
    if not types:
        fail("no brick types declared")

    ids = {t.id for t in types}
    if engine == "geometric":
        if blocks:
            fail("block statements not allowed in a geometric rule")
        for tid, opts in images.items():
            if tid not in ids:
                fail(f"image for unknown type '{tid}'")
            for opt in opts:
                for pl in opt.placements:
                    if pl.type_id not in ids:
                        fail(f"unknown type reference '{pl.type_id}' in image of '{tid}'")
        for t in types:
            if t.id not in images:
                fail(f"no image declared for '{t.id}'")
    else:
        if images:
            fail("image statements not allowed in a block rule")
        for tid, img in blocks.items():
            if tid not in ids:
                fail(f"block image for unknown letter '{tid}'")
            for row in img.cells:
                for ref in row:
                    if ref not in ids:
                        fail(f"unknown letter reference '{ref}' in block of '{tid}'")
        for t in types:
            if t.id not in blocks:
                fail(f"no block image declared for '{t.id}'")

    rule = SubstitutionRule(name, engine, lambda1, lambda2, skew, tuple(types),
                            {tid: tuple(opts) for tid, opts in images.items()},
                            dict(blocks))
    if validate:
        diags = validate_rule(rule)
        if diags:
            raise RuleValidationError(diags)
    return rule


def serialize_rule(rule: SubstitutionRule) -> str:
    """Canonical DSL text for a rule; parse_rule(serialize_rule(r)) == r."""
    out = [f"rule {rule.name}"]
    if rule.engine == "block":
        out.append(f"engine block skew {rule.skew}")
    else:
        out.append("engine geometric")
    out.append(f"expansion {rule.lambda1} {rule.lambda2}")
    for t in rule.types:
        out.append(f"brick {t.id} {t.width} {t.height} color {t.color}")
    if rule.engine == "geometric":
        for t in rule.types:
            opts = rule.images[t.id]
            for opt in opts:
                body = " ; ".join(f"{pl.type_id} @ {pl.dx} {pl.dy}"
                                  for pl in opt.placements)
                if len(opts) == 1 and opt.probability == Prob(_ONE):
                    out.append(f"image {t.id} {{ {body} }}")
                else:
                    out.append(f"image {t.id} prob {opt.probability} {{ {body} }}")
    else:
        for t in rule.types:
            img = rule.blocks[t.id]
            body = " ; ".join("row: " + " ".join(row) for row in img.cells)
            out.append(f"block {t.id} {{ {body} }}")
    out.append("end")
    return "\n".join(out) + "\n"
