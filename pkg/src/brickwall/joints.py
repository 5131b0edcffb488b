"""Vertical joint extraction, v_max, crossings, and the joint-length bound.

A vertical joint is a maximal run of brick edges along one abscissa x,
counted only where the wall has bricks strictly on both sides of the line
x = const; the exterior outline of the pattern is not a joint.  Touching
edge intervals merge: mortar interrupted by nothing is continuous mortar.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .generate import Pattern, generate_pattern, iterate_block, render_grid
from .rules import RuleError, SubstitutionRule


@dataclass(frozen=True)
class Joint:
    x: int
    y0: int
    y1: int

    @property
    def length(self) -> int:
        return self.y1 - self.y0


@dataclass(frozen=True)
class JointReport:
    v_max: int
    joints: Tuple[Joint, ...]
    pattern: Optional[Pattern] = None
    crossings: Optional[Mapping[str, bool]] = None

    def to_json(self) -> dict:
        return {
            "v_max": self.v_max,
            "joints": [{"x": j.x, "y0": j.y0, "y1": j.y1} for j in self.joints],
            "crossings": dict(self.crossings) if self.crossings else {},
        }


def _merge(intervals: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Union of closed integer intervals; touching intervals merge."""
    intervals.sort()
    merged: List[Tuple[int, int]] = []
    for y0, y1 in intervals:
        if merged and y0 <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], y1))
        else:
            merged.append((y0, y1))
    return merged


def _edge_segments(bricks) -> Dict[int, List[Tuple[int, int]]]:
    """Merged vertical edge runs per abscissa, exterior included."""
    edges: Dict[int, List[Tuple[int, int]]] = {}
    for b in bricks:
        edges.setdefault(b.x, []).append((b.y, b.y + b.height))
        edges.setdefault(b.x + b.width, []).append((b.y, b.y + b.height))
    return {x: _merge(ivs) for x, ivs in edges.items()}


def vertical_joints(pattern: Pattern) -> JointReport:
    """All maximal vertical joints of an overlap-free pattern, and their max
    length.  Abscissas with no bricks strictly left or strictly right of
    them (the pattern's outline) carry no joints."""
    if not pattern.bricks:
        return JointReport(0, (), pattern)
    min_x = min(b.x for b in pattern.bricks)
    max_x = max(b.x + b.width for b in pattern.bricks)
    joints = []
    for x, segments in sorted(_edge_segments(pattern.bricks).items()):
        if x <= min_x or x >= max_x:
            continue
        joints.extend(Joint(x, y0, y1) for y0, y1 in segments)
    v_max = max((j.length for j in joints), default=0)
    return JointReport(v_max, tuple(joints), pattern)


def v_max_at(rule: SubstitutionRule, seed_type: str, n: int,
             rng_seed: Optional[int] = None) -> int:
    """v_max of the n-th image of the seed brick (block rules included)."""
    return vertical_joints(generate_pattern(rule, seed_type, n, rng_seed)).v_max


def _image_bricks(rule: SubstitutionRule, type_id: str, option_index: int):
    from .generate import Brick

    opt = rule.images[type_id][option_index]
    bricks = []
    for pl in opt.placements:
        t = rule.get_type(pl.type_id)
        bricks.append(Brick(pl.type_id, pl.dx, pl.dy, t.width, t.height))
    return bricks


def _segment_crosses(cells, x, y0, y1) -> bool:
    # the open segment must run through the interior: unit-height steps with
    # brick material strictly on both sides
    for y in range(y0, y1):
        if (x - 1, y) not in cells or (x, y) not in cells:
            return False
    # both closed endpoints must lie on the region's boundary: at least one
    # of the four surrounding unit cells uncovered
    for y in (y0, y1):
        quads = [(x - 1, y), (x, y), (x - 1, y - 1), (x, y - 1)]
        if all(q in cells for q in quads):
            return False
    return True


def _option_has_crossing(rule, type_id, option_index) -> bool:
    bricks = _image_bricks(rule, type_id, option_index)
    return _bricks_have_crossing(bricks)


def _bricks_have_crossing(bricks) -> bool:
    cells = set()
    for b in bricks:
        for cx in range(b.x, b.x + b.width):
            for cy in range(b.y, b.y + b.height):
                cells.add((cx, cy))
    for x, segments in _edge_segments(bricks).items():
        for y0, y1 in segments:
            if _segment_crosses(cells, x, y0, y1):
                return True
    return False


def crossing_options(rule: SubstitutionRule, type_id: str) -> Tuple[bool, ...]:
    """Crossing verdict per image option of one type."""
    rule.get_type(type_id)
    if rule.engine == "block":
        image = render_grid(rule, iterate_block(rule, type_id, 1))
        return (_bricks_have_crossing(image.bricks),)
    return tuple(_option_has_crossing(rule, type_id, k)
                 for k in range(len(rule.images[type_id])))


def has_crossing(rule: SubstitutionRule, type_id: str) -> bool:
    """True iff some maximal joint of the one-step image of this type runs
    through the image's interior and connects two boundary points.  Random
    rules: true if any option crosses."""
    return any(crossing_options(rule, type_id))


def prop2_bound(rule: SubstitutionRule) -> int:
    """Joint-length bound 2 * j_max * (lambda2 - 1) for crossing-free rules,
    where j_max is the tallest brick height in the alphabet."""
    j_star = max(t.height for t in rule.types)
    return 2 * j_star * (rule.lambda2 - 1)


@dataclass(frozen=True)
class Prop2Verdict:
    rule_name: str
    crossings: Mapping[str, bool]
    hypothesis_holds: Optional[bool]
    bound: Optional[int]
    measured_max: int
    bound_respected: Optional[bool]

    def to_json(self) -> dict:
        return {
            "rule": self.rule_name,
            "crossings": dict(self.crossings),
            "hypothesis_holds": self.hypothesis_holds,
            "bound": self.bound,
            "measured_max": self.measured_max,
            "bound_respected": self.bound_respected,
        }


def check_prop2(rule: SubstitutionRule, seed_type: str, n_max: int) -> Prop2Verdict:
    """Measure max v_max over n <= n_max against the joint-length bound.

    Geometric deterministic rules get the full verdict.  Block rules are
    measured only (no crossing analysis; their images are not rectangles, so
    the bound does not apply).
    """
    if rule.is_random:
        raise RuleError("check_prop2 needs a deterministic rule")
    measured = max((v_max_at(rule, seed_type, n) for n in range(1, n_max + 1)),
                   default=0)
    if rule.engine == "block":
        return Prop2Verdict(rule.name, {}, None, None, measured, None)
    crossings = {tid: has_crossing(rule, tid) for tid in rule.type_ids}
    hypothesis = not any(crossings.values())
    bound = prop2_bound(rule)
    respected = (measured <= bound) if hypothesis else True  # vacuous otherwise
    return Prop2Verdict(rule.name, crossings, hypothesis, bound, measured, respected)


def empirical_frequencies(pattern: Pattern,
                          rule: Optional[SubstitutionRule] = None
                          ) -> Dict[str, Fraction]:
    """Brick-count share per type.  Pass the rule to fix the type order and
    include zero-count types."""
    if not pattern.bricks:
        raise ValueError("empty pattern has no frequencies")
    counts: Dict[str, int] = {}
    for b in pattern.bricks:
        counts[b.type_id] = counts.get(b.type_id, 0) + 1
    total = len(pattern.bricks)
    order = rule.type_ids if rule is not None else tuple(sorted(counts))
    return {tid: Fraction(counts.get(tid, 0), total) for tid in order}


def report_with_crossings(report: JointReport, rule: SubstitutionRule) -> JointReport:
    """Attach per-type crossing verdicts to a joint report."""
    crossings = {tid: has_crossing(rule, tid) for tid in rule.type_ids}
    return replace(report, crossings=crossings)
