"""Resolution of a (15, 3, 1) design into seven day-labeled parallel classes.

A parallel class (a spread) is five disjoint blocks covering all fifteen
points.  Exactly one block of any spread lies inside the seven
leading-bit-zero plane points, since two plane blocks always share a
point; the other four blocks each pair one remaining plane point with two
of the eight leading-bit-one corners.  Days carry nonzero 3-bit labels.
A matching gives every day a plane block through the point with the day's
own bits, and the resolver completes each matched block into a spread so
that the 35 blocks are used exactly once across the week.

All searches are deterministic: days are processed in ascending label
order and every tie is broken lexicographically, so repeated runs produce
identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import pauli
from .designs import Block, Point
from .errors import DesignError, ResolutionError
from .report import VerificationReport, check_from_failures as _check

__all__ = [
    "DayLabel",
    "ParallelClass",
    "Resolution",
    "DAY_DISPLAY_ORDER",
    "all_days",
    "match_days",
    "resolve",
    "validate_resolution",
    "enumerate_spreads",
    "reference_week_rows",
    "reference_resolution",
    "reference_matching",
]

_DAY_NAMES = {1: "MON", 2: "TU", 3: "WED", 4: "TH", 5: "FRI", 6: "SAT", 7: "SUN"}
_DAY_VALUES = {name: value for value, name in _DAY_NAMES.items()}


@dataclass(frozen=True, order=True)
class DayLabel:
    """A nonzero 3-bit day label with its fixed weekday name."""

    value: int

    def __post_init__(self):
        if not 1 <= self.value <= 7:
            raise ResolutionError(f"day label must be a nonzero 3-bit word, got {self.value}")

    @classmethod
    def from_name(cls, name):
        try:
            return cls(_DAY_VALUES[name.upper()])
        except KeyError:
            raise ResolutionError(f"unknown day name {name!r}") from None

    @classmethod
    def from_bits(cls, bits):
        return cls(int(bits, 2))

    @property
    def name(self):
        return _DAY_NAMES[self.value]

    @property
    def bits(self):
        return format(self.value, "03b")

    def __str__(self):
        return f"{self.name}({self.bits})"


def all_days():
    return tuple(DayLabel(v) for v in range(1, 8))


# column order of the printed week: Sunday first
DAY_DISPLAY_ORDER = tuple(DayLabel(v) for v in (7, 1, 2, 3, 4, 5, 6))


@dataclass(frozen=True)
class ParallelClass:
    """One day's blocks, in display order (plane block first)."""

    blocks: tuple

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class Resolution:
    """Classes keyed by day plus the day-to-plane-block matching."""

    classes: dict
    matching: dict


def _plane_blocks(design):
    if design.m == 4:
        return tuple(b for b in design.blocks if all(not p.value >> 3 for p in b.points))
    return design.blocks


def _day_point(design, day):
    return Point(day.value, 4 if design.m == 4 else 3)


def match_days(design):
    """Lexicographically least valid day-to-plane-block matching.

    Defined for size-4 designs (on their seven plane blocks) and size-3
    designs (on all seven blocks).  Each day must receive a block through
    the point carrying the day's own bits; days are filled in ascending
    label order, trying candidate blocks in ascending block order, with
    backtracking, so the first complete matching is the least one.
    """
    if design.m not in (3, 4):
        raise ResolutionError(f"day matching needs a size-3 or size-4 design, got m={design.m}")
    lines = _plane_blocks(design)
    days = all_days()
    candidates = {day: tuple(l for l in lines if _day_point(design, day) in l) for day in days}
    assignment = {}
    used = set()

    def place(i):
        if i == len(days):
            return True
        day = days[i]
        for line in candidates[day]:
            if line in used:
                continue
            assignment[day] = line
            used.add(line)
            if place(i + 1):
                return True
            used.discard(line)
            del assignment[day]
        return False

    if not place(0):
        raise ResolutionError("no incidence-respecting day matching exists")
    return {day: assignment[day] for day in days}


def _check_matching(design, matching):
    days = all_days()
    if set(matching) != set(days):
        raise ResolutionError("matching must assign exactly the seven days")
    plane = set(_plane_blocks(design))
    seen = set()
    for day in days:
        block = matching[day]
        if block not in plane:
            raise ResolutionError(f"{day}: {block} is not a plane block of this design")
        if block in seen:
            raise ResolutionError(f"block {block} matched to more than one day")
        seen.add(block)
        if _day_point(design, day) not in block:
            raise ResolutionError(f"{day}: matched block {block} misses the day's point")


def resolve(design, matching=None):
    """Deterministically complete a matching into a full resolution.

    Every day's class is the matched plane block plus four corner blocks,
    listed with the plane block first and the rest ordered by their plane
    point.  Raises when the design is not resolvable-sized or the matching
    admits no completion (which cannot happen for valid input).
    """
    if design.m != 4:
        raise ResolutionError(
            f"D({design.params.v},{design.params.k},1) is not a Kirkman-resolvable size here; resolution needs m=4"
        )
    if matching is None:
        matching = match_days(design)
    _check_matching(design, matching)

    plane_points = [p for p in design.points if not p.value >> 3]
    by_mid = {p: [] for p in plane_points}
    for block in design.blocks:
        t0 = [p for p in block.points if not p.value >> 3]
        if len(t0) == 1:
            by_mid[t0[0]].append(block)

    days = all_days()
    classes = {}
    used = set()

    def fill_day(di):
        if di == len(days):
            return True
        day = days[di]
        line = matching[day]
        rest = [p for p in plane_points if p not in line]
        chosen = []
        covered = set()

        def pick(pi):
            if pi == len(rest):
                classes[day] = ParallelClass((line, *chosen))
                if fill_day(di + 1):
                    return True
                del classes[day]
                return False
            for block in by_mid[rest[pi]]:
                if block in used:
                    continue
                corners = [p for p in block.points if p.value >> 3]
                if corners[0] in covered or corners[1] in covered:
                    continue
                used.add(block)
                chosen.append(block)
                covered.update(corners)
                if pick(pi + 1):
                    return True
                used.discard(block)
                chosen.pop()
                covered.difference_update(corners)
            return False

        return pick(0)

    if not fill_day(0):
        raise ResolutionError("matching admits no resolution; the design or matching is corrupted")
    return Resolution(classes={day: classes[day] for day in days}, matching=dict(matching))


def validate_resolution(design, resolution):
    """Report-style validation of a claimed resolution."""
    checks = []
    days = all_days()
    classes = resolution.classes

    day_bad = []
    if set(classes) != set(days):
        day_bad.append(f"days present: {sorted(d.value for d in classes)}")
    checks.append(_check("exactly the seven days are scheduled", day_bad))

    size_bad = [f"{d}: {len(c)} blocks" for d, c in classes.items() if len(c) != 5]
    checks.append(_check("each class holds five blocks", size_bad))

    known = set(design.blocks)
    foreign = [f"{d}: {b}" for d, c in classes.items() for b in c if b not in known]
    checks.append(_check("all blocks belong to the design", foreign))

    part_bad = []
    for d, c in classes.items():
        seen = [p for b in c for p in b.points]
        if len(seen) != 15 or len(set(seen)) != 15:
            part_bad.append(f"{d} does not partition the point set")
    checks.append(_check("each class partitions the fifteen points", part_bad))

    flat = [b for c in classes.values() for b in c]
    dup_bad = []
    if len(set(flat)) != len(flat):
        dup_bad.append("a block appears in more than one class")
    if set(flat) != known:
        dup_bad.append(f"{len(set(flat))} distinct blocks used, expected {len(known)}")
    checks.append(_check("the 35 blocks are used exactly once across the week", dup_bad))

    match_bad = []
    matched = list(resolution.matching.values())
    if set(resolution.matching) != set(days):
        match_bad.append("matching does not cover the seven days")
    if len(set(matched)) != len(matched):
        match_bad.append("matching reuses a block")
    plane = set(_plane_blocks(design))
    for day, block in resolution.matching.items():
        if block not in plane:
            match_bad.append(f"{day}: matched block is not a plane block")
        elif _day_point(design, day) not in block:
            match_bad.append(f"{day}: matched block misses point ({day.bits})")
        if day in classes and block not in classes[day].blocks:
            match_bad.append(f"{day}: matched block absent from its class")
    checks.append(_check("day matching is an incidence-respecting bijection", match_bad))

    return VerificationReport("resolution of " + design.describe(), tuple(checks))


def enumerate_spreads(design):
    """Every spread of the design, canonically ordered.

    Generated by always extending through the least uncovered point, so
    each spread appears exactly once; for a valid size-4 design there are
    56 of them, each containing exactly one plane block.
    """
    if design.m != 4:
        raise ResolutionError(f"spread enumeration needs a size-4 design, got m={design.m}")
    blocks = design.blocks
    by_point = {}
    for idx, blk in enumerate(blocks):
        for p in blk.points:
            by_point.setdefault(p, []).append(idx)
    spreads = []

    def extend(chosen, covered):
        if len(chosen) == 5:
            spreads.append(tuple(chosen))
            return
        pivot = next(p for p in design.points if p not in covered)
        for idx in by_point[pivot]:
            blk = blocks[idx]
            if any(p in covered for p in blk.points):
                continue
            chosen.append(idx)
            covered.update(blk.points)
            extend(chosen, covered)
            chosen.pop()
            covered.difference_update(blk.points)

    extend([], set())
    spreads.sort()
    return tuple(ParallelClass(tuple(blocks[i] for i in s)) for s in spreads)


# ---------------------------------------------------------------------------
# shipped weekly arrangement
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def reference_week_rows():
    """Rows of the shipped week as color codes (primes stripped).

    Returns a dict DayLabel -> tuple of five rows, each a 3-tuple of color
    codes, preserving the printed row and cell order.
    """
    text = resources.files(__package__).joinpath("data/reference_week.txt").read_text("utf-8")
    rows = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, body = line.partition(":")
        name, bits = head.split()
        day = DayLabel.from_bits(bits)
        if day.name != name:
            raise ResolutionError(f"reference week: day {name} does not carry bits {bits}")
        parsed = []
        for cell in body.split("|"):
            codes = tuple(code.rstrip("'") for code in cell.split())
            if len(codes) != 3:
                raise ResolutionError(f"reference week: row {cell!r} does not hold three codes")
            parsed.append(codes)
        if len(parsed) != 5:
            raise ResolutionError(f"reference week: day {name} has {len(parsed)} rows")
        rows[day] = tuple(parsed)
    if len(rows) != 7:
        raise ResolutionError(f"reference week lists {len(rows)} days")
    return rows


def reference_resolution(design):
    """Decode the shipped week against a design, reporting any mismatch.

    Each color code is resolved through the operator dictionary to the
    design point carrying that operator; rows must then form blocks of the
    design.  Nothing is patched: a transcription or design mismatch raises
    with the offending row.
    """
    point_of = {label: point for point, label in design.assignment.items()}
    classes = {}
    matching = {}
    for day in all_days():
        blocks = []
        for codes in reference_week_rows()[day]:
            points = []
            for code in codes:
                label = pauli.dictionary(code).label
                if label not in point_of:
                    raise ResolutionError(f"{day}: color {code} names an operator absent from {design.describe()}")
                points.append(point_of[label])
            try:
                block = Block.of(*points)
            except DesignError as exc:
                raise ResolutionError(f"{day}: row {' '.join(codes)} is not a block: {exc}") from exc
            blocks.append(block)
        classes[day] = ParallelClass(tuple(blocks))
        plane_rows = [b for b in blocks if all(not p.value >> 3 for p in b.points)]
        if len(plane_rows) != 1:
            raise ResolutionError(f"{day}: expected exactly one plane row, found {len(plane_rows)}")
        matching[day] = plane_rows[0]
    ordered = {day: classes[day] for day in all_days()}
    return Resolution(classes=ordered, matching={day: matching[day] for day in all_days()})


def reference_matching(design):
    """The day-to-plane-block matching encoded by the shipped week."""
    return reference_resolution(design).matching
