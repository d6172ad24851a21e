"""
Probability assessments on a family of conditional events: precise points,
intervals with optional open endpoints, and boxes of intervals.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from errors import AssessmentError

ZERO = Fraction(0)
ONE = Fraction(1)


def fraction_text(value: Fraction) -> str:
    """Exact text form: `p/q`, or `n` for integers."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise AssessmentError(f"Interval lower end {self.lo} exceeds upper end {self.hi}")
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise AssessmentError("A degenerate interval cannot have an open endpoint")

    @classmethod
    def point(cls, value) -> "Interval":
        return cls(value, value)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi)

    @classmethod
    def unit(cls) -> "Interval":
        return cls(ZERO, ONE)

    @property
    def is_closed(self) -> bool:
        return not (self.lo_open or self.hi_open)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def closure(self) -> "Interval":
        return Interval(self.lo, self.hi)

    def within_unit(self) -> bool:
        return self.lo >= 0 and self.hi <= 1

    def contains(self, value) -> bool:
        value = Fraction(value)
        above = value > self.lo if self.lo_open else value >= self.lo
        below = value < self.hi if self.hi_open else value <= self.hi
        return above and below

    def subset_of(self, other: "Interval") -> bool:
        if self.lo < other.lo or (self.lo == other.lo and other.lo_open and not self.lo_open):
            return False
        if self.hi > other.hi or (self.hi == other.hi and other.hi_open and not self.hi_open):
            return False
        return True

    def __str__(self) -> str:
        left = "]" if self.lo_open else "["
        right = "[" if self.hi_open else "]"
        return f"{left}{fraction_text(self.lo)}, {fraction_text(self.hi)}{right}"


@dataclass(frozen=True)
class PreciseAssessment:
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        for index, value in enumerate(values):
            if not ZERO <= value <= ONE:
                raise AssessmentError(f"Value {value} at position {index} is outside [0, 1]")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, *values) -> "PreciseAssessment":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]

    def subset(self, indices: Iterable[int]) -> "PreciseAssessment":
        return PreciseAssessment(tuple(self.values[i] for i in indices))

    def extend(self, value) -> "PreciseAssessment":
        return PreciseAssessment(self.values + (Fraction(value),))

    def as_box(self) -> "Box":
        return Box(tuple(Interval.point(v) for v in self.values))

    def __str__(self) -> str:
        return "(" + ", ".join(fraction_text(v) for v in self.values) + ")"


@dataclass(frozen=True)
class Box:
    intervals: Tuple[Interval, ...]

    def __post_init__(self):
        intervals = tuple(self.intervals)
        for index, interval in enumerate(intervals):
            if not interval.within_unit():
                raise AssessmentError(f"Interval {interval} at position {index} is outside [0, 1]")
        object.__setattr__(self, "intervals", intervals)

    @classmethod
    def of(cls, *intervals: Interval) -> "Box":
        return cls(tuple(intervals))

    @classmethod
    def unit(cls, size: int) -> "Box":
        return cls(tuple(Interval.unit() for _ in range(size)))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, index) -> Interval:
        return self.intervals[index]

    @property
    def is_closed(self) -> bool:
        return all(i.is_closed for i in self.intervals)

    def closure(self) -> "Box":
        return Box(tuple(i.closure() for i in self.intervals))

    def contains(self, point: Sequence) -> bool:
        return len(point) == len(self.intervals) and all(
            interval.contains(value) for interval, value in zip(self.intervals, point)
        )

    def subset(self, indices: Iterable[int]) -> "Box":
        return Box(tuple(self.intervals[i] for i in indices))

    def replace(self, index: int, interval: Interval) -> "Box":
        intervals = list(self.intervals)
        intervals[index] = interval
        return Box(tuple(intervals))

    def subset_of(self, other: "Box") -> bool:
        return len(self) == len(other) and all(a.subset_of(b) for a, b in zip(self, other))

    def __str__(self) -> str:
        return " x ".join(str(i) for i in self.intervals)


def check_aligned(size: int, family: Sequence, what: str = "Assessment") -> None:
    if size != len(family):
        raise AssessmentError(f"{what} has {size} entries for a family of {len(family)} conditional events")
