"""
Seeded candidate generation for witnesses and counterexamples.

Candidates always respect open endpoints strictly, so anything that passes
exact verification is a genuine member of the box.
"""

import itertools
import math
import random
from fractions import Fraction
from typing import Iterator, Optional, Tuple

import config
from engine.assessments import Box, Interval

Point = Tuple[Fraction, ...]


def _inward(interval: Interval, from_low: bool, depth: int) -> Fraction:
    """Endpoint of the interval, moved inward by width / 2**depth when open."""
    if from_low:
        if not interval.lo_open:
            return interval.lo
        return interval.lo + interval.width / 2 ** depth
    if not interval.hi_open:
        return interval.hi
    return interval.hi - interval.width / 2 ** depth


class WitnessSearchService:
    def __init__(
        self,
        seed: Optional[int] = None,
        dyadic_depth: Optional[int] = None,
        sample_denominator: Optional[int] = None,
    ):
        self.seed = config.SEARCH_CONFIG["seed"] if seed is None else seed
        self.dyadic_depth = dyadic_depth or config.ENGINE_CONFIG["dyadic_depth"]
        self.sample_denominator = sample_denominator or config.SEARCH_CONFIG["sample_denominator"]

    def dyadic_points(self, box: Box) -> Iterator[Point]:
        """Closed lower ends, or open ends pushed inward by 1/2, 1/4, ... of the width."""
        seen = set()
        for depth in range(1, self.dyadic_depth + 1):
            point = tuple(_inward(interval, True, depth) for interval in box)
            if point not in seen:
                seen.add(point)
                yield point

    def corner_points(self, box: Box) -> Iterator[Point]:
        """Box corners, with open corners approached at dyadic offsets."""
        if len(box) > config.SEARCH_CONFIG["max_corner_family"]:
            return
        seen = set()
        for depth in range(1, self.dyadic_depth + 1):
            for sides in itertools.product((True, False), repeat=len(box)):
                point = tuple(
                    interval.lo if interval.is_point else _inward(interval, low, depth)
                    for interval, low in zip(box, sides)
                )
                if point not in seen:
                    seen.add(point)
                    yield point

    def shrunk_boxes(self, box: Box) -> Iterator[Box]:
        """Closed sub-boxes obtained by moving open endpoints inward."""
        if box.is_closed:
            return
        seen = set()
        for depth in range(1, self.dyadic_depth + 1):
            shrunk = Box(
                tuple(
                    Interval(_inward(i, True, depth), _inward(i, False, depth)) if not i.is_point else i
                    for i in box
                )
            )
            if shrunk not in seen:
                seen.add(shrunk)
                yield shrunk

    def random_points(self, box: Box) -> Iterator[Point]:
        """Endless seeded stream of rational points with the configured denominator."""
        rng = random.Random(self.seed)
        q = self.sample_denominator
        while True:
            point = []
            for interval in box:
                if interval.is_point:
                    point.append(interval.lo)
                    continue
                low = math.ceil(interval.lo * q)
                if interval.lo_open and Fraction(low, q) == interval.lo:
                    low += 1
                high = math.floor(interval.hi * q)
                if interval.hi_open and Fraction(high, q) == interval.hi:
                    high -= 1
                if low > high:
                    point.append((interval.lo + interval.hi) / 2)
                else:
                    point.append(Fraction(rng.randint(low, high), q))
            yield tuple(point)
