"""
Probability Propagation
Lower and upper bounds for a further conditional event given a closed box
on a family, the closed-form weak transitivity and cautious monotonicity
bounds, and extension sets of boxes with open endpoints.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import config
from engine.assessments import Box, Interval, PreciseAssessment, check_aligned
from engine.coherence import (
    ConstituentSystem,
    GStatus,
    TraceStep,
    ZeroLayerTrace,
    check_coherence,
    check_g_coherence_box,
    check_g_coherence_closed,
)
from engine.events import ConditionalEvent
from engine.exact_lp import Constraint, Relation, Sense, Status, feasible, lp_solve
from errors import AssessmentError
from logs import get_logger
from services.witness_search import WitnessSearchService

logger = get_logger("Propagation")

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class PropagationResult:
    interval: Interval
    trace: ZeroLayerTrace
    branches: Tuple[str, ...]


@dataclass(frozen=True)
class ExtensionPiece:
    interval: Interval
    lo_witness: Box
    hi_witness: Box


@dataclass(frozen=True)
class ExtensionSet:
    inner: Tuple[ExtensionPiece, ...]
    outer: Interval

    def inner_intervals(self) -> Tuple[Interval, ...]:
        return tuple(piece.interval for piece in self.inner)

    def inner_within_outer(self) -> bool:
        return all(piece.interval.subset_of(self.outer) for piece in self.inner)


def _bound(
    family: Sequence[ConditionalEvent],
    box: Box,
    target: ConditionalEvent,
    lower: bool,
    trace: ZeroLayerTrace,
) -> Tuple[Fraction, str]:
    phase = "lower" if lower else "upper"
    candidate = ZERO if lower else ONE
    target_index = len(family)
    active = list(range(len(family)))
    while True:
        system = ConstituentSystem([family[i] for i in active] + [target])
        t = len(active)
        premise_rows = system.box_constraints(box.subset(active))
        if lower:
            fixed = Constraint.of(system.eh[t], Relation.EQ)
        else:
            fixed = Constraint.of([e - h for e, h in zip(system.eh[t], system.h[t])], Relation.EQ)
        step_one = system.program(premise_rows + [fixed, system.normalization()])

        if not feasible(step_one).is_solved:
            trace.record(TraceStep(phase, tuple(active), False))
            normalized = Constraint.of(system.h[t], Relation.EQ, 1)
            result = lp_solve(
                system.program(premise_rows + [normalized], system.eh[t], Sense.MIN if lower else Sense.MAX)
            )
            if result.status is not Status.OPTIMAL:
                raise AssessmentError(f"Assessment on {[str(family[i]) for i in active]} is not g-coherent")
            logger.debug("%s bound %s from the normalized program", phase, result.value)
            return result.value, "step2"

        indices = active + [target_index]
        maxima = []
        for local, index in enumerate(indices):
            maxima.append((index, lp_solve(step_one.with_objective(system.h[local], Sense.MAX)).value))
        zero_layer = tuple(index for index, value in maxima if value == 0)
        restart = tuple(index for index in zero_layer if index != target_index)
        trace.record(TraceStep(phase, tuple(active), True, tuple(maxima), zero_layer, restart))

        if maxima[-1][1] > 0:
            return candidate, "case1"
        if not restart:
            return candidate, "case2"
        logger.debug("%s bound restarts on %s", phase, restart)
        active = list(restart)


def propagate(
    family: Sequence[ConditionalEvent],
    assessment: Union[Box, PreciseAssessment],
    target: ConditionalEvent,
) -> PropagationResult:
    """Interval [z', z''] of the g-coherent extensions to the target conditional."""
    box = assessment.as_box() if isinstance(assessment, PreciseAssessment) else assessment
    check_aligned(len(box), family, "Box")
    if not box.is_closed:
        raise AssessmentError("Propagation needs a closed box; use extension_set for open endpoints")
    if check_g_coherence_closed(box, family).status is not GStatus.GCOHERENT:
        raise AssessmentError(f"Assessment {box} is not g-coherent on the family")

    trace = ZeroLayerTrace()
    lo, lo_branch = _bound(family, box, target, True, trace)
    hi, hi_branch = _bound(family, box, target, False, trace)
    return PropagationResult(Interval(lo, hi), trace, (f"lower:{lo_branch}", f"upper:{hi_branch}"))


def _unit(name: str, value) -> Fraction:
    value = Fraction(value)
    if not ZERO <= value <= ONE:
        raise AssessmentError(f"{name} = {value} is outside [0, 1]")
    return value


def wt_bounds(x, y, t) -> Interval:
    """Weak transitivity: bounds on P(C|A) from P(C|B)=x, P(B|A)=y, P(A|A v B)=t."""
    x, y, t = _unit("x", x), _unit("y", y), _unit("t", t)
    if t == 0:
        return Interval.unit()
    lo = max(ZERO, x * y - (1 - t) * (1 - x) / t)
    hi = min(ONE, (1 - x) * (1 - y) + x / t)
    return Interval(lo, hi)


def cm_bounds(x, y) -> Interval:
    """Cautious monotonicity: bounds on P(C|AB) from P(C|A)=x, P(B|A)=y."""
    x, y = _unit("x", x), _unit("y", y)
    lo = (x + y - 1) / y if x + y > 1 else ZERO
    hi = x / y if x < y else ONE
    return Interval(lo, hi)


def _coalesce(pieces: List[ExtensionPiece]) -> Tuple[ExtensionPiece, ...]:
    merged: List[ExtensionPiece] = []
    for piece in sorted(pieces, key=lambda p: (p.interval.lo, -p.interval.hi)):
        if merged and piece.interval.lo <= merged[-1].interval.hi:
            last = merged[-1]
            if piece.interval.hi > last.interval.hi:
                merged[-1] = ExtensionPiece(
                    Interval(last.interval.lo, piece.interval.hi), last.lo_witness, piece.hi_witness
                )
            continue
        merged.append(piece)
    return tuple(merged)


def extension_set(
    box: Box,
    family: Sequence[ConditionalEvent],
    target: ConditionalEvent,
    budget: Optional[int] = None,
    search: Optional[WitnessSearchService] = None,
) -> ExtensionSet:
    """Witnessed inner union of extension intervals plus the closed-hull envelope."""
    budget = config.SEARCH_CONFIG["budget"] if budget is None else budget
    search = search or WitnessSearchService()
    gcoherence = check_g_coherence_box(box, family, budget, search)
    if gcoherence.status is not GStatus.GCOHERENT:
        raise AssessmentError(f"Box {box} is not witnessed g-coherent ({gcoherence.status.value})")

    outer = propagate(family, box.closure(), target).interval

    candidates = itertools.chain(
        [gcoherence.witness.as_box()],
        (PreciseAssessment(p).as_box() for p in search.dyadic_points(box)),
        search.shrunk_boxes(box),
        (PreciseAssessment(p).as_box() for p in search.random_points(box)),
    )
    limit = max(1, min(budget, config.SEARCH_CONFIG["extension_samples"]))
    pieces: List[ExtensionPiece] = []
    seen = set()
    for candidate in itertools.islice(candidates, limit):
        if candidate in seen:
            continue
        seen.add(candidate)
        if all(i.is_point for i in candidate):
            if not check_coherence(PreciseAssessment(tuple(i.lo for i in candidate)), family):
                continue
        elif check_g_coherence_closed(candidate, family).status is not GStatus.GCOHERENT:
            continue
        interval = propagate(family, candidate, target).interval
        pieces.append(ExtensionPiece(interval, candidate, candidate))

    inner = _coalesce(pieces)
    logger.debug("Extension set of %s: %d pieces inside %s", target, len(inner), outer)
    return ExtensionSet(inner, outer)
