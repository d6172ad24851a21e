"""
Coherence Checking
Precise coherence, g-coherence of interval boxes and total coherence of the
unit box, all decided through the zero-layer recursion over constituent
mass systems.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import config
from engine.assessments import Box, Interval, PreciseAssessment, check_aligned
from engine.events import ConditionalEvent, World, constituents, eval_event
from engine.exact_lp import Constraint, LinearProgram, Relation, Sense, feasible, lp_solve
from errors import AssessmentError
from logs import get_logger
from services.witness_search import WitnessSearchService

logger = get_logger("Coherence")

ZERO = Fraction(0)
ONE = Fraction(1)


class GStatus(str, Enum):
    GCOHERENT = "GCOHERENT"
    NOT_GCOHERENT = "NOT_GCOHERENT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class TraceStep:
    phase: str
    active: Tuple[int, ...]
    feasible: bool
    maxima: Tuple[Tuple[int, Fraction], ...] = ()
    zero_layer: Tuple[int, ...] = ()
    restart: Tuple[int, ...] = ()


@dataclass
class ZeroLayerTrace:
    steps: List[TraceStep] = field(default_factory=list)

    def record(self, step: TraceStep) -> None:
        self.steps.append(step)

    def extend(self, other: "ZeroLayerTrace") -> None:
        self.steps.extend(other.steps)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class CoherenceCheck:
    coherent: bool
    trace: ZeroLayerTrace

    def __bool__(self) -> bool:
        return self.coherent


@dataclass(frozen=True)
class GCoherenceResult:
    status: GStatus
    witness: Optional[PreciseAssessment]
    trace: ZeroLayerTrace


@dataclass(frozen=True)
class EndpointReport:
    index: int
    lo_attained: bool
    hi_attained: bool


class ConstituentSystem:
    """Incidence vectors of a family over its constituents (worlds inside H0)."""

    def __init__(self, family: Sequence[ConditionalEvent]):
        self.family = tuple(family)
        self.worlds: List[World] = constituents(self.family)
        self.h = [self._row(c.antecedent) for c in self.family]
        self.eh = [self._row(c.consequent & c.antecedent) for c in self.family]
        self.variables = tuple(w.label() for w in self.worlds)

    def _row(self, event) -> Tuple[Fraction, ...]:
        return tuple(ONE if eval_event(event, w) else ZERO for w in self.worlds)

    @property
    def width(self) -> int:
        return len(self.worlds)

    def normalization(self) -> Constraint:
        return Constraint.of([ONE] * self.width, Relation.EQ, 1)

    def ratio_constraints(self, index: int, interval: Interval) -> List[Constraint]:
        """lo * mass(H) <= mass(EH) <= hi * mass(H), as an equality for points."""
        h, eh = self.h[index], self.eh[index]
        if interval.is_point:
            return [Constraint.of([e - interval.lo * m for e, m in zip(eh, h)], Relation.EQ)]
        rows = []
        if interval.lo > 0:
            rows.append(Constraint.of([e - interval.lo * m for e, m in zip(eh, h)], Relation.GE))
        if interval.hi < 1:
            rows.append(Constraint.of([e - interval.hi * m for e, m in zip(eh, h)], Relation.LE))
        return rows

    def box_constraints(self, box: Box) -> List[Constraint]:
        rows: List[Constraint] = []
        for index, interval in enumerate(box):
            rows.extend(self.ratio_constraints(index, interval))
        return rows

    def program(self, constraints: Sequence[Constraint], objective=(), sense: Sense = Sense.MIN) -> LinearProgram:
        return LinearProgram(self.variables, tuple(constraints), tuple(objective), sense)

    @staticmethod
    def mass(row: Sequence[Fraction], masses: Sequence[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(row, masses)), ZERO)


def _average(vectors: Sequence[Sequence[Fraction]]) -> Tuple[Fraction, ...]:
    count = len(vectors)
    return tuple(sum(column, ZERO) / count for column in zip(*vectors))


def _solve_layers(
    family: Sequence[ConditionalEvent], box: Box, trace: ZeroLayerTrace, phase: str
) -> Optional[Dict[int, Fraction]]:
    """Zero-layer recursion on the closed box.

    Returns None when some layer is unsolvable, otherwise one precise value
    per index, read off the averaged maximizers of the layer that first gave
    the index positive conditioning mass.
    """
    active = list(range(len(family)))
    values: Dict[int, Fraction] = {}
    while True:
        system = ConstituentSystem([family[i] for i in active])
        constraints = system.box_constraints(box.subset(active)) + [system.normalization()]
        base = system.program(constraints)
        if not feasible(base).is_solved:
            trace.record(TraceStep(phase, tuple(active), False))
            logger.debug("%s: layer %s unsolvable", phase, active)
            return None

        maxima: List[Tuple[int, Fraction]] = []
        maximizers = []
        for local, index in enumerate(active):
            result = lp_solve(base.with_objective(system.h[local], Sense.MAX))
            maxima.append((index, result.value))
            if result.value > 0:
                maximizers.append(result.witness)
        zero_layer = tuple(index for index, value in maxima if value == 0)
        trace.record(TraceStep(phase, tuple(active), True, tuple(maxima), zero_layer, zero_layer))
        logger.debug("%s: layer %s maxima %s zero layer %s", phase, active, maxima, zero_layer)

        centre = _average(maximizers)
        for local, (index, value) in enumerate(maxima):
            if value > 0:
                values[index] = system.mass(system.eh[local], centre) / system.mass(system.h[local], centre)
        if not zero_layer:
            return values
        active = list(zero_layer)


def _require_family(family: Sequence[ConditionalEvent]) -> None:
    if not family:
        raise AssessmentError("Coherence needs a non-empty family")


def check_coherence(assessment: PreciseAssessment, family: Sequence[ConditionalEvent]) -> CoherenceCheck:
    """Decide coherence of a precise assessment on the family."""
    _require_family(family)
    check_aligned(len(assessment), family)
    trace = ZeroLayerTrace()
    values = _solve_layers(family, assessment.as_box(), trace, "coherence")
    return CoherenceCheck(values is not None, trace)


def check_g_coherence_closed(box: Box, family: Sequence[ConditionalEvent]) -> GCoherenceResult:
    """Exact g-coherence test for a closed box, with an extracted witness."""
    _require_family(family)
    check_aligned(len(box), family, "Box")
    if not box.is_closed:
        raise AssessmentError("Closed g-coherence test needs a box without open endpoints")
    trace = ZeroLayerTrace()
    values = _solve_layers(family, box, trace, "g-coherence")
    if values is None:
        return GCoherenceResult(GStatus.NOT_GCOHERENT, None, trace)
    witness = PreciseAssessment(tuple(values[i] for i in range(len(family))))
    if not box.contains(witness.values) or not check_coherence(witness, family):
        logger.warning("Extracted witness %s failed re-verification", witness)
        return GCoherenceResult(GStatus.UNKNOWN, None, trace)
    return GCoherenceResult(GStatus.GCOHERENT, witness, trace)


def _candidates(box: Box, search: WitnessSearchService) -> Iterator[Tuple[str, object]]:
    for point in search.dyadic_points(box):
        yield "point", point
    for shrunk in search.shrunk_boxes(box):
        yield "box", shrunk
    for point in search.random_points(box):
        yield "point", point


def check_g_coherence_box(
    box: Box,
    family: Sequence[ConditionalEvent],
    budget: Optional[int] = None,
    search: Optional[WitnessSearchService] = None,
) -> GCoherenceResult:
    """g-coherence of a box whose endpoints may be open.

    NOT_GCOHERENT comes only from refuting the closure. Membership is shown
    by an explicit witness inside the box that passes check_coherence.
    """
    budget = config.SEARCH_CONFIG["budget"] if budget is None else budget
    search = search or WitnessSearchService()
    relaxed = check_g_coherence_closed(box.closure(), family)
    if relaxed.status is GStatus.NOT_GCOHERENT:
        return relaxed

    if box.is_closed and relaxed.status is GStatus.GCOHERENT:
        return relaxed

    trace = relaxed.trace
    for kind, candidate in itertools.islice(_candidates(box, search), budget):
        if kind == "point":
            point = PreciseAssessment(candidate)
            if check_coherence(point, family):
                return GCoherenceResult(GStatus.GCOHERENT, point, trace)
        else:
            shrunk = check_g_coherence_closed(candidate, family)
            if shrunk.status is GStatus.GCOHERENT:
                return GCoherenceResult(GStatus.GCOHERENT, shrunk.witness, trace)
    logger.info("No witness inside %s within a budget of %d candidates", box, budget)
    return GCoherenceResult(GStatus.UNKNOWN, None, trace)


def total_coherence_unit_box(family: Sequence[ConditionalEvent]) -> bool:
    """Every vertex of the unit cube is coherent, which makes [0,1]^n totally coherent."""
    _require_family(family)
    cap = config.ENGINE_CONFIG["max_total_coherence_family"]
    if len(family) > cap:
        raise AssessmentError(f"Vertex check limited to {cap} conditional events, got {len(family)}")
    for vertex in itertools.product((ZERO, ONE), repeat=len(family)):
        if not check_coherence(PreciseAssessment(vertex), family):
            logger.debug("Vertex %s is not coherent", vertex)
            return False
    return True


def check_coherent_box(box: Box, family: Sequence[ConditionalEvent]) -> Tuple[EndpointReport, ...]:
    """For each coordinate, whether each endpoint is taken by a coherent point of the box."""
    _require_family(family)
    check_aligned(len(box), family, "Box")
    if not box.is_closed:
        raise AssessmentError("Endpoint projections are only checked on closed boxes")
    reports = []
    for index, interval in enumerate(box):
        attained = [
            check_g_coherence_closed(box.replace(index, Interval.point(end)), family).status is GStatus.GCOHERENT
            for end in (interval.lo, interval.hi)
        ]
        reports.append(EndpointReport(index, attained[0], attained[1]))
    return tuple(reports)
