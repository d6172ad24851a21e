"""
Report models. Exact rationals always serialize as "p/q" strings.
"""

from typing import List, Optional

from pydantic import BaseModel

from engine.assessments import Box, Interval, PreciseAssessment, fraction_text


class IntervalPayload(BaseModel):
    lo: str
    hi: str
    lo_open: bool = False
    hi_open: bool = False
    text: str


class MaximumPayload(BaseModel):
    index: int
    value: str


class TraceStepPayload(BaseModel):
    phase: str
    active: List[int]
    feasible: bool
    maxima: List[MaximumPayload] = []
    zero_layer: List[int] = []
    restart: List[int] = []


class CertificatePayload(BaseModel):
    rule: str
    premises: List[int]
    detail: str = ""


class CounterexamplePayload(BaseModel):
    point: List[str]
    z: str


class PiecePayload(BaseModel):
    interval: IntervalPayload
    lo_witness: List[IntervalPayload]
    hi_witness: List[IntervalPayload]


class QueryReport(BaseModel):
    index: int
    line: int
    query: str
    success: bool = True
    error: Optional[str] = None
    status: Optional[str] = None
    message: Optional[str] = None
    certificate: Optional[CertificatePayload] = None
    witness: Optional[List[str]] = None
    counterexample: Optional[CounterexamplePayload] = None
    z_lo: Optional[str] = None
    z_hi: Optional[str] = None
    branch: Optional[List[str]] = None
    inner: Optional[List[PiecePayload]] = None
    outer: Optional[IntervalPayload] = None
    trace: Optional[List[TraceStepPayload]] = None


class ProgramReport(BaseModel):
    seed: int
    budget: int
    grid: int
    results: List[QueryReport]

    @property
    def exit_code(self) -> int:
        return 0 if all(result.success for result in self.results) else 1

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def fraction_list(assessment: Optional[PreciseAssessment]) -> Optional[List[str]]:
    if assessment is None:
        return None
    return [fraction_text(v) for v in assessment]


def interval_payload(interval: Interval) -> IntervalPayload:
    return IntervalPayload(
        lo=fraction_text(interval.lo),
        hi=fraction_text(interval.hi),
        lo_open=interval.lo_open,
        hi_open=interval.hi_open,
        text=str(interval),
    )


def box_payload(box: Box) -> List[IntervalPayload]:
    return [interval_payload(i) for i in box]


def piece_payload(piece) -> PiecePayload:
    return PiecePayload(
        interval=interval_payload(piece.interval),
        lo_witness=box_payload(piece.lo_witness),
        hi_witness=box_payload(piece.hi_witness),
    )


def certificate_payload(certificate) -> Optional[CertificatePayload]:
    if certificate is None:
        return None
    return CertificatePayload(rule=certificate.rule, premises=list(certificate.premises), detail=certificate.detail)


def counterexample_payload(counterexample) -> Optional[CounterexamplePayload]:
    if counterexample is None:
        return None
    return CounterexamplePayload(point=fraction_list(counterexample.point), z=fraction_text(counterexample.z))


def trace_payload(trace) -> List[TraceStepPayload]:
    return [
        TraceStepPayload(
            phase=step.phase,
            active=list(step.active),
            feasible=step.feasible,
            maxima=[MaximumPayload(index=i, value=fraction_text(v)) for i, v in step.maxima],
            zero_layer=list(step.zero_layer),
            restart=list(step.restart),
        )
        for step in trace.steps
    ]


def render_text(report: ProgramReport) -> str:
    """Human-readable report, one block per query."""
    blocks = []
    for result in report.results:
        lines = [f"[{result.index}] line {result.line}: {result.query}"]
        if not result.success:
            lines.append(f"  error: {result.error}")
            blocks.append("\n".join(lines))
            continue
        if result.status:
            lines.append(f"  status: {result.status}")
        if result.certificate:
            detail = f" ({result.certificate.detail})" if result.certificate.detail else ""
            premises = ", ".join(str(i) for i in result.certificate.premises)
            lines.append(f"  certificate: {result.certificate.rule} on statements {premises}{detail}")
        if result.counterexample:
            point = ", ".join(result.counterexample.point)
            lines.append(f"  counterexample: P = ({point}), z = {result.counterexample.z}")
        elif result.witness:
            lines.append(f"  witness: ({', '.join(result.witness)})")
        if result.z_lo is not None:
            lines.append(f"  interval: [{result.z_lo}, {result.z_hi}]  ({', '.join(result.branch or [])})")
        if result.outer is not None:
            inner = " u ".join(piece.interval.text for piece in result.inner or []) or "(none)"
            lines.append(f"  inner: {inner}")
            lines.append(f"  outer: {result.outer.text}")
        if result.message:
            lines.append(f"  note: {result.message}")
        if result.trace:
            for step in result.trace:
                maxima = ", ".join(f"M{m.index}={m.value}" for m in step.maxima)
                lines.append(
                    f"  trace {step.phase}: active {step.active} feasible={step.feasible} {maxima} "
                    f"zero layer {step.zero_layer}"
                )
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
