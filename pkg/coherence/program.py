"""
Knowledge-base programs: parsing, formatting and batch execution.

    # comment
    default: H ~> E
    negdefault: H ~> E
    query: pconsistent
    query: entails H ~> E
    query: notentails H ~> E
    query: bounds [E : H] from [E1 : H1]=4/5, [E2 : H2] in [1/2, 1]
    query: extension [E : H]
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import config
from engine.assessments import Box, Interval, fraction_text
from engine.entailment import p_consistent, p_entails
from engine.event_parser import TokenStream, tokenize
from engine.events import ConditionalEvent, negate, to_text
from engine.knowledge_base import KnowledgeBase, Statement, StatementKind, kb_to_assessment
from engine.propagation import extension_set, propagate
from errors import CoherenceError, EventAlgebraError, KnowledgeBaseError, ProgramSyntaxError
from logs import get_logger
from report import (
    ProgramReport,
    QueryReport,
    certificate_payload,
    counterexample_payload,
    fraction_list,
    interval_payload,
    piece_payload,
    trace_payload,
)
from services.certificate_service import CertificateService
from services.witness_search import WitnessSearchService

logger = get_logger("Program")


class QueryKind(str, Enum):
    PCONSISTENT = "pconsistent"
    ENTAILS = "entails"
    BOUNDS = "bounds"
    EXTENSION = "extension"


@dataclass(frozen=True)
class Query:
    kind: QueryKind
    statement: Optional[Statement] = None
    target: Optional[ConditionalEvent] = None
    premises: Tuple[Tuple[ConditionalEvent, Interval], ...] = ()
    line: int = 0

    def __str__(self) -> str:
        return format_query(self)


@dataclass(frozen=True)
class Program:
    statements: Tuple[Statement, ...]
    queries: Tuple[Query, ...]

    def __post_init__(self):
        if not self.queries:
            raise ProgramSyntaxError("Program has no query", 1, 1)

    @property
    def knowledge_base(self) -> KnowledgeBase:
        if not self.statements:
            raise KnowledgeBaseError("Program declares no default or negated default")
        return KnowledgeBase(self.statements)


@dataclass(frozen=True)
class RunOptions:
    seed: int = field(default_factory=lambda: config.SEARCH_CONFIG["seed"])
    budget: int = field(default_factory=lambda: config.SEARCH_CONFIG["budget"])
    grid: int = field(default_factory=lambda: config.CERTIFICATE_CONFIG["grid"])
    trace: bool = False


# Parsing


def _statement_body(stream: TokenStream, kind: StatementKind) -> Statement:
    start = stream.peek()
    antecedent = stream.event()
    stream.expect("ARROW")
    consequent = stream.event()
    try:
        return Statement(kind, antecedent, consequent)
    except EventAlgebraError as exc:
        raise stream.error(str(exc), start) from exc


def _unit_value(stream: TokenStream):
    token = stream.peek()
    value = stream.number()
    if not 0 <= value <= 1:
        raise stream.error(f"Value {token.text} is outside [0, 1]", token)
    return value


def _premise(stream: TokenStream) -> Tuple[ConditionalEvent, Interval]:
    conditional = stream.conditional()
    if stream.accept("EQUALS"):
        return conditional, Interval.point(_unit_value(stream))
    stream.expect("NAME", "in")
    opening = stream.expect("LBRACK")
    lo = _unit_value(stream)
    stream.expect("COMMA")
    hi = _unit_value(stream)
    stream.expect("RBRACK")
    if lo > hi:
        raise stream.error("Interval lower end exceeds its upper end", opening)
    return conditional, Interval(lo, hi)


def _query(stream: TokenStream, line: int) -> Query:
    keyword = stream.expect("NAME")
    if keyword.text == "pconsistent":
        return Query(QueryKind.PCONSISTENT, line=line)
    if keyword.text in ("entails", "notentails"):
        kind = StatementKind.DEFAULT if keyword.text == "entails" else StatementKind.NEGATED_DEFAULT
        return Query(QueryKind.ENTAILS, statement=_statement_body(stream, kind), line=line)
    if keyword.text == "bounds":
        target = stream.conditional()
        stream.expect("NAME", "from")
        premises = [_premise(stream)]
        while stream.accept("COMMA"):
            premises.append(_premise(stream))
        return Query(QueryKind.BOUNDS, target=target, premises=tuple(premises), line=line)
    if keyword.text == "extension":
        return Query(QueryKind.EXTENSION, target=stream.conditional(), line=line)
    raise stream.error(f"Unknown query {keyword.text!r}", keyword)


def _parse_line(stream: TokenStream, line: int, statements: List[Statement], queries: List[Query]) -> None:
    keyword = stream.expect("NAME")
    stream.expect("COLON")
    if keyword.text == "default":
        statements.append(_statement_body(stream, StatementKind.DEFAULT))
    elif keyword.text == "negdefault":
        statements.append(_statement_body(stream, StatementKind.NEGATED_DEFAULT))
    elif keyword.text == "query":
        queries.append(_query(stream, line))
    else:
        raise stream.error(f"Unknown keyword {keyword.text!r}", keyword)
    stream.expect_end()


def parse_program(text: str) -> Program:
    statements: List[Statement] = []
    queries: List[Query] = []
    line_number = 0
    for line_number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = tokenize(content, line_number)
        if not tokens:
            continue
        stream = TokenStream(tokens, line_number, len(content.rstrip()) + 1)
        try:
            _parse_line(stream, line_number, statements, queries)
        except RecursionError:
            raise ProgramSyntaxError("Expression is nested too deeply", line_number, tokens[0].column) from None
    if not queries:
        raise ProgramSyntaxError("Program has no query", line_number + 1, 1)
    return Program(tuple(statements), tuple(queries))


# Formatting


def format_statement(statement: Statement) -> str:
    antecedent = to_text(statement.antecedent)
    if statement.kind is StatementKind.DEFAULT:
        return f"default: {antecedent} ~> {to_text(statement.consequent)}"
    if statement.kind is StatementKind.NEG_CONSEQUENT_DEFAULT:
        return f"default: {antecedent} ~> {to_text(negate(statement.consequent))}"
    if statement.kind is StatementKind.NEGATED_DEFAULT:
        return f"negdefault: {antecedent} ~> {to_text(statement.consequent)}"
    return f"negdefault: {antecedent} ~> {to_text(negate(statement.consequent))}"


def _format_premise(conditional: ConditionalEvent, interval: Interval) -> str:
    if interval.is_point:
        return f"{conditional}={fraction_text(interval.lo)}"
    return f"{conditional} in {interval}"


def format_query(query: Query) -> str:
    if query.kind is QueryKind.PCONSISTENT:
        return "query: pconsistent"
    if query.kind is QueryKind.ENTAILS:
        keyword = "entails" if query.statement.kind is StatementKind.DEFAULT else "notentails"
        body = format_statement(query.statement).split(": ", 1)[1]
        return f"query: {keyword} {body}"
    if query.kind is QueryKind.BOUNDS:
        premises = ", ".join(_format_premise(c, i) for c, i in query.premises)
        return f"query: bounds {query.target} from {premises}"
    return f"query: extension {query.target}"


def format_program(program: Program) -> str:
    lines = [format_statement(s) for s in program.statements]
    lines.extend(format_query(q) for q in program.queries)
    return "\n".join(lines) + "\n"


# Execution


def _run_query(
    program: Program, query: Query, options: RunOptions, certificates: CertificateService, index: int
) -> QueryReport:
    report = QueryReport(index=index, line=query.line, query=format_query(query))
    search = WitnessSearchService(seed=options.seed)

    if query.kind is QueryKind.PCONSISTENT:
        verdict = p_consistent(program.knowledge_base, options.budget, search)
        report.status = verdict.status.value
        report.witness = fraction_list(verdict.witness)
        report.message = verdict.message or None

    elif query.kind is QueryKind.ENTAILS:
        verdict = p_entails(program.knowledge_base, query.statement, options.budget, search, certificates)
        report.status = verdict.status.value
        report.certificate = certificate_payload(verdict.certificate)
        report.witness = fraction_list(verdict.witness)
        report.counterexample = counterexample_payload(verdict.counterexample)
        report.message = verdict.message or None

    elif query.kind is QueryKind.BOUNDS:
        family = [c for c, _ in query.premises]
        result = propagate(family, Box(tuple(i for _, i in query.premises)), query.target)
        report.z_lo = interval_payload(result.interval).lo
        report.z_hi = interval_payload(result.interval).hi
        report.branch = list(result.branches)
        if options.trace:
            report.trace = trace_payload(result.trace)

    else:
        family, box = kb_to_assessment(program.knowledge_base)
        extension = extension_set(box, family, query.target, options.budget, search)
        report.inner = [piece_payload(piece) for piece in extension.inner]
        report.outer = interval_payload(extension.outer)
    return report


def run_program(program: Program, options: Optional[RunOptions] = None) -> ProgramReport:
    options = options or RunOptions()
    certificates = CertificateService(grid=options.grid)
    results = []
    for index, query in enumerate(program.queries):
        try:
            results.append(_run_query(program, query, options, certificates, index))
        except CoherenceError as exc:
            logger.warning("Query on line %d failed: %s", query.line, exc)
            results.append(
                QueryReport(index=index, line=query.line, query=format_query(query), success=False, error=str(exc))
            )
    return ProgramReport(seed=options.seed, budget=options.budget, grid=options.grid, results=results)
