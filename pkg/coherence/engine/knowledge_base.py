"""
Knowledge Bases
Defaults and negated defaults with their probabilistic reading:

    DEFAULT                 H ~> E      P(E|H) = 1
    NEG_CONSEQUENT_DEFAULT  H ~> !E     P(E|H) = 0
    NEGATED_DEFAULT         H ~/> E     P(E|H) in [0,1[
    NEGATED_NEG_DEFAULT     H ~/> !E    P(E|H) in ]0,1]

For the last two kinds the stored consequent is the event written in the
statement's family slot (E), so NEGATED_NEG_DEFAULT on E reads "H does not
normally imply !E".
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Tuple

from engine.assessments import Box, Interval
from engine.events import ConditionalEvent, Event, Not, negate, same_conditional, to_text
from errors import KnowledgeBaseError


class StatementKind(str, Enum):
    DEFAULT = "default"
    NEG_CONSEQUENT_DEFAULT = "neg_consequent_default"
    NEGATED_DEFAULT = "negated_default"
    NEGATED_NEG_DEFAULT = "negated_neg_default"


KIND_INTERVALS = {
    StatementKind.DEFAULT: Interval.point(1),
    StatementKind.NEG_CONSEQUENT_DEFAULT: Interval.point(0),
    StatementKind.NEGATED_DEFAULT: Interval(0, 1, hi_open=True),
    StatementKind.NEGATED_NEG_DEFAULT: Interval(0, 1, lo_open=True),
}


class Strength(str, Enum):
    """Canonical reading: a conditional forced to 1, or kept below 1."""

    SURE = "sure"
    BELOW_ONE = "below_one"


@dataclass(frozen=True)
class Statement:
    kind: StatementKind
    antecedent: Event
    consequent: Event

    def __post_init__(self):
        object.__setattr__(self, "kind", StatementKind(self.kind))
        # raises on an impossible antecedent
        object.__setattr__(self, "_conditional", ConditionalEvent(self.consequent, self.antecedent))

    @classmethod
    def default(cls, antecedent: Event, consequent: Event) -> "Statement":
        return cls(StatementKind.DEFAULT, antecedent, consequent)

    @classmethod
    def negated(cls, antecedent: Event, consequent: Event) -> "Statement":
        return cls(StatementKind.NEGATED_DEFAULT, antecedent, consequent)

    @property
    def conditional(self) -> ConditionalEvent:
        return self._conditional

    @property
    def interval(self) -> Interval:
        return KIND_INTERVALS[self.kind]

    @property
    def is_default(self) -> bool:
        return self.kind in (StatementKind.DEFAULT, StatementKind.NEG_CONSEQUENT_DEFAULT)

    def canonical(self) -> Tuple[Strength, ConditionalEvent]:
        """Every kind as either P(X|H) = 1 or P(X|H) < 1."""
        if self.kind is StatementKind.DEFAULT:
            return Strength.SURE, self.conditional
        if self.kind is StatementKind.NEGATED_DEFAULT:
            return Strength.BELOW_ONE, self.conditional
        flipped = ConditionalEvent(negate(self.consequent), self.antecedent)
        if self.kind is StatementKind.NEG_CONSEQUENT_DEFAULT:
            return Strength.SURE, flipped
        return Strength.BELOW_ONE, flipped

    def equivalent_to(self, other: "Statement") -> bool:
        mine, theirs = self.canonical(), other.canonical()
        return mine[0] is theirs[0] and same_conditional(mine[1], theirs[1])

    def __str__(self) -> str:
        strength, conditional = self.canonical()
        arrow = "~>" if strength is Strength.SURE else "~/>"
        return f"{to_text(conditional.antecedent)} {arrow} {to_text(conditional.consequent)}"


@dataclass(frozen=True)
class KnowledgeBase:
    statements: Tuple[Statement, ...]

    def __post_init__(self):
        statements = tuple(self.statements)
        if not statements:
            raise KnowledgeBaseError("A knowledge base needs at least one statement")
        object.__setattr__(self, "statements", statements)

    @classmethod
    def of(cls, *statements: Statement) -> "KnowledgeBase":
        return cls(tuple(statements))

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self):
        return iter(self.statements)

    def __getitem__(self, index) -> Statement:
        return self.statements[index]

    def extended(self, *statements: Statement) -> "KnowledgeBase":
        return KnowledgeBase(self.statements + tuple(statements))


def kb_to_assessment(kb: KnowledgeBase) -> Tuple[List[ConditionalEvent], Box]:
    """The family of the statements' conditionals and the aligned box of their intervals."""
    family = [statement.conditional for statement in kb]
    return family, Box(tuple(statement.interval for statement in kb))


_CONJUGATE = {
    StatementKind.NEGATED_DEFAULT: StatementKind.NEGATED_NEG_DEFAULT,
    StatementKind.NEGATED_NEG_DEFAULT: StatementKind.NEGATED_DEFAULT,
}


def conjugate(kb: KnowledgeBase) -> KnowledgeBase:
    """Rewrite every negated default on E|H as the conjugate one on !E|H.

    A negated default gains an outer negation and a conjugate one loses it,
    so conjugating twice gives back the knowledge base it started from.
    A conjugate statement written on a non-negated event comes back
    negated twice, equivalent to the original statement.
    """
    statements = []
    for statement in kb:
        kind = _CONJUGATE.get(statement.kind)
        if kind is None:
            statements.append(statement)
        elif statement.kind is StatementKind.NEGATED_DEFAULT:
            statements.append(Statement(kind, statement.antecedent, Not(statement.consequent)))
        else:
            statements.append(Statement(kind, statement.antecedent, negate(statement.consequent)))
    return KnowledgeBase(tuple(statements))


def sub_knowledge_base(kb: KnowledgeBase, indices: Iterable[int]) -> KnowledgeBase:
    chosen = sorted(set(indices))
    if not chosen:
        raise KnowledgeBaseError("A sub-sequence needs at least one statement")
    if chosen[0] < 0 or chosen[-1] >= len(kb):
        raise KnowledgeBaseError(f"Statement indices {chosen} out of range for {len(kb)} statements")
    return KnowledgeBase(tuple(kb[i] for i in chosen))


def conclusion_violated(strength: Strength, interval: Interval) -> Tuple[bool, Fraction]:
    """Whether an extension interval admits a value refuting the conclusion, and that value."""
    if strength is Strength.SURE:
        return interval.lo < 1, interval.lo
    return interval.hi == 1, interval.hi


def conclusion_satisfied(strength: Strength, interval: Interval) -> bool:
    return not conclusion_violated(strength, interval)[0]
