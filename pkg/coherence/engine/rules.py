"""
Certified inference rules and semantic pattern matching.

Rule templates are written over the metavariables A, B and C in canonical
form (each statement as "P(X|H) = 1" or "P(X|H) < 1"). Matching binds
metavariables to the events of a knowledge base and accepts a match only
when every instantiated pattern has the same truth table as the statement
it was matched against.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from engine.assessments import Interval
from engine.events import And, Atom, ConditionalEvent, Constant, Event, Not, Or, equivalent, negate, same_conditional
from engine.knowledge_base import KnowledgeBase, Statement, Strength
from engine.propagation import cm_bounds, wt_bounds

METAVARIABLES = ("A", "B", "C")
A, B, C = (Atom(name) for name in METAVARIABLES)

Binding = Dict[str, Event]
ClosedForm = Callable[[Tuple[Fraction, ...]], Interval]


@dataclass(frozen=True)
class Pattern:
    strength: Strength
    consequent: Event
    antecedent: Event


@dataclass(frozen=True)
class RuleTemplate:
    name: str
    premises: Tuple[Pattern, ...]
    conclusion: Pattern
    # canonical premise values -> interval claimed for the canonical conclusion
    closed_form: Optional[ClosedForm] = None


@dataclass(frozen=True)
class RuleMatch:
    rule: RuleTemplate
    binding: Tuple[Tuple[str, Event], ...]
    premise_indices: Tuple[int, ...]


def _sure(consequent: Event, antecedent: Event) -> Pattern:
    return Pattern(Strength.SURE, consequent, antecedent)


def _below(consequent: Event, antecedent: Event) -> Pattern:
    return Pattern(Strength.BELOW_ONE, consequent, antecedent)


def _complement(interval: Interval) -> Interval:
    return Interval(1 - interval.hi, 1 - interval.lo)


CERTIFIED_RULES: Tuple[RuleTemplate, ...] = (
    RuleTemplate(
        "Modus Barbara",
        (_sure(C, B), _sure(B, A), _below(Not(A), Or(A, B))),
        _sure(C, A),
        lambda v: wt_bounds(v[0], v[1], 1 - v[2]),
    ),
    RuleTemplate(
        "Modus Darii",
        (_sure(C, B), _below(Not(B), A), _below(Not(A), Or(A, B))),
        _below(Not(C), A),
        lambda v: _complement(wt_bounds(v[0], 1 - v[1], 1 - v[2])),
    ),
    RuleTemplate(
        "Modus Barbara (strong import)",
        (_sure(C, B), _sure(B, A), _below(Not(A), B)),
        _sure(C, A),
        lambda v: Interval.point(1),
    ),
    RuleTemplate(
        "Modus Darii (strong import)",
        (_sure(C, B), _below(Not(B), A), _below(Not(A), B)),
        _below(Not(C), A),
        lambda v: Interval(0, v[1]),
    ),
    RuleTemplate(
        "Cautious Monotonicity",
        (_sure(C, A), _sure(B, A)),
        _sure(C, And(A, B)),
        lambda v: cm_bounds(v[0], v[1]),
    ),
    RuleTemplate(
        "Rational Monotonicity",
        (_sure(C, A), _below(Not(B), A)),
        _sure(C, And(A, B)),
        lambda v: cm_bounds(v[0], 1 - v[1]),
    ),
)


def substitute(event: Event, binding: Binding) -> Event:
    if isinstance(event, Atom):
        return binding.get(event.name, event)
    if isinstance(event, Constant):
        return event
    if isinstance(event, Not):
        return Not(substitute(event.operand, binding))
    return type(event)(substitute(event.left, binding), substitute(event.right, binding))


def _metavariable(event: Event) -> Optional[str]:
    if isinstance(event, Atom) and event.name in METAVARIABLES:
        return event.name
    return None


def _same(left: Event, right: Event, context: Optional[Event]) -> bool:
    if context is None:
        return equivalent(left, right)
    return equivalent(And(left, context), And(right, context))


def _unify(pattern: Event, concrete: Event, context: Optional[Event], binding: Binding) -> Optional[Binding]:
    """Bind a bare (or negated) metavariable; compound patterns are left for the final check."""
    name = _metavariable(pattern)
    if name is not None:
        if name not in binding:
            return {**binding, name: concrete}
        return binding if _same(binding[name], concrete, context) else None
    if isinstance(pattern, Not) and _metavariable(pattern.operand) is not None:
        name = pattern.operand.name
        if name not in binding:
            return {**binding, name: negate(concrete)}
        return binding if _same(Not(binding[name]), concrete, context) else None
    return binding


def _unify_pattern(pattern: Pattern, strength: Strength, conditional: ConditionalEvent, binding: Binding):
    if pattern.strength is not strength:
        return None
    binding = _unify(pattern.antecedent, conditional.antecedent, None, binding)
    if binding is None:
        return None
    return _unify(pattern.consequent, conditional.consequent, conditional.antecedent, binding)


def instantiate(pattern: Pattern, binding: Binding) -> ConditionalEvent:
    return ConditionalEvent(substitute(pattern.consequent, binding), substitute(pattern.antecedent, binding))


def _exact(pattern: Pattern, strength: Strength, conditional: ConditionalEvent, binding: Binding) -> bool:
    try:
        return pattern.strength is strength and same_conditional(instantiate(pattern, binding), conditional)
    except ValueError:
        return False


def match_rule(rule: RuleTemplate, kb: KnowledgeBase, conclusion: Statement) -> Iterator[RuleMatch]:
    """Every assignment of the rule's premises to distinct statements of the knowledge base."""
    target_strength, target = conclusion.canonical()
    start = _unify_pattern(rule.conclusion, target_strength, target, {})
    if start is None:
        return
    canonical = [statement.canonical() for statement in kb]

    def search(position: int, binding: Binding, used: List[int]) -> Iterator[RuleMatch]:
        if position == len(rule.premises):
            if set(binding) != set(METAVARIABLES):
                return
            if not _exact(rule.conclusion, target_strength, target, binding):
                return
            if all(
                _exact(rule.premises[p], canonical[i][0], canonical[i][1], binding) for p, i in enumerate(used)
            ):
                yield RuleMatch(rule, tuple(sorted(binding.items())), tuple(used))
            return
        for index, (strength, conditional) in enumerate(canonical):
            if index in used:
                continue
            extended = _unify_pattern(rule.premises[position], strength, conditional, binding)
            if extended is not None:
                yield from search(position + 1, extended, used + [index])

    yield from search(0, start, [])


def matching_rules(
    kb: KnowledgeBase, conclusion: Statement, rules: Sequence[RuleTemplate] = CERTIFIED_RULES
) -> Iterator[RuleMatch]:
    for rule in rules:
        yield from match_rule(rule, kb, conclusion)
