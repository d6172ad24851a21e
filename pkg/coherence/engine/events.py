"""
Propositional event algebra
Events, conditional events, possible worlds, constituents and the
Goodman-Nguyen inclusion test. Every semantic question is answered by
truth-table enumeration over the atoms involved.
"""

import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import config
from errors import EventAlgebraError

ATOM_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED_NAMES = {"TOP", "BOT"}


class Event:
    """Base class of the formula tree. Subclasses are frozen dataclasses."""

    def __and__(self, other: "Event") -> "Event":
        return And(self, other)

    def __or__(self, other: "Event") -> "Event":
        return Or(self, other)

    def __invert__(self) -> "Event":
        return Not(self)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atom(Event):
    name: str

    def __post_init__(self):
        if not ATOM_PATTERN.match(self.name or "") or self.name in RESERVED_NAMES:
            raise EventAlgebraError(f"Invalid atom name: {self.name!r}")


@dataclass(frozen=True)
class Constant(Event):
    value: bool


@dataclass(frozen=True)
class Not(Event):
    operand: Event


@dataclass(frozen=True)
class And(Event):
    left: Event
    right: Event


@dataclass(frozen=True)
class Or(Event):
    left: Event
    right: Event


TOP = Constant(True)
BOT = Constant(False)


@dataclass(frozen=True)
class World:
    """Total truth assignment; atoms are kept in lexicographic order."""

    atoms: Tuple[str, ...]
    values: Tuple[bool, ...]
    _lookup: Dict[str, bool] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(self.atoms) != len(self.values) or len(set(self.atoms)) != len(self.atoms):
            raise EventAlgebraError("World must assign every atom exactly once")
        object.__setattr__(self, "_lookup", dict(zip(self.atoms, self.values)))

    @classmethod
    def from_mapping(cls, assignment: Dict[str, bool]) -> "World":
        names = tuple(sorted(assignment))
        return cls(names, tuple(bool(assignment[name]) for name in names))

    def __getitem__(self, name: str) -> bool:
        return self._lookup[name]

    def __contains__(self, name: str) -> bool:
        return name in self._lookup

    def as_dict(self) -> Dict[str, bool]:
        return dict(self._lookup)

    def label(self) -> str:
        return "".join(name if value else f"!{name}" for name, value in zip(self.atoms, self.values))


@dataclass(frozen=True)
class ConditionalEvent:
    """E|H: true on EH, false on !EH, void when H is false."""

    consequent: Event
    antecedent: Event

    def __post_init__(self):
        if is_contradiction(self.antecedent):
            raise EventAlgebraError(
                f"Conditioning event of [{to_text(self.consequent)} : {to_text(self.antecedent)}] is impossible"
            )

    def atoms(self) -> FrozenSet[str]:
        return atoms_of(self.consequent) | atoms_of(self.antecedent)

    def __str__(self) -> str:
        return f"[{to_text(self.consequent)} : {to_text(self.antecedent)}]"


def atoms_of(event: Event) -> FrozenSet[str]:
    if isinstance(event, Atom):
        return frozenset([event.name])
    if isinstance(event, Constant):
        return frozenset()
    if isinstance(event, Not):
        return atoms_of(event.operand)
    if isinstance(event, (And, Or)):
        return atoms_of(event.left) | atoms_of(event.right)
    raise EventAlgebraError(f"Not an event: {event!r}")


def eval_event(event: Event, world: World) -> bool:
    """Evaluate ``event`` in ``world`` with the usual propositional semantics."""
    if isinstance(event, Atom):
        if event.name not in world:
            raise EventAlgebraError(f"Atom {event.name!r} is not assigned in the world")
        return world[event.name]
    if isinstance(event, Constant):
        return event.value
    if isinstance(event, Not):
        return not eval_event(event.operand, world)
    if isinstance(event, And):
        return eval_event(event.left, world) and eval_event(event.right, world)
    if isinstance(event, Or):
        return eval_event(event.left, world) or eval_event(event.right, world)
    raise EventAlgebraError(f"Not an event: {event!r}")


def negate(event: Event) -> Event:
    """Syntactic negation that strips an outer negation instead of stacking one."""
    if isinstance(event, Not):
        return event.operand
    if isinstance(event, Constant):
        return Constant(not event.value)
    return Not(event)


def conjoin(events: Iterable[Event]) -> Event:
    result: Event = None
    for event in events:
        result = event if result is None else And(result, event)
    return TOP if result is None else result


def disjoin(events: Iterable[Event]) -> Event:
    result: Event = None
    for event in events:
        result = event if result is None else Or(result, event)
    return BOT if result is None else result


def all_worlds(atom_names: Iterable[str]) -> List[World]:
    """Every world over the atoms, lexicographic by atom name with false < true."""
    names = tuple(sorted(set(atom_names)))
    cap = config.ENGINE_CONFIG["max_atoms"]
    if len(names) > cap:
        raise EventAlgebraError(f"{len(names)} atoms exceed the truth-table cap of {cap}")
    return [World(names, values) for values in itertools.product((False, True), repeat=len(names))]


def _truth_table(*events: Event) -> List[Tuple[bool, ...]]:
    names = frozenset().union(*(atoms_of(e) for e in events))
    return [tuple(eval_event(e, w) for e in events) for w in all_worlds(names)]


def is_contradiction(event: Event) -> bool:
    return not any(row[0] for row in _truth_table(event))


def implies(premise: Event, conclusion: Event) -> bool:
    """Semantic implication, decided over the atoms of both operands."""
    return all(not p or c for p, c in _truth_table(premise, conclusion))


def equivalent(left: Event, right: Event) -> bool:
    return all(a == b for a, b in _truth_table(left, right))


def same_conditional(first: ConditionalEvent, second: ConditionalEvent) -> bool:
    """True when both conditionals have the same three-valued truth table."""
    return equivalent(first.antecedent, second.antecedent) and equivalent(
        And(first.consequent, first.antecedent), And(second.consequent, second.antecedent)
    )


def family_atoms(family: Sequence[ConditionalEvent]) -> FrozenSet[str]:
    return frozenset().union(*(c.atoms() for c in family)) if family else frozenset()


def constituents(family: Sequence[ConditionalEvent]) -> List[World]:
    """Worlds over the family's atoms that make H0 = H1 v ... v Hn true."""
    if not family:
        raise EventAlgebraError("Constituents need a non-empty family")
    h0 = disjoin(c.antecedent for c in family)
    return [w for w in all_worlds(family_atoms(family)) if eval_event(h0, w)]


def gn_included(first: ConditionalEvent, second: ConditionalEvent) -> bool:
    """Goodman-Nguyen inclusion first <= second.

    Holds when first being true forces second true and second being false
    forces first false.
    """
    return implies(
        And(first.consequent, first.antecedent), And(second.consequent, second.antecedent)
    ) and implies(
        And(Not(second.consequent), second.antecedent), And(Not(first.consequent), first.antecedent)
    )


_PRECEDENCE = {Or: 1, And: 2, Not: 3}


def to_text(event: Event, parent: int = 0) -> str:
    """Render in the program grammar (`!`, `&`, `|`, `TOP`, `BOT`)."""
    if isinstance(event, Atom):
        return event.name
    if isinstance(event, Constant):
        return "TOP" if event.value else "BOT"
    level = _PRECEDENCE[type(event)]
    if isinstance(event, Not):
        text = "!" + to_text(event.operand, level)
    else:
        op = " & " if isinstance(event, And) else " | "
        # left-associative grammar: a right operand of equal precedence needs parentheses
        text = to_text(event.left, level) + op + to_text(event.right, level + 1)
    return f"({text})" if level < parent else text
