import itertools
import sys
import unittest
from fractions import Fraction as F
from pathlib import Path
from unittest.mock import patch


SERVICE_DIR = Path(__file__).resolve().parents[1]
if str(SERVICE_DIR) not in sys.path:
    sys.path.append(str(SERVICE_DIR))

import config  # noqa: E402
from engine.assessments import PreciseAssessment  # noqa: E402
from engine.coherence import check_coherence  # noqa: E402
from engine.event_parser import parse_conditional, parse_event, parse_number  # noqa: E402
from engine.events import (  # noqa: E402
    BOT,
    TOP,
    And,
    Atom,
    ConditionalEvent,
    Not,
    Or,
    World,
    all_worlds,
    constituents,
    disjoin,
    equivalent,
    eval_event,
    family_atoms,
    gn_included,
    implies,
    is_contradiction,
    negate,
    same_conditional,
    to_text,
)
from errors import EventAlgebraError, ProgramSyntaxError  # noqa: E402

A, B, C = Atom("A"), Atom("B"), Atom("C")


class EventAlgebraTests(unittest.TestCase):
    def test_eval_event_follows_connectives(self):
        world = World.from_mapping({"A": True, "B": False})
        self.assertTrue(eval_event(A | B, world))
        self.assertFalse(eval_event(A & B, world))
        self.assertTrue(eval_event(~B, world))
        self.assertTrue(eval_event(TOP, world))
        self.assertFalse(eval_event(BOT, world))

    def test_eval_event_rejects_unassigned_atom(self):
        world = World.from_mapping({"A": True})
        with self.assertRaises(EventAlgebraError):
            eval_event(A & C, world)

    def test_conditional_rejects_impossible_antecedent(self):
        with self.assertRaises(EventAlgebraError):
            ConditionalEvent(A, BOT)
        with self.assertRaises(EventAlgebraError):
            ConditionalEvent(A, B & ~B)

    def test_reserved_names_are_not_atoms(self):
        with self.assertRaises(EventAlgebraError):
            Atom("TOP")
        with self.assertRaises(EventAlgebraError):
            Atom("1x")

    def test_negate_strips_outer_negation(self):
        self.assertEqual(negate(Not(A)), A)
        self.assertEqual(negate(A), Not(A))
        self.assertEqual(negate(TOP), BOT)

    def test_semantic_relations(self):
        self.assertTrue(equivalent(A | B, B | A))
        self.assertTrue(implies(A & B, A))
        self.assertFalse(implies(A, A & B))
        self.assertTrue(is_contradiction(A & ~A))
        self.assertTrue(same_conditional(ConditionalEvent(A, B), ConditionalEvent(A & B, B)))
        self.assertFalse(same_conditional(ConditionalEvent(A, B), ConditionalEvent(A, A | B)))

    def test_constituents_are_worlds_inside_h0(self):
        family = [ConditionalEvent(C, B), ConditionalEvent(B, A), ConditionalEvent(A, A | B)]
        worlds = constituents(family)
        self.assertEqual(len(worlds), 6)
        self.assertTrue(all(w["A"] or w["B"] for w in worlds))

    def test_all_worlds_respects_atom_cap(self):
        with patch.dict(config.ENGINE_CONFIG, {"max_atoms": 2}):
            with self.assertRaises(EventAlgebraError):
                all_worlds(["A", "B", "C"])
        self.assertEqual(len(all_worlds(["B", "A"])), 4)
        self.assertEqual(all_worlds(["B", "A"])[0].atoms, ("A", "B"))

    def test_goodman_nguyen_inclusion(self):
        narrow = ConditionalEvent(A & B, C)
        wide = ConditionalEvent(A, C)
        self.assertTrue(gn_included(narrow, wide))
        self.assertFalse(gn_included(wide, narrow))
        self.assertTrue(gn_included(ConditionalEvent(B & C, A), ConditionalEvent(C, A)))
        self.assertTrue(gn_included(ConditionalEvent(A, B), ConditionalEvent(A, A | B)))
        self.assertFalse(gn_included(ConditionalEvent(A, B), ConditionalEvent(B, A)))

    def test_inclusion_orders_coherent_probabilities(self):
        family = [ConditionalEvent(A, B), ConditionalEvent(A, A | B)]
        eighths = [F(k, 8) for k in range(9)]
        coherent = 0
        for p1, p2 in itertools.product(eighths, repeat=2):
            if check_coherence(PreciseAssessment((p1, p2)), family):
                coherent += 1
                self.assertLessEqual(p1, p2, (p1, p2))
        self.assertGreater(coherent, 0)

    def test_mutual_inclusion_is_the_same_conditional(self):
        conditionals = [
            ConditionalEvent(A, B),
            ConditionalEvent(A | ~B, B),
            ConditionalEvent(A & B, B),
            ConditionalEvent(A, A | B),
            ConditionalEvent(B, A),
            ConditionalEvent(A & C, C | B),
        ]
        for first, second in itertools.product(conditionals, repeat=2):
            if gn_included(first, second) and gn_included(second, first):
                self.assertTrue(same_conditional(first, second), (str(first), str(second)))
        self.assertTrue(gn_included(conditionals[0], conditionals[1]))
        self.assertTrue(gn_included(conditionals[1], conditionals[0]))

    def test_constituents_partition_the_worlds(self):
        families = [
            [ConditionalEvent(C, B), ConditionalEvent(B, A)],
            [ConditionalEvent(A, B), ConditionalEvent(A, A | B)],
            [ConditionalEvent(C, A & B), ConditionalEvent(B, TOP)],
        ]
        for family in families:
            names = family_atoms(family)
            h0 = disjoin(c.antecedent for c in family)
            excluded = [w for w in all_worlds(names) if not eval_event(h0, w)]
            self.assertEqual(len(constituents(family)) + len(excluded), 2 ** len(names))


class EventParserTests(unittest.TestCase):
    def test_precedence_and_associativity(self):
        self.assertEqual(parse_event("A | B & !C"), Or(A, And(B, Not(C))))
        self.assertEqual(parse_event("A & B & C"), And(And(A, B), C))
        self.assertEqual(parse_event("!(A | B)"), Not(Or(A, B)))
        self.assertEqual(parse_event("TOP & BOT"), And(TOP, BOT))

    def test_to_text_parenthesizes_only_where_needed(self):
        self.assertEqual(to_text(Or(A, Or(B, C))), "A | (B | C)")
        self.assertEqual(to_text(Or(Or(A, B), C)), "A | B | C")
        self.assertEqual(to_text(Or(And(A, B), C)), "A & B | C")
        self.assertEqual(to_text(Not(And(A, B))), "!(A & B)")

    def test_text_round_trip(self):
        for text in ["A", "!A", "A & (B | !C)", "!(A & B) | C", "(A | B) & (A | C)", "A & B | C & !A"]:
            event = parse_event(text)
            self.assertEqual(parse_event(to_text(event)), event, text)

    def test_parse_conditional(self):
        conditional = parse_conditional("[!A : (A | B)]")
        self.assertEqual(conditional.consequent, Not(A))
        self.assertEqual(conditional.antecedent, Or(A, B))
        self.assertEqual(str(conditional), "[!A : A | B]")

    def test_syntax_errors_carry_columns(self):
        with self.assertRaises(ProgramSyntaxError) as ctx:
            parse_event("A $ B")
        self.assertEqual(ctx.exception.column, 3)
        with self.assertRaises(ProgramSyntaxError) as ctx:
            parse_event("A & ")
        self.assertEqual(ctx.exception.column, 5)
        with self.assertRaises(ProgramSyntaxError):
            parse_conditional("[A : BOT]")

    def test_numbers_are_exact(self):
        self.assertEqual(str(parse_number("4/5")), "4/5")
        self.assertEqual(str(parse_number("0.1")), "1/10")
        self.assertEqual(str(parse_number("1")), "1")
        with self.assertRaises(ValueError):
            parse_number("1/0")


if __name__ == "__main__":
    unittest.main()
