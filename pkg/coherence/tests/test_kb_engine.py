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
from engine.assessments import Interval  # noqa: E402
from engine.coherence import check_coherence  # noqa: E402
from engine.entailment import HULL_CERTIFICATE, VerdictStatus, p_consistent, p_entails  # noqa: E402
from engine.events import Atom, ConditionalEvent, Not, Or, same_conditional  # noqa: E402
from engine.knowledge_base import (  # noqa: E402
    KnowledgeBase,
    Statement,
    StatementKind,
    Strength,
    conjugate,
    kb_to_assessment,
    sub_knowledge_base,
)
from engine.rules import RuleTemplate, _sure, match_rule, CERTIFIED_RULES  # noqa: E402
from errors import KnowledgeBaseError  # noqa: E402
from services.certificate_service import CertificateService  # noqa: E402

A, B, C, D, E = (Atom(name) for name in "ABCDE")


def default(antecedent, consequent) -> Statement:
    return Statement.default(antecedent, consequent)


def negdefault(antecedent, consequent) -> Statement:
    return Statement.negated(antecedent, consequent)


BARBARA = KnowledgeBase.of(default(B, C), default(A, B), negdefault(A | B, ~A))
DARII = KnowledgeBase.of(default(B, C), negdefault(A, ~B), negdefault(A | B, ~A))
BARBARA_STRONG = KnowledgeBase.of(default(B, C), default(A, B), negdefault(B, ~A))
DARII_STRONG = KnowledgeBase.of(default(B, C), negdefault(A, ~B), negdefault(B, ~A))
TRANSITIVITY = KnowledgeBase.of(default(B, C), default(A, B))
CAUTIOUS = KnowledgeBase.of(default(A, C), default(A, B))
RATIONAL = KnowledgeBase.of(default(A, C), negdefault(A, ~B))
RATIONAL_LITERAL = KnowledgeBase.of(negdefault(A, C), negdefault(A, ~B))

CORPUS = [
    (BARBARA, default(A, C)),
    (DARII, negdefault(A, ~C)),
    (BARBARA_STRONG, default(A, C)),
    (DARII_STRONG, negdefault(A, ~C)),
    (TRANSITIVITY, default(A, C)),
    (TRANSITIVITY, negdefault(A, C)),
    (CAUTIOUS, default(A & B, C)),
    (RATIONAL, default(A & B, C)),
    (RATIONAL_LITERAL, negdefault(A & B, C)),
]


class KnowledgeBaseTests(unittest.TestCase):
    def test_kb_to_assessment(self):
        family, box = kb_to_assessment(BARBARA)
        self.assertEqual(family, [ConditionalEvent(C, B), ConditionalEvent(B, A), ConditionalEvent(Not(A), Or(A, B))])
        self.assertEqual(list(box), [Interval.point(1), Interval.point(1), Interval(0, 1, hi_open=True)])

        family, box = kb_to_assessment(KnowledgeBase.of(negdefault(A, B)))
        self.assertEqual(family, [ConditionalEvent(B, A)])
        self.assertEqual(list(box), [Interval(0, 1, hi_open=True)])

    def test_statement_kinds_map_to_intervals(self):
        self.assertEqual(Statement(StatementKind.NEG_CONSEQUENT_DEFAULT, A, B).interval, Interval.point(0))
        self.assertEqual(Statement(StatementKind.NEGATED_NEG_DEFAULT, A, B).interval, Interval(0, 1, lo_open=True))

    def test_empty_knowledge_base(self):
        with self.assertRaises(KnowledgeBaseError):
            KnowledgeBase(())

    def test_canonical_forms(self):
        strength, conditional = Statement(StatementKind.NEG_CONSEQUENT_DEFAULT, A, ~B).canonical()
        self.assertIs(strength, Strength.SURE)
        self.assertEqual(conditional, ConditionalEvent(B, A))
        strength, conditional = Statement(StatementKind.NEGATED_NEG_DEFAULT, A, B).canonical()
        self.assertIs(strength, Strength.BELOW_ONE)
        self.assertEqual(conditional, ConditionalEvent(Not(B), A))

    def test_conjugate(self):
        rewritten = conjugate(KnowledgeBase.of(negdefault(A, B)))
        self.assertEqual(rewritten[0].kind, StatementKind.NEGATED_NEG_DEFAULT)
        self.assertEqual(rewritten[0].conditional, ConditionalEvent(Not(B), A))
        self.assertEqual(rewritten[0].interval, Interval(0, 1, lo_open=True))
        self.assertEqual(conjugate(conjugate(BARBARA)), BARBARA)
        self.assertEqual(conjugate(KnowledgeBase.of(default(B, C))), KnowledgeBase.of(default(B, C)))
        for original, rewritten in zip(DARII, conjugate(DARII)):
            self.assertTrue(original.equivalent_to(rewritten))

    def test_conjugate_twice_restores_stacked_negations(self):
        kb = KnowledgeBase.of(negdefault(A, Not(Not(C))), negdefault(A, ~B), default(B, C))
        self.assertEqual(conjugate(conjugate(kb)), kb)
        self.assertEqual(conjugate(conjugate(DARII)), DARII)

        written = KnowledgeBase.of(Statement(StatementKind.NEGATED_NEG_DEFAULT, A, B))
        twice = conjugate(conjugate(written))
        self.assertEqual(twice[0].kind, StatementKind.NEGATED_NEG_DEFAULT)
        self.assertTrue(twice[0].equivalent_to(written[0]))


class ConsistencyTests(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(p_consistent(BARBARA).status, VerdictStatus.P_CONSISTENT)
        self.assertEqual(
            p_consistent(KnowledgeBase.of(default(A, B), default(A, ~B))).status, VerdictStatus.NOT_P_CONSISTENT
        )
        single = p_consistent(KnowledgeBase.of(default(A, B)))
        self.assertEqual(single.status, VerdictStatus.P_CONSISTENT)
        self.assertEqual(single.witness.values, (F(1),))

    def test_witness_is_coherent_and_inside_the_box(self):
        family, box = kb_to_assessment(DARII)
        verdict = p_consistent(DARII)
        self.assertTrue(box.contains(verdict.witness.values))
        self.assertTrue(check_coherence(verdict.witness, family))

    def test_sub_sequences_stay_consistent(self):
        for size in range(1, len(BARBARA) + 1):
            for indices in itertools.combinations(range(len(BARBARA)), size):
                verdict = p_consistent(sub_knowledge_base(BARBARA, indices))
                self.assertEqual(verdict.status, VerdictStatus.P_CONSISTENT, indices)

    def test_sub_sequence_bounds(self):
        with self.assertRaises(KnowledgeBaseError):
            sub_knowledge_base(BARBARA, [])
        with self.assertRaises(KnowledgeBaseError):
            sub_knowledge_base(BARBARA, [5])


class EntailmentTests(unittest.TestCase):
    def assertCertified(self, kb, conclusion, rule):
        verdict = p_entails(kb, conclusion)
        self.assertEqual(verdict.status, VerdictStatus.ENTAILED)
        self.assertEqual(verdict.certificate.rule, rule)
        return verdict

    def test_modus_barbara(self):
        verdict = self.assertCertified(BARBARA, default(A, C), "Modus Barbara")
        self.assertEqual(verdict.certificate.premises, (0, 1, 2))

    def test_modus_darii(self):
        self.assertCertified(DARII, negdefault(A, ~C), "Modus Darii")

    def test_strong_import_variants(self):
        self.assertCertified(BARBARA_STRONG, default(A, C), "Modus Barbara (strong import)")
        self.assertCertified(DARII_STRONG, negdefault(A, ~C), "Modus Darii (strong import)")

    def test_monotonicity_rules(self):
        self.assertCertified(CAUTIOUS, default(A & B, C), "Cautious Monotonicity")
        self.assertCertified(RATIONAL, default(A & B, C), "Rational Monotonicity")

    def test_plain_transitivity_is_not_entailed(self):
        verdict = p_entails(TRANSITIVITY, default(A, C))
        self.assertEqual(verdict.status, VerdictStatus.NOT_ENTAILED)
        self.assertEqual(verdict.counterexample.point.values, (F(1), F(1)))
        self.assertEqual(verdict.counterexample.z, 0)

    def test_plain_transitivity_does_not_entail_the_negated_default(self):
        verdict = p_entails(TRANSITIVITY, negdefault(A, C))
        self.assertEqual(verdict.status, VerdictStatus.NOT_ENTAILED)
        self.assertEqual(verdict.counterexample.point.values, (F(1), F(1)))
        self.assertEqual(verdict.counterexample.z, 1)
        family, _ = kb_to_assessment(TRANSITIVITY)
        extended = verdict.counterexample.point.extend(verdict.counterexample.z)
        self.assertTrue(check_coherence(extended, family + [ConditionalEvent(C, A)]))

    def test_negated_premise_variant_of_rational_monotonicity_fails(self):
        verdict = p_entails(RATIONAL_LITERAL, negdefault(A & B, C))
        self.assertEqual(verdict.status, VerdictStatus.NOT_ENTAILED)
        self.assertEqual(verdict.counterexample.z, 1)

    def test_counterexamples_reverify(self):
        for kb, conclusion in CORPUS:
            verdict = p_entails(kb, conclusion)
            if verdict.status is not VerdictStatus.NOT_ENTAILED:
                continue
            family, box = kb_to_assessment(kb)
            point = verdict.counterexample.point
            self.assertTrue(box.contains(point.values))
            extended = check_coherence(point.extend(verdict.counterexample.z), family + [conclusion.conditional])
            self.assertTrue(extended.coherent)

    def test_semantic_matching(self):
        rewritten = KnowledgeBase.of(default(B, C), default(A, B), negdefault(B | A, ~A))
        self.assertCertified(rewritten, default(A, C), "Modus Barbara")

    def test_conjugacy_invariance(self):
        for kb, conclusion in CORPUS:
            self.assertEqual(p_consistent(kb).status, p_consistent(conjugate(kb)).status)
            self.assertEqual(p_entails(kb, conclusion).status, p_entails(conjugate(kb), conclusion).status)

    def test_entailment_survives_unrelated_statements(self):
        for kb, conclusion in CORPUS:
            if p_entails(kb, conclusion).status is not VerdictStatus.ENTAILED:
                continue
            extended = kb.extended(default(D, E))
            verdict = p_entails(extended, conclusion)
            self.assertEqual(verdict.status, VerdictStatus.ENTAILED)
            self.assertEqual(verdict.certificate.premises, tuple(range(len(kb))))
            self.assertEqual(verdict.certificate.detail, "via sub-sequence")

    def test_inconsistent_knowledge_base(self):
        with self.assertRaises(KnowledgeBaseError):
            p_entails(KnowledgeBase.of(default(A, B), default(A, ~B)), default(A, C))

    def test_conclusion_kind_is_checked(self):
        with self.assertRaises(KnowledgeBaseError):
            p_entails(BARBARA, Statement(StatementKind.NEG_CONSEQUENT_DEFAULT, A, C))

    def test_hull_certificate_flag(self):
        kb = KnowledgeBase.of(default(A, B), default(B, C), default(A | B, A))
        with patch.dict(config.FEATURE_FLAGS, {"enable_hull_certificates": True}):
            verdict = p_entails(kb, default(A, C))
        self.assertEqual(verdict.status, VerdictStatus.ENTAILED)
        self.assertEqual(verdict.certificate.rule, HULL_CERTIFICATE)
        with patch.dict(config.FEATURE_FLAGS, {"enable_hull_certificates": False}):
            verdict = p_entails(kb, default(A, C), budget=50)
        self.assertEqual(verdict.status, VerdictStatus.UNKNOWN)


class CertificateServiceTests(unittest.TestCase):
    def test_rule_match_binds_metavariables(self):
        matches = list(match_rule(CERTIFIED_RULES[0], BARBARA, default(A, C)))
        self.assertEqual(len(matches), 1)
        binding = dict(matches[0].binding)
        self.assertEqual(binding["A"], A)
        self.assertEqual(binding["B"], B)
        self.assertTrue(same_conditional(ConditionalEvent(binding["C"], A), ConditionalEvent(C, A)))

    def test_grid_rejects_unsound_rule(self):
        transitivity = RuleTemplate("Transitivity", (_sure(C, B), _sure(B, A)), _sure(C, A))
        service = CertificateService(grid=4, rules=[transitivity])
        self.assertEqual(len(list(match_rule(transitivity, TRANSITIVITY, default(A, C)))), 1)
        self.assertIsNone(service.certify(TRANSITIVITY, default(A, C)))

    def test_finer_grid_still_certifies(self):
        service = CertificateService(grid=6)
        certificate = service.certify(DARII, negdefault(A, ~C))
        self.assertEqual(certificate.rule, "Modus Darii")
        self.assertEqual(certificate.detail, "")


if __name__ == "__main__":
    unittest.main()
