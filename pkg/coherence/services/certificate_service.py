"""
Rule certification: semantic matching against the built-in rules, then
exact re-verification of the rule's claim on a rational grid over the
matched premises' free parameters.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import config
from engine.assessments import PreciseAssessment
from engine.coherence import check_coherence
from engine.knowledge_base import KnowledgeBase, Statement, Strength, conclusion_satisfied
from engine.propagation import propagate
from engine.rules import CERTIFIED_RULES, RuleMatch, matching_rules
from errors import AssessmentError
from logs import get_logger

logger = get_logger("Certificates")


@dataclass(frozen=True)
class Certificate:
    rule: str
    premises: Tuple[int, ...]
    detail: str = ""


class CertificateService:
    def __init__(self, grid: Optional[int] = None, rules=CERTIFIED_RULES):
        self.grid = grid or config.CERTIFICATE_CONFIG["grid"]
        if self.grid < 1:
            raise ValueError("Certificate grid denominator must be positive")
        self.rules = tuple(rules)
        self._verified: Dict[Tuple, bool] = {}

    def grid_values(self, strength: Strength) -> List[Fraction]:
        if strength is Strength.SURE:
            return [Fraction(1)]
        return [Fraction(k, self.grid) for k in range(self.grid)]

    def verify(self, kb: KnowledgeBase, conclusion: Statement, match: RuleMatch) -> bool:
        """Propagate at every coherent grid point and check conclusion and closed form."""
        premises = [kb[i].canonical() for i in match.premise_indices]
        target_strength, target = conclusion.canonical()
        key = (
            match.rule.name,
            tuple((s, str(c)) for s, c in premises),
            target_strength,
            str(target),
            self.grid,
        )
        if key in self._verified:
            return self._verified[key]

        family = [conditional for _, conditional in premises]
        checked = 0
        verified = True
        for values in itertools.product(*(self.grid_values(s) for s, _ in premises)):
            point = PreciseAssessment(values)
            if not check_coherence(point, family):
                continue
            try:
                interval = propagate(family, point, target).interval
            except AssessmentError:
                continue
            checked += 1
            if not conclusion_satisfied(target_strength, interval):
                logger.debug("%s fails at %s: %s", match.rule.name, point, interval)
                verified = False
                break
            if match.rule.closed_form is not None and not interval.subset_of(match.rule.closed_form(values)):
                logger.debug("%s closed form disagrees at %s: %s", match.rule.name, point, interval)
                verified = False
                break
        verified = verified and checked > 0
        self._verified[key] = verified
        return verified

    def certify(self, kb: KnowledgeBase, conclusion: Statement) -> Optional[Certificate]:
        for match in matching_rules(kb, conclusion, self.rules):
            if not self.verify(kb, conclusion, match):
                continue
            detail = "" if len(match.premise_indices) == len(kb) else "via sub-sequence"
            bound = ", ".join(f"{name}={event}" for name, event in match.binding)
            logger.debug("Certified by %s with %s", match.rule.name, bound)
            return Certificate(match.rule.name, match.premise_indices, detail)
        return None
