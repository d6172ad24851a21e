"""
p-Consistency and p-Entailment
Entailment is decided as a certified tri-state: ENTAILED only from a rule
certificate or the closed-hull envelope, NOT_ENTAILED only with an exactly
re-verified counterexample, UNKNOWN otherwise.
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import config
from engine.assessments import PreciseAssessment
from engine.coherence import GStatus, check_coherence, check_g_coherence_box
from engine.knowledge_base import (
    KnowledgeBase,
    Statement,
    StatementKind,
    conclusion_satisfied,
    conclusion_violated,
    kb_to_assessment,
)
from engine.propagation import propagate
from errors import AssessmentError, KnowledgeBaseError
from logs import get_logger
from services.certificate_service import Certificate, CertificateService
from services.witness_search import WitnessSearchService

logger = get_logger("Entailment")

HULL_CERTIFICATE = "Closed-hull envelope"


class VerdictStatus(str, Enum):
    ENTAILED = "ENTAILED"
    NOT_ENTAILED = "NOT_ENTAILED"
    P_CONSISTENT = "P_CONSISTENT"
    NOT_P_CONSISTENT = "NOT_P_CONSISTENT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Counterexample:
    point: PreciseAssessment
    z: Fraction


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    certificate: Optional[Certificate] = None
    witness: Optional[PreciseAssessment] = None
    counterexample: Optional[Counterexample] = None
    message: str = ""


def p_consistent(
    kb: KnowledgeBase, budget: Optional[int] = None, search: Optional[WitnessSearchService] = None
) -> Verdict:
    family, box = kb_to_assessment(kb)
    result = check_g_coherence_box(box, family, budget, search)
    if result.status is GStatus.GCOHERENT:
        return Verdict(VerdictStatus.P_CONSISTENT, witness=result.witness)
    if result.status is GStatus.NOT_GCOHERENT:
        return Verdict(VerdictStatus.NOT_P_CONSISTENT, message="closure of the box is not g-coherent")
    return Verdict(VerdictStatus.UNKNOWN, message="no witness found within budget")


def _hull_certificate(kb: KnowledgeBase, conclusion: Statement) -> Optional[Certificate]:
    family, box = kb_to_assessment(kb)
    strength, target = conclusion.canonical()
    try:
        interval = propagate(family, box.closure(), target).interval
    except AssessmentError as exc:
        logger.debug("Hull envelope unavailable: %s", exc)
        return None
    if conclusion_satisfied(strength, interval):
        return Certificate(HULL_CERTIFICATE, tuple(range(len(kb))), f"hull extension interval {interval}")
    return None


def find_counterexample(
    kb: KnowledgeBase, conclusion: Statement, budget: int, search: WitnessSearchService
) -> Optional[Counterexample]:
    """Search I_K for a coherent point whose extension interval refutes the conclusion."""
    family, box = kb_to_assessment(kb)
    strength, target = conclusion.canonical()
    candidates = itertools.chain(search.corner_points(box), search.random_points(box))
    seen = set()
    for point in itertools.islice(candidates, budget):
        if point in seen:
            continue
        seen.add(point)
        assessment = PreciseAssessment(point)
        if not check_coherence(assessment, family):
            continue
        interval = propagate(family, assessment, target).interval
        violated, z = conclusion_violated(strength, interval)
        if not violated:
            continue
        if check_coherence(assessment.extend(z), list(family) + [target]):
            logger.debug("Counterexample %s with z = %s", assessment, z)
            return Counterexample(assessment, z)
        logger.warning("Extension %s at %s failed re-verification", z, assessment)
    return None


def p_entails(
    kb: KnowledgeBase,
    conclusion: Statement,
    budget: Optional[int] = None,
    search: Optional[WitnessSearchService] = None,
    certificates: Optional[CertificateService] = None,
) -> Verdict:
    if conclusion.kind not in (StatementKind.DEFAULT, StatementKind.NEGATED_DEFAULT):
        raise KnowledgeBaseError("Conclusions must be a default or a negated default")
    budget = config.SEARCH_CONFIG["budget"] if budget is None else budget
    search = search or WitnessSearchService()
    certificates = certificates or CertificateService()

    consistency = p_consistent(kb, budget, search)
    if consistency.status is VerdictStatus.NOT_P_CONSISTENT:
        raise KnowledgeBaseError("Knowledge base is not p-consistent; p_consistent refutes it")
    if consistency.status is VerdictStatus.UNKNOWN:
        return Verdict(VerdictStatus.UNKNOWN, message="p-consistency could not be witnessed")

    certificate = certificates.certify(kb, conclusion)
    if certificate is None and config.FEATURE_FLAGS["enable_hull_certificates"]:
        certificate = _hull_certificate(kb, conclusion)
    if certificate is not None:
        return Verdict(VerdictStatus.ENTAILED, certificate=certificate, witness=consistency.witness)

    counterexample = find_counterexample(kb, conclusion, budget, search)
    if counterexample is not None:
        return Verdict(VerdictStatus.NOT_ENTAILED, witness=counterexample.point, counterexample=counterexample)
    logger.info("Neither a certificate nor a counterexample for %s", conclusion)
    return Verdict(VerdictStatus.UNKNOWN, witness=consistency.witness, message="no certificate or counterexample")
