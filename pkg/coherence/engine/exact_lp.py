"""
Exact Linear Programming
Dense two-phase simplex over Fractions with Bland's anti-cycling rule.
No floating point value ever enters a tableau.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from errors import LinearProgramError
from logs import get_logger

logger = get_logger("Exact LP")

ZERO = Fraction(0)
ONE = Fraction(1)


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


class Relation(str, Enum):
    EQ = "=="
    LE = "<="
    GE = ">="


class Status(str, Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: Tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    @classmethod
    def of(cls, coefficients: Sequence, relation: Relation, rhs=0) -> "Constraint":
        return cls(tuple(Fraction(c) for c in coefficients), Relation(relation), Fraction(rhs))

    def holds(self, point: Sequence[Fraction]) -> bool:
        lhs = sum((c * x for c, x in zip(self.coefficients, point)), ZERO)
        if self.relation is Relation.EQ:
            return lhs == self.rhs
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        return lhs >= self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """min/max objective . x subject to the constraints; all variables are
    non-negative unless their flag in ``nonnegative`` is False."""

    variables: Tuple[str, ...]
    constraints: Tuple[Constraint, ...]
    objective: Tuple[Fraction, ...] = ()
    sense: Sense = Sense.MIN
    nonnegative: Tuple[bool, ...] = ()

    def __post_init__(self):
        width = len(self.variables)
        if width == 0:
            raise LinearProgramError("Linear program needs at least one variable")
        if not self.constraints:
            raise LinearProgramError("Linear program needs at least one constraint")
        for row, constraint in enumerate(self.constraints):
            if len(constraint.coefficients) != width:
                raise LinearProgramError(
                    f"Constraint {row} has {len(constraint.coefficients)} coefficients for {width} variables"
                )
        if not self.objective:
            object.__setattr__(self, "objective", tuple(ZERO for _ in range(width)))
        elif len(self.objective) != width:
            raise LinearProgramError(f"Objective has {len(self.objective)} coefficients for {width} variables")
        if not self.nonnegative:
            object.__setattr__(self, "nonnegative", tuple(True for _ in range(width)))
        elif len(self.nonnegative) != width:
            raise LinearProgramError("Non-negativity flags do not match the variable count")
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "sense", Sense(self.sense))

    def with_objective(self, objective: Sequence, sense: Sense) -> "LinearProgram":
        return LinearProgram(self.variables, self.constraints, tuple(objective), sense, self.nonnegative)

    def is_feasibility_only(self) -> bool:
        return all(c == 0 for c in self.objective)


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Optional[Fraction] = None
    witness: Optional[Tuple[Fraction, ...]] = None

    @property
    def is_solved(self) -> bool:
        return self.status in (Status.OPTIMAL, Status.FEASIBLE)


def verify_witness(lp: LinearProgram, witness: Sequence[Fraction]) -> bool:
    """Substitute the witness into every constraint and sign condition."""
    if len(witness) != len(lp.variables):
        return False
    if any(flag and value < 0 for flag, value in zip(lp.nonnegative, witness)):
        return False
    return all(constraint.holds(witness) for constraint in lp.constraints)


def objective_value(lp: LinearProgram, point: Sequence[Fraction]) -> Fraction:
    return sum((c * x for c, x in zip(lp.objective, point)), ZERO)


@dataclass
class _Tableau:
    rows: List[List[Fraction]]
    rhs: List[Fraction]
    basis: List[int]
    artificial: List[bool] = field(default_factory=list)

    def pivot(self, r: int, c: int) -> None:
        pivot_row = self.rows[r]
        p = pivot_row[c]
        pivot_row = [value / p for value in pivot_row]
        self.rows[r] = pivot_row
        self.rhs[r] = self.rhs[r] / p
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            factor = row[c]
            if factor:
                self.rows[i] = [a - factor * b for a, b in zip(row, pivot_row)]
                self.rhs[i] -= factor * self.rhs[r]
        self.basis[r] = c

    def run(self, cost: Sequence[Fraction], allowed: Sequence[int]) -> Status:
        """Minimize cost . x with Bland's rule restricted to ``allowed`` columns."""
        while True:
            in_basis = set(self.basis)
            entering = None
            for j in allowed:
                if j in in_basis:
                    continue
                reduced = cost[j] - sum(
                    (cost[self.basis[i]] * row[j] for i, row in enumerate(self.rows)), ZERO
                )
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return Status.OPTIMAL
            leaving = None
            best_key = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best_key is None or key < best_key:
                        best_key, leaving = key, i
            if leaving is None:
                return Status.UNBOUNDED
            self.pivot(leaving, entering)

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * v for b, v in zip(self.basis, self.rhs)), ZERO)

    def solution(self, width: int) -> List[Fraction]:
        point = [ZERO] * width
        for b, v in zip(self.basis, self.rhs):
            point[b] = v
        return point


def _columns(lp: LinearProgram) -> List[Tuple[int, int]]:
    """Map tableau structural columns to (variable, sign); free variables split in two."""
    columns = []
    for index, flag in enumerate(lp.nonnegative):
        columns.append((index, 1))
        if not flag:
            columns.append((index, -1))
    return columns


def _phase_one(lp: LinearProgram):
    structural = _columns(lp)
    n_struct = len(structural)
    prepared = []
    for constraint in lp.constraints:
        coefficients = [sign * constraint.coefficients[var] for var, sign in structural]
        relation, rhs = constraint.relation, constraint.rhs
        if rhs < 0:
            coefficients = [-c for c in coefficients]
            rhs = -rhs
            if relation is Relation.LE:
                relation = Relation.GE
            elif relation is Relation.GE:
                relation = Relation.LE
        prepared.append((coefficients, relation, rhs))

    n_slack = sum(1 for _, relation, _ in prepared if relation is not Relation.EQ)
    n_art = sum(1 for _, relation, _ in prepared if relation is not Relation.LE)
    width = n_struct + n_slack + n_art

    rows, rhs_values, basis = [], [], []
    artificial = [False] * (n_struct + n_slack) + [True] * n_art
    slack_col, art_col = n_struct, n_struct + n_slack
    for coefficients, relation, rhs in prepared:
        row = list(coefficients) + [ZERO] * (n_slack + n_art)
        if relation is Relation.LE:
            row[slack_col] = ONE
            basis.append(slack_col)
            slack_col += 1
        else:
            if relation is Relation.GE:
                row[slack_col] = -ONE
                slack_col += 1
            row[art_col] = ONE
            basis.append(art_col)
            art_col += 1
        rows.append(row)
        rhs_values.append(rhs)

    tableau = _Tableau(rows, rhs_values, basis, artificial)
    cost = [ONE if flag else ZERO for flag in artificial]
    tableau.run(cost, list(range(width)))
    if tableau.value(cost) > 0:
        return None, structural, width

    # drive remaining (zero-valued) artificials out of the basis
    r = 0
    while r < len(tableau.rows):
        if artificial[tableau.basis[r]]:
            replacement = next(
                (j for j in range(width) if not artificial[j] and tableau.rows[r][j] != 0), None
            )
            if replacement is None:
                del tableau.rows[r]
                del tableau.rhs[r]
                del tableau.basis[r]
                continue
            tableau.pivot(r, replacement)
        r += 1
    return tableau, structural, width


def _recover(lp: LinearProgram, tableau: _Tableau, structural, width) -> Tuple[Fraction, ...]:
    point = tableau.solution(width)
    values = [ZERO] * len(lp.variables)
    for column, (var, sign) in enumerate(structural):
        values[var] += sign * point[column]
    return tuple(values)


def feasible(lp: LinearProgram) -> LPResult:
    """Phase one only: FEASIBLE with an exact witness, or INFEASIBLE."""
    tableau, structural, width = _phase_one(lp)
    if tableau is None:
        return LPResult(Status.INFEASIBLE)
    return LPResult(Status.FEASIBLE, witness=_recover(lp, tableau, structural, width))


def lp_solve(lp: LinearProgram) -> LPResult:
    """Solve exactly; OPTIMAL results carry a witness attaining the value."""
    tableau, structural, width = _phase_one(lp)
    if tableau is None:
        return LPResult(Status.INFEASIBLE)
    if lp.is_feasibility_only():
        return LPResult(Status.OPTIMAL, ZERO, _recover(lp, tableau, structural, width))

    flip = -1 if lp.sense is Sense.MAX else 1
    cost = [ZERO] * width
    for column, (var, sign) in enumerate(structural):
        cost[column] = flip * sign * lp.objective[var]
    allowed = [j for j in range(width) if not tableau.artificial[j]]
    if tableau.run(cost, allowed) is Status.UNBOUNDED:
        return LPResult(Status.UNBOUNDED)
    witness = _recover(lp, tableau, structural, width)
    value = objective_value(lp, witness)
    logger.debug("%s over %d variables -> %s", lp.sense.value, len(lp.variables), value)
    return LPResult(Status.OPTIMAL, value, witness)
