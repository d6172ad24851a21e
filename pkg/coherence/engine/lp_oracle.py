"""
Brute-force vertex enumeration over exact rationals.

Independent of the simplex code: the program is put in equality form,
dependent rows are eliminated, and every basis subset of the right size is
solved directly. Only meant for small programs (tests, cross-checks).
"""

import itertools
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from engine.exact_lp import LinearProgram, Relation, Sense, objective_value
from errors import LinearProgramError

ZERO = Fraction(0)
MAX_ORACLE_COLUMNS = 24


def _solve_square(matrix: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """Gauss-Jordan on a square system; None when singular."""
    size = len(matrix)
    rows = [list(row) + [value] for row, value in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[r][size] for r in range(size)]


def _independent_rows(matrix: List[List[Fraction]], rhs: List[Fraction]):
    """Row-reduce [A|b]; returns the reduced independent rows or None if inconsistent."""
    rows = [list(row) + [value] for row, value in zip(matrix, rhs)]
    width = len(matrix[0]) if matrix else 0
    reduced: List[List[Fraction]] = []
    for row in rows:
        for base in reduced:
            lead = next(j for j in range(width) if base[j] != 0)
            if row[lead] != 0:
                factor = row[lead] / base[lead]
                row = [a - factor * b for a, b in zip(row, base)]
        if any(v != 0 for v in row[:width]):
            reduced.append(row)
        elif row[width] != 0:
            return None
    return [r[:width] for r in reduced], [r[width] for r in reduced]


def _equality_form(lp: LinearProgram):
    columns: List[Tuple[int, int]] = []
    for index, flag in enumerate(lp.nonnegative):
        columns.append((index, 1))
        if not flag:
            columns.append((index, -1))
    n_slack = sum(1 for c in lp.constraints if c.relation is not Relation.EQ)
    matrix, rhs = [], []
    slack = 0
    for constraint in lp.constraints:
        row = [sign * constraint.coefficients[var] for var, sign in columns] + [ZERO] * n_slack
        if constraint.relation is Relation.LE:
            row[len(columns) + slack] = Fraction(1)
            slack += 1
        elif constraint.relation is Relation.GE:
            row[len(columns) + slack] = Fraction(-1)
            slack += 1
        matrix.append(row)
        rhs.append(constraint.rhs)
    return columns, matrix, rhs


def enumerate_vertices(lp: LinearProgram) -> List[Tuple[Fraction, ...]]:
    """Every basic feasible solution, mapped back to the original variables."""
    columns, matrix, rhs = _equality_form(lp)
    width = len(matrix[0])
    if width > MAX_ORACLE_COLUMNS:
        raise LinearProgramError(f"Vertex enumeration limited to {MAX_ORACLE_COLUMNS} columns, got {width}")
    reduced = _independent_rows(matrix, rhs)
    if reduced is None:
        return []
    rows, values = reduced
    if not rows:
        return [tuple(ZERO for _ in lp.variables)]
    vertices = set()
    for basis in itertools.combinations(range(width), len(rows)):
        square = [[row[j] for j in basis] for row in rows]
        solution = _solve_square(square, values)
        if solution is None or any(v < 0 for v in solution):
            continue
        point = [ZERO] * width
        for j, v in zip(basis, solution):
            point[j] = v
        original = [ZERO] * len(lp.variables)
        for column, (var, sign) in enumerate(columns):
            original[var] += sign * point[column]
        vertices.add(tuple(original))
    return sorted(vertices)


def oracle_optimum(lp: LinearProgram) -> Optional[Fraction]:
    """Best objective over the vertices; None when there is no feasible vertex.

    Agrees with the simplex optimum whenever that optimum is finite.
    """
    vertices = enumerate_vertices(lp)
    if not vertices:
        return None
    values: Sequence[Fraction] = [objective_value(lp, v) for v in vertices]
    return max(values) if lp.sense is Sense.MAX else min(values)
