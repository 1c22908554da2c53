"""Reference solvers: exhaustive oracle, GF(2) elimination, half-weight greedy.

The brute-force oracle is the ground truth every other solver and every
reduction in this package is validated against. GF(2) rows are stored as int
bitmasks (bit i = variable i).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CapacityError,
    LinSystem,
    evaluate,
    falsified_indices,
)

DEFAULT_VAR_LIMIT = 24


@dataclass(frozen=True)
class F2Matrix:
    """A system Ax=b over GF(2); rows are bitmasks over `width` columns."""

    width: int
    rows: tuple[int, ...]
    rhs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.rhs):
            raise ValueError("rows and rhs must have equal length")
        for row in self.rows:
            if row < 0 or row >> self.width:
                raise ValueError(f"row {row:#x} does not fit in width {self.width}")

    @classmethod
    def from_system(cls, system: LinSystem) -> "F2Matrix":
        rows = []
        rhs = []
        for eqn in system.equations:
            mask = 0
            for v in eqn.lhs:
                mask |= 1 << v
            rows.append(mask)
            rhs.append(eqn.rhs)
        return cls(system.n, tuple(rows), tuple(rhs))


@dataclass(frozen=True)
class SolveResult:
    """An assignment plus its falsified weight and the falsified equations."""

    assignment: tuple[int, ...]
    falsified_weight: int
    certificate: tuple[int, ...]


def _result(system: LinSystem, assignment) -> SolveResult:
    _, falsified = evaluate(system, assignment)
    return SolveResult(
        assignment=tuple(assignment),
        falsified_weight=falsified,
        certificate=falsified_indices(system, assignment),
    )


def brute_force_min_falsified(
    system: LinSystem, var_limit: int = DEFAULT_VAR_LIMIT
) -> SolveResult:
    """Exact minimum falsified weight by scanning all 2^n assignments.

    Assignments are visited in Gray-code order with O(d) incremental updates
    per step. Ties are broken toward the numerically smallest assignment read
    as a binary string (variable 0 is the most significant bit).
    """
    n = system.n
    if n > var_limit:
        raise CapacityError(f"{n} variables exceed the oracle limit {var_limit}")
    eqs = system.equations
    touching: list[list[int]] = [[] for _ in range(n)]
    parity = []
    falsified = 0
    for j, eqn in enumerate(eqs):
        for v in eqn.lhs:
            touching[v].append(j)
        parity.append(0)
        if eqn.rhs != 0:
            falsified += eqn.weight
    best_falsified = falsified
    best_value = 0
    current = 0
    rhs = [e.rhs for e in eqs]
    weight = [e.weight for e in eqs]
    for step in range(1, 1 << n):
        bit = (step & -step).bit_length() - 1
        var = n - 1 - bit  # bit positions encode variable 0 as the MSB
        current ^= 1 << bit
        for j in touching[var]:
            if parity[j] == rhs[j]:
                falsified += weight[j]
            else:
                falsified -= weight[j]
            parity[j] ^= 1
        if falsified < best_falsified or (
            falsified == best_falsified and current < best_value
        ):
            best_falsified = falsified
            best_value = current
    assignment = tuple((best_value >> (n - 1 - v)) & 1 for v in range(n))
    return _result(system, assignment)


def f2_rank(mat: F2Matrix) -> int:
    """Rank of the coefficient matrix over GF(2)."""
    work = list(mat.rows)
    rank = 0
    for col in range(mat.width):
        pivot = None
        for r in range(rank, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and (work[r] >> col) & 1:
                work[r] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def f2_solve(mat: F2Matrix):
    """Solve Ax=b over GF(2); free variables are set to 0.

    Returns an assignment tuple, or None when the system is inconsistent
    (rank(A) < rank([A b])).
    """
    rows = list(mat.rows)
    rhs = list(mat.rhs)
    pivot_col_of_row: list[int] = []
    row_idx = 0
    for col in range(mat.width):
        pivot = None
        for r in range(row_idx, len(rows)):
            if (rows[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        rows[row_idx], rows[pivot] = rows[pivot], rows[row_idx]
        rhs[row_idx], rhs[pivot] = rhs[pivot], rhs[row_idx]
        for r in range(len(rows)):
            if r != row_idx and (rows[r] >> col) & 1:
                rows[r] ^= rows[row_idx]
                rhs[r] ^= rhs[row_idx]
        pivot_col_of_row.append(col)
        row_idx += 1
        if row_idx == len(rows):
            break
    for r in range(row_idx, len(rows)):
        if rows[r] == 0 and rhs[r] == 1:
            return None
    solution = [0] * mat.width
    # After Gauss-Jordan each pivot row reads x_pivot + (free terms) = rhs;
    # free variables are 0, so x_pivot = rhs.
    for r, col in enumerate(pivot_col_of_row):
        solution[col] = rhs[r]
    return tuple(solution)


def conditional_expectation_assignment(system: LinSystem) -> SolveResult:
    """Fix variables one by one, keeping the expected satisfied weight high.

    Expectations are tracked exactly as doubled integers (an undecided
    equation contributes half its weight). For systems without contradictory
    constant equations the result satisfies weight at least total_weight / 2.
    """
    n = system.n
    eqs = system.equations
    touching: list[list[int]] = [[] for _ in range(n)]
    unassigned = []
    parity = []
    for j, eqn in enumerate(eqs):
        for v in eqn.lhs:
            touching[v].append(j)
        unassigned.append(eqn.arity)
        parity.append(0)
    values = []
    for var in range(n):
        # delta = 2*E[sat | x=1] - 2*E[sat | x=0], over equations decided now
        delta = 0
        for j in touching[var]:
            if unassigned[j] == 1:
                if parity[j] == eqs[j].rhs:
                    delta -= 2 * eqs[j].weight
                else:
                    delta += 2 * eqs[j].weight
        value = 1 if delta > 0 else 0
        values.append(value)
        for j in touching[var]:
            unassigned[j] -= 1
            parity[j] ^= value
    return _result(system, tuple(values))
