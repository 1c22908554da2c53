"""Cost-preserving instance transformations.

Two families live here. The first encodes an odd-intersection hitting
problem as a weighted equation system whose heavy chain blocks force odd
parity on the chosen ground elements. The second is a rewriting pipeline
that turns any arity-at-most-3 system into a unit-weight system where every
equation has exactly three variables, every variable occurs in exactly three
equations, and no two equations share a left-hand side -- without changing
the minimum falsified weight.

Every transformation logs a trace step; replaying the trace in reverse maps
an assignment of the reduced instance back to one of the original whose
falsified weight never exceeds the reduced one (and matches it at the
optimum).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import (
    ContractViolationError,
    Equation,
    InstanceClassError,
    LinSystem,
    MaxLin2Error,
    evaluate,
    expand_unit_weights,
    normalize,
    occurrence_counts,
)
from .occ2 import extend_assignment, prune_singletons


class GadgetError(MaxLin2Error):
    """A transformation was applied outside its stated preconditions."""


# ---------------------------------------------------------------------------
# Odd-intersection instances and their encoding as heavy chain blocks


@dataclass(frozen=True)
class OddSetInstance:
    """Ground set {0..n-1}, distinct nonempty subsets, and a selection budget.

    A YES-instance admits at most `budget` elements meeting every subset in
    an odd number of elements.
    """

    num_elements: int
    sets: tuple[tuple[int, ...], ...]
    budget: int

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "sets", tuple(tuple(sorted(s)) for s in self.sets)
        )
        if self.num_elements < 0:
            raise ValueError("ground set size must be >= 0")
        if self.budget < 0:
            raise ValueError("budget must be >= 0")
        seen = set()
        for members in self.sets:
            if not members:
                raise ValueError("empty set not allowed")
            if len(set(members)) != len(members):
                raise ValueError(f"repeated element in set {members}")
            if members[0] < 0 or members[-1] >= self.num_elements:
                raise ValueError(f"set {members} out of range")
            if members in seen:
                raise ValueError(f"duplicate set {members}")
            seen.add(members)


class OddSetReduction(NamedTuple):
    """Encoded system plus the block structure needed to audit it."""

    system: LinSystem
    budget: int
    blocks: tuple[tuple[int, ...], ...]
    num_elements: int


def oddset_to_lin2(inst: OddSetInstance) -> OddSetReduction:
    """Encode element selection as unit equations x_i=0 plus heavy chains.

    Every ground element i contributes x_i = 0 of weight 1. Every subset
    contributes a chain block of weight budget+1 whose equations sum to
    "XOR of the subset's variables = 1", so any assignment falsifying at
    most `budget` weight must satisfy all blocks and therefore pick an odd
    number of elements from every subset. A single-element subset collapses
    to the telescoped constraint x = 1 directly.
    """
    heavy = inst.budget + 1
    eqs: list[Equation] = [
        Equation((i,), 0, 1) for i in range(inst.num_elements)
    ]
    blocks: list[tuple[int, ...]] = []
    next_var = inst.num_elements
    for members in inst.sets:
        ids: list[int] = []
        size = len(members)
        if size == 1:
            ids.append(len(eqs))
            eqs.append(Equation((members[0],), 1, heavy))
        else:
            chain = list(range(next_var, next_var + size - 1))
            next_var += size - 1
            ids.append(len(eqs))
            eqs.append(Equation.make((chain[0], members[0]), 0, heavy))
            for r in range(1, size - 1):
                ids.append(len(eqs))
                eqs.append(
                    Equation.make((chain[r - 1], chain[r], members[r]), 0, heavy)
                )
            ids.append(len(eqs))
            eqs.append(Equation.make((chain[-1], members[-1]), 1, heavy))
        blocks.append(tuple(ids))
    system = LinSystem(next_var, tuple(eqs))
    return OddSetReduction(system, inst.budget, tuple(blocks), inst.num_elements)


def chain_block_parity_check(system: LinSystem, block, x_vars) -> int:
    """Audit one chain block: does it telescope to odd parity on its x-vars?

    Sums the block's equations over GF(2). Returns 1 iff all chain variables
    cancel (the summed lhs equals the block's ground variables, a subset of
    x_vars) and the summed rhs is 1; returns 0 otherwise.
    """
    block = tuple(block)
    if not block:
        raise GadgetError("empty block")
    allowed = set(x_vars)
    lhs_sum: set[int] = set()
    rhs_sum = 0
    ground: set[int] = set()
    for j in block:
        if not 0 <= j < len(system.equations):
            raise GadgetError(f"equation id {j} out of range")
        eqn = system.equations[j]
        lhs_sum ^= set(eqn.lhs)
        rhs_sum ^= eqn.rhs
        ground |= set(eqn.lhs) & allowed
    return 1 if (lhs_sum == ground and rhs_sum == 1) else 0


# ---------------------------------------------------------------------------
# Trace machinery


@dataclass(frozen=True)
class TraceStep:
    """One applied rule, with the systems before and after it."""

    rule: str
    data: dict
    pre_system: LinSystem
    post_system: LinSystem


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[TraceStep, ...]

    @property
    def original_system(self) -> LinSystem:
        return self.steps[0].pre_system

    @property
    def reduced_system(self) -> LinSystem:
        return self.steps[-1].post_system

    def map_assignment_back(self, assignment) -> tuple[int, ...]:
        """Map an assignment of the reduced system to the original system.

        The mapped assignment falsifies at most as much weight as the given
        one does on the reduced system; at the optimum the weights agree.
        """
        values = tuple(assignment)
        for step in reversed(self.steps):
            values = _map_back_step(step, values)
        return values

    def map_assignment_forward(self, assignment) -> tuple[int, ...]:
        """Extend an assignment of the original system to the reduced system.

        The extension falsifies at most as much weight as the input does on
        the original system, and exactly as much when the input is optimal:
        every gadget is extended along its cost-preserving witness, and
        equations dropped as always-satisfiable get their witness variables
        re-satisfied first.
        """
        values = tuple(assignment)
        for step in self.steps:
            values = _map_forward_step(step, values)
        return values


def _best_uniform_clone_value(step: TraceStep, values) -> int:
    """Pick the clone value whose uniform assignment falsifies least."""
    clones = step.data["clones"]
    best_value = 0
    best_falsified = None
    for v in (0, 1):
        candidate = list(values)
        for c in clones:
            candidate[c] = v
        falsified = evaluate(step.post_system, tuple(candidate))[1]
        if best_falsified is None or falsified < best_falsified:
            best_falsified = falsified
            best_value = v
    return best_value


def _map_back_step(step: TraceStep, values) -> tuple[int, ...]:
    rule = step.rule
    pre_n = step.pre_system.n
    if rule in ("normalize", "unit-expand", "opposing-pairs"):
        return tuple(values)
    if rule in ("degree4", "degree5plus"):
        v = _best_uniform_clone_value(step, values)
        out = list(values[:pre_n])
        out[step.data["variable"]] = v
        return tuple(out)
    if rule in ("arity-expand", "degree2-triplets"):
        return tuple(values[:pre_n])
    if rule == "always-satisfied-removal":
        return extend_assignment(step.data["log"], values)
    if rule == "deduplicate":
        out = list(values[:pre_n])
        for eqn in step.data["triples"]:
            x, y, z = eqn.lhs
            out[x] = eqn.rhs
            out[y] = 0
            out[z] = 0
        return tuple(out)
    if rule == "compact":
        out = [0] * pre_n
        for new_index, old_index in enumerate(step.data["kept"]):
            out[old_index] = values[new_index]
        return tuple(out)
    raise ContractViolationError(f"unknown trace rule {rule!r}")


def _map_forward_step(step: TraceStep, values) -> tuple[int, ...]:
    rule = step.rule
    if rule in ("normalize", "unit-expand", "opposing-pairs"):
        return tuple(values)
    if rule in ("degree4", "degree5plus"):
        clones = step.data["clones"]
        out = list(values)
        out.extend(values[clones[0]] for _ in clones[1:])
        return tuple(out)
    if rule == "arity-expand":
        out = list(values)
        for eq_index, fresh in step.data["expanded"]:
            eqn = step.pre_system.equations[eq_index]
            if eqn.arity == 2:
                x = eqn.lhs[0]
                out.extend((values[x], 0))  # u = x, v = 0 satisfies u+v+x=0
            else:
                parity = values[eqn.lhs[0]]
                # a = 1 shifts the mismatch onto a single gadget equation
                out.extend((0, 0, 0, 0) if parity == eqn.rhs else (1, 0, 0, 0))
        return tuple(out)
    if rule == "always-satisfied-removal":
        return extend_assignment(step.data["log"], values)
    if rule == "degree2-triplets":
        out = list(values)
        for (t1, t2, t3), _fresh in step.data["triplets"]:
            tie = values[t1] ^ values[t2]
            out.extend((0, 0, 0, tie, tie, tie, values[t3], values[t3], values[t3]))
        return tuple(out)
    if rule == "deduplicate":
        out = list(values)
        for eqn in step.data["triples"]:
            x, y, z = eqn.lhs
            out[x] = eqn.rhs ^ out[y] ^ out[z]
        for (x, y, z), rhs, _fresh in step.data["pairs"]:
            parity = out[x] ^ out[y] ^ out[z]
            c = out[z] if parity == rhs else out[z] ^ 1
            out.extend((out[x], out[y], c, out[x], out[y], c))
        return tuple(out)
    if rule == "compact":
        return tuple(values[old] for old in step.data["kept"])
    raise ContractViolationError(f"unknown trace rule {rule!r}")


def _require_unit_weights(system: LinSystem, op: str) -> None:
    if any(e.weight != 1 for e in system.equations):
        raise GadgetError(f"{op} requires unit weights")


# ---------------------------------------------------------------------------
# Occurrence (degree) reduction rules


def _reduce_degree4_step(system: LinSystem, variable: int) -> tuple[LinSystem, TraceStep]:
    _require_unit_weights(system, "degree-4 rule")
    occ = occurrence_counts(system)
    if occ[variable] != 4:
        raise GadgetError(f"variable {variable} occurs {occ[variable]} times, not 4")
    clones = (variable, system.n, system.n + 1, system.n + 2)
    eqs: list[Equation] = []
    used = 0
    for eqn in system.equations:
        if variable in eqn.lhs:
            replaced = tuple(clones[used] if v == variable else v for v in eqn.lhs)
            eqs.append(Equation.make(replaced, eqn.rhs, 1))
            used += 1
        else:
            eqs.append(eqn)
    ring = ((0, 1), (1, 2), (2, 3), (3, 0))
    for a, b in ring:
        eqs.append(Equation.make((clones[a], clones[b]), 0, 1))
    post = LinSystem(system.n + 3, tuple(eqs), system.forced_falsified)
    step = TraceStep(
        "degree4", {"variable": variable, "clones": clones}, system, post
    )
    return post, step


def _reduce_degree5plus_step(
    system: LinSystem, variable: int
) -> tuple[LinSystem, TraceStep]:
    _require_unit_weights(system, "degree-5+ rule")
    occ = occurrence_counts(system)
    degree = occ[variable]
    if degree < 5:
        raise GadgetError(f"variable {variable} occurs {degree} times, below 5")
    clones = (variable,) + tuple(range(system.n, system.n + 5))
    eqs: list[Equation] = []
    used = 0
    for eqn in system.equations:
        if variable in eqn.lhs:
            # Fill the last clone first, round robin, so the sorted original
            # occurrence counts sit between floor(d/6) and ceil(d/6).
            clone = clones[5 - (used % 6)]
            replaced = tuple(clone if v == variable else v for v in eqn.lhs)
            eqs.append(Equation.make(replaced, eqn.rhs, 1))
            used += 1
        else:
            eqs.append(eqn)
    copies = -((degree - 2) // -6)  # ceil((d-2)/6)
    pairs = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4), (2, 5))
    for a, b in pairs:
        for _ in range(copies):
            eqs.append(Equation.make((clones[a], clones[b]), 0, 1))
    post = LinSystem(system.n + 5, tuple(eqs), system.forced_falsified)
    step = TraceStep(
        "degree5plus",
        {"variable": variable, "clones": clones, "copies": copies},
        system,
        post,
    )
    return post, step


def reduce_degree4(system: LinSystem, variable: int) -> LinSystem:
    """Split a variable occurring 4 times into a 4-cycle of fresh variables."""
    return _reduce_degree4_step(system, variable)[0]


def reduce_degree5plus(system: LinSystem, variable: int) -> LinSystem:
    """Split a variable occurring 5+ times into 6 ring-and-chord-tied clones."""
    return _reduce_degree5plus_step(system, variable)[0]


def _normalize_max_degree3_steps(
    system: LinSystem,
) -> tuple[LinSystem, list[TraceStep]]:
    _require_unit_weights(system, "degree normalization")
    steps: list[TraceStep] = []
    current = system
    while True:
        occ = occurrence_counts(current)
        worst = max(occ, default=0)
        if worst <= 3:
            return current, steps
        variable = occ.index(worst)
        if worst == 4:
            current, step = _reduce_degree4_step(current, variable)
        else:
            current, step = _reduce_degree5plus_step(current, variable)
        steps.append(step)


def normalize_max_degree3(system: LinSystem) -> tuple[LinSystem, ReductionTrace]:
    """Apply the degree rules, worst variable first, until every d(x) <= 3."""
    post, steps = _normalize_max_degree3_steps(system)
    return post, ReductionTrace(tuple(steps))


# ---------------------------------------------------------------------------
# Arity expansion to exactly three variables per equation


def _expand_arity_step(system: LinSystem) -> tuple[LinSystem, TraceStep]:
    _require_unit_weights(system, "arity expansion")
    next_var = system.n
    eqs: list[Equation] = []
    expanded: list[tuple[int, tuple[int, ...]]] = []
    for j, eqn in enumerate(system.equations):
        if eqn.arity == 3:
            eqs.append(eqn)
        elif eqn.arity == 2:
            x, y = eqn.lhs
            u, v = next_var, next_var + 1
            next_var += 2
            eqs.append(Equation.make((u, v, x), 0, 1))
            eqs.append(Equation.make((u, v, y), eqn.rhs, 1))
            expanded.append((j, (u, v)))
        elif eqn.arity == 1:
            x = eqn.lhs[0]
            a, b, u, v = range(next_var, next_var + 4)
            next_var += 4
            eqs.append(Equation.make((a, b, x), eqn.rhs, 1))
            eqs.append(Equation.make((u, v, a), 0, 1))
            eqs.append(Equation.make((u, v, b), 0, 1))
            expanded.append((j, (a, b, u, v)))
        else:
            raise GadgetError(
                f"arity {eqn.arity} equation cannot be expanded to arity 3"
            )
    post = LinSystem(next_var, tuple(eqs), system.forced_falsified)
    step = TraceStep("arity-expand", {"expanded": tuple(expanded)}, system, post)
    return post, step


def expand_arity_to_3(system: LinSystem) -> LinSystem:
    """Pad arity-1 and arity-2 equations to arity 3 with fresh variables.

    A satisfied source equation extends to satisfy the whole gadget; a
    falsified one forces exactly one falsified gadget equation, so the
    optimum is preserved.
    """
    return _expand_arity_step(system)[0]


# ---------------------------------------------------------------------------
# Occurrence exactly three


def _enforce_degree_steps(system: LinSystem) -> tuple[LinSystem, list[TraceStep]]:
    _require_unit_weights(system, "degree enforcement")
    occ = occurrence_counts(system)
    if any(c > 3 for c in occ):
        raise GadgetError("occurrence above 3; run degree normalization first")
    if any(e.arity != 3 for e in system.equations):
        raise GadgetError("arity must be exactly 3; run arity expansion first")
    steps: list[TraceStep] = []
    # Equations holding a variable that occurs nowhere else are always
    # satisfiable; drop them (cascading) and log the witnesses.
    mid, log = prune_singletons(system)
    steps.append(TraceStep("always-satisfied-removal", {"log": log}, system, mid))
    occ = occurrence_counts(mid)
    deg2 = [v for v in range(mid.n) if occ[v] == 2]
    if len(deg2) % 3:
        raise ContractViolationError(
            f"{len(deg2)} variables of occurrence 2; expected a multiple of 3"
        )
    next_var = mid.n
    eqs = list(mid.equations)
    triplets: list[tuple[tuple[int, int, int], tuple[int, ...]]] = []
    for i in range(0, len(deg2), 3):
        t1, t2, t3 = deg2[i : i + 3]
        z1, z2, z3, u1, u2, u3, u4, u5, u6 = range(next_var, next_var + 9)
        next_var += 9
        eqs.extend(
            (
                Equation.make((t1, t2, u1), 0),
                Equation.make((u1, u2, z1), 0),
                Equation.make((u2, u3, z1), 0),
                Equation.make((u2, u3, z1), 0),
                Equation.make((u3, u1, z2), 0),
                Equation.make((t3, u4, z2), 0),
                Equation.make((u4, u5, z2), 0),
                Equation.make((u5, u6, z3), 0),
                Equation.make((u5, u6, z3), 0),
                Equation.make((u6, u4, z3), 0),
            )
        )
        triplets.append(((t1, t2, t3), (z1, z2, z3, u1, u2, u3, u4, u5, u6)))
    post = LinSystem(next_var, tuple(eqs), mid.forced_falsified)
    steps.append(TraceStep("degree2-triplets", {"triplets": tuple(triplets)}, mid, post))
    return post, steps


def enforce_degree_exactly3(system: LinSystem) -> tuple[LinSystem, ReductionTrace]:
    """Make every used variable occur exactly three times.

    Always-satisfiable equations (those with a singly-occurring variable) are
    removed first; the remaining occurrence-2 variables are grouped into
    ascending-index triplets, each tied to nine fresh variables by ten unit
    equations that any assignment of the triplet can satisfy in full.
    """
    post, steps = _enforce_degree_steps(system)
    return post, ReductionTrace(tuple(steps))


# ---------------------------------------------------------------------------
# Duplicate elimination


def _dedup_step(system: LinSystem) -> tuple[LinSystem, TraceStep]:
    _require_unit_weights(system, "deduplication")
    if any(e.arity != 3 for e in system.equations):
        raise GadgetError("deduplication expects arity exactly 3")
    groups: dict[tuple[int, ...], list[int]] = {}
    for j, eqn in enumerate(system.equations):
        groups.setdefault(eqn.lhs, []).append(j)
    occ = occurrence_counts(system)
    for lhs, members in groups.items():
        if len({system.equations[j].rhs for j in members}) > 1:
            raise ContractViolationError(
                f"equations with lhs {lhs} disagree on rhs"
            )
        if len(members) > 3:
            raise ContractViolationError(
                f"{len(members)} copies of lhs {lhs}; at most 3 possible"
            )
    next_var = system.n
    eqs: list[Equation] = []
    pairs: list[tuple[tuple[int, ...], int, tuple[int, ...]]] = []
    triples: list[Equation] = []
    for j, eqn in enumerate(system.equations):
        members = groups[eqn.lhs]
        if len(members) == 1:
            eqs.append(eqn)
            continue
        if j != members[0]:
            continue
        if len(members) == 3:
            for v in eqn.lhs:
                if occ[v] != 3:
                    raise ContractViolationError(
                        f"variable {v} of a triple copy occurs elsewhere"
                    )
            triples.append(eqn)
            continue
        # Two copies: replace with eight equations over six fresh variables.
        # Under an assignment satisfying the copied equation all eight hold;
        # otherwise each inconsistent half forces one falsified equation,
        # matching the weight of the two lost copies.
        x, y, z = eqn.lhs
        b = eqn.rhs
        a1, b1, c1, a2, b2, c2 = range(next_var, next_var + 6)
        next_var += 6
        eqs.extend(
            (
                Equation.make((x, y, c1), b),
                Equation.make((a1, b1, c1), b),
                Equation.make((a1, b1, z), b),
                Equation.make((x, y, c2), b),
                Equation.make((a2, b2, c2), b),
                Equation.make((a2, b2, z), b),
                Equation.make((a1, b2, c1), b),
                Equation.make((a2, b1, c2), b),
            )
        )
        pairs.append((eqn.lhs, b, (a1, b1, c1, a2, b2, c2)))
    post = LinSystem(next_var, tuple(eqs), system.forced_falsified)
    step = TraceStep(
        "deduplicate",
        {"pairs": tuple(pairs), "triples": tuple(triples)},
        system,
        post,
    )
    return post, step


def deduplicate_equations(system: LinSystem) -> tuple[LinSystem, ReductionTrace]:
    """Remove duplicate left-hand sides without changing the optimum.

    Three identical copies only involve variables occurring nowhere else, so
    the copies are always satisfiable and simply removed. Two copies are
    replaced by the eight-equation gadget over six fresh variables.
    """
    post, step = _dedup_step(system)
    return post, ReductionTrace((step,))


# ---------------------------------------------------------------------------
# Full pipeline


def _resolve_opposing_step(system: LinSystem) -> tuple[LinSystem, TraceStep]:
    """Fold pairs L=0 / L=1 with the same lhs into the forced ledger.

    Every assignment falsifies exactly one side of such a pair, costing at
    least the lighter weight; what remains is a single equation carrying the
    weight difference. Pointwise exact, so both assignment maps are the
    identity. Duplicate-elimination later relies on this having run.
    """
    by_lhs: dict[tuple[int, ...], list[Equation]] = {}
    for eqn in system.equations:
        by_lhs.setdefault(eqn.lhs, []).append(eqn)
    forced = system.forced_falsified
    eqs: list[Equation] = []
    resolved: list[tuple[int, ...]] = []
    for lhs, members in sorted(by_lhs.items()):
        weights = [0, 0]
        for eqn in members:
            weights[eqn.rhs] += eqn.weight
        if weights[0] and weights[1]:
            resolved.append(lhs)
            forced += min(weights)
            if weights[0] != weights[1]:
                heavier = 0 if weights[0] > weights[1] else 1
                eqs.append(Equation(lhs, heavier, abs(weights[0] - weights[1])))
        else:
            eqs.extend(members)
    post = LinSystem(system.n, tuple(eqs), forced)
    return post, TraceStep(
        "opposing-pairs", {"resolved": tuple(resolved)}, system, post
    )


def _compact_step(system: LinSystem) -> tuple[LinSystem, TraceStep]:
    occ = occurrence_counts(system)
    kept = tuple(v for v in range(system.n) if occ[v] > 0)
    remap = {old: new for new, old in enumerate(kept)}
    eqs = tuple(
        Equation(tuple(remap[v] for v in e.lhs), e.rhs, e.weight)
        for e in system.equations
    )
    post = LinSystem(len(kept), eqs, system.forced_falsified)
    return post, TraceStep("compact", {"kept": kept}, system, post)


def to_eq3_eq3(system: LinSystem) -> tuple[LinSystem, ReductionTrace]:
    """Full pipeline to a unit-weight (=3,=3) system with distinct lhs.

    Stages: normalize, fold opposing same-lhs pairs into the forced ledger,
    expand weights to unit copies, cut occurrences down to 3, pad arities up
    to 3, enforce occurrence exactly 3, deduplicate, and finally drop unused
    variable slots. Each stage preserves the minimum falsified weight, so
    the composition does too.
    """
    if any(e.arity > 3 for e in system.equations):
        raise InstanceClassError("pipeline input must have arity at most 3")
    steps: list[TraceStep] = []
    s0 = normalize(system)
    steps.append(TraceStep("normalize", {}, system, s0))
    s1, opposing = _resolve_opposing_step(s0)
    steps.append(opposing)
    s2 = expand_unit_weights(s1)
    steps.append(TraceStep("unit-expand", {}, s1, s2))
    s3, degree_steps = _normalize_max_degree3_steps(s2)
    steps.extend(degree_steps)
    s4, arity_step = _expand_arity_step(s3)
    steps.append(arity_step)
    s5, enforce_steps = _enforce_degree_steps(s4)
    steps.extend(enforce_steps)
    s6, dedup = _dedup_step(s5)
    steps.append(dedup)
    s7, compact = _compact_step(s6)
    steps.append(compact)
    _check_eq3_eq3(s7)
    return s7, ReductionTrace(tuple(steps))


def _check_eq3_eq3(system: LinSystem) -> None:
    if not system.equations:
        return
    occ = occurrence_counts(system)
    if any(e.arity != 3 or e.weight != 1 for e in system.equations):
        raise ContractViolationError("pipeline output is not unit-weight arity 3")
    if any(c != 3 for c in occ):
        raise ContractViolationError("pipeline output has a variable with d != 3")
    lhss = [e.lhs for e in system.equations]
    if len(set(lhss)) != len(lhss):
        raise ContractViolationError("pipeline output has duplicate left-hand sides")
