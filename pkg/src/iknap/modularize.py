"""The reduction pipeline: solve an oracle-priced instance through a modular one.

Restricting an instance to the union of its per-profit-class minimum-weight
bases yields a modular instance whose every feasible chain has the same
profit under both functionals, and whose optimum matches the original
optimum.  Any modular-instance solver can therefore be plugged in
downstream; its guarantee carries over unchanged.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InfeasibleInternal, InvalidInstance, OracleViolation, SolverFailure
from .independence import ClassBasis, IndependenceContext, min_weight_basis
from .instances import (
    Chain,
    Instance,
    is_feasible,
    preprocess_singletons,
    profit_partition,
    profit_phi,
    profit_phi_bar,
    validate_instance,
)
from .solvers import (
    IkInstance,
    SolveLimits,
    SolveResult,
    brute_force_chains,
    solve_exact,
    solve_heuristic,
)


@dataclass(frozen=True)
class ModularizedInstance:
    """The modular instance over the kept items, with the original alongside.

    Kept items keep their original ids, weights, and profits, so chains of
    the modular instance are directly chains of the original one.
    """

    original: Instance
    ik: IkInstance
    kept_ids: tuple[int, ...]
    bases: tuple[ClassBasis, ...]


def modularize(inst: Instance) -> ModularizedInstance:
    """Restrict to the union of per-class minimum-weight greedy bases.

    Expects a validated, singleton-preprocessed instance.  Costs one sort
    plus exactly one independence oracle call per retained item.
    """
    partition = profit_partition(inst)
    ctx = IndependenceContext(inst)
    bases = tuple(
        min_weight_basis(ctx, members, index)
        for index, (_, members) in enumerate(partition.classes, start=1)
    )
    kept = sorted(i for basis in bases for i in basis.members)
    ik = IkInstance(
        [inst.item(i) for i in kept], inst.horizon, inst.capacities, inst.deltas
    )
    return ModularizedInstance(original=inst, ik=ik, kept_ids=tuple(kept), bases=bases)


@dataclass
class SolveReport:
    """Machine-readable outcome of one pipeline run."""

    phi: int
    phi_bar: int
    oracle_calls: int
    kept_items: tuple[int, ...]
    chain: Chain
    solver: str
    elapsed_ms: float
    dropped_items: tuple[int, ...] = ()


def _run_ik_solver(
    name: str, ik: IkInstance, limits: SolveLimits, seed: int
) -> SolveResult:
    if name == "exact":
        return solve_exact(ik, limits)
    if name == "heuristic":
        return solve_heuristic(ik, seed=seed, limits=limits)
    if name == "brute":
        value, chain = brute_force_chains(ik, limits.max_states_brute)
        return SolveResult(chain=chain, value=value, optimal=True, nodes=0, solver="brute")
    raise SolverFailure(f"unknown solver {name!r}; expected exact, heuristic, or brute")


def solve_ik_aon(
    inst: Instance,
    solver: str = "auto",
    limits: SolveLimits | None = None,
    seed: int = 0,
) -> SolveReport:
    """Full pipeline: validate, preprocess, modularize, solve, recheck.

    "auto" picks the exact solver whenever the kept item count and horizon
    are within limits, the heuristic otherwise.  The returned chain is over
    original item ids and is always re-verified: feasibility against the
    original capacities, and the oracle profit recomputed from scratch,
    which must equal the modular profit.  A mismatch means the oracle broke
    the all-or-nothing contract.
    """
    limits = limits or SolveLimits()
    started = time.perf_counter()
    calls_before = inst.oracle.call_count
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstance(problems)
    reduced, dropped = preprocess_singletons(inst)
    mod = modularize(reduced)
    name = solver
    if solver == "auto":
        in_limits = (
            len(mod.ik) <= limits.max_n_exact and inst.horizon <= limits.max_t_exact
        )
        name = "exact" if in_limits else "heuristic"
    result = _run_ik_solver(name, mod.ik, limits, seed)
    chain = result.chain
    if not is_feasible(inst, chain):
        raise InfeasibleInternal(
            f"solver {name!r} returned an infeasible chain: {chain!r}"
        )
    phi_bar = profit_phi_bar(inst.profits_by_id, inst.deltas, chain)
    if phi_bar != result.value:
        raise InfeasibleInternal(
            f"solver {name!r} misreported its value: {result.value} != {phi_bar}"
        )
    phi = profit_phi(inst, chain)
    if phi != phi_bar:
        raise OracleViolation(
            f"oracle profit {phi} != modular profit {phi_bar} on the kept items; "
            "the aggregation oracle violates the all-or-nothing contract"
        )
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return SolveReport(
        phi=phi,
        phi_bar=phi_bar,
        oracle_calls=inst.oracle.call_count - calls_before,
        kept_items=mod.kept_ids,
        chain=chain,
        solver=name,
        elapsed_ms=elapsed_ms,
        dropped_items=dropped,
    )


@dataclass
class VerificationReport:
    """Outcome of an independent recheck of a claimed solution."""

    ok: bool
    nested: bool
    feasible: bool
    phi: int | None
    mismatches: list[str]


def verify_solution(
    inst: Instance, chain: "Chain | Sequence[Iterable[int]]", claimed_phi: int
) -> VerificationReport:
    """Recheck feasibility and recompute the oracle profit from scratch.

    Accepts either a Chain or explicit sets S_1..S_T (which lets tampered,
    non-nested set lists be diagnosed).  Mismatches are reported, never
    raised.
    """
    if not isinstance(chain, Chain):
        try:
            chain = Chain.from_sets(chain)
        except ValueError as exc:
            return VerificationReport(
                ok=False,
                nested=False,
                feasible=False,
                phi=None,
                mismatches=[f"NotNested: {exc}"],
            )
    mismatches: list[str] = []
    feasible = is_feasible(inst, chain)
    if not feasible:
        mismatches.append("Infeasible: some period exceeds its capacity")
    phi = profit_phi(inst, chain)
    if phi != claimed_phi:
        mismatches.append(f"PhiMismatch: recomputed {phi} != claimed {claimed_phi}")
    return VerificationReport(
        ok=not mismatches, nested=True, feasible=feasible, phi=phi, mismatches=mismatches
    )
