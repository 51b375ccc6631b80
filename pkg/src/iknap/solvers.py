"""Solvers for modular incremental knapsack instances.

solve_exact is a depth-first branch-and-bound over per-item insertion
times; solve_heuristic is a density greedy plus seeded local search;
brute_force_chains is the deliberately unoptimized enumeration that serves
as ground truth for the test suites and benchmark ratios.  It applies no
value pruning at all, only exact feasibility pruning, so it stays
independent of the branch-and-bound's bounding logic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterator

from .errors import BudgetExceeded, LimitsExceeded
from .instances import Chain, Instance, Item


class IkInstance:
    """A modular incremental knapsack instance (no oracle: gamma(S) = p(S))."""

    __slots__ = ("items", "horizon", "capacities", "deltas", "_by_id")

    def __init__(self, items, horizon, capacities, deltas):
        self.items: tuple[Item, ...] = tuple(items)
        self.horizon = int(horizon)
        self.capacities: tuple[int, ...] = tuple(capacities)
        self.deltas: tuple[int, ...] = tuple(deltas)
        self._by_id = {it.id: it for it in self.items}

    def __len__(self) -> int:
        return len(self.items)

    @property
    def item_ids(self) -> tuple[int, ...]:
        return tuple(it.id for it in self.items)

    @property
    def profits_by_id(self) -> dict[int, int]:
        return {it.id: it.profit for it in self.items}

    def __repr__(self) -> str:
        return (
            f"IkInstance(n={len(self.items)}, T={self.horizon}, "
            f"W={list(self.capacities)}, deltas={list(self.deltas)})"
        )


def suffix_coefficients(deltas) -> tuple[int, ...]:
    """D[j] = deltas[j] + ... + deltas[T-1] (0-based), with D[T] = 0.

    An item inserted at 0-based period j earns p * D[j], so D collapses the
    chain objective into independent per-item terms.  D is non-increasing.
    """
    horizon = len(deltas)
    out = [0] * (horizon + 1)
    for j in range(horizon - 1, -1, -1):
        out[j] = deltas[j] + out[j + 1]
    return tuple(out)


@dataclass
class SolveLimits:
    """Size limits and budgets; defaults keep desk-scale runs under seconds."""

    max_n_exact: int = 18
    max_t_exact: int = 6
    max_states_brute: int = 20_000_000
    local_search_budget: int = 2_000

    @staticmethod
    def from_mapping(pairs: dict) -> "SolveLimits":
        limits = SolveLimits()
        known = set(limits.__dataclass_fields__)
        for key, value in pairs.items():
            if key not in known:
                raise KeyError(f"unknown limits key {key!r}; known: {sorted(known)}")
            setattr(limits, key, int(value))
        return limits


@dataclass
class SolveResult:
    """Outcome of one solver run; value always equals the chain's modular profit."""

    chain: Chain
    value: int
    optimal: bool
    nodes: int
    solver: str


def solve_exact(ik: IkInstance, limits: SolveLimits | None = None) -> SolveResult:
    """Optimal chain by branch-and-bound over per-item insertion times.

    Items are assigned a period in 1..T or "never", in descending p*D_1
    order.  Subtrees are pruned by (a) prefix-capacity infeasibility, (b) an
    integer bound placing every remaining item at its earliest individually
    feasible period, and (c) a per-period fractional-knapsack bound computed
    with exact rational arithmetic.  Fully deterministic.
    """
    limits = limits or SolveLimits()
    horizon = ik.horizon
    n = len(ik.items)
    if n > limits.max_n_exact:
        raise LimitsExceeded(f"n={n} exceeds max_n_exact={limits.max_n_exact}")
    if horizon > limits.max_t_exact:
        raise LimitsExceeded(f"T={horizon} exceeds max_t_exact={limits.max_t_exact}")
    caps = list(ik.capacities)
    dsum = suffix_coefficients(ik.deltas)
    deltas = list(ik.deltas)

    # Items heavier than the final capacity can never be inserted.
    order = sorted(
        (it for it in ik.items if it.weight <= caps[-1]),
        key=lambda it: (-it.profit * dsum[0], it.id),
    )
    m = len(order)
    ws = [it.weight for it in order]
    ps = [it.profit for it in order]
    # Positive-weight items in profit-density order, for bound (c).
    dens_pos = sorted(
        (i for i in range(m) if ws[i] > 0),
        key=lambda i: (-Fraction(ps[i], ws[i]), i),
    )

    never = horizon
    resid = caps[:]
    times = [never] * m
    assigned = [False] * m
    best_val = 0
    best_times = times[:]
    nodes = 0
    big = max(caps, default=0) + 1

    def fractional_bound(cur_val: int) -> int:
        zero_profit = sum(ps[i] for i in range(m) if not assigned[i] and ws[i] == 0)
        total = Fraction(0)
        for t in range(horizon):
            d = deltas[t]
            if not d:
                continue
            fill = Fraction(zero_profit)
            room = resid[t]
            for i in dens_pos:
                if assigned[i]:
                    continue
                if ws[i] <= room:
                    fill += ps[i]
                    room -= ws[i]
                elif room > 0:
                    fill += Fraction(ps[i] * room, ws[i])
                    break
                else:
                    break
            total += d * fill
        return cur_val + floor(total)

    def dfs(idx: int, cur_val: int) -> None:
        nonlocal best_val, best_times, nodes
        nodes += 1
        if idx == m:
            if cur_val > best_val:
                best_val = cur_val
                best_times = times[:]
            return
        # msuf[t] = min residual capacity over periods t..T-1
        msuf = [big] * (horizon + 1)
        for t in range(horizon - 1, -1, -1):
            msuf[t] = resid[t] if resid[t] < msuf[t + 1] else msuf[t + 1]
        bound = cur_val
        for i in range(idx, m):
            w = ws[i]
            for t in range(horizon):
                if msuf[t] >= w:
                    bound += ps[i] * dsum[t]
                    break
        if bound <= best_val:
            return
        if fractional_bound(cur_val) <= best_val:
            return
        w = ws[idx]
        earliest = None
        for t in range(horizon):
            if msuf[t] >= w:
                earliest = t
                break
        assigned[idx] = True
        if earliest is not None:
            for t in range(earliest, horizon):
                for s in range(t, horizon):
                    resid[s] -= w
                times[idx] = t
                dfs(idx + 1, cur_val + ps[idx] * dsum[t])
                for s in range(t, horizon):
                    resid[s] += w
            times[idx] = never
        dfs(idx + 1, cur_val)
        assigned[idx] = False

    dfs(0, 0)
    chain = Chain(
        horizon,
        {order[i].id: t + 1 for i, t in enumerate(best_times) if t < never},
    )
    return SolveResult(chain=chain, value=best_val, optimal=True, nodes=nodes, solver="exact")


def solve_heuristic(
    ik: IkInstance, seed: int = 0, limits: SolveLimits | None = None
) -> SolveResult:
    """Density greedy plus first-improvement local search.

    Greedy inserts items by p*D_1/w density at their earliest feasible
    period; local search then tries single-item time shifts, fresh inserts,
    and swaps of an inserted item for an uninserted one, scanning in a
    seeded random order until no move improves or the budget runs out.
    Deterministic per seed, and never worse than the greedy value.
    """
    limits = limits or SolveLimits()
    horizon = ik.horizon
    caps = list(ik.capacities)
    deltas = list(ik.deltas)
    dsum = suffix_coefficients(deltas)
    rng = random.Random(seed)
    active = {it.id: it for it in ik.items if it.weight <= caps[-1]}

    resid = caps[:]
    time_of: dict[int, int] = {}

    def earliest_feasible(w: int) -> int | None:
        best = None
        low = None
        for t in range(horizon - 1, -1, -1):
            low = resid[t] if low is None or resid[t] < low else low
            if low >= w:
                best = t
        return best

    def insert(i: int, t: int) -> None:
        w = active[i].weight
        for s in range(t, horizon):
            resid[s] -= w
        time_of[i] = t

    def remove(i: int) -> int:
        t = time_of.pop(i)
        w = active[i].weight
        for s in range(t, horizon):
            resid[s] += w
        return t

    def density_key(it: Item):
        if it.weight == 0:
            return (0, Fraction(0), it.id)
        return (1, -Fraction(it.profit * dsum[0], it.weight), it.id)

    for it in sorted(active.values(), key=density_key):
        t = earliest_feasible(it.weight)
        if t is not None:
            insert(it.id, t)

    current = sum(active[i].profit * dsum[t] for i, t in time_of.items())
    tried = 0
    budget = limits.local_search_budget
    improved = True
    while improved and tried < budget:
        improved = False
        inserted = sorted(time_of)
        outside = sorted(set(active) - set(time_of))
        moves: list[tuple] = []
        for i in inserted:
            for t in range(horizon):
                if t != time_of[i]:
                    moves.append(("shift", i, t))
        for j in outside:
            moves.append(("insert", j, -1))
            for i in inserted:
                moves.append(("swap", i, j))
        rng.shuffle(moves)
        for kind, a, b in moves:
            if tried >= budget:
                break
            tried += 1
            if kind == "shift":
                old = remove(a)
                gain = active[a].profit * (dsum[b] - dsum[old])
                if gain > 0 and min(resid[b:horizon]) >= active[a].weight:
                    insert(a, b)
                    current += gain
                    improved = True
                    break
                insert(a, old)
            elif kind == "insert":
                t = earliest_feasible(active[a].weight)
                if t is not None and active[a].profit * dsum[t] > 0:
                    insert(a, t)
                    current += active[a].profit * dsum[t]
                    improved = True
                    break
            else:  # swap a (inserted) for b (outside)
                old = remove(a)
                t = earliest_feasible(active[b].weight)
                gain = (active[b].profit * dsum[t] if t is not None else 0) - active[
                    a
                ].profit * dsum[old]
                if t is not None and gain > 0:
                    insert(b, t)
                    current += gain
                    improved = True
                    break
                insert(a, old)

    chain = Chain(horizon, {i: t + 1 for i, t in time_of.items()})
    value = sum(active[i].profit * dsum[t] for i, t in time_of.items())
    return SolveResult(chain=chain, value=value, optimal=False, nodes=tried, solver="heuristic")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def brute_force_chains(
    inst: "Instance | IkInstance", max_states: int | None = None
) -> tuple[int, Chain]:
    """Ground-truth optimum by exhaustive insertion-time enumeration.

    Enumerates every assignment of a period in 1..T or "never" to every
    item (pruning only provably infeasible prefixes), evaluates the profit
    through the aggregation oracle for full instances or the modular
    formula for IkInstances, and returns the maximum value with the
    lexicographically smallest optimal insertion-time vector ("never"
    ordered last).  Oracle values are cached per distinct set within a run.
    """
    with_oracle = isinstance(inst, Instance)
    horizon = inst.horizon
    n = len(inst.items)
    budget = max_states if max_states is not None else SolveLimits().max_states_brute
    if (horizon + 1) ** n > budget:
        raise BudgetExceeded(
            f"(T+1)^n = {(horizon + 1) ** n} assignments exceed budget {budget}"
        )
    items = sorted(inst.items, key=lambda it: it.id)
    ids = [it.id for it in items]
    ws = [it.weight for it in items]
    caps = list(inst.capacities)
    deltas = list(inst.deltas)
    dsum = suffix_coefficients(deltas)
    never = horizon

    resid = caps[:]
    times = [never] * n
    best_val = -1
    best_times = times[:]

    if with_oracle:
        oracle = inst.oracle
        group_mask = [0] * horizon
        memo: dict[int, int] = {0: 0}

        def leaf_value(_cur: int) -> int:
            total = 0
            mask = 0
            for t in range(horizon):
                gm = group_mask[t]
                if gm:
                    mask |= gm
                d = deltas[t]
                if d:
                    v = memo.get(mask)
                    if v is None:
                        v = oracle.evaluate(frozenset(ids[b] for b in _bits(mask)))
                        memo[mask] = v
                    total += d * v
            return total

    else:
        contrib = [[it.profit * dsum[t] for t in range(horizon)] for it in items]

        def leaf_value(cur: int) -> int:
            return cur

    def dfs(idx: int, cur_val: int) -> None:
        nonlocal best_val, best_times
        if idx == n:
            v = leaf_value(cur_val)
            if v > best_val:
                best_val = v
                best_times = times[:]
            return
        w = ws[idx]
        earliest = None
        low = None
        for t in range(horizon - 1, -1, -1):
            low = resid[t] if low is None or resid[t] < low else low
            if low >= w:
                earliest = t
        if earliest is not None:
            bit = 1 << idx
            for t in range(earliest, horizon):
                for s in range(t, horizon):
                    resid[s] -= w
                times[idx] = t
                if with_oracle:
                    group_mask[t] |= bit
                    dfs(idx + 1, 0)
                    group_mask[t] ^= bit
                else:
                    dfs(idx + 1, cur_val + contrib[idx][t])
                for s in range(t, horizon):
                    resid[s] += w
            times[idx] = never
        dfs(idx + 1, cur_val)

    dfs(0, 0)
    chain = Chain(
        horizon, {ids[i]: t + 1 for i, t in enumerate(best_times) if t < never}
    )
    return best_val, chain


def iter_feasible_chains(
    inst: "Instance | IkInstance", max_states: int | None = None
) -> Iterator[Chain]:
    """Yield every feasible chain of a small instance (test utility)."""
    horizon = inst.horizon
    n = len(inst.items)
    budget = max_states if max_states is not None else SolveLimits().max_states_brute
    if (horizon + 1) ** n > budget:
        raise BudgetExceeded(
            f"(T+1)^n = {(horizon + 1) ** n} assignments exceed budget {budget}"
        )
    items = sorted(inst.items, key=lambda it: it.id)
    ids = [it.id for it in items]
    ws = [it.weight for it in items]
    caps = list(inst.capacities)
    never = horizon
    resid = caps[:]
    times = [never] * n

    def rec(idx: int) -> Iterator[Chain]:
        if idx == n:
            yield Chain(
                horizon, {ids[i]: t + 1 for i, t in enumerate(times) if t < never}
            )
            return
        w = ws[idx]
        earliest = None
        low = None
        for t in range(horizon - 1, -1, -1):
            low = resid[t] if low is None or resid[t] < low else low
            if low >= w:
                earliest = t
        if earliest is not None:
            for t in range(earliest, horizon):
                for s in range(t, horizon):
                    resid[s] -= w
                times[idx] = t
                yield from rec(idx + 1)
                for s in range(t, horizon):
                    resid[s] += w
            times[idx] = never
        yield from rec(idx + 1)

    yield from rec(0)
