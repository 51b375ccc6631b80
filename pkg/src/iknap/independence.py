"""Independence testing, cycle extraction, and per-profit-class bases.

A set S is independent when gamma(S) equals the plain profit sum p(S);
under a monotone submodular all-or-nothing oracle, independence is closed
under subsets and, within one profit class, forms a matroid.  That matroid
structure is what lets a plain greedy find the minimum-weight maximal
independent subset of each class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .errors import ChainNotIndependent, NotDependent, OracleViolation, SolverFailure
from .instances import Chain, Instance


class IndependenceContext:
    """Memoized independence tester bound to one instance.

    Verdicts are pure functions of the set, so memo entries never change
    once written; when the memo is full, new verdicts are still computed,
    just not stored.  Concurrent use is safe: racing writers store
    identical values.
    """

    def __init__(self, instance: Instance, memo_limit: int = 1 << 20):
        self.instance = instance
        self._memo: dict[frozenset, bool] = {}
        self._memo_limit = memo_limit

    def is_independent(self, items: Iterable[int]) -> bool:
        """gamma(S) == p(S), with exactly one oracle call on a memo miss."""
        s = frozenset(items)
        hit = self._memo.get(s)
        if hit is not None:
            return hit
        p = sum(self.instance.profit_of(i) for i in s)
        g = self.instance.oracle.evaluate(s)
        if g > p:
            raise OracleViolation(
                f"gamma(S) = {g} > p(S) = {p} for S={sorted(s)}; "
                "oracle is outside the all-or-nothing class"
            )
        verdict = g == p
        if len(self._memo) < self._memo_limit:
            self._memo[s] = verdict
        return verdict


def find_cycle(ctx: IndependenceContext, items: Iterable[int]) -> frozenset:
    """Shrink a dependent set to a cycle (dependent, all one-deletions independent).

    One descending-id pass: an item is removed whenever the set stays
    dependent without it.  Keep decisions stay valid as the set shrinks
    because independence is closed under subsets, so a single pass reaches
    minimality, and larger ids are discarded first (small-id tie-break).
    """
    c = frozenset(items)
    if ctx.is_independent(c):
        raise NotDependent(f"{sorted(c)} is independent; it contains no cycle")
    for i in sorted(c, reverse=True):
        rest = c - {i}
        if not ctx.is_independent(rest):
            c = rest
    return c


@dataclass(frozen=True)
class ClassBasis:
    """A minimum-weight maximal independent subset of one profit class."""

    class_index: int
    members: frozenset
    weight: int


def min_weight_basis(
    ctx: IndependenceContext, class_items: Iterable[int], class_index: int = 0
) -> ClassBasis:
    """Greedy basis of a profit class: weight-ascending, smallest id on ties.

    The independent subsets of a single profit class form a matroid, so the
    greedy output is maximal and of minimum total weight.  Costs exactly one
    independence test (= one oracle call on a fresh context) per class item.
    """
    inst = ctx.instance
    order = sorted(class_items, key=lambda i: (inst.weight_of(i), i))
    basis: set[int] = set()
    for i in order:
        if ctx.is_independent(basis | {i}):
            basis.add(i)
    return ClassBasis(class_index, frozenset(basis), inst.total_weight(basis))


def check_matroid_exchange(
    ctx: IndependenceContext,
    class_items: Iterable[int],
    sample_budget: int = 2_000,
    seed: int = 2024,
    exhaustive_limit: int = 8,
):
    """Probe the exchange property inside one profit class.

    For A within the class and independent S, S' within A with |S| < |S'|,
    some j in S' - S must keep S + j independent.  Exhaustive over all
    (A, S, S') for classes of size <= exhaustive_limit, seeded sampling
    otherwise.  Returns None or a counterexample (S, S', A).
    """
    items = sorted(class_items)
    n = len(items)

    def mask_set(mask: int) -> frozenset:
        return frozenset(items[b] for b in range(n) if mask >> b & 1)

    if n <= exhaustive_limit:
        ind = [ctx.is_independent(mask_set(m)) for m in range(1 << n)]
        for a_mask in range(1 << n):
            subs = []
            m = a_mask
            while True:  # enumerate submasks of a_mask
                if ind[m]:
                    subs.append(m)
                if m == 0:
                    break
                m = (m - 1) & a_mask
            by_size: dict[int, list[int]] = {}
            for m in subs:
                by_size.setdefault(bin(m).count("1"), []).append(m)
            for s_mask in subs:
                size = bin(s_mask).count("1")
                for bigger in range(size + 1, n + 1):
                    for s2_mask in by_size.get(bigger, ()):
                        diff = s2_mask & ~s_mask
                        ok = False
                        b = diff
                        while b:
                            low = b & -b
                            if ind[s_mask | low]:
                                ok = True
                                break
                            b ^= low
                        if not ok:
                            return mask_set(s_mask), mask_set(s2_mask), mask_set(a_mask)
        return None

    rng = random.Random(seed)
    for _ in range(sample_budget):
        a_mask = rng.getrandbits(n)
        s_mask = a_mask & rng.getrandbits(n)
        s2_mask = a_mask & rng.getrandbits(n)
        if bin(s_mask).count("1") >= bin(s2_mask).count("1"):
            continue
        s, s2 = mask_set(s_mask), mask_set(s2_mask)
        if not (ctx.is_independent(s) and ctx.is_independent(s2)):
            continue
        if not any(ctx.is_independent(s | {j}) for j in s2 - s):
            return s, s2, mask_set(a_mask)
    return None


def restrict_chain_to_basis(
    ctx: IndependenceContext,
    class_items: Iterable[int],
    basis: ClassBasis,
    chain: Chain,
) -> Chain:
    """Re-route an independent in-class chain through the class basis.

    Each S_t is replaced by the |S_t| lightest basis items (smaller id on
    ties); the result has the same gamma value and no more weight at every
    period.
    """
    class_items = frozenset(class_items)
    if not chain.final_set <= class_items:
        raise ValueError("chain leaves the profit class")
    if not ctx.is_independent(chain.final_set):
        raise ChainNotIndependent(
            f"chain's final set {sorted(chain.final_set)} is dependent"
        )
    inst = ctx.instance
    order = sorted(basis.members, key=lambda i: (inst.weight_of(i), i))
    sets = []
    for s in chain.sets():
        if len(s) > len(order):
            raise SolverFailure(
                "independent set larger than the class basis; basis is not maximal"
            )
        sets.append(order[: len(s)])
    return Chain.from_sets(sets)


def greedy_matroid_chain(inst: Instance, ctx: IndependenceContext | None = None) -> Chain:
    """Weight-ascending greedy chain.

    Scans items by (weight, id) once per period and inserts whatever still
    fits and keeps the knapsack content independent.  Optimal for instances
    whose oracle is a matroid rank function and whose coefficients are all
    one; a cheap baseline otherwise.
    """
    if ctx is None:
        ctx = IndependenceContext(inst)
    order = sorted(inst.item_ids, key=lambda i: (inst.weight_of(i), i))
    current: set[int] = set()
    weight = 0
    times: dict[int, int] = {}
    for t in range(1, inst.horizon + 1):
        cap = inst.capacities[t - 1]
        for i in order:
            if i in times:
                continue
            w = inst.weight_of(i)
            if weight + w <= cap and ctx.is_independent(current | {i}):
                current.add(i)
                weight += w
                times[i] = t
    return Chain(inst.horizon, times)
