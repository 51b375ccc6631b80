#!/usr/bin/env python3
"""Exercise the oracle contract checkers on well-behaved and broken inputs.

Solvers rely on two properties: monotone submodularity, and all-or-nothing
marginals (each item contributes its full profit or nothing).  The checkers
enumerate small grounds exhaustively and fall back to seeded sampling on
larger ones.
"""

from iknap import (
    AggregationOracle,
    MatroidSpec,
    check_aon_property,
    check_submodularity,
    coverage_oracle,
    matroid_rank_sum_oracle,
    modular_oracle,
)


def show(name, aon, submodular):
    print(f"{name:<35s} all-or-nothing: {aon:<18s} submodular: {submodular}")


def verdict(witness):
    return "ok" if witness is None else f"violated {witness}"


profits = {i: 2 for i in range(1, 5)}
oracle = modular_oracle(profits)
show(
    "modular (4 items)",
    verdict(check_aon_property(oracle, profits, profits)),
    verdict(check_submodularity(oracle, profits)),
)

oracle = matroid_rank_sum_oracle(
    [(2, MatroidSpec.uniform([1, 2, 3], 1)), (7, MatroidSpec.graphic([(4, 0, 1), (5, 1, 2), (6, 0, 2)]))]
)
profits = {1: 2, 2: 2, 3: 2, 4: 7, 5: 7, 6: 7}
show(
    "matroid rank sum (two classes)",
    verdict(check_aon_property(oracle, profits, profits)),
    verdict(check_submodularity(oracle, profits)),
)

# A path graph: the middle vertex covers two unit-profit edges at once,
# so coverage is submodular but not all-or-nothing.
oracle = coverage_oracle([(0, 1), (1, 2)], {1: 0, 2: 1, 3: 2})
profits = {1: 1, 2: 1, 3: 1}
show(
    "edge coverage on a path",
    verdict(check_aon_property(oracle, profits, profits)),
    verdict(check_submodularity(oracle, profits)),
)

# A hand-built supermodular function: the pair {1, 2} is worth a bonus.
bonus = AggregationOracle(
    lambda s: len(s) + (10 if {1, 2} <= s else 0), {"kind": "demo-supermodular"}
)
profits = {1: 1, 2: 1, 3: 1}
show(
    "supermodular bonus pair",
    verdict(check_aon_property(bonus, profits, profits)),
    verdict(check_submodularity(bonus, profits)),
)
