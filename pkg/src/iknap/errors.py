"""Exception types shared across the library."""


class InvalidInstance(ValueError):
    """Raised when an instance fails validation; carries the full report."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid instance")


class UnknownItemId(ValueError):
    """An item id that does not belong to the instance (or oracle ground)."""


class OracleViolation(RuntimeError):
    """The aggregation oracle broke a contract solvers rely on.

    Examples: a singleton value outside {0, p_i}, or gamma(S) > p(S).
    Solver guarantees are void once this fires.
    """


class NotDependent(ValueError):
    """Cycle extraction was asked for a set that is independent."""


class ChainNotIndependent(ValueError):
    """A chain operation required an independent chain and got a dependent one."""


class OverlappingClasses(ValueError):
    """Per-class matroid grounds must be pairwise disjoint."""


class SolverFailure(RuntimeError):
    """A downstream solver failed or returned garbage."""


class InfeasibleInternal(SolverFailure):
    """An internal solver returned an infeasible chain (a bug signal)."""


class LimitsExceeded(RuntimeError):
    """Instance is outside the configured size limits of the chosen solver."""


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the configured state budget."""


class NotSubcubic(ValueError):
    """Graph has a vertex of degree > 3, a self-loop, or a parallel edge."""


class BadK(ValueError):
    """Cover size k outside 1..|V|."""


class BadFamily(ValueError):
    """Unknown instance-family name."""


class InfeasibleChain(ValueError):
    """A chain that was required to be feasible is not."""
