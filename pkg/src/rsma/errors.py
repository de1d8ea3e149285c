"""Semantic exception hierarchy for the rsma package.

Every error carries an ``exit_code`` used by the CLI and echoed in service
error payloads: 2 for invalid inputs, 3 for numerical-domain violations,
4 for infeasible configurations, 1 for internal contract failures.
"""


class RsmaError(Exception):
    """Base error for this package."""

    exit_code = 1


class InvalidInput(RsmaError, ValueError):
    """Inputs violate a type contract (sign, range, finiteness, shape)."""

    exit_code = 2


class DegeneratePair(InvalidInput):
    """The two users' SINRs coincide within floating tolerance.

    Every bound divides by quantities that vanish when the strong/weak
    ordering collapses, so the pair is rejected rather than tie-broken.
    """


class GridTooCoarse(InvalidInput):
    """Grid step exceeds every analytic interval; the comparison is meaningless."""


class NumericalDomain(RsmaError, ArithmeticError):
    """A logarithm argument or denominator left its valid domain.

    Occurs only at measure-zero parameter boundaries excluded by the open
    intervals; raised instead of clamping or returning infinities.
    """

    exit_code = 3


class DenominatorSignViolation(NumericalDomain):
    """A bound's denominator is on the wrong side of (or too close to) zero."""


class Infeasible(RsmaError):
    """No parameter choice satisfies both users' rate requirements."""

    exit_code = 4


class NoFeasibleLambda(Infeasible):
    """No private-power split below 1 admits a feasible common-power interval."""


class InfeasibleAtBoundary(Infeasible):
    """The feasible set extends to the domain boundary, so no interior endpoint exists."""


class InternalContractViolation(RsmaError):
    """A derived quantity failed a self-check that must hold by construction."""

    exit_code = 1
