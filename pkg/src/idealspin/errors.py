"""Exception taxonomy shared by all modules."""


class IdealspinError(Exception):
    """Base class for all library errors."""


class IrreduciblePolyFailure(IdealspinError):
    """Defining polynomial is reducible over the rationals."""


class EvenDiscriminant(IdealspinError):
    """Quadratic parameter d is not congruent to 1 mod 4."""


class NormMinusOneUnitAbsent(IdealspinError):
    """Quadratic field whose fundamental unit has norm +1."""


class PrecisionExhausted(IdealspinError):
    """Embedding refinement hit the precision cap without resolving a sign."""


class SearchBoundExceeded(IdealspinError):
    """A bounded unit/exponent search ran out of budget."""


class SignSystemSingular(IdealspinError):
    """Unit sign vectors do not span the full sign space."""


class GeneratorNotFound(IdealspinError):
    """No principal generator found within the short-vector bound."""


class EvenModulus(IdealspinError):
    """Residue symbol requested with an even lower entry."""


class EvenEntry(IdealspinError):
    """Operation requires odd entries."""


class EvenIdeal(IdealspinError):
    """Spin requested for an even ideal."""


class NotCoprime(IdealspinError):
    """Arguments share a common ideal factor."""


class NotTotallyPositive(IdealspinError):
    """Element has a negative real embedding where positivity is required."""


class HypothesisViolated(IdealspinError):
    """Inputs do not satisfy the hypotheses of the requested relation."""


class CostGuard(IdealspinError):
    """Requested computation exceeds the configured budget."""
