"""Error taxonomy shared by all modules."""


class SpecrecError(Exception):
    """Base class for all toolkit errors."""


class NonInvertible(SpecrecError):
    """Residue has no multiplicative inverse (gcd with modulus exceeds 1)."""


class ModulusMismatch(SpecrecError):
    """Character modulus does not divide the sum modulus."""


class GcdViolation(SpecrecError):
    """A coprimality precondition such as (d, q) = 1 fails."""


class RegionViolation(SpecrecError):
    """Parameters lie outside the convergence region of a series or contour."""


class PrecisionLoss(SpecrecError):
    """Estimated error exceeds the precision contract."""


class Pole(SpecrecError):
    """Evaluation requested exactly at a pole."""


class PoleCollision(SpecrecError):
    """Two poles too close to separate at the working resolution."""


class UnsupportedContinuation(SpecrecError):
    """Requested continuation mode is not available for these parameters."""


class ConductorViolation(SpecrecError):
    """Conductor divisibility requirements fail."""


class DomainViolation(SpecrecError):
    """Rational parameter outside its stated open interval."""


class UnknownSuite(SpecrecError):
    """Verification suite name not registered."""


class UnknownEvaluator(SpecrecError):
    """Compute evaluator name not registered."""


class ConfigInvalid(SpecrecError):
    """Suite configuration fails validation."""
