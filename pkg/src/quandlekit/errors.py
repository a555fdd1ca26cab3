"""Exception types shared across the package.

Every error that signals bad input or a violated precondition derives from
QuandleKitError, so callers (and the CLI) can catch one base class.
"""


class QuandleKitError(ValueError):
    """Base class for all errors raised by this package."""


class CapExceeded(QuandleKitError):
    """Input is too large for the configured desk-scale cap."""


class ParseError(QuandleKitError):
    """A textual spec or JSON document could not be parsed."""


class UnsupportedSpec(QuandleKitError):
    """The group spec names a constructor outside the built-in catalog."""


class NotASubgroup(QuandleKitError):
    """A stabilizer computation produced a set not closed under composition."""


class NotAHomomorphism(QuandleKitError):
    """A map that was required to be a homomorphism is not one."""


class NotAbelian(QuandleKitError):
    """An abelian group was required."""


class NotAutomorphism(QuandleKitError):
    """A permutation that was required to preserve a structure does not."""


class Axiom1Violation(QuandleKitError):
    """Table has x * x != x; carries the witness element."""

    def __init__(self, x):
        super().__init__(f"idempotence fails at element {x}")
        self.x = x


class Axiom2Violation(QuandleKitError):
    """Some column of the table is not a permutation; carries the column."""

    def __init__(self, y):
        super().__init__(f"right translation by {y} is not a bijection")
        self.y = y


class Axiom3Violation(QuandleKitError):
    """Self-distributivity fails; carries the witness triple."""

    def __init__(self, x, y, z):
        super().__init__(f"(x*y)*z != (x*z)*(y*z) at ({x}, {y}, {z})")
        self.triple = (x, y, z)


class DiagonalViolation(QuandleKitError):
    """A cocycle table has a non-identity entry on the diagonal."""

    def __init__(self, x):
        super().__init__(f"cocycle is not normalized at ({x}, {x})")
        self.x = x


class CocycleViolation(QuandleKitError):
    """The cocycle condition fails; carries the witness triple."""

    def __init__(self, x, y, z):
        super().__init__(f"cocycle condition fails at ({x}, {y}, {z})")
        self.triple = (x, y, z)


class NotInStabilizer(QuandleKitError):
    """The given pair does not fix the cocycle, so it induces no automorphism."""


class CosetLimitExceeded(QuandleKitError):
    """Coset enumeration hit the coset cap without completing.

    Hitting the cap says nothing about the index being infinite; retry with
    a larger cap if the presentation is expected to have small index.
    """


class ArithmeticOverflow(QuandleKitError):
    """Reserved for integer overflow in matrix arithmetic.

    Python integers are arbitrary precision, so the normal-form routines
    never raise this; the class is kept so callers can guard uniformly.
    """


class HypothesisViolated(QuandleKitError):
    """Input does not satisfy the hypothesis a report or check requires."""


class SigmaNotHom(QuandleKitError):
    """The first gluing map of a union spec is not a quandle homomorphism."""


class TauNotHom(QuandleKitError):
    """The second gluing map of a union spec is not a quandle homomorphism."""


class Condition1Violated(QuandleKitError):
    """Mixed compatibility condition (1) of a union spec fails."""

    def __init__(self, x, y, z):
        super().__init__(f"union condition (1) fails at ({x}, {y}, {z})")
        self.triple = (x, y, z)


class Condition2Violated(QuandleKitError):
    """Mixed compatibility condition (2) of a union spec fails."""

    def __init__(self, x, y, z):
        super().__init__(f"union condition (2) fails at ({x}, {y}, {z})")
        self.triple = (x, y, z)


class FixedPointHypothesisViolated(QuandleKitError):
    """A compatible assignment does not fix the required point."""

    def __init__(self, x):
        super().__init__(f"assignment at {x} does not fix {x}")
        self.x = x


class NotInvolutory(QuandleKitError):
    """An involutory quandle was required."""
