"""Exception types raised across the package."""


class QCHarmonicError(Exception):
    """Base class for all package errors."""


class ZeroConstantTerm(QCHarmonicError, ZeroDivisionError):
    """Series division by a divisor whose constant term vanishes."""


class NonUnitConstantTerm(QCHarmonicError, ValueError):
    """Logarithm requested of a series whose constant term is not 1."""


class DegenerateAnalyticPart(QCHarmonicError, ValueError):
    """h'(0) vanishes, so the dilatation g'/h' is undefined."""


class DegenerateDenominator(QCHarmonicError, ValueError):
    """A shear problem with 1 +/- omega(0) = 0."""


class AffineDegenerate(QCHarmonicError, ValueError):
    """Affine combination f0 + conj(b1 f0) with |b1| >= 1."""


class NonRealCoefficients(QCHarmonicError, ValueError):
    """Typical-reality check requested for a map with complex coefficients."""


class BranchAmbiguity(QCHarmonicError, ValueError):
    """A closed form was evaluated where its logarithms leave the principal branch."""


class GenerationFailure(QCHarmonicError, RuntimeError):
    """A random trial could not produce an admissible map."""


class ParseError(QCHarmonicError, ValueError):
    """Malformed catalog identifier or command-line value."""
