"""Exception hierarchy shared by all modules."""


class FqcertError(Exception):
    """Base class for every error raised by this package."""


class IndexOutOfRange(FqcertError, ValueError):
    pass


class RankMismatch(FqcertError, ValueError):
    pass


class TrivialWord(FqcertError, ValueError):
    pass


class NotCyclicallyReduced(FqcertError, ValueError):
    pass


class NotAPermutation(FqcertError, ValueError):
    pass


class NotConnected(FqcertError, ValueError):
    pass


class NotNormal(FqcertError, ValueError):
    pass


class ClosureTooLarge(FqcertError):
    pass


class VertexOutOfRange(FqcertError, ValueError):
    pass


class DimensionMismatch(FqcertError, ValueError):
    pass


class AllZeroResidues(FqcertError, ValueError):
    pass


class NotPrime(FqcertError, ValueError):
    pass


class ShapeMismatch(FqcertError, ValueError):
    pass


class NotIndependent(FqcertError):
    """Raised when a set of words fails the independence predicate.

    ``pair`` holds the 0-based indices of the first offending pair.
    """

    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"elements {pair[0]} and {pair[1]} are not independent")


class ElementsConjugate(FqcertError):
    """The two words are conjugate; ``conjugator`` h satisfies h^-1 a h = b."""

    def __init__(self, conjugator):
        self.conjugator = conjugator
        super().__init__(f"elements are conjugate, conjugator: {conjugator}")


class SearchExhausted(FqcertError):
    """No suitable cover was found within the configured caps."""

    def __init__(self, message, obstruction=None):
        self.obstruction = obstruction
        super().__init__(message)


class MalformedCertificate(FqcertError, ValueError):
    """Certificate text that cannot be parsed into the expected shape."""
