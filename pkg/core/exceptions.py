"""
Исключения вычислительного ядра
"""


class MarkoffError(ValueError):
    """Base class for precondition failures in the core package"""


class NoSolution(MarkoffError):
    """Requested object does not exist for the given input"""


class BadParams(MarkoffError):
    """Family parameters violate their arithmetic precondition"""


class NotNilpotent(MarkoffError):
    """Matrix exponential requested for a non-nilpotent matrix"""


class UnknownIdentity(MarkoffError):
    """Identity id not present in the catalog"""


class NotDivisibleBy3(MarkoffError):
    pass


class FactorizationFailed(MarkoffError):
    """Z X could not be written as a product A B of the expected shape"""


class NotAResidue(MarkoffError):
    """n is not a square root of -1 modulo the required modulus"""


class DegenerateTriple(MarkoffError):
    pass


class BadInput(MarkoffError):
    pass


class NotMarkoff(MarkoffError):
    pass


class BadDiscriminant(MarkoffError):
    pass


class NoCommonTriple(MarkoffError):
    """Two numbers do not occur together in any Markoff triple"""


class NotATriple(MarkoffError):
    pass


class SeedFailure(MarkoffError):
    """No consistent seed for the u/v recursion"""
