"""Exception hierarchy shared by all modules."""


class QVerifyError(Exception):
    """Base class for every error raised by this package."""


class UnboundSymbol(QVerifyError):
    pass


class NegativeValuation(QVerifyError):
    pass


class OrderMismatch(QVerifyError):
    pass


class NonUnitConstantTerm(QVerifyError):
    pass


class ZeroValuationBase(QVerifyError):
    pass


class IndexOutOfOrder(QVerifyError, IndexError):
    pass


class UnknownIdentity(QVerifyError, KeyError):
    def __str__(self):
        return "unknown identity: %s" % self.args[0] if self.args else "unknown identity"


class BuilderPreconditionViolated(QVerifyError, ValueError):
    pass


class NotDistinct(QVerifyError, ValueError):
    pass


class NotInA(QVerifyError, ValueError):
    pass


class ClassWeightMismatch(QVerifyError, ValueError):
    pass
