'''Custom exceptions used by Newton-CondG.

'''


class SingularMatrix(Exception):
    pass


class SingularJacobian(SingularMatrix):
    pass


class DomainViolation(Exception):
    pass


class DimensionMismatch(ValueError):
    pass


class InfeasibleWarmStart(Exception):
    pass


class CondGCapExceeded(Exception):
    pass


class OutOfDomain(ValueError):
    pass


class NoSignChange(Exception):
    pass


class H3Violated(Exception):

    def __init__(self, msg, rho=None):
        super(H3Violated, self).__init__(msg)
        self.rho = rho


class T0OutOfRange(ValueError):
    pass


class LambdaTooLarge(ValueError):
    pass


class UnknownProblem(KeyError):
    pass


class OutOfBox(ValueError):
    pass


class PackageError(Exception):
    pass
