"""Exception hierarchy shared by every module."""


class ActForgeError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 2

    def __init__(self, message="", **witness):
        super().__init__(message)
        self.witness = witness

    def to_report(self):
        return {"error": type(self).__name__, "message": str(self), "witness": _plain(self.witness)}


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return repr(obj)


class SizeLimitExceeded(ActForgeError):
    exit_code = 3


class OutOfRange(ActForgeError):
    pass


class NotAssociative(ActForgeError):
    pass


class BadIdentity(ActForgeError):
    pass


class IdentityLawFails(ActForgeError):
    pass


class AssociativityFails(ActForgeError):
    pass


class BaseMismatch(ActForgeError):
    pass


class NotACongruence(ActForgeError):
    pass


class NotMonoidGeneratingSet(ActForgeError):
    pass


class NotGenerating(ActForgeError):
    pass


class NotAPresentation(ActForgeError):
    exit_code = 1


class VerificationFailed(ActForgeError):
    exit_code = 1


class NotSubmonoid(ActForgeError):
    pass


class ComplementNotIdeal(ActForgeError):
    pass


class IdentityNotInU(ActForgeError):
    pass


class HypothesisFails(ActForgeError):
    exit_code = 1


class NotLeftZero(ActForgeError):
    pass


class ParseError(ActForgeError):
    pass


class ValidationError(ActForgeError):
    pass


class DanglingReference(ActForgeError):
    pass


class NotConsequence(ActForgeError):
    exit_code = 1
