"""Exception hierarchy shared by all modules."""


class WeakHopfError(Exception):
    pass


class DivisionByZero(WeakHopfError, ZeroDivisionError):
    pass


class DescriptorMismatch(WeakHopfError, TypeError):
    pass


class NoSuchRoot(WeakHopfError):
    pass


class ShapeMismatch(WeakHopfError, ValueError):
    pass


class NotIdempotent(WeakHopfError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class ReportError(WeakHopfError):
    """An error that carries the AxiomReport explaining it."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class NotWeakBialgebra(ReportError):
    pass


class PreconditionFailed(ReportError):
    pass


class InternalAxiomFailure(ReportError):
    pass


class LemmaConditionFailed(ReportError):
    pass


class NotAMatchedPair(ReportError):
    pass


class InvalidGroupTable(WeakHopfError, ValueError):
    pass


class InvalidCategory(WeakHopfError, ValueError):
    pass


class BadTruncation(WeakHopfError, ValueError):
    pass


class StructureViolation(WeakHopfError):
    """A builder's input breaks one of its required identities; ``witness`` locates it."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class CocycleViolation(StructureViolation):
    def __init__(self, msg, triple=None):
        super().__init__(msg, triple)
        self.triple = triple


class NotCoalgebraCompatible(StructureViolation):
    pass


class NotCentralizingIdempotent(StructureViolation):
    pass


class NotGrouplike(StructureViolation):
    pass


class ParseError(WeakHopfError, ValueError):
    def __init__(self, msg, position=None):
        if position is not None:
            msg = f"{position}: {msg}"
        super().__init__(msg)
        self.position = position


class UnknownTarget(WeakHopfError, KeyError):
    pass


class UnknownGallery(WeakHopfError, KeyError):
    pass
