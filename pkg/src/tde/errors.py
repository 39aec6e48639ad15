"""Exception types raised across the pipeline."""


class TDEError(Exception):
    """Base class for all errors raised by this package."""


class WindowTooSmall(TDEError, ValueError):
    pass


class EmptyGraph(TDEError, ValueError):
    pass


class InvalidCore(TDEError, ValueError):
    pass


class ParseError(TDEError, ValueError):
    pass


class DimensionMismatch(TDEError, ValueError):
    pass


class EmptyCorpus(TDEError, ValueError):
    pass


class MissingSentenceVector(TDEError, LookupError):
    pass


class NoEmbeddableSentences(TDEError, ValueError):
    pass


class AllOOVDocument(TDEError, ValueError):
    pass


class ZeroVector(TDEError, ValueError):
    pass


class DuplicateId(TDEError, ValueError):
    pass


class CorruptIndex(TDEError, ValueError):
    pass


class NoJudgments(TDEError, ValueError):
    pass


class UnknownDoc(TDEError, LookupError):
    pass
