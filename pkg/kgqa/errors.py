"""Exception hierarchy shared by every kgqa module.

DataError subclasses map to CLI exit code 2, UsageError subclasses to 1.
"""


class KgqaError(Exception):
    """Base class for all kgqa errors."""


class DataError(KgqaError):
    """Input data could not be loaded or is inconsistent."""


class UsageError(KgqaError):
    """The command line was incomplete or malformed."""


class ConfigError(DataError):
    pass


# knowledge graph
class ConflictingIdError(DataError):
    """An entity id is already bound to a different (name, etype)."""


class UnknownEntityError(DataError):
    """A triple endpoint does not exist in the graph."""


class UnknownNameError(DataError):
    """A bound query name resolves to no entity."""


class GraphIOError(DataError):
    """The triple stream failed while importing."""


# vectors
class DimensionMismatchError(DataError):
    pass


class EmbeddingParseError(DataError):
    pass


class LengthMismatchError(ValueError):
    pass


class EmptyCorpusError(DataError):
    pass


# ner
class NoFeasiblePathError(DataError):
    """Every complete label path is forbidden by -inf transitions."""


class InvalidBioSequenceError(DataError):
    """An I- tag appears without a compatible predecessor."""


# templates
class DuplicateTemplateIdError(DataError):
    pass


class MalformedTemplateError(DataError):
    pass


class NoTemplatesError(DataError):
    pass


# question answering
class NoEntityFoundError(KgqaError):
    pass


class NoTemplateMatchError(KgqaError):
    pass


# metrics
class EmptyDatasetError(DataError):
    pass


class UndefinedMetricError(ValueError):
    pass


class EmptyCandidateError(ValueError):
    pass


class NoReferencesError(ValueError):
    pass


class ReferenceTooShortError(ValueError):
    pass


class EmptyReferenceError(ValueError):
    pass
