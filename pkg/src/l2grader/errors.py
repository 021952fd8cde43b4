"""Exception hierarchy shared by all modules.

Two families matter for the CLI exit code: ConfigError (bad configuration
or invalid arguments, exit 1) and DataError (malformed or inconsistent
input data, exit 2).
"""


class GraderError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(GraderError):
    """Invalid configuration or arguments."""


class DataError(GraderError):
    """Malformed or inconsistent input data."""


# corpus
class UnbalancedMarker(DataError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownLanguageTag(DataError):
    def __init__(self, tag: str):
        super().__init__(f"unknown annotation tag: @{tag}")
        self.tag = tag


class EmptyCorpus(DataError):
    pass


class MissingOutOfDomainText(ConfigError):
    pass


# ngram LM
class EmptyTrainingText(DataError):
    pass


class ContextTooLong(ConfigError):
    pass


# features
class UtteranceMismatch(DataError):
    pass


class EmptyAlignment(DataError):
    """Alignment with no segments at all (an aligner always emits at
    least a silence segment); the pipeline degrades this to a zeroed
    pronunciation block."""


class BlockCountMismatch(ConfigError):
    pass


# classifier
class DimensionMismatch(ConfigError):
    pass


class EmptyTrainingData(DataError):
    pass


class InvalidLabel(DataError):
    pass


# metrics
class EmptyMatrix(DataError):
    pass


class DegenerateMarginals(UserWarning):
    """Expected disagreement is zero while observed disagreement is not;
    weighted kappa is reported as 0 rather than raising."""


class ConstantSequence(DataError):
    pass


class LengthMismatch(DataError):
    pass


class EmptyReference(DataError):
    pass


# pipeline
class ConfigInvalid(ConfigError):
    pass


class IdMismatch(DataError):
    pass
