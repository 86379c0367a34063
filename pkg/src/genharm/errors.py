"""Exception hierarchy shared by all genharm modules."""


class GenharmError(Exception):
    """Base class for all library errors."""


class InvalidSignalError(GenharmError):
    """A signal violates its invariants (wrong length, parity, or non-finite values)."""


class DimensionError(GenharmError):
    """Operands have incompatible sample counts or bands."""


class AliasingError(GenharmError):
    """A requested harmonic band exceeds what the sampling can represent."""


class ConfigurationError(GenharmError):
    """An unknown kind, empty band, or otherwise unusable configuration."""


class AnalysisError(GenharmError):
    """A decomposition cannot proceed (dependent basis, singular system)."""


class IllConditionedBasisError(AnalysisError):
    """The fundamental-coefficient system of a basis pair is numerically unsolvable."""
