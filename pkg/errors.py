"""
Error types for qqpft
"""


class QQPFTError(ValueError):
    """Base class for every precondition failure raised by the library"""


class ParameterError(QQPFTError):
    """Invalid transform or functional parameter"""


class GridError(QQPFTError):
    """Invalid grid, or grids that do not match"""


class SignalError(QQPFTError):
    """Signal unusable for the requested operation"""


class FormatError(QQPFTError):
    """Malformed or unsupported file content"""
