"""Exception types shared across the package."""


class QuditColoringError(Exception):
    pass


class ParameterError(QuditColoringError, ValueError):
    """A numeric or kind parameter is out of range."""


class StructuralError(QuditColoringError, ValueError):
    """Wire references collide, are out of range, or a block is not applicable."""


class GraphValidationError(QuditColoringError, ValueError):
    pass


class NetlistParseError(QuditColoringError, ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DegenerateProblemError(QuditColoringError, ValueError):
    pass


class ResourceError(QuditColoringError, RuntimeError):
    """A dense-storage or enumeration guard was exceeded."""


class NoSolutionError(QuditColoringError, ValueError):
    pass
