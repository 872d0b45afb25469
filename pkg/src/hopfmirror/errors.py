"""Exception types shared by all hopfmirror modules."""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ToolkitError):
    """Malformed caller input: bad shapes, non-group tables, bad modes."""


class ShapeError(InputError):
    """Tensor legs or map shapes do not line up."""


class ParseError(ToolkitError):
    """Sweedler-expression or file syntax error, with a source position."""

    def __init__(self, message, line=1, column=0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class EvaluationError(ToolkitError):
    """An expression cannot be evaluated in the given context (unbound
    cocycle name, dimension mismatch)."""


class SchemaError(InputError):
    """A definition file violates the documented JSON schema."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class CapabilityError(ToolkitError):
    """The request is well-formed but not supported in the active
    configuration (missing roots of unity, singular antipode, dimension
    above the configured cap)."""


class ConsistencyError(ToolkitError):
    """An internal cross-check failed; indicates corrupt input data or a
    bug, never silently swallowed."""


class AssemblyError(ConsistencyError):
    """The two independent assembly routes disagreed, or an assembly
    ingredient (isomorphism, antipode) could not be constructed.  Carries
    the failed comparison when one exists."""

    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check
