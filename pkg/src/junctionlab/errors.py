"""Exception types shared across the package."""


class JunctionLabError(Exception):
    """Base class for all junctionlab errors."""


class InvalidGeometryError(JunctionLabError):
    """Device geometry request that cannot be built (bad site counts,
    malformed island layout, contacts off the island ends)."""


class InvalidDeviceError(JunctionLabError):
    """A DeviceSpec that fails validation was passed to the assembler."""


class NonHermitianError(JunctionLabError):
    """Matrix handed to the eigensolver is not Hermitian within tolerance."""


class EigenConvergenceError(JunctionLabError):
    """The dense eigensolver failed to converge; carries the backend message."""

    def __init__(self, message, dim=None):
        super().__init__(message)
        self.dim = dim


class SingularInputError(JunctionLabError):
    """Input at a singular point of an analytic formula (e.g. E = 0)."""


class BoundStatePoleError(JunctionLabError):
    """Scattering coefficients requested exactly on the bound-state pole."""

    def __init__(self, energy, phase):
        super().__init__(
            f"bound-state condition met at E={energy!r}, phi={phase!r}; "
            "coefficients diverge here"
        )
        self.energy = energy
        self.phase = phase


class DegenerateSolutionsError(JunctionLabError):
    """Wronskian of the two boundary solutions vanishes."""


class ConfigError(JunctionLabError):
    """Device config file could not be parsed or is semantically invalid."""

    def __init__(self, message, line=None, column=None, section=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        if section is not None:
            loc += f" [section {section}]"
        super().__init__(message + loc)
        self.line = line
        self.column = column
        self.section = section
