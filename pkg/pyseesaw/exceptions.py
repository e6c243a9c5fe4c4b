class SeesawError(Exception):
    pass


class InvalidGeometryError(SeesawError):
    pass


class InvalidMaterialError(SeesawError):
    pass


class LoadCaseError(SeesawError):
    pass


class OutOfRegimeError(SeesawError):
    pass


class SingularSystemError(SeesawError):
    pass


class FrameModelError(SeesawError):
    pass


class UnderConstrainedModelError(FrameModelError, SingularSystemError):
    pass


class OpticsError(SeesawError):
    pass


class InvalidRatioError(OpticsError):
    pass


class InvalidElementError(OpticsError):
    pass


class DesignSpaceError(SeesawError):
    pass


class ConstraintError(SeesawError):
    pass


class ConfigError(SeesawError):
    pass


class ConfigParseError(ConfigError):
    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class ConfigValidationError(ConfigError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class PlotError(SeesawError):
    pass
