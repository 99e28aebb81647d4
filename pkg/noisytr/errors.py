class NoisyTRError(Exception):
    """Root of every error raised by noisytr."""
    pass


class EvaluationError(NoisyTRError):
    """Non-finite arithmetic or an invalid numeric precondition."""
    pass


class ConfigError(NoisyTRError):
    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
