"""Exception types shared across the package."""


class SpotcastError(Exception):
    """Base class for all spotcast errors."""


class ShapeError(SpotcastError, ValueError):
    """Array dimensions do not match what an operation requires."""


class ConfigError(SpotcastError, ValueError):
    """Invalid configuration value or combination."""


class StateError(SpotcastError, RuntimeError):
    """Operation called in the wrong order (e.g. backward before forward)."""


class DataIngestError(SpotcastError, ValueError):
    """CSV input violates the expected record format."""


class SizingError(SpotcastError, ValueError):
    """Not enough data for the requested windowing or split."""


class ArtifactError(SpotcastError, ValueError):
    """Model artifact file is corrupt or has an incompatible version."""


class TrainingDivergedError(SpotcastError, RuntimeError):
    """Loss became non-finite during training."""

    def __init__(self, epoch: int, batch: int, lr: float):
        self.epoch = epoch
        self.batch = batch
        self.lr = lr
        super().__init__(
            f"non-finite loss at epoch {epoch}, batch {batch}, lr {lr:g}"
        )
