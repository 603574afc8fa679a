"""Exception types shared across the package."""


class UsageError(ValueError):
    """An argument violates an operation's precondition (e.g. even ``n``)."""


class VoxelBudgetError(UsageError):
    """The exhaustive voxel oracle would exceed the configured budget."""


class SerializationError(ValueError):
    """A report cannot be serialized in the requested form."""
