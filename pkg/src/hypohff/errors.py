"""Domain errors raised on violated preconditions.

Every guard in the package raises `DomainError` with a message naming the
violated precondition, so the CLI can map them to exit code 1 uniformly.
"""


class DomainError(ValueError):
    pass
