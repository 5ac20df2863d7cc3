"""Global size caps.

Substitution iteration, block hierarchies and sieves grow exponentially;
the cap turns runaway inputs into clean :class:`~blobshift.errors.SizeLimit`
errors instead of memory exhaustion. ``BLOBSHIFT_CELL_CAP`` overrides the
default for a whole process.
"""
import os

DEFAULT_CELL_CAP = 2 ** 26


def cell_cap() -> int:
    """Return the active cell cap (env override or the default)."""
    raw = os.environ.get("BLOBSHIFT_CELL_CAP")
    if raw is None:
        return DEFAULT_CELL_CAP
    value = int(raw)
    if value <= 0:
        raise ValueError("BLOBSHIFT_CELL_CAP must be positive")
    return value
