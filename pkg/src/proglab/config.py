import os

THREADS_ENV = "PROGLAB_THREADS"


def threads() -> int:
    """Worker cap from ``PROGLAB_THREADS`` (default: CPU count)."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n
