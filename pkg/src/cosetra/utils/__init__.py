from .cache import DEFAULT_CACHE_SIZE, LockedLRUCache
from .log_context import RunContextFilter, configure_logging, derive_run_id, get_run_id, set_run_id
from .parallel import parallel_map, resolve_workers

__all__ = [
    "DEFAULT_CACHE_SIZE",
    "LockedLRUCache",
    "RunContextFilter",
    "configure_logging",
    "derive_run_id",
    "get_run_id",
    "set_run_id",
    "parallel_map",
    "resolve_workers",
]
