"""HTTP tutoring-session service: session lifecycle, scoring, stats, CSV export."""
from .app import ApiError, create_app
from .config import ServiceConfig, load_config
from .store import (
    SessionStore,
    StoreError,
    UnknownSessionError,
    SessionFinalizedError,
    SessionCompleteError,
    StaleCursorError,
)

__all__ = [
    "ApiError",
    "create_app",
    "ServiceConfig",
    "load_config",
    "SessionStore",
    "StoreError",
    "UnknownSessionError",
    "SessionFinalizedError",
    "SessionCompleteError",
    "StaleCursorError",
]
