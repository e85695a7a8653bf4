"""HTTP facade: scoring, staged rewards, replay store, failure feedback."""

from deltaforge.service.config import ServiceConfig
from deltaforge.service.app import create_app

__all__ = ["ServiceConfig", "create_app"]
