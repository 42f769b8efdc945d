"""Service layer: pydantic request/response models, handlers, and the HTTP app."""

from .app import create_app

__all__ = ["create_app"]
