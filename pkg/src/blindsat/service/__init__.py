"""HTTP facade over the workbench: pydantic schemas plus a FastAPI app."""

from .app import app, create_app

__all__ = ["app", "create_app"]
