"""HTTP service wrapping the core package; the CLI is a thin client of the
same handlers."""

from . import handlers, schemas

__all__ = ["handlers", "schemas"]
