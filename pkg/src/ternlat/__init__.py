"""Exact arithmetic for totally real fields and classical quadratic lattices."""

__version__ = "0.1.0"

from .numberfield import (Dominance, Element, FieldContext, FieldRecord,  # noqa: F401,E402
                          load_field, sqrt2_context)
