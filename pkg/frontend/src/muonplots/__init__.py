"""Headless figure rendering for the muontomo CSV data products."""
from .figures import (
    EmptyDataError, FigureSpec, KINDS, SchemaMismatchError, render,
)

__version__ = "0.1.0"
