"""Exact certificates for tameness of Hotta-Kashiwara modules."""
__version__ = "0.1.0"

from ._backend import BACKEND  # noqa: F401
