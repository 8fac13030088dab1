"""drindex - a dynamic r-index for counting and locating patterns in an editable text."""

__version__ = "0.1.0"
__all__ = ["__version__"]
