"""Matrix norm inequality checkers, random-matrix campaigns and gap search."""

__version__ = "0.1.0"
