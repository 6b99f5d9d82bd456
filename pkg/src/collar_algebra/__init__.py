"""Exact computational group theory for semi-direct product towers, Thompson's
group V, free products with partial conjugations, and group-ring linear algebra."""

__version__ = "0.1.0"
