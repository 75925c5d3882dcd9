"""Yang-Baxter planar algebra: skein evaluation, the tower of box algebras and its fusion data."""

__version__ = "0.1.0"
