"""Induced trees in prime-sum graphs: explicit embeddings, verification and oracles."""

__version__ = "0.1.0"
