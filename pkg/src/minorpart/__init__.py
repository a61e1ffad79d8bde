"""Minor-closed graph structure: partitions, decompositions and weak coloring numbers."""

__version__ = "0.1.0"
