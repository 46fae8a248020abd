"""iwadec: exact Wedderburn decomposition of truncated skew group algebras."""

__version__ = "0.1.0"
