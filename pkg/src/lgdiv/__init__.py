"""Local-global divisibility checks for elliptic curves over F_q(t), q a power of 2."""

__version__ = "0.1.0"
