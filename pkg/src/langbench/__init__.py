"""Black-box composition of heterogeneous modeling languages."""

__version__ = "0.1.0"
