"""Noise-tolerant trust-region method, its classical counterpart, and an experiment harness."""

__version__ = "0.1.0"
