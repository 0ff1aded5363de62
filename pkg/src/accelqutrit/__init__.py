"""Accelerated two-qutrit states under local and global noise."""

__version__ = "0.1.0"
