"""
Freiheit CLI

Command-line front end for the freiheit certifiers and checks.
"""

__version__ = "0.1.0"
