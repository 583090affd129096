"""Core library tests."""
