"""Logging and notation helpers."""
