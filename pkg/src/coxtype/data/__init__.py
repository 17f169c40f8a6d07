"""Checked-in reference tables."""
