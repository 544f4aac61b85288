"""Scoring of 6D object pose and 2D detection benchmark submissions."""
