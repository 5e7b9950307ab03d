"""Certified weak-diameter colorings of intersection graphs."""
