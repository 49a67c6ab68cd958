"""Eccentricity, radius and center algorithms for alpha_i-metric graphs."""
