"""Ranking, axiom audits and the random survey."""
