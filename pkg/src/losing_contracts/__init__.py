"""Losing contracts for n-player prisoner's dilemmas, verified exactly."""
