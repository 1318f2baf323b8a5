"""Ortholattice type decomposition toolkit."""
