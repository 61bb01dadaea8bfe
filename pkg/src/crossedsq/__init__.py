"""Crossed modules, crossed squares and simplicial groups at desk scale."""
