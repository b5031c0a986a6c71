"""Fuzzy-ontology aspect sentiment analysis for city and transportation text."""

__version__ = "0.1.0"
