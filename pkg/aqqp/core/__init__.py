"""Core models, errors, configuration and hashing."""
