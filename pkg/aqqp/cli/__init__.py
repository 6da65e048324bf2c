"""Command-line interface for the AQQP toolkit."""
