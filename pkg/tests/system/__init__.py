"""System-level tests that run the aqqp command line end to end."""
