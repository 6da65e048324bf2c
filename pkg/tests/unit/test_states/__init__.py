"""State-model tests."""
