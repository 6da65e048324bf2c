"""Pattern-table tests."""
