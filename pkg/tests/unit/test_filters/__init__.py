"""Tests for filters."""
