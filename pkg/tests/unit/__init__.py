"""Unit tests for gausscap."""
