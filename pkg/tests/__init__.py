"""Test suite for gausscap."""
