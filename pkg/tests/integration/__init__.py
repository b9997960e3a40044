"""Integration tests: Fock oracle, validation presets and the CLI."""
