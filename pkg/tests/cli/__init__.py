"""Tests for the command-line interface tools."""
