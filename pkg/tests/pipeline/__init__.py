"""Tests for the pipeline."""
