"""Tests for the core package.

This package contains tests for the core functionality of the application.
"""
