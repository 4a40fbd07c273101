"""Tests for ASN analysis."""
