"""Tests for ASN Maker.

This package contains tests for every component of the ASN Maker toolkit.
"""
