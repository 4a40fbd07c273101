"""Command-line interface for ASN Maker.

The asn-maker console script runs single pipeline stages or the whole
pipeline against an artifact directory.
"""
