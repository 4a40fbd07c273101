"""ASN Maker - measuring how alike community detection algorithms behave.

This package runs community detectors over benchmark graphs, compares their
outputs with overlapping normalized mutual information, and turns the
comparisons into an Algorithm Similarity Network (ASN) whose backbone is
clustered and characterized.
"""

__version__ = "0.1.0"
