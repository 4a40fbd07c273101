"""Core functionality for ASN Maker.

This package contains functionality used throughout the toolkit, including
logging, configuration, error types and event management.
"""

from asn_maker.core.events import EventManager, Event, event_manager  # noqa
