"""Progress events for ASN Maker.

The pipeline publishes stage boundaries and finished detector runs on a
process-wide publish/subscribe bus; the command line turns them into log
lines and tests collect them. Delivery is by exact event type.
"""

import threading
import uuid
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Type, TypeVar, cast

from asn_maker.core.logging import get_logger

T = TypeVar("T", bound="Event")

logger = get_logger("core.events")


class Event:
    """Base class for all events."""


@dataclass
class StageStarted(Event):
    """A pipeline stage is about to run."""

    stage: str
    parameters: Dict[str, Any] = field(default_factory=dict)


@dataclass
class StageCompleted(Event):
    """A pipeline stage finished."""

    stage: str
    seconds: float
    summary: Dict[str, Any] = field(default_factory=dict)


@dataclass
class RunCompleted(Event):
    """A detector finished on one network (or was served from the cache)."""

    algorithm: str
    network: str
    status: str
    cached: bool


@dataclass
class Subscription:
    """Handle returned by subscribe(); pass it to unsubscribe()."""

    id: str
    event_type: Type[Event]
    callback: Callable[[Event], None]


class EventManager:
    """Singleton event bus shared by every pipeline component."""

    _instance: Optional["EventManager"] = None
    _lock = threading.RLock()
    _initialized = False
    _subscriptions: Dict[Type[Event], List[Subscription]] = {}

    @classmethod
    def _reset_for_testing(cls) -> None:
        """Drop every subscription."""
        with cls._lock:
            old = cls._instance
            cls._instance = None
            cls._initialized = False
            cls._subscriptions = {}
            # Modules hold the old instance; it stays usable with no subscribers
            if old is not None:
                old._subscriptions = {}

    def __new__(cls) -> "EventManager":
        with cls._lock:
            if cls._instance is None:
                cls._instance = super().__new__(cls)
            return cls._instance

    def __init__(self) -> None:
        with self._lock:
            if not self._initialized:
                self._subscriptions = {}
                self._initialized = True

    def subscribe(self, event_type: Type[T], callback: Callable[[T], None]) -> Subscription:
        """Call ``callback`` for every published event of exactly ``event_type``."""
        subscription = Subscription(
            id=str(uuid.uuid4()),
            event_type=event_type,
            callback=cast(Callable[[Event], None], callback),
        )
        with self._lock:
            self._subscriptions.setdefault(event_type, []).append(subscription)
        logger.debug(f"Subscribed {subscription.id} to {event_type.__name__}")
        return subscription

    def unsubscribe(self, subscription: Subscription) -> None:
        """Remove a subscription; unknown handles are ignored."""
        with self._lock:
            current = self._subscriptions.get(subscription.event_type, [])
            self._subscriptions[subscription.event_type] = [
                s for s in current if s.id != subscription.id
            ]
        logger.debug(f"Unsubscribed {subscription.id}")

    @contextmanager
    def subscribed(
        self, callback: Callable[[Event], None], *event_types: Type[Event]
    ) -> Iterator[None]:
        """Subscribe ``callback`` to several event types for the duration of a block."""
        handles = [self.subscribe(event_type, callback) for event_type in event_types]
        try:
            yield
        finally:
            for handle in handles:
                self.unsubscribe(handle)

    def publish(self, event: Event) -> None:
        """Deliver an event to the subscribers of its type, in subscription order.

        A failing callback is logged and does not stop delivery or reach the
        publisher.
        """
        with self._lock:
            subscribers = list(self._subscriptions.get(type(event), []))
        for subscription in subscribers:
            try:
                subscription.callback(event)
            except Exception as e:
                logger.error(f"Error in {type(event).__name__} handler: {e}")


# Global event manager instance
event_manager = EventManager()
