"""
Паттерн Observer для событий прогресса верификации
"""
from typing import Callable, List, Dict, Optional
import logging

logger = logging.getLogger(__name__)

SUITE_STARTED = 'suite_started'      # (suite, params)
CHECK_COMPLETED = 'check_completed'  # (record)
SUITE_FINISHED = 'suite_finished'    # (report)

PROGRESS_EVENTS = (SUITE_STARTED, CHECK_COMPLETED, SUITE_FINISHED)


def _require_event(event_type: str):
    if event_type not in PROGRESS_EVENTS:
        raise ValueError(f"unknown progress event {event_type!r}, expected one of {PROGRESS_EVENTS}")


class Observable:
    """Источник событий прогресса; наблюдатели вызываются в порядке подписки"""

    def __init__(self):
        self._observers: Dict[str, List[Callable]] = {event: [] for event in PROGRESS_EVENTS}

    def add_observer(self, event_type: str, observer: Callable):
        _require_event(event_type)
        self._observers[event_type].append(observer)
        logger.debug(f"Added observer for event '{event_type}': {observer}")

    def remove_observer(self, event_type: str, observer: Callable):
        _require_event(event_type)
        if observer in self._observers[event_type]:
            self._observers[event_type].remove(observer)
            logger.debug(f"Removed observer for event '{event_type}': {observer}")

    def observer_count(self, event_type: str) -> int:
        _require_event(event_type)
        return len(self._observers[event_type])

    def notify_observers(self, event_type: str, *args, **kwargs):
        """Ошибки наблюдателей логируются и не прерывают проверку"""
        for observer in list(self._observers[event_type]):
            try:
                observer(*args, **kwargs)
            except Exception as e:
                logger.error(f"Error in observer for event '{event_type}': {e}")

    def clear_observers(self, event_type: Optional[str] = None):
        events = (event_type,) if event_type else PROGRESS_EVENTS
        for event in events:
            _require_event(event)
            self._observers[event].clear()
