"""
Registry - decorator-based lookup tables for named builders.

Used for the algebra families behind `make` and for the verification
campaigns behind `verify`.
"""
import logging
from typing import Callable, Dict, Optional

logger = logging.getLogger(__name__)


class Registry:
    def __init__(self, kind: str):
        self.kind = kind
        self._entries: Dict[str, Callable] = {}

    def register(self, key: str):
        """
        Decorator to register a builder under a key.
        Usage:
            @FAMILIES.register('sl2')
            def build_sl2(field, **params):
                ...
        """
        def decorator(func: Callable):
            if key in self._entries:
                raise ValueError(f"Duplicate {self.kind} registration: {key}")
            self._entries[key] = func
            logger.debug(f"Registered {self.kind}: {key}")
            return func
        return decorator

    def get(self, key: str) -> Optional[Callable]:
        return self._entries.get(key)

    def keys(self) -> list:
        return list(self._entries.keys())

    def __contains__(self, key: str) -> bool:
        return key in self._entries
