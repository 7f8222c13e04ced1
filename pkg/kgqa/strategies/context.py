from typing import Any, Callable, Dict, Union

from ..models.strategies import ContextStrategy
from ..models.invocation import Invocation


class SimpleContextStrategy(ContextStrategy):
    """A simple context strategy that updates invocation state with provided values.

    Callables are evaluated in insertion order, so later entries can read the
    state written by earlier ones.
    """

    def __init__(self, data_updates: Dict[str, Union[Any, Callable[[Invocation], Any]]]):
        self.data_updates = data_updates

    def execute(self, invocation: Invocation) -> None:
        for key, value in self.data_updates.items():
            if callable(value):
                invocation.state[key] = value(invocation)
            else:
                invocation.state[key] = value
