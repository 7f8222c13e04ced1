from argparse import Namespace
from dataclasses import dataclass, field
from typing import Any, Dict, TextIO


@dataclass
class Invocation:
    """One CLI command run: parsed arguments, streams and the state built for it."""

    command: str
    args: Namespace
    stdin: TextIO
    stdout: TextIO
    stderr: TextIO
    usage: str = ""
    state: Dict[str, Any] = field(default_factory=dict)

    def write(self, text: str = ""):
        self.stdout.write(text + "\n")
