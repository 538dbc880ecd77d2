"""Bundled knowledge bases: the car examples and two synthetic chain KBs."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..kbformat import parse_kb
from ..model import KnowledgeBase

BUNDLED = ("car", "car_prime", "car_req", "synth30", "synth_redundant")


def kb_path(name: str) -> Path:
    """Filesystem path of a bundled `.kb` file, e.g. kb_path("car")."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled knowledge base named {name!r}")
    return Path(str(resources.files(__package__) / f"{name}.kb"))


def load(name: str) -> KnowledgeBase:
    """Parse a bundled knowledge base (car_req parses as constraints-only via
    the car variable list)."""
    if name == "car_req":
        raise ValueError("car_req holds requirements; parse it against the car KB")
    return parse_kb(kb_path(name).read_text())
