"""Example matrices shipped with the package."""

from importlib import resources

from ..textio import parse_matrix

NAMES = ("ex01", "ex02", "ex03", "ex04", "nonconvex6")


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.txt")


def load(name: str):
    """Parse the named fixture into a ``ReciprocalMatrix``."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {NAMES}")
    return parse_matrix(path(name).read_text())
