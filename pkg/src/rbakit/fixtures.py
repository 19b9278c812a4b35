"""Bundled fixtures: small groups and the canonical rank-7 example."""

from __future__ import annotations

from importlib import resources

from .core import RBA
from .ingest import from_group

__all__ = ["fixture_path", "fixture_text", "load_fixture", "FIXTURES"]

FIXTURES = {
    "c2": "c2.cayley",
    "s3": "s3.cayley",
    "d8": "d8.cayley",
    "s3.rba": "s3.rba",
    "rank7_h": "rank7_h.rba",
}


def fixture_path(name: str):
    """Filesystem path of a bundled fixture (name or bare filename)."""
    fname = FIXTURES.get(name, name)
    ref = resources.files("rbakit") / "fixtures" / fname
    with resources.as_file(ref) as p:
        return p


def fixture_text(name: str) -> str:
    fname = FIXTURES.get(name, name)
    return (resources.files("rbakit") / "fixtures" / fname).read_text(encoding="utf-8")


def load_fixture(name: str) -> RBA:
    """RBA for a bundled fixture: .rba files parse directly, .cayley via from_group."""
    fname = FIXTURES.get(name, name)
    text = fixture_text(fname)
    if fname.endswith(".rba"):
        return RBA.from_text(text)
    if fname.endswith(".cayley"):
        return from_group(text)
    raise KeyError(f"unknown fixture {name!r}")
