"""Bundled synthetic page corpus plus the local fixture HTTP server."""

from .corpus import FIXTURES, Fixture, FixtureBehavior, fixture_by_id, truth_records
from .server import FixtureServer

__all__ = [
    "FIXTURES",
    "Fixture",
    "FixtureBehavior",
    "fixture_by_id",
    "truth_records",
    "FixtureServer",
]
