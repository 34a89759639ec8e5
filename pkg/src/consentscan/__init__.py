"""consentscan: automated detection and dark-pattern analysis of consent
notices on webpages."""

__version__ = "0.1.0"

from .geometry import BBox
from .snapshot import (
    CookieRecord,
    DomNode,
    PageSnapshot,
    Phase,
    RequestRecord,
    Viewport,
    load_snapshot,
    node_at_point,
    save_snapshot,
    subtree_text,
)

__all__ = [
    "BBox",
    "CookieRecord",
    "DomNode",
    "PageSnapshot",
    "Phase",
    "RequestRecord",
    "Viewport",
    "load_snapshot",
    "node_at_point",
    "save_snapshot",
    "subtree_text",
    "__version__",
]
