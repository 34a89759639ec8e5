"""Built-in page engine: HTTP fetch, HTML parse, box layout, rasterizer.

A deliberately small rendering engine that covers the HTML/CSS subset the
fixture corpus uses (inline styles, block/inline flow, fixed/absolute
positioning, borders, solid backgrounds). It exists so the full capture ->
detect -> interact -> analyze pipeline runs deterministically without a
browser binary; the CDP backend drives real Chromium when one is present.
"""

from .engine import BuiltinSession

__all__ = ["BuiltinSession"]
