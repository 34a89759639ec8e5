"""Independent reference implementations used only by tests.

These stay deliberately naive (per-pixel loops, BFS flood fill, direct
formula transcription) so they share no code path with the production
implementations they verify.
"""

from __future__ import annotations

from collections import deque


def flood_fill_components(bits: list[list[bool]]) -> list[dict]:
    """8-connected components via BFS; returns dicts with bbox (x, y, w, h)
    and pixel area, sorted by (y, x of bbox)."""
    h = len(bits)
    w = len(bits[0]) if h else 0
    seen = [[False] * w for _ in range(h)]
    regions = []
    for sy in range(h):
        for sx in range(w):
            if not bits[sy][sx] or seen[sy][sx]:
                continue
            queue = deque([(sx, sy)])
            seen[sy][sx] = True
            min_x = max_x = sx
            min_y = max_y = sy
            area = 0
            while queue:
                x, y = queue.popleft()
                area += 1
                min_x, max_x = min(min_x, x), max(max_x, x)
                min_y, max_y = min(min_y, y), max(max_y, y)
                for dy in (-1, 0, 1):
                    for dx in (-1, 0, 1):
                        if dx == 0 and dy == 0:
                            continue
                        nx, ny = x + dx, y + dy
                        if 0 <= nx < w and 0 <= ny < h and bits[ny][nx] and not seen[ny][nx]:
                            seen[ny][nx] = True
                            queue.append((nx, ny))
            regions.append(
                {
                    "bbox": (min_x, min_y, max_x - min_x + 1, max_y - min_y + 1),
                    "area": area,
                }
            )
    regions.sort(key=lambda r: (r["bbox"][1], r["bbox"][0]))
    return regions


def reference_ssim(gray_a: list[list[float]], gray_b: list[list[float]], window: int = 8,
                   k1: float = 0.01, k2: float = 0.03, dynamic_range: float = 255.0) -> float:
    """Direct per-block transcription of the block-SSIM formula with
    population statistics; pure Python."""
    c1 = (k1 * dynamic_range) ** 2
    c2 = (k2 * dynamic_range) ** 2
    h = len(gray_a)
    w = len(gray_a[0])
    scores = []
    for by in range(h // window):
        for bx in range(w // window):
            pa, pb = [], []
            for y in range(by * window, (by + 1) * window):
                for x in range(bx * window, (bx + 1) * window):
                    pa.append(float(gray_a[y][x]))
                    pb.append(float(gray_b[y][x]))
            n = len(pa)
            mu_a = sum(pa) / n
            mu_b = sum(pb) / n
            var_a = sum(v * v for v in pa) / n - mu_a * mu_a
            var_b = sum(v * v for v in pb) / n - mu_b * mu_b
            cov = sum(a * b for a, b in zip(pa, pb)) / n - mu_a * mu_b
            num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
            den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
            scores.append(num / den)
    return sum(scores) / len(scores)


def bt601_gray(image) -> list[list[float]]:
    """Half-up rounded BT.601 luma as a nested list (matches the production
    grayscale contract, reimplemented without numpy)."""
    import math

    out = []
    for row in image:
        line = []
        for px in row:
            r, g, b = int(px[0]), int(px[1]), int(px[2])
            line.append(math.floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5))
        out.append(line)
    return out


def count_bucket_majority(pixels: list[tuple[int, int, int]]) -> tuple[int, int, int]:
    """Brute-force 4-bit bucket majority with centroid representative."""
    buckets: dict[tuple[int, int, int], list[tuple[int, int, int]]] = {}
    for raw in pixels:
        px = (int(raw[0]), int(raw[1]), int(raw[2]))
        key = (px[0] >> 4, px[1] >> 4, px[2] >> 4)
        buckets.setdefault(key, []).append(px)
    best_key = min(buckets, key=lambda k: (-len(buckets[k]), k))
    members = buckets[best_key]
    n = len(members)
    import math

    return tuple(
        math.floor(sum(px[i] for px in members) / n + 0.5) for i in range(3)
    )  # type: ignore[return-value]


def naive_css_match(snapshot, selector: str) -> list[int]:
    """Brute-force selector evaluation sharing only the parser with the
    production matcher: compound predicates are re-implemented here, and
    descendant chains are checked by enumerating every strictly-increasing
    assignment of compounds onto the node's ancestor path."""
    from itertools import combinations

    from consentscan.detectors.cssmatch import compile_selector

    compiled = compile_selector(selector)

    def compound_ok(node, compound) -> bool:
        if compound.tag is not None and compound.tag != "*" and node.tag != compound.tag:
            return False
        for wanted in compound.ids:
            if node.attributes.get("id") != wanted:
                return False
        node_classes = node.attributes.get("class", "").split()
        for cls in compound.classes:
            if cls not in node_classes:
                return False
        for name, op, wanted in compound.attrs:
            if name not in node.attributes:
                return False
            value = node.attributes[name]
            if op == "=" and value != wanted:
                return False
            if op == "*=" and (wanted == "" or wanted not in value):
                return False
            if op == "^=" and (wanted == "" or not value.startswith(wanted)):
                return False
            if op == "$=" and (wanted == "" or not value.endswith(wanted)):
                return False
            if op == "~=" and wanted not in value.split():
                return False
        return True

    def ancestor_path(node_id: int) -> list:
        path = []
        cur = snapshot.parent_of(node_id)
        while cur is not None:
            path.append(cur)
            cur = snapshot.parent_of(cur.node_id)
        return path  # nearest first

    def sel_ok(node, sel) -> bool:
        if not compound_ok(node, sel.compounds[0]):
            return False
        rest = sel.compounds[1:]
        if not rest:
            return True
        path = ancestor_path(node.node_id)
        # assign rest[j] to path positions, strictly increasing depth
        for positions in combinations(range(len(path)), len(rest)):
            if all(compound_ok(path[pos], rest[j]) for j, pos in enumerate(positions)):
                # child combinators force adjacency with the previous pick
                ok = True
                prev = -1
                for j, pos in enumerate(positions):
                    if sel.combinators[j] == ">" and pos != prev + 1:
                        ok = False
                        break
                    prev = pos
                if ok:
                    return True
        return False

    return [n.node_id for n in snapshot.nodes if any(sel_ok(n, sel) for sel in compiled)]
