"""Brute-force geometry oracles shared by the layout and acceptance tests.

These check emitted mark rectangles pairwise, independently of how the
packer placed them. Tangency is allowed: only strict interior intersection
counts as overlap."""

from __future__ import annotations

import numpy as np


def count_interior_overlaps(layout, include_folded: bool = False) -> int:
    """All-pairs check over every emitted mark rectangle."""
    groups = [g for g in layout.groups if include_folded or not g.folded]
    marks = [m for g in groups for m in g.marks]
    n = len(marks)
    if n < 2:
        return 0
    x0 = np.array([m.x for m in marks])
    y0 = np.array([m.y for m in marks])
    x1 = x0 + np.array([m.w for m in marks])
    y1 = y0 + np.array([m.h for m in marks])
    total = 0
    chunk = 512
    for a in range(0, n, chunk):
        b = min(a + chunk, n)
        hit = (
            (x0[a:b, None] < x1[None, :])
            & (x0[None, :] < x1[a:b, None])
            & (y0[a:b, None] < y1[None, :])
            & (y0[None, :] < y1[a:b, None])
        )
        sub = np.triu(np.ones((b - a, n), dtype=bool), k=a + 1)
        total += int(np.count_nonzero(hit & sub))
    return total


def assert_no_overlap(layout, include_folded: bool = False):
    assert count_interior_overlaps(layout, include_folded) == 0


def assert_identity(layout, expected_ids):
    got = sorted(m.point_id for m in layout.all_marks())
    assert got == sorted(expected_ids)


def assert_containment(layout, slack: float = 1e-9):
    region = layout.region
    for g in layout.groups:
        assert region.contains(g.box, slack), f"group {g.cell_key} escapes region"
        for m in g.marks:
            assert m.x >= g.box.x - slack and m.y >= g.box.y - slack, (g.cell_key, m)
            assert m.x + m.w <= g.box.x1 + slack and m.y + m.h <= g.box.y1 + slack, (
                g.cell_key,
                m,
            )


def assert_boxes_disjoint(layout):
    boxes = [g.box for g in layout.groups]
    for i in range(len(boxes)):
        for j in range(i):
            a, b = boxes[i], boxes[j]
            interior = a.x < b.x1 and b.x < a.x1 and a.y < b.y1 and b.y < a.y1
            assert not interior, f"boxes {i} and {j} intersect"
