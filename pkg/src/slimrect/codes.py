"""Canonical codes for planar diagrams.

The code serializes level sizes and, element by element in left-to-right,
bottom-to-top order, the positions of each element's lower covers.  Two
lattices get equal codes iff they are isomorphic as planar diagrams; the
canonical code takes the minimum over the diagram and its mirror image, so
it also identifies left-right reflections.
"""

from __future__ import annotations

import hashlib


def code_key(code):
    """Short stable identifier for a canonical code (file names, reports)."""
    return hashlib.sha256(code).hexdigest()[:16]


def _embedding_code(L, mirrored):
    chunks = [",".join(str(len(lv)) for lv in L.levels)]
    for lv in L.levels:
        scan = reversed(lv) if mirrored else lv
        for x in scan:
            ps = []
            for d in L.down_covers(x):
                p = L.pos(d)
                if mirrored:
                    p = len(L.levels[L.height(d)]) - 1 - p
                ps.append(p)
            chunks.append(",".join(str(p) for p in sorted(ps)))
    return ";".join(chunks).encode("ascii")


def diagram_code(L):
    """Code of the stored embedding (not mirror-closed)."""
    return _embedding_code(L, mirrored=False)


def canonical_code(L):
    """Mirror-closed code: equal iff isomorphic up to left-right reflection."""
    return min(_embedding_code(L, False), _embedding_code(L, True))
