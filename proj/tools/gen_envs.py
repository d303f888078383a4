#!/usr/bin/env python3
"""Writes the bundled environments (maze, bugtrap, sparse) into data/.

Each environment gets a JSON polygon document (edges split to <= 2 m so the
built-in Steiner-free triangulator has enough boundary vertices) and a
quality mesh in Triangle .node/.ele format (1-based) produced with the
`triangle` package, which is only needed when regenerating.
"""
import argparse
import json
import math
from pathlib import Path


def subdivide(poly, max_edge):
    out = []
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        pieces = max(1, math.ceil(math.dist(a, b) / max_edge - 1e-9))
        for k in range(pieces):
            t = k / pieces
            out.append([round(a[0] + t * (b[0] - a[0]), 6), round(a[1] + t * (b[1] - a[1]), 6)])
    return out


def rect(x0, y0, x1, y1):
    return [[x0, y0], [x1, y0], [x1, y1], [x0, y1]]


def regular(cx, cy, r, n, phase=0.0):
    return [[round(cx + r * math.cos(phase + 2 * math.pi * k / n), 6),
             round(cy + r * math.sin(phase + 2 * math.pi * k / n), 6)] for k in range(n)]


def maze():
    outer = [[0, 0], [20, 0], [20, 7], [3, 7], [3, 8], [20, 8], [20, 15], [0, 15],
             [0, 12], [17, 12], [17, 11], [0, 11], [0, 4], [17, 4], [17, 3], [0, 3]]
    holes = [rect(8, 1, 9.5, 2), rect(10, 5, 11.5, 6), rect(6, 9, 7.5, 10), rect(12, 13, 13.5, 14)]
    return "maze", outer, holes, [1.5, 13.5], None, "pq25a4"


def bugtrap():
    outer = rect(0, 0, 16, 16)
    trap = [[4, 4], [12, 4], [12, 7], [11.4, 7], [11.4, 4.6], [4.6, 4.6], [4.6, 11.4],
            [11.4, 11.4], [11.4, 9], [12, 9], [12, 12], [4, 12]]
    return "bugtrap", outer, [trap], [8.0, 8.0], [[4.3, 8.0]], "pq25a3"


def sparse():
    outer = rect(0, 0, 16, 12)
    holes = [rect(3, 3, 5, 5), regular(10.5, 8, 1.4, 5, 0.3), [[7, 2], [9.5, 2.5], [8, 4]],
             regular(12.5, 3.5, 1.0, 6)]
    return "sparse", outer, holes, [14.5, 10.5], None, "pq25a3"


def quality_mesh(outer, holes, hole_seeds, switches):
    import triangle

    verts, segs = [], []
    for poly in [outer] + holes:
        n0 = len(verts)
        verts += poly
        segs += [[n0 + i, n0 + (i + 1) % len(poly)] for i in range(len(poly))]
    seeds = hole_seeds or [[sum(p[0] for p in h) / len(h), sum(p[1] for p in h) / len(h)] for h in holes]
    return triangle.triangulate({"vertices": verts, "segments": segs, "holes": seeds}, switches)


def write_triangle_files(mesh, stem):
    v, t = mesh["vertices"], mesh["triangles"]
    node = [f"{len(v)} 2 0 0"] + [f"{i + 1} {p[0]!r} {p[1]!r}" for i, p in enumerate(v.tolist())]
    ele = [f"{len(t)} 3 0"] + [f"{i + 1} {a + 1} {b + 1} {c + 1}" for i, (a, b, c) in enumerate(t.tolist())]
    Path(f"{stem}.node").write_text("\n".join(node) + "\n")
    Path(f"{stem}.ele").write_text("\n".join(ele) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--no-mesh", action="store_true", help="skip the Triangle meshes")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for build in (maze, bugtrap, sparse):
        name, outer, holes, goal, seeds, switches = build()
        doc = {
            "name": name,
            "outer": subdivide(outer, 2.0),
            "holes": [subdivide(h, 2.0) for h in holes],
            "goal": goal,
        }
        (out / f"{name}.json").write_text(json.dumps(doc) + "\n")
        if not args.no_mesh:
            write_triangle_files(quality_mesh(outer, holes, seeds, switches), out / name)


if __name__ == "__main__":
    main()
