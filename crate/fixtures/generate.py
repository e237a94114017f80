#!/usr/bin/env python3
"""Regenerates the synthetic fixture bundles. Values are authored, not measured."""

import json
import math
from pathlib import Path

ROOT = Path(__file__).resolve().parent


def frange(start, stop, step):
    n = int(round((stop - start) / step))
    return [round(start + i * step, 3) for i in range(n + 1)]


def lerp_path(waypoints, t):
    """Position on a piecewise-linear path given as (t, x, y) waypoints."""
    for (t0, x0, y0), (t1, x1, y1) in zip(waypoints, waypoints[1:]):
        if t0 <= t <= t1:
            f = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
            return round(x0 + (x1 - x0) * f, 3), round(y0 + (y1 - y0) * f, 3)
    raise ValueError(t)


def lerp_box(a, b, f):
    return [round(u + (v - u) * f, 2) for u, v in zip(a, b)]


def write_tracks(path, records):
    records.sort(key=lambda r: (r["entity_id"], r["t"]))
    lines = [json.dumps({"schema": "scenetalk.tracks/1"})]
    lines += [json.dumps(r, separators=(",", ":")) for r in records]
    path.write_text("\n".join(lines) + "\n")


def write_json(path, value):
    path.write_text(json.dumps(value, indent=2) + "\n")


def l1():
    out = ROOT / "l1_quadrants"
    out.mkdir(exist_ok=True)
    regions = [
        ("left_quadrant", [0, 0, 960, 540]),
        ("right_quadrant", [960, 0, 1920, 540]),
        ("lower_left_quadrant", [0, 540, 960, 1080]),
        ("lower_right_quadrant", [960, 540, 1920, 1080]),
    ]
    write_json(out / "regions.json", {
        "schema": "scenetalk.regions/1",
        "regions": [{"name": n, "box": b} for n, b in regions],
    })
    records = []
    irene_wide, irene_held, irene_close = [700, 250, 1300, 750], [1010, 40, 1880, 500], [300, 20, 1900, 1060]
    driver_wide, driver_held = [400, 300, 1100, 800], [60, 40, 900, 500]
    for t in frange(0.0, 30.0, 0.2):
        wobble = round(3 * math.sin(t * 1.7), 2)
        if t < 10.0:
            irene = irene_wide
        elif t <= 18.0:
            irene = [irene_held[0] + wobble, irene_held[1], irene_held[2] + wobble, irene_held[3]]
        else:
            irene = lerp_box(irene_held, irene_close, min(1.0, (t - 18.0) / 6.0))
        records.append({"entity_id": "irene_face", "kind": "person", "t": t, "box": irene})
        if t <= 22.0:
            if t < 12.0:
                driver = driver_wide
            else:
                driver = [driver_held[0] - wobble, driver_held[1], driver_held[2] - wobble, driver_held[3]]
            records.append({"entity_id": "driver_face", "kind": "person", "t": t, "box": driver})
        # The camera pulls back below the frame while tracking the pair.
        records.append({"entity_id": "camera", "kind": "camera", "t": t, "point": [960.0, round(1300 + 40 * t, 2)]})
    write_tracks(out / "tracks.jsonl", records)


def l2():
    out = ROOT / "l2_wayfinding"
    out.mkdir(exist_ok=True)
    floor = [
        ("emergency", [0, 0, 10, 10]),
        ("corridor", [0, -30, 10, 0]),
        ("reception", [0, -40, 20, -30]),
        ("elevators", [20, -40, 30, 0]),
        ("atrium_lobby", [10, 0, 30, 10]),
        ("blue_elevators", [12, 10, 18, 14]),
        ("bridge", [30, 4, 50, 6]),
        ("pharmacy", [50, 0, 60, 10]),
        ("hallway", [60, 3, 90, 7]),
        ("main_entrance", [90, 0, 100, 10]),
    ]
    seen = [
        ("emergency_sign", [20, 9, 22, 10]),
        ("exit_sign", [24, 9, 26, 10]),
        ("elevator_sign", [14, 13, 16, 14]),
        ("outside_view", [65, 7, 85, 9]),
    ]
    write_json(out / "regions.json", {
        "schema": "scenetalk.regions/1",
        "regions": [{"name": n, "box": b} for n, b in floor + seen],
    })
    edges = [
        ("emergency", "atrium_lobby"), ("atrium_lobby", "blue_elevators"), ("emergency", "corridor"),
        ("corridor", "reception"), ("reception", "elevators"), ("elevators", "atrium_lobby"),
        ("atrium_lobby", "bridge"), ("bridge", "pharmacy"), ("pharmacy", "hallway"), ("hallway", "main_entrance"),
    ]
    write_json(out / "route_graph.json", {
        "schema": "scenetalk.route_graph/1",
        "nodes": [{"name": n, "region": n} for n, _ in floor],
        "edges": [list(e) for e in edges],
    })

    # Orientation walk, then the long route to the pharmacy, then on to the exit.
    walks = [
        [(0, 5, 5), (3, 5, 5), (8, 15, 5), (10, 15, 9), (12, 15, 12), (16, 15, 12)],
        [(30, 5, 5), (33, 5, 5), (38, 5, -15), (43, 5, -35), (48, 25, -35), (58, 25, -5), (62, 25, 5),
         (65, 35, 5), (70, 45, 5), (73, 55, 5), (80, 55, 5)],
        [(100, 55, 5), (102, 55, 5), (105, 65, 5), (115, 85, 5), (118, 95, 5), (120, 95, 5)],
    ]
    records = []
    for w in walks:
        for t in frange(w[0][0], w[-1][0], 0.5):
            records.append({"entity_id": "barbara", "kind": "person", "t": t, "point": list(lerp_path(w, t))})
    fixations = [
        (4.0, 5.5, (21, 9.5)), (6.0, 7.0, (25, 9.5)), (7.5, 9.0, (15, 13.5)),
        (106.0, 109.5, (75, 8)),
    ]
    for t0, t1, p in fixations:
        for t in frange(t0, t1, 0.5):
            records.append({"entity_id": "barbara_gaze", "kind": "gaze", "t": t, "point": list(p)})
    write_tracks(out / "tracks.jsonl", records)


AMBIGUOUS_HEADER = """# The shared lexicon plus a noun reading of "outside", so that
# "the outside view" parses both as adjective + noun and as a compound.
# Regenerate with fixtures/generate.py.

"""


def ambiguous():
    shared = (ROOT.parent / "data" / "lexicon.toml").read_text().splitlines(keepends=True)
    body = "".join(l for l in shared[3:])
    extra = '\n[[entry]]\nkey = "outside_noun"\npos = "noun"\nbase = "outside"\n'
    out = ROOT / "ambiguous"
    out.mkdir(exist_ok=True)
    (out / "lexicon.toml").write_text(AMBIGUOUS_HEADER + body + extra)


if __name__ == "__main__":
    l1()
    l2()
    ambiguous()
