#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the bundled fixtures under data/.

Output is deterministic; rerunning overwrites the files byte-for-byte.
"""
import math
import pathlib
import random

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"
R_EARTH = 6371000.0


def haversine(a, b):
    p1, p2 = math.radians(a[0]), math.radians(b[0])
    dp = p2 - p1
    dl = math.radians(b[1] - a[1])
    h = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 2 * R_EARTH * math.asin(math.sqrt(h))


def fmt(x):
    return repr(round(x, 6))


def profile(shade):
    out = []
    for h in range(24):
        v = math.sin(math.pi * (h - 6) / 14) if 6 < h < 20 else 0.0
        out.append(round(shade * max(v, 0.0), 3))
    return out


def nodes_header():
    return "id,lat,lon," + ",".join(f"p{h}" for h in range(24))


def write_city():
    rng = random.Random(50)
    rows, cols = 5, 10
    lat0, lon0 = 43.8450, 18.3700
    pos = {}
    lines = [nodes_header()]
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            p = (round(lat0 + r * 0.003 + rng.uniform(-0.0004, 0.0004), 6),
                 round(lon0 + c * 0.004 + rng.uniform(-0.0005, 0.0005), 6))
            pos[i] = p
            shade = round(rng.uniform(0.25, 1.0), 2)
            lines.append(f"{i},{fmt(p[0])},{fmt(p[1])}," + ",".join(map(str, profile(shade))))
    (DATA / "nodes.csv").write_text("\n".join(lines) + "\n")

    edges = ["from,to,length_m"]
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            for j in ([i + 1] if c + 1 < cols else []) + ([i + cols] if r + 1 < rows else []):
                length = round(haversine(pos[i], pos[j]) * rng.uniform(1.0, 1.25), 1)
                one_way = rng.random() < 0.08
                edges.append(f"{i},{j},{length}")
                if not one_way:
                    edges.append(f"{j},{i},{length}")
    (DATA / "edges.csv").write_text("\n".join(edges) + "\n")
    return pos


def write_samples(pos):
    rng = random.Random(7)
    lines = []
    for k in range(24):
        node = rng.randrange(50)
        lat = pos[node][0] + rng.uniform(-0.0003, 0.0003)
        lon = pos[node][1] + rng.uniform(-0.0003, 0.0003)
        station = f"E7{chr(65 + k % 26)}{k:02d}"
        r = round(rng.uniform(0.05, 1.0), 2)
        t = rng.randrange(0, 11)
        lines.append(f"SCORE1 {station} {lat:.6f} {lon:.6f} {r} {t}")
    # Far from every node: dropped on ingest.
    lines.append("SCORE1 FAR01 43.9500 18.5500 0.5 9")
    (DATA / "samples.txt").write_text("\n".join(lines) + "\n")


def write_spots():
    spots = [
        ("P1", 43.85100, 18.38900, 0.30),
        ("P2", 43.85300, 18.39150, 1.00),
        ("P3", 43.84950, 18.39500, 0.85),
        ("P4", 43.85060, 18.38960, 0.10),
        ("P5", 43.85600, 18.38400, 0.95),
        ("P6", 43.85180, 18.39300, 0.55),
    ]
    lines = ["id,lat,lon,r"] + [f"{i},{a},{b},{r}" for i, a, b, r in spots]
    (DATA / "spots.csv").write_text("\n".join(lines) + "\n")


def write_fig3():
    # A(0) -> S1(1) -> S2(2) -> B(4): 100 + 800 + 100 m, S1/S2 fully shaded,
    #   effective 1000 * (1 - 0.1 c).
    # A(0) -> U(3) -> B(4): two sunny segments, effective L_sunny * (1 - c).
    nodes = [
        (0, 43.8500, 18.3800, 1.0),
        (1, 43.8509, 18.3800, 0.0),
        (2, 43.8581, 18.3800, 0.0),
        (3, 43.8540, 18.3860, 1.0),
        (4, 43.8590, 18.3810, 1.0),
    ]
    lines = [nodes_header()]
    for i, lat, lon, r in nodes:
        lines.append(f"{i},{lat},{lon}," + ",".join([str(r)] * 24))
    (DATA / "fig3_nodes.csv").write_text("\n".join(lines) + "\n")
    for name, leg in (("fig3_edges.csv", 600.0), ("fig3_short_edges.csv", 510.0)):
        e = ["from,to,length_m", "0,1,100", "1,2,800", "2,4,100", f"0,3,{leg:g}", f"3,4,{leg:g}"]
        (DATA / name).write_text("\n".join(e) + "\n")


def bell_days(days):
    s = [0.0] * 72
    for d, (first, last, peak) in enumerate(days):
        span = last - first + 2
        for h in range(first, last + 1):
            s[d * 24 + h] = round(peak * math.sin(math.pi * (h - first + 1) / span), 3)
    return s


def write_series(name, s):
    lines = ["hour,irradiance"] + [f"{h},{v:g}" for h, v in enumerate(s)]
    (DATA / name).write_text("\n".join(lines) + "\n")


def write_fig2():
    write_series("fig2_series.csv", bell_days([(7, 17, 0.82), (7, 16, 0.74), (7, 16, 0.88)]))
    # Lit 10-14, 6-20, 6-16 (5 + 15 + 11 = 31). Day 2 16:00 is close to the
    # day 3 16:00 target, day 2 20:00 is not.
    s = [0.0] * 72
    for h, v in zip(range(10, 15), (0.30, 0.45, 0.55, 0.50, 0.40)):
        s[h] = v
    day2 = (0.05, 0.15, 0.30, 0.45, 0.60, 0.70, 0.75, 0.72, 0.66, 0.58, 0.52, 0.40, 0.28, 0.15, 0.06)
    for h, v in zip(range(6, 21), day2):
        s[24 + h] = v
    day3 = (0.08, 0.20, 0.33, 0.47, 0.62, 0.71, 0.74, 0.70, 0.64, 0.57, 0.50)
    for h, v in zip(range(6, 17), day3):
        s[48 + h] = v
    write_series("fig2_dip_series.csv", s)


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    pos = write_city()
    write_samples(pos)
    write_spots()
    write_fig3()
    write_fig2()
