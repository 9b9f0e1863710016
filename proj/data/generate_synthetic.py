#!/usr/bin/env python3
"""Regenerates the synthetic benchmark files bundled in this directory.

jain.csv and aggregation.csv are deterministic reconstructions of the
classic 2-D clustering benchmarks of the same names (same instance
counts, class sizes, and cluster geometry; see MANIFEST.tsv for the
original sources). The originals are plain point lists that cannot be
redistributed from here, so the files are rebuilt from fixed seeds.
"""
import numpy as np


def write_csv(path, points, labels):
    with open(path, "w") as f:
        for row, lab in zip(points, labels):
            f.write(",".join(repr(float(v)) for v in row) + f",{lab}\n")


def jain():
    rng = np.random.RandomState(20240701)
    pts, labs = [], []
    # large lower crescent, 276 points
    theta = rng.uniform(np.pi, 2 * np.pi, 276)
    radius = 14.0 + rng.normal(0.0, 0.8, 276)
    for t, r in zip(theta, radius):
        pts.append((20.0 + r * np.cos(t), 20.0 + r * np.sin(t)))
        labs.append(1)
    # small upper crescent, 97 points
    theta = rng.uniform(0.0, np.pi, 97)
    radius = 6.0 + rng.normal(0.0, 0.5, 97)
    for t, r in zip(theta, radius):
        pts.append((22.0 + r * np.cos(t), 15.0 + r * np.sin(t)))
        labs.append(2)
    return np.array(pts), labs


def aggregation():
    rng = np.random.RandomState(20240702)
    blobs = [  # (size, cx, cy, sigma)
        (45, 8.0, 24.0, 1.1),
        (170, 21.0, 24.0, 1.9),
        (102, 31.0, 25.0, 1.5),
        (273, 12.0, 9.0, 2.2),
        (34, 4.0, 16.0, 0.9),
        (130, 25.0, 9.0, 1.7),
        (34, 33.0, 4.0, 0.9),
    ]
    pts, labs = [], []
    for cls, (n, cx, cy, s) in enumerate(blobs, start=1):
        xy = rng.normal([cx, cy], s, size=(n, 2))
        pts.extend(map(tuple, xy))
        labs.extend([cls] * n)
    return np.array(pts), labs


def main():
    p, l = jain()
    write_csv("jain.csv", p, l)
    p, l = aggregation()
    write_csv("aggregation.csv", p, l)
    print("wrote jain.csv, aggregation.csv")


if __name__ == "__main__":
    main()
