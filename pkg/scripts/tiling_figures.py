"""Render the footprint tilings used in the tests as SVG files.

Writes the 14 x 9 worked example (one frame, with the purple overlap) and
the gallery of all tight gradings with P1 = (3), P2 |- 3 on P(4, 3).
"""

import argparse
import os

from scatterkit.dyck import E, N, build_max_dyck
from scatterkit.exact import partitions_of
from scatterkit.gradings import Grading, TightSpec, enumerate_tight
from scatterkit.tiling import build_footprints, frames, gallery, render, tilings, unwrap


def worked_example():
    path = build_max_dyck(14, 9)
    fr = next(f for f in frames(14, 9, 12, 8) if f.anchor == (8, 5))
    doubled = fr.doubled

    def ordinal(direction, xy):
        return next(e.ordinal for e in doubled.edges if e.direction == direction and e.anchor == xy)

    w = [0] * path.n
    for xy in [(8, 5), (9, 5), (10, 6), (14, 9)]:
        w[ordinal(E, xy) % path.n] = 2
    for xy in [(21, 12), (19, 11), (18, 10), (14, 8)]:
        w[ordinal(N, xy) % path.n] = 3
    g = Grading(path, tuple(w))
    return g, build_footprints(unwrap(g, fr), fr)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    g, t = worked_example()
    with open(os.path.join(args.out, "worked_example.svg"), "w") as fh:
        fh.write(render(t, "svg", scale=24))
    print(g.describe())
    print(render(t, "ascii"))
    print("clashes:", t.clashes())

    results, labels = [], []
    for P2 in partitions_of(3):
        for omega in enumerate_tight(TightSpec.for_partitions((3,), P2, -1, (4, 3))):
            results.append(tilings(omega)[0])
            labels.append(omega.describe())
    with open(os.path.join(args.out, "gallery_3_3.svg"), "w") as fh:
        fh.write(gallery(results, columns=5, labels=labels))
    print(f"{len(results)} tight gradings in the P1 = (3) gallery")


if __name__ == "__main__":
    main()
