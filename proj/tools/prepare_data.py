#!/usr/bin/env python3
# Copyright 2026 The PathWalk Authors
# SPDX-License-Identifier: Apache-2.0
"""Convert raw sentiment corpora to the label<TAB>text layout.

  prepare_data.py rt  --pos rt-polarity.pos --neg rt-polarity.neg --out DIR
  prepare_data.py sst --trees trainDevTestTrees_PTB/trees --out DIR

rt: a seeded 90/10 split of the two polarity files.
sst: root labels of train.txt / test.txt, binarized (0,1 -> 0; 3,4 -> 1;
neutral roots dropped). The dev split is not used.
"""

import argparse
import pathlib
import random
import re


def write(path, rows):
    with open(path, "w", encoding="utf-8") as f:
        for label, text in rows:
            text = " ".join(text.split())
            if text:
                f.write(f"{label}\t{text}\n")


def read_lines(path):
    return pathlib.Path(path).read_bytes().decode("latin-1").splitlines()


def rt(args):
    rows = [(1, s) for s in read_lines(args.pos)] + [(0, s) for s in read_lines(args.neg)]
    random.Random(args.seed).shuffle(rows)
    cut = int(len(rows) * 0.9)
    return rows[:cut], rows[cut:]


LEAF = re.compile(r"\(\d+ ([^()]+)\)")


def tree_rows(path):
    for line in read_lines(path):
        line = line.strip()
        if not line:
            continue
        root = int(line[1])
        if root == 2:
            continue
        yield int(root > 2), " ".join(LEAF.findall(line))


def sst(args):
    trees = pathlib.Path(args.trees)
    return list(tree_rows(trees / "train.txt")), list(tree_rows(trees / "test.txt"))


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="corpus", required=True)
    a = sub.add_parser("rt")
    a.add_argument("--pos", required=True)
    a.add_argument("--neg", required=True)
    a.add_argument("--seed", type=int, default=1)
    b = sub.add_parser("sst")
    b.add_argument("--trees", required=True)
    for s in (a, b):
        s.add_argument("--out", required=True)
    args = p.parse_args()

    train, test = rt(args) if args.corpus == "rt" else sst(args)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write(out / "train.tsv", train)
    write(out / "test.tsv", test)
    print(f"train={len(train)} test={len(test)}")


if __name__ == "__main__":
    main()
