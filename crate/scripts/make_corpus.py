"""Build data/corpus.jsonl and data/corpus_hodge.csv.

Random configurations are drawn with a fixed seed, block-decomposable and
duplicate ones are dropped, and Hodge numbers come from pyCICY
(pip install pyCICY), which computes them by line bundle cohomology and so
is independent of this crate.
"""

import argparse
import csv
import json
import multiprocessing as mp
import random
import warnings

warnings.filterwarnings("ignore")


def random_config(rng, max_m, max_k):
    while True:
        m, k = rng.randint(1, max_m), rng.randint(1, max_k)
        if k + 3 >= m:
            break
    dims = [1] * m
    for _ in range(k + 3 - m):
        dims[rng.randrange(m)] += 1
    left = [n + 1 for n in dims]
    deg = [[0] * k for _ in range(m)]
    for j in range(k):
        i = rng.choice([i for i in range(m) if left[i] > 0])
        deg[i][j] += 1
        left[i] -= 1
    for i in range(m):
        for _ in range(left[i]):
            deg[i][rng.randrange(k)] += 1
    return dims, deg


def decomposable(deg):
    m, k = len(deg), len(deg[0])
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(k):
            if deg[i][j]:
                for r in range(m):
                    if deg[r][j] and r not in seen:
                        seen.add(r)
                        stack.append(r)
    return len(seen) < m


def canonical(dims, deg):
    rows = sorted(zip(dims, deg))
    cols = sorted(zip(*[r for _, r in rows]))
    rows = sorted(zip([n for n, _ in rows], [list(r) for r in zip(*cols)]))
    return json.dumps(rows)


def hodge(item):
    import sympy
    import sympy.core.numbers

    import numpy

    # pyCICY predates current sympy and numpy.
    sympy.numbers = sympy.core.numbers
    numpy.int = int
    from pyCICY import CICY

    ident, dims, deg = item
    try:
        M = CICY([[n] + row for n, row in zip(dims, deg)], log=3)
        return ident, int(M.h[2]), int(M.h[1])
    except Exception:
        return ident, None, None


KNOWN = [
    ("quintic", [4], [[5]]),
    ("bicubic", [2, 2], [[3], [3]]),
    ("p1p3", [1, 3], [[2], [4]]),
    ("tetraquadric", [1, 1, 1, 1], [[2], [2], [2], [2]]),
    ("p5_33", [5], [[3, 3]]),
    ("p5_24", [5], [[2, 4]]),
    ("p6_223", [6], [[2, 2, 3]]),
    ("p7_2222", [7], [[2, 2, 2, 2]]),
    ("p1p1p2", [1, 1, 2], [[2], [2], [3]]),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--max-m", type=int, default=4)
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--timeout", type=float, default=60)
    ap.add_argument("--out", default="data")
    a = ap.parse_args()

    rng = random.Random(a.seed)
    items, seen = [], set()
    for ident, dims, deg in KNOWN:
        seen.add(canonical(dims, deg))
        items.append((ident, dims, deg))
    while len(items) < a.count:
        dims, deg = random_config(rng, a.max_m, a.max_k)
        key = canonical(dims, deg)
        if decomposable(deg) or key in seen:
            continue
        seen.add(key)
        items.append((f"r{len(items):04d}", dims, deg))

    results = {}
    with mp.Pool() as pool:
        pending = [(it[0], pool.apply_async(hodge, (it,))) for it in items]
        for ident, res in pending:
            try:
                results[ident] = res.get(a.timeout)
            except mp.TimeoutError:
                results[ident] = (ident, None, None)

    with open(f"{a.out}/corpus.jsonl", "w") as cf, open(f"{a.out}/corpus_hodge.csv", "w", newline="") as hf:
        w = csv.writer(hf, lineterminator="\n")
        w.writerow(["id", "h11", "h21"])
        for ident, dims, deg in items:
            _, h11, h21 = results[ident]
            if h11 is None:
                continue
            cf.write(json.dumps({"id": ident, "ambient": dims, "degrees": deg}) + "\n")
            w.writerow([ident, h11, h21])


if __name__ == "__main__":
    main()
