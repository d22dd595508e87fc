"""Deterministic striped scanning for the exhaustive checkers.

Witness searches iterate an outer index range that may be partitioned
across worker threads.  Every stripe reports the least witness tuple it
contains and stripes are merged by tuple order, so the reported witness is
the lexicographically smallest one regardless of the partitioning.
"""

from concurrent.futures import ThreadPoolExecutor


def stripe_bounds(total, workers):
    w = max(1, min(int(workers), total))
    base, rem = divmod(total, w)
    bounds = []
    lo = 0
    for i in range(w):
        hi = lo + base + (1 if i < rem else 0)
        if hi > lo:
            bounds.append((lo, hi))
        lo = hi
    return bounds


def first_hit(scan, total, workers=1):
    """Least witness over range(total), or None.

    scan(lo, hi) must inspect outer indices in ascending order and return
    the least witness tuple within the stripe, or None.
    """
    if total <= 0:
        return None
    bounds = stripe_bounds(total, workers)
    if len(bounds) == 1:
        return scan(*bounds[0])
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        hits = [h for h in pool.map(lambda b: scan(*b), bounds) if h is not None]
    return min(hits) if hits else None
