"""Published reference values used as golden data across the test suite.

TABLE1[m][n] is the order-m Bell number of an n-set for 1 <= n <= 8,
1 <= m <= 5.  TABLE2[m] lists, for order m in {5, 20, 50}, the number of
k-sets in the iterated partition set of a 5-set (k = 1..5) together with
the row total.
"""

TABLE1 = {
    1: {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203, 7: 877, 8: 4140},
    2: {1: 1, 2: 3, 3: 12, 4: 60, 5: 358, 6: 2471, 7: 19302, 8: 167894},
    3: {1: 1, 2: 4, 3: 22, 4: 154, 5: 1304, 6: 12915, 7: 146115, 8: 1855570},
    4: {1: 1, 2: 5, 3: 35, 4: 315, 5: 3455, 6: 44590, 7: 660665, 8: 11035095},
    5: {1: 1, 2: 6, 3: 51, 4: 561, 5: 7556, 6: 120196, 7: 2201856, 8: 45592666},
}

TABLE2 = {
    5: {"row": (3455, 3325, 725, 50, 1), "bell": 7556},
    20: {"row": (1115320, 233050, 11900, 200, 1), "bell": 1360471},
    50: {"row": (45533300, 3706375, 74750, 500, 1), "bell": 49314926},
}


def brute_force_partitions(items):
    """Independent oracle: all set partitions of ``items`` by recursive insertion.

    Returns a list of partitions, each a frozenset of frozenset blocks.
    Deliberately unrelated to the library's restricted-growth enumeration.
    """
    items = list(items)
    if not items:
        return [frozenset()]
    head, rest = items[0], items[1:]
    out = []
    for sub in brute_force_partitions(rest):
        blocks = list(sub)
        for i, block in enumerate(blocks):
            enlarged = blocks[:i] + [block | {head}] + blocks[i + 1 :]
            out.append(frozenset(enlarged))
        out.append(frozenset(blocks + [frozenset({head})]))
    return out


def brute_force_stirling(n, k):
    """Count k-block partitions of an n-set by exhaustive enumeration."""
    parts = brute_force_partitions(range(n))
    return sum(1 for p in parts if len(p) == k)
