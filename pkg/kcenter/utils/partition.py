from typing import Iterator, List, Tuple


def restricted_growth_strings(n : int, max_blocks : int) -> Iterator[Tuple[int, ...]]:
    """Enumerate set partitions of ``{0, ..., n-1}`` into at most ``max_blocks`` blocks.

    Each partition is encoded as a restricted growth string ``s`` with
    ``s[0] == 0`` and ``s[i] <= max(s[:i]) + 1``. Strings are produced in
    lexicographic order, which fixes the order partitions are visited in.

    Args:
        n: Number of elements.
        max_blocks: Upper bound on the number of blocks (``>= 1``).

    Yields:
        Restricted growth strings as tuples of length ``n``.
    """
    if n <= 0:
        return
    if max_blocks < 1:
        raise ValueError("max_blocks must be positive, got %d" % max_blocks)

    s = [0] * n
    # prefix maxima: m[i] = max(s[:i + 1])
    m = [0] * n
    while True:
        yield tuple(s)

        # rightmost position that can still grow
        i = n - 1
        while i > 0 and (s[i] > m[i - 1] or s[i] + 1 >= max_blocks):
            i -= 1
        if i == 0:
            return
        s[i] += 1
        m[i] = max(m[i - 1], s[i])
        for j in range(i + 1, n):
            s[j] = 0
            m[j] = m[i]


def blocks_of(rgs : Tuple[int, ...]) -> List[Tuple[int, ...]]:
    num_blocks = max(rgs) + 1
    ret = [[] for _ in range(num_blocks)]
    for i, b in enumerate(rgs):
        ret[b].append(i)
    return [tuple(it) for it in ret]


def count_partitions(n : int, max_blocks : int) -> int:
    """Number of partitions of an ``n`` set into at most ``max_blocks`` nonempty blocks."""
    if n == 0:
        return 1
    # stirling numbers of the second kind, row by row
    row = [1] + [0] * max_blocks
    for _ in range(n):
        nxt = [0] * (max_blocks + 1)
        for j in range(1, max_blocks + 1):
            nxt[j] = j * row[j] + row[j - 1]
        row = nxt
    return sum(row[1:])
