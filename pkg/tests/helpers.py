"""Small hand-written generators used across tests."""

from triact.core import IN, OUT, DeclaredLine, GraphGenerator


def directed_line() -> GraphGenerator:
    return GraphGenerator(
        family="directed-line",
        oracle=lambda i: ((i - 1, IN), (i + 1, OUT)),
        base=0,
        degree=2,
        oriented=True,
        in_degree=1,
        out_degree=1,
        is_valid=lambda t: isinstance(t, int),
        line=DeclaredLine(lambda k: k),
    )


def directed_cycle(n: int) -> GraphGenerator:
    return GraphGenerator(
        family="directed-cycle",
        oracle=lambda i: (((i - 1) % n, IN), ((i + 1) % n, OUT)),
        base=0,
        degree=2,
        params={"n": n},
        oriented=True,
        in_degree=1,
        out_degree=1,
        is_valid=lambda t: isinstance(t, int) and 0 <= t < n,
    )
