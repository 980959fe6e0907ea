"""Built-in example systems used as golden fixtures and CLI demos."""

from .errors import UnknownFixture
from .model import build_system

# Each fixture: (author paper counts, [(realized row, accurate row), ...]).
# Rows are citing papers in order; columns are cited papers A, B, C, ...

_TABLE1 = (
    ("I", "II", "III"),
    (3, 2, 5),
    [
        ((0, 1, 1, 0, 0), (1, 1, 0, 1, 1)),
        ((1, 0, 0, 1, 1), (1, 1, 0, 1, 1)),
        ((0, 1, 0, 0, 0), (1, 0, 0, 0, 1)),
        ((1, 1, 0, 1, 0), (1, 0, 0, 0, 1)),
        ((1, 1, 1, 0, 0), (1, 0, 1, 0, 1)),
        ((0, 1, 0, 1, 0), (1, 0, 0, 0, 0)),
        ((1, 1, 1, 1, 0), (1, 0, 0, 1, 0)),
        ((1, 1, 1, 0, 0), (1, 1, 1, 1, 0)),
        ((0, 0, 0, 0, 0), (1, 1, 0, 0, 0)),
        ((1, 0, 1, 0, 0), (1, 1, 0, 0, 0)),
    ],
)

_TABLE2 = (
    ("I", "II", "III"),
    (3, 2, 5),
    [((1, 1, 0, 1), (1, 1, 1, 0))] * 5 + [((1, 0, 1, 1), (0, 1, 1, 1))] * 5,
)

_TABLE3 = (
    ("I", "II", "III"),
    (3, 3, 5),
    [
        ((1, 1, 1, 1, 1), (0, 0, 0, 0, 0)),
        ((0, 0, 0, 0, 0), (1, 1, 1, 1, 1)),
        ((1, 1, 1, 1, 1), (0, 0, 0, 0, 0)),
        ((0, 0, 0, 0, 0), (1, 1, 1, 1, 1)),
        ((1, 1, 1, 1, 1), (0, 0, 0, 0, 0)),
        ((0, 0, 0, 0, 0), (1, 1, 1, 1, 1)),
    ]
    + [((0, 1, 0, 1, 1), (0, 1, 0, 1, 1))] * 5,
)

_FIXTURES = {"table1": _TABLE1, "table2": _TABLE2, "table3": _TABLE3}


def fixture_names():
    return sorted(_FIXTURES)


def builtin_fixture(name):
    """Return one of the bundled example systems by name."""
    try:
        author_ids, counts, rows = _FIXTURES[name]
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {name!r}; available: {', '.join(fixture_names())}"
        ) from None
    citing = []
    j = 0
    for i, n in enumerate(counts):
        for _ in range(n):
            citing.append((f"citing-{j + 1}", i))
            j += 1
    n_cited = len(rows[0][0])
    cited_ids = [chr(ord("A") + k) for k in range(n_cited)]
    realized = [r for r, _ in rows]
    accurate = [a for _, a in rows]
    return build_system(author_ids, citing, cited_ids, realized, accurate)
