"""Cache payload of a coset table: the minimized words only.

Matrices and orbits are rebuilt from the parent chain on load, so the
payload stays small and a decoded table is identical to a fresh one.
"""

from services.lie_data.RootSystem import root_system_for
from services.lie_data.models import LieType
from services.weyl.models import CosetElement, CosetTable
from shared.helper.HelperMatrix import identity, left_reflect
from shared.models.errors import FixtureError


def encode_table(table: CosetTable) -> dict:
    return {
        "type": table.lie_type.name,
        "K": sorted(table.K),
        "complete": table.complete,
        "slices": [[list(element.min_word) for element in elements] for elements in table.slices],
    }


def decode_table(payload: dict) -> CosetTable:
    """Rebuild a table from :func:`encode_table` output.

    Raises:
        FixtureError: a word whose tail is missing from the previous slice.
    """
    lie_type = LieType.parse(payload["type"])
    K = frozenset(payload["K"])
    rs = root_system_for(lie_type)
    weight = tuple(1 if j + 1 in K else 0 for j in range(rs.rank))
    slices = [[CosetElement(length=0, index=1, min_word=(), matrix=identity(rs.rank), orbit=weight, parent=None)]]
    for r, words in enumerate(payload["slices"][1:], start=1):
        previous = {element.min_word: position for position, element in enumerate(slices[-1])}
        current = []
        for index, raw in enumerate(words, start=1):
            word = tuple(raw)
            position = previous.get(word[1:])
            if position is None or len(word) != r:
                raise FixtureError(f"cached coset table {lie_type.name} K={sorted(K)} is inconsistent at {word}")
            parent = slices[-1][position]
            first = word[0]
            current.append(CosetElement(
                length=r,
                index=index,
                min_word=word,
                matrix=left_reflect(parent.matrix, first - 1, rs.cartan.row(first)),
                orbit=rs.reflect_weight(first, parent.orbit),
                parent=position,
            ))
        slices.append(current)
    return CosetTable(lie_type=lie_type, K=K, slices=slices, complete=bool(payload["complete"]))
