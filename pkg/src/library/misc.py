from __future__ import annotations

from enum import Enum
from typing import Union


class StructuralCase(Enum):
    """The two normal forms of a four-dimensional solvable Hermitian algebra.

    Possible values:
        COMPLEX: the second filtration step is J-invariant
        REAL: the second filtration step is totally real
    """

    COMPLEX = "complex"
    REAL = "real"

    @staticmethod
    def get_from_str(s: Union[str, StructuralCase]) -> StructuralCase:
        """Returns Enum value from string.

        Args:
            s:
                string value.
        """
        if isinstance(s, StructuralCase):
            return s
        for k in StructuralCase:
            if s == k.value:
                return k
        raise ValueError(f'Structural case not defined: "{s}"')


class SearchVerdict(Enum):
    """Outcome of a numerical SKT search."""

    FOUND = "found"
    NOT_FOUND = "not-found"
