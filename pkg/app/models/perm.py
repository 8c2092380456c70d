from enum import Enum
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from app.exceptions import DegreeError, DomainError


class Perm:
    """
    A permutation of the points {0, ..., m-1}.

    The image array is stored read-only; image[i] is where point i goes.
    Products follow one convention everywhere: (p * q)(i) = p(q(i)), so the
    right-hand factor acts first.
    """

    __slots__ = ('image', 'key')

    def __init__(self, image, check: bool = True):
        array = np.array(image, dtype=np.int64)
        if array.ndim != 1 or array.size == 0:
            raise DomainError("A permutation needs a non-empty one-dimensional image")
        if check:
            degree = array.size
            if array.min() < 0 or array.max() >= degree:
                raise DomainError(f"Image values must lie in 0..{degree - 1}")
            if np.unique(array).size != degree:
                raise DomainError("Image is not a bijection")
        array.flags.writeable = False
        self.image = array
        self.key = array.tobytes()

    @classmethod
    def identity(cls, degree: int) -> 'Perm':
        if degree < 1:
            raise DomainError(f"Degree must be positive, got {degree}")
        return cls(np.arange(degree, dtype=np.int64), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> 'Perm':
        """Build a permutation from disjoint cycles; unlisted points are fixed."""
        image = list(range(degree))
        seen = set()
        for cycle in cycles:
            for position, point in enumerate(cycle):
                if point in seen or not 0 <= point < degree:
                    raise DomainError(f"Invalid or repeated point {point} in cycles")
                seen.add(point)
                image[point] = cycle[(position + 1) % len(cycle)]
        return cls(image, check=False)

    @property
    def degree(self) -> int:
        return int(self.image.size)

    def __len__(self) -> int:
        return self.degree

    def __call__(self, point: int) -> int:
        return int(self.image[point])

    def __mul__(self, other: 'Perm') -> 'Perm':
        if not isinstance(other, Perm):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeError(self.degree, other.degree)
        return Perm(self.image[other.image], check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: 'Perm') -> bool:
        return self.to_list() < other.to_list()

    def inverse(self) -> 'Perm':
        inverse = np.empty_like(self.image)
        inverse[self.image] = np.arange(self.degree, dtype=np.int64)
        return Perm(inverse, check=False)

    def power(self, exponent: int) -> 'Perm':
        """Raise to any integer power by rotating each cycle."""
        image = np.empty_like(self.image)
        for cycle in self.cycles(include_fixed=True):
            length = len(cycle)
            shift = exponent % length
            for position, point in enumerate(cycle):
                image[point] = cycle[(position + shift) % length]
        return Perm(image, check=False)

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest point, ordered by that point."""
        visited = np.zeros(self.degree, dtype=bool)
        result = []
        for start in range(self.degree):
            if visited[start]:
                continue
            cycle = [start]
            visited[start] = True
            point = int(self.image[start])
            while point != start:
                cycle.append(point)
                visited[point] = True
                point = int(self.image[point])
            if len(cycle) > 1 or include_fixed:
                result.append(tuple(cycle))
        return result

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(self.degree)))

    def is_involution(self) -> bool:
        return bool(np.array_equal(self.image[self.image], np.arange(self.degree)))

    def fixed_points(self) -> List[int]:
        return [int(i) for i in np.flatnonzero(self.image == np.arange(self.degree))]

    def to_list(self) -> List[int]:
        return [int(v) for v in self.image]

    def __repr__(self):
        cycles = self.cycles()
        if not cycles:
            return f'<Perm identity on {self.degree}>'
        body = ''.join('(' + ' '.join(str(p) for p in cycle) + ')' for cycle in cycles)
        return f'<Perm {body} on {self.degree}>'


class ClosureStatus(str, Enum):
    COMPLETE = 'Complete'
    OVERFLOW = 'Overflow'


class GroupClosure:
    """
    The elements generated by a list of permutations, in breadth-first
    discovery order from the identity.

    translations[g][i] is the index of elements[i] * generators[g]; the
    tables are only total when the closure is complete.
    """

    def __init__(self, generators: List[Perm], elements: List[Perm], index: Dict[bytes, int],
                 translations: List[List[int]], status: ClosureStatus, cap: int):
        self.generators = generators
        self.elements = elements
        self.index = index
        self.translations = translations
        self.status = status
        self.cap = cap

    @property
    def is_complete(self) -> bool:
        return self.status == ClosureStatus.COMPLETE

    @property
    def degree(self) -> int:
        return self.elements[0].degree

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, perm: Perm) -> bool:
        return perm.key in self.index

    def translation(self, generator: int) -> np.ndarray:
        """Right translation by one generator as an index array."""
        return np.asarray(self.translations[generator], dtype=np.int64)

    def to_dict(self):
        return {
            'status': self.status.value,
            'size': len(self.elements),
            'cap': self.cap,
            'generators': [g.to_list() for g in self.generators],
        }

    def __repr__(self):
        return f'<GroupClosure {self.status.value} size={len(self.elements)} cap={self.cap}>'
