import math
from enum import Enum
from typing import List, Optional

import numpy as np

from app.exceptions import DomainError
from app.models.perm import Perm


class DeltaBar:
    """
    A permutation of Z_n fixing 0, the [n]-part of r_delta * t.

    Powers are read from precomputed cycle tables, so power_at and
    power_image cost no repeated composition.
    """

    def __init__(self, n: int, perm: Perm, x: Optional[int] = None, check_skew: bool = True):
        if perm.degree != n:
            raise DomainError(f"Expected a permutation of {n} points, got {perm.degree}")
        if perm(0) != 0:
            raise DomainError(f"delta-bar must fix 0, maps it to {perm(0)}")
        self.n = n
        self.perm = perm
        self.x = x
        self.skew = self._is_skew()
        if check_skew and not self.skew:
            raise DomainError("delta-bar violates the skew condition")

        cycles = perm.cycles(include_fixed=True)
        self.order_d = math.lcm(*(len(c) for c in cycles))
        self._flat = np.array([p for c in cycles for p in c], dtype=np.int64)
        self._start = np.empty(n, dtype=np.int64)
        self._length = np.empty(n, dtype=np.int64)
        self._position = np.empty(n, dtype=np.int64)
        offset = 0
        for cycle in cycles:
            for position, point in enumerate(cycle):
                self._start[point] = offset
                self._length[point] = len(cycle)
                self._position[point] = position
            offset += len(cycle)

    def _is_skew(self) -> bool:
        n = self.n
        ks = np.arange(n)
        inverse = self.perm.inverse().image
        return bool(np.array_equal(inverse[(-ks) % n], (-self.perm.image) % n))

    @property
    def image(self) -> np.ndarray:
        return self.perm.image

    def __call__(self, k: int) -> int:
        return self.perm(k % self.n)

    def power_image(self, exponent: int) -> np.ndarray:
        """Image array of delta-bar ** exponent; negative exponents allowed."""
        return self._flat[self._start + (self._position + exponent) % self._length]

    def power_at(self, exponent: int, k: int) -> int:
        k %= self.n
        return int(self._flat[self._start[k] + (self._position[k] + exponent) % self._length[k]])

    def to_list(self) -> List[int]:
        return self.perm.to_list()

    def __eq__(self, other):
        if not isinstance(other, DeltaBar):
            return NotImplemented
        return self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __lt__(self, other: 'DeltaBar') -> bool:
        return self.to_list() < other.to_list()

    def to_dict(self):
        return {
            'n': self.n,
            'x': self.x,
            'image': self.to_list(),
            'order': self.order_d,
            'cycles': [list(c) for c in self.perm.cycles(include_fixed=True)],
        }

    def __repr__(self):
        label = f' x={self.x}' if self.x is not None else ''
        cycles = ''.join('(' + ' '.join(map(str, c)) + ')' for c in self.perm.cycles(include_fixed=True))
        return f'<DeltaBar n={self.n}{label} {cycles}>'


class Triple:
    """
    The normal-form triple (ell, r_delta, t) acting on the 2n vertices of
    K_{n,n}; vertex i' is stored as n + i.
    """

    root_vertex = 0

    def __init__(self, n: int, ell: Perm, r: Perm, t: Perm, delta: Perm):
        for name, perm in (('ell', ell), ('r', r), ('t', t)):
            if perm.degree != 2 * n:
                raise DomainError(f"{name} must act on {2 * n} vertices")
            if not perm.is_involution():
                raise DomainError(f"{name} is not an involution")
        if ell * t != t * ell:
            raise DomainError("ell and t do not commute")
        self.n = n
        self.ell = ell
        self.r = r
        self.t = t
        self.delta = delta

    @property
    def root_edge(self):
        return (0, self.n)

    @property
    def generators(self):
        return [self.ell, self.r, self.t]

    def to_dict(self):
        return {
            'n': self.n,
            'ell': self.ell.to_list(),
            'r': self.r.to_list(),
            't': self.t.to_list(),
            'delta': self.delta.to_list(),
        }

    def __repr__(self):
        return f'<Triple n={self.n} delta={self.delta}>'


class StarVariant(str, Enum):
    STAR1 = 'Star1'
    STAR2 = 'Star2'
    FAIL = 'Fail'


class StarWitness:
    """Outcome of the star equations at one shift i."""

    def __init__(self, i: int, a: int, b: int, variant: StarVariant):
        self.i = i
        self.a = a
        self.b = b
        self.variant = variant

    def to_dict(self):
        return {'i': self.i, 'a': self.a, 'b': self.b, 'variant': self.variant.value}

    def __eq__(self, other):
        if not isinstance(other, StarWitness):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return f'<StarWitness i={self.i} a={self.a} b={self.b} {self.variant.value}>'
