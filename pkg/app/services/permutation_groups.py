"""
Permutation arithmetic and breadth-first group closure.

All target groups here have a few thousand elements at most, so closure keeps
every element in a dict keyed by its image bytes instead of building a
stabilizer chain.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from app.exceptions import DegreeError, DomainError
from app.models.perm import ClosureStatus, GroupClosure, Perm

logger = logging.getLogger(__name__)


def compose(p: Perm, q: Perm) -> Perm:
    """Return the product with result(i) = p(q(i))."""
    if p.degree != q.degree:
        raise DegreeError(p.degree, q.degree)
    return p * q


def inverse(p: Perm) -> Perm:
    return p.inverse()


def order(p: Perm) -> int:
    """Order of p, the lcm of its cycle lengths."""
    return math.lcm(*cycle_type(p))


def cycle_type(p: Perm) -> List[int]:
    """Cycle lengths including fixed points, largest first."""
    return sorted((len(c) for c in p.cycles(include_fixed=True)), reverse=True)


def orbit(p: Perm, point: int) -> List[int]:
    """The orbit of point under <p>, in the order p visits it."""
    if not 0 <= point < p.degree:
        raise DomainError(f"Point {point} outside 0..{p.degree - 1}")
    result = [point]
    current = p(point)
    while current != point:
        result.append(current)
        current = p(current)
    return result


def orbit_labels(generators: Sequence[Perm], degree: Optional[int] = None) -> np.ndarray:
    """
    Label each point with the index of its orbit under the group generated.

    Orbits are numbered in order of their smallest point.
    """
    if degree is None:
        if not generators:
            raise DomainError("Degree is required when no generators are given")
        degree = generators[0].degree
    for gen in generators:
        if gen.degree != degree:
            raise DegreeError(degree, gen.degree)

    images = [gen.image for gen in generators]
    labels = np.full(degree, -1, dtype=np.int64)
    next_label = 0
    for start in range(degree):
        if labels[start] >= 0:
            continue
        labels[start] = next_label
        stack = [start]
        while stack:
            point = stack.pop()
            for image in images:
                target = int(image[point])
                if labels[target] < 0:
                    labels[target] = next_label
                    stack.append(target)
        next_label += 1
    return labels


def orbit_partition(generators: Sequence[Perm], degree: Optional[int] = None) -> List[List[int]]:
    """The orbits of the generated group, each sorted, ordered by smallest point."""
    labels = orbit_labels(generators, degree)
    orbits = [[] for _ in range(int(labels.max()) + 1)]
    for point, label in enumerate(labels):
        orbits[label].append(point)
    return orbits


def close_group(generators: Sequence[Perm], cap: int, degree: Optional[int] = None) -> GroupClosure:
    """
    Close the generators under right multiplication, starting from the identity.

    Stops with status Overflow as soon as one more element would push the
    element count past cap.
    """
    if cap < 1:
        raise DomainError(f"Closure cap must be positive, got {cap}")
    generators = list(generators)
    if degree is None:
        if not generators:
            raise DomainError("Degree is required when no generators are given")
        degree = generators[0].degree
    for gen in generators:
        if gen.degree != degree:
            raise DegreeError(degree, gen.degree)

    identity = Perm.identity(degree)
    elements = [identity]
    index = {identity.key: 0}
    translations = [[] for _ in generators]
    status = ClosureStatus.COMPLETE

    head = 0
    while head < len(elements) and status == ClosureStatus.COMPLETE:
        current = elements[head].image
        for g, gen in enumerate(generators):
            product = Perm(current[gen.image], check=False)
            position = index.get(product.key)
            if position is None:
                if len(elements) >= cap:
                    status = ClosureStatus.OVERFLOW
                    break
                position = len(elements)
                elements.append(product)
                index[product.key] = position
            translations[g].append(position)
        head += 1

    if status == ClosureStatus.OVERFLOW:
        logger.debug(f"Closure of {len(generators)} generators on {degree} points overflowed cap {cap}")

    return GroupClosure(generators, elements, index, translations, status, cap)


def group_order(generators: Sequence[Perm], cap: int) -> Optional[int]:
    """Order of the generated group, or None if it exceeds cap."""
    closure = close_group(generators, cap)
    return len(closure) if closure.is_complete else None
