"""
Combinatorial maps given by three flag involutions.

A map is a flag set F with fixed-point-free involutions lambda, rho, tau such
that lambda and tau commute and <lambda, rho, tau> is transitive on F.
Vertices, edges and faces are the orbits of <rho, tau>, <lambda, tau> and
<rho, lambda>.
"""

import json
import logging
from typing import List, Optional

import numpy as np

from app.exceptions import (
    CommutationError, DegreeError, DomainError, FixedPointError, NotTransitiveError,
)
from app.models.flag_map import FlagMap, MapInvariants
from app.models.perm import GroupClosure, Perm
from app.services.permutation_groups import group_order, orbit_labels

logger = logging.getLogger(__name__)

ROOT_FLAG = 0


def validate(lam: Perm, rho: Perm, tau: Perm) -> FlagMap:
    """Check the map axioms and return the FlagMap."""
    degree = lam.degree
    for other in (rho, tau):
        if other.degree != degree:
            raise DegreeError(degree, other.degree)

    for name, perm in (('lambda', lam), ('rho', rho), ('tau', tau)):
        if not perm.is_involution():
            raise FixedPointError(f"{name} is not an involution")
        fixed = perm.fixed_points()
        if fixed:
            raise FixedPointError(f"{name} fixes flag {fixed[0]}")

    if lam * tau != tau * lam:
        raise CommutationError("lambda and tau do not commute")

    labels = orbit_labels([lam, rho, tau])
    orbit_count = int(labels.max()) + 1
    if orbit_count != 1:
        raise NotTransitiveError(orbit_count)

    return FlagMap(lam, rho, tau)


def is_orientable(flag_map: FlagMap) -> bool:
    """Orientable exactly when the even-word subgroup <rho tau, tau lambda> is intransitive."""
    even_words = [flag_map.rho * flag_map.tau, flag_map.tau * flag_map.lam]
    return even_orbit_count(flag_map, even_words) >= 2


def even_orbit_count(flag_map: FlagMap, even_words: Optional[List[Perm]] = None) -> int:
    if even_words is None:
        even_words = [flag_map.rho * flag_map.tau, flag_map.tau * flag_map.lam]
    return int(orbit_labels(even_words).max()) + 1


def extend_isomorphism(source: FlagMap, target: FlagMap, anchor: int, image: int) -> Optional[np.ndarray]:
    """
    Propagate anchor -> image through the three involutions.

    Returns the flag correspondence as an index array when it is consistent,
    or None at the first clash. Both maps are transitive, so a consistent
    correspondence is a bijection.
    """
    if source.flag_count != target.flag_count:
        return None
    pairs = [(s.image, t.image) for s, t in zip(source.generators, target.generators)]
    mapping = np.full(source.flag_count, -1, dtype=np.int64)
    mapping[anchor] = image
    queue = [anchor]
    while queue:
        flag = queue.pop()
        mapped = mapping[flag]
        for source_image, target_image in pairs:
            neighbour = source_image[flag]
            expected = target_image[mapped]
            current = mapping[neighbour]
            if current < 0:
                mapping[neighbour] = expected
                queue.append(neighbour)
            elif current != expected:
                return None
    return mapping


def is_regular(flag_map: FlagMap) -> bool:
    """
    True when the automorphism group is transitive on flags.

    Automorphisms are found by extending root -> f; each success joins a
    growing set of generators, and only flags outside the orbit of the root
    under those generators are tried next.
    """
    automorphisms = []
    reached = np.zeros(flag_map.flag_count, dtype=bool)
    reached[ROOT_FLAG] = True
    for flag in range(flag_map.flag_count):
        if reached[flag]:
            continue
        mapping = extend_isomorphism(flag_map, flag_map, ROOT_FLAG, flag)
        if mapping is None:
            logger.debug(f"No automorphism sends flag {ROOT_FLAG} to flag {flag}")
            return False
        automorphisms.append(Perm(mapping, check=False))
        labels = orbit_labels(automorphisms)
        reached = labels == labels[ROOT_FLAG]
    return True


def isomorphic(first: FlagMap, second: FlagMap, regular: Optional[bool] = None) -> bool:
    """
    Decide whether a flag bijection commuting with lambda, rho and tau exists.

    When the second map is regular every anchor is equivalent to the root,
    so only root -> root is tried.
    """
    if first.flag_count != second.flag_count:
        return False
    if regular is None:
        regular = is_regular(second)
    candidates = [ROOT_FLAG] if regular else range(second.flag_count)
    return any(extend_isomorphism(first, second, ROOT_FLAG, image) is not None for image in candidates)


def _uniform_half(labels: np.ndarray) -> Optional[int]:
    sizes = np.bincount(labels)
    if np.all(sizes == sizes[0]):
        return int(sizes[0]) // 2
    return None


def invariants(flag_map: FlagMap) -> MapInvariants:
    """Count vertices, edges and faces and read off the surface."""
    vertex_labels = orbit_labels([flag_map.rho, flag_map.tau])
    edge_labels = orbit_labels([flag_map.lam, flag_map.tau])
    face_labels = orbit_labels([flag_map.rho, flag_map.lam])

    result = MapInvariants(
        vertices=int(vertex_labels.max()) + 1,
        edges=int(edge_labels.max()) + 1,
        faces=int(face_labels.max()) + 1,
        orientable=is_orientable(flag_map),
        valency=_uniform_half(vertex_labels),
        covalency=_uniform_half(face_labels),
    )
    logger.debug(f"Invariants of {flag_map}: {result}")
    return result


def monodromy_order(flag_map: FlagMap, cap: int) -> Optional[int]:
    """Order of <lambda, rho, tau>, or None when it exceeds cap."""
    return group_order(list(flag_map.generators), cap)


def flag_map_from_closure(closure: GroupClosure) -> FlagMap:
    """
    The map whose flags are group elements and whose involutions are right
    translations by the three generators.
    """
    if not closure.is_complete:
        raise DomainError(f"Cannot build a map from an incomplete closure ({closure})")
    if len(closure.generators) != 3:
        raise DomainError(f"Expected three generators, got {len(closure.generators)}")
    lam, rho, tau = (Perm(closure.translation(g), check=False) for g in range(3))
    return validate(lam, rho, tau)


def dumps(flag_map: FlagMap, indent: Optional[int] = None) -> str:
    return json.dumps(flag_map.to_dict(), indent=indent)


def loads(text: str) -> FlagMap:
    """Parse a serialized map and revalidate it."""
    try:
        data = json.loads(text)
        flag_map = FlagMap.from_dict(data)
    except (ValueError, KeyError, TypeError) as e:
        raise DomainError(f"Malformed flag map record: {e}") from e
    if data.get('flag_count') != flag_map.flag_count:
        raise DomainError(f"flag_count {data.get('flag_count')} does not match arrays of length {flag_map.flag_count}")
    return validate(flag_map.lam, flag_map.rho, flag_map.tau)
