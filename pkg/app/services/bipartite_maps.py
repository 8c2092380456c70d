"""
Regular embeddings of the complete bipartite graph K_{n,n}.

Vertices are 0..n-1 on one side and n..2n-1 on the other (vertex i' is n + i).
Every embedding is described by an involution delta of Z_n fixing 0 through
the normal-form triple

    ell: k -> (-k)',        k' -> -k
    r:   k -> delta(k),     j' -> (1 - j)'
    t:   k -> -k,           k' -> (-k)'

and by delta-bar = delta * iota, where iota(k) = -k. With products applied
right to left, R = r * t acts as delta-bar on [n] and as j' -> (j + 1)' on
[n]', and L = t * ell swaps k and k'.
"""

import logging
import math
from typing import Iterator, List, Optional

import numpy as np

from app.exceptions import ClosureOverflowError, CongruenceError, DomainError, NotAdmissibleError
from app.models.flag_map import FlagMap
from app.models.knn import DeltaBar, StarVariant, StarWitness, Triple
from app.models.perm import Perm
from app.services.flag_maps import flag_map_from_closure
from app.services.number_theory import solve_x2_eq_2
from app.services.permutation_groups import close_group, order

logger = logging.getLogger(__name__)


def _check_delta(n: int, delta: Perm):
    if delta.degree != n:
        raise DomainError(f"delta must act on {n} points, got {delta.degree}")
    if delta(0) != 0:
        raise DomainError(f"delta must fix 0, maps it to {delta(0)}")
    if not delta.is_involution():
        raise DomainError("delta is not an involution")


def negation(n: int) -> Perm:
    """iota: k -> -k on Z_n."""
    return Perm((-np.arange(n)) % n, check=False)


def canonical_triple(n: int, delta: Perm) -> Triple:
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    _check_delta(n, delta)
    ks = np.arange(n)
    minus = (-ks) % n

    ell = np.concatenate([n + minus, minus])
    r = np.concatenate([delta.image, n + (1 - ks) % n])
    t = np.concatenate([minus, n + minus])
    return Triple(n, Perm(ell), Perm(r), Perm(t), delta)


def deltabar_of_delta(n: int, delta: Perm) -> DeltaBar:
    _check_delta(n, delta)
    return DeltaBar(n, delta * negation(n))


def delta_of_deltabar(n: int, deltabar: DeltaBar) -> Perm:
    if deltabar.n != n:
        raise DomainError(f"delta-bar acts on {deltabar.n} points, expected {n}")
    delta = deltabar.perm * negation(n)
    _check_delta(n, delta)
    return delta


def build_r_l(deltabar: DeltaBar):
    """The rotation R at the root vertex and the side swap L, on 2n vertices."""
    n = deltabar.n
    ks = np.arange(n)
    r_image = np.concatenate([deltabar.image, n + (ks + 1) % n])
    l_image = np.concatenate([n + ks, ks])
    return Perm(r_image, check=False), Perm(l_image, check=False)


def vertex_negation(n: int) -> Perm:
    """t on the 2n vertices."""
    minus = (-np.arange(n)) % n
    return Perm(np.concatenate([minus, n + minus]), check=False)


def in_mnon_by_group(deltabar: DeltaBar, cap: Optional[int] = None) -> bool:
    """Membership via |<R, L>| = 4n^2 with t inside the group."""
    n = deltabar.n
    target = 4 * n * n
    rotation, swap = build_r_l(deltabar)
    closure = close_group([rotation, swap], cap=target + 1 if cap is None else cap)
    return closure.is_complete and len(closure) == target and vertex_negation(n) in closure


def check_star_equation(deltabar: DeltaBar, i: int, variant: StarVariant) -> bool:
    """
    Test one star equation system at shift i.

    Star1:  db(k + i) = db^b(k) + a   and  db^i(k) + 1 = db^a(k + b)
    Star2:  db(k + i) = db^b(-k) + a  and  db^i(k) + 1 = db^a(-k + b)

    with a = db(i), and b = db^i(1) for Star1 or -db^i(1) for Star2. Both
    systems force b = db^(-a)(1), which is checked first.
    """
    n = deltabar.n
    ks = np.arange(n)
    a = deltabar(i)
    step = deltabar.power_at(i, 1)
    if variant == StarVariant.STAR1:
        b, source = step, ks
    elif variant == StarVariant.STAR2:
        b, source = (-step) % n, (-ks) % n
    else:
        raise DomainError(f"No equations for variant {variant}")

    if b != deltabar.power_at(-a, 1):
        return False
    shifted = deltabar.image[(ks + i) % n]
    if not np.array_equal(shifted, (deltabar.power_image(b)[source] + a) % n):
        return False
    return bool(np.array_equal((deltabar.power_image(i) + 1) % n,
                               deltabar.power_image(a)[(source + b) % n]))


def _witness(deltabar: DeltaBar, i: int) -> StarWitness:
    n = deltabar.n
    a = deltabar(i)
    step = deltabar.power_at(i, 1)
    if check_star_equation(deltabar, i, StarVariant.STAR1):
        return StarWitness(i, a, step, StarVariant.STAR1)
    if check_star_equation(deltabar, i, StarVariant.STAR2):
        return StarWitness(i, a, (-step) % n, StarVariant.STAR2)
    return StarWitness(i, a, step, StarVariant.FAIL)


def iter_star_witnesses(deltabar: DeltaBar) -> Iterator[StarWitness]:
    for i in range(deltabar.n):
        yield _witness(deltabar, i)


def star_witnesses(deltabar: DeltaBar) -> List[StarWitness]:
    """One witness per shift i in Z_n, Star1 tried before Star2."""
    return list(iter_star_witnesses(deltabar))


def in_mnon_by_star(deltabar: DeltaBar) -> bool:
    """Membership via the star equations: no shift fails and some shift needs Star2."""
    seen_star2 = False
    for witness in iter_star_witnesses(deltabar):
        if witness.variant == StarVariant.FAIL:
            return False
        if witness.variant == StarVariant.STAR2:
            seen_star2 = True
    return seen_star2


def deltabar_nx(n: int, x: int) -> DeltaBar:
    """
    The constructive delta-bar: fixes 0, sends even 2k to -2k and odd m to
    m + x.
    """
    if n % 2 or x % 2:
        raise DomainError(f"n and x must both be even, got n={n}, x={x}")
    if not n > x > 3:
        raise DomainError(f"x must satisfy n > x > 3, got n={n}, x={x}")
    if math.gcd(n, x) != 2:
        raise DomainError(f"gcd(n, x) must be 2, got gcd({n}, {x}) = {math.gcd(n, x)}")
    ks = np.arange(n)
    image = np.where(ks % 2 == 0, (-ks) % n, (ks + x) % n)
    return DeltaBar(n, Perm(image), x=x)


def nnon_rejection(n: int, x: int) -> Optional[str]:
    """Why (n, x) does not index a member of the constructive family, or None."""
    if n < 2:
        return "n must be at least 2"
    if n % 2:
        return "n is odd"
    if n % 4 == 0:
        return "n is divisible by 4"
    if x % 2:
        return "x is odd"
    if not n > x > 3:
        return "x must satisfy n > x > 3"
    if math.gcd(n, x) != 2:
        return "gcd(n, x) is not 2"
    if (x * x - 2) % n:
        return f"x^2 = 2 (mod n) fails: {x}^2 = {(x * x) % n} (mod {n})"
    return None


def enumerate_nnon(n: int) -> List[DeltaBar]:
    """The constructive family for n, sorted by x."""
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if n % 2:
        return []
    xs = [x for x in solve_x2_eq_2(n) if n > x > 3 and x % 2 == 0]
    members = [deltabar_nx(n, x) for x in sorted(xs)]
    logger.debug(f"Constructive family for n={n}: x in {[db.x for db in members]}")
    return members


def reduction(deltabar: DeltaBar, m: int) -> DeltaBar:
    """
    Reduce delta-bar modulo a divisor m of n.

    Requires k1 = k2 (mod m) to imply db(k1) = db(k2) (mod m); the first
    violating pair is reported.
    """
    n = deltabar.n
    if m < 1 or n % m:
        raise DomainError(f"{m} does not divide {n}")
    ks = np.arange(n)
    reduced = deltabar.image % m
    clashes = np.flatnonzero(reduced != reduced[ks % m])
    if clashes.size:
        k = int(clashes[0])
        raise CongruenceError(m, k % m, k)
    return DeltaBar(m, Perm(reduced[:m]), check_skew=False)


def reduction_chain(deltabar: DeltaBar) -> List[DeltaBar]:
    """
    Reduce modulo the order repeatedly. Stops once the order equals the
    degree, drops to 2 or less, does not divide the degree, or the
    reduction stops being well defined.
    """
    chain = [deltabar]
    current = deltabar
    while current.order_d != current.n and current.order_d > 2 and current.n % current.order_d == 0:
        try:
            current = reduction(current, current.order_d)
        except CongruenceError as e:
            logger.debug(f"Reduction chain stopped: {e}")
            break
        chain.append(current)
    return chain


def linear_deltabar(n: int, d: int, r: int) -> DeltaBar:
    """
    k -> k(1 + rd) mod n, for a multiplier whose multiplicative order is d.

    These need not satisfy the skew condition; the skew flag on the result
    says whether they do.
    """
    if d < 1 or n % d:
        raise DomainError(f"d must be a positive divisor of n, got d={d}, n={n}")
    multiplier = (1 + r * d) % n
    if math.gcd(multiplier, n) != 1:
        raise DomainError(f"Multiplier {multiplier} is not a unit mod {n}")
    power, found = multiplier % n, 1
    while power != 1 % n:
        power = (power * multiplier) % n
        found += 1
    if found != d:
        raise DomainError(f"Multiplier {multiplier} has order {found} mod {n}, not {d}")
    image = (np.arange(n) * multiplier) % n
    return DeltaBar(n, Perm(image), check_skew=False)


def half_turn_related(n: int, delta1: Perm, delta2: Perm) -> bool:
    """True when n is even and delta2(k) = delta1(k + n/2) + n/2 for all k."""
    if n % 2:
        return False
    half = n // 2
    ks = np.arange(n)
    return bool(np.array_equal(delta2.image, (delta1.image[(ks + half) % n] + half) % n))


def _arc_orbit_size(triple: Triple) -> int:
    n = triple.n
    images = [g.image for g in triple.generators]
    start = (0, n)
    seen = {start}
    stack = [start]
    while stack:
        u, v = stack.pop()
        for image in images:
            arc = (int(image[u]), int(image[v]))
            if arc not in seen:
                seen.add(arc)
                stack.append(arc)
    return len(seen)


def check_admissible(triple: Triple):
    """Raise NotAdmissibleError naming the first admissibility condition that fails."""
    n = triple.n
    ell, r, t = triple.ell, triple.r, triple.t

    if ell.is_identity() or t.is_identity() or ell == t:
        raise NotAdmissibleError('klein_four', "ell and t must be distinct non-trivial involutions")

    rt = r * t
    if order(rt) != n:
        raise NotAdmissibleError('dihedral', f"r t has order {order(rt)}, expected {n}")
    dihedral = close_group([r, t], cap=2 * n + 1)
    if not dihedral.is_complete or len(dihedral) != 2 * n:
        raise NotAdmissibleError('dihedral', f"<r, t> does not have order {2 * n}")
    root_arcs = set()
    power = Perm.identity(2 * n)
    for _ in range(n):
        root_arcs.add((power(0), power(n)))
        power = rt * power
    if len(root_arcs) != n:
        raise NotAdmissibleError('dihedral', "<r t> is not regular on the arcs at the root")

    arcs = _arc_orbit_size(triple)
    if arcs != 2 * n * n:
        raise NotAdmissibleError('arc_transitive', f"arc orbit has {arcs} of {2 * n * n} arcs")


def derived_map(triple: Triple) -> FlagMap:
    """
    The regular map of an admissible triple.

    Flags are the elements of <ell, r, t> in breadth-first order from the
    identity (generator order ell, r, t); lambda, rho and tau are right
    translation by ell, r and t.
    """
    n = triple.n
    check_admissible(triple)
    target = 4 * n * n
    closure = close_group(triple.generators, cap=target + 1)
    if not closure.is_complete:
        raise ClosureOverflowError(closure.cap)
    if len(closure) != target:
        raise NotAdmissibleError('group_order', f"<ell, r, t> has order {len(closure)}, expected {target}")
    flag_map = flag_map_from_closure(closure)
    logger.debug(f"Derived map for n={n}: {flag_map}")
    return flag_map


def map_of_deltabar(deltabar: DeltaBar) -> FlagMap:
    """Derived map for delta-bar, or the projective-plane map when n = 2."""
    if deltabar.n == 2:
        return projective_plane_map()
    return derived_map(canonical_triple(deltabar.n, delta_of_deltabar(deltabar.n, deltabar)))


def projective_plane_map() -> FlagMap:
    """
    K_{2,2} in the projective plane, as the regular representation of the
    octagon group generated by i -> -i, i -> 1 - i and i -> i + 4 on Z_8.
    """
    points = np.arange(8)
    lam = Perm((-points) % 8)
    rho = Perm((1 - points) % 8)
    tau = Perm((points + 4) % 8)
    closure = close_group([lam, rho, tau], cap=17)
    return flag_map_from_closure(closure)
