import logging
import time
from typing import Iterator, List, Optional

from joblib import Parallel, delayed

from app.exceptions import (
    BudgetExceeded, ClosureOverflowError, CongruenceError, DomainError, NotAdmissibleError,
)
from app.models.embedding_record import EmbeddingRecord, RecordSource, VerificationReport
from app.models.flag_map import MapInvariants
from app.models.knn import DeltaBar
from app.models.perm import Perm
from app.services.bipartite_maps import (
    build_r_l, deltabar_of_delta, enumerate_nnon, in_mnon_by_group, in_mnon_by_star,
    map_of_deltabar, projective_plane_map, reduction,
)
from app.services.flag_maps import invariants, is_orientable, is_regular, isomorphic
from app.services.number_theory import predicted_count
from app.services.permutation_groups import orbit, order
from app.services.search_config_service import get_search_config, validate_search_config

logger = logging.getLogger(__name__)


def iter_involutions(n: int, partner_of_one: Optional[int] = None) -> Iterator[Perm]:
    """
    Every involution of Z_n fixing 0, optionally with 1 sent to a given point.

    Points are matched smallest-unmatched first, left fixed before being
    paired with each larger free point, so the order is deterministic.
    """
    image = list(range(n))
    free = [True] * n
    free[0] = False

    def extend(point):
        while point < n and not free[point]:
            point += 1
        if point == n:
            yield Perm(image, check=False)
            return
        free[point] = False
        candidates = [point] + [q for q in range(point + 1, n) if free[q]]
        if point == 1 and partner_of_one is not None:
            candidates = [q for q in candidates if q == partner_of_one]
        for partner in candidates:
            if partner != point:
                free[partner] = False
                image[point], image[partner] = partner, point
            yield from extend(point + 1)
            if partner != point:
                free[partner] = True
                image[point], image[partner] = point, partner
        free[point] = True

    yield from extend(1)


def search_shard(n: int, partner_of_one: Optional[int], cap: int, prefilter: str) -> List[List[int]]:
    """Members found among the involutions with 1 -> partner_of_one, as image lists."""
    found = []
    checked = 0
    for delta in iter_involutions(n, partner_of_one):
        checked += 1
        deltabar = deltabar_of_delta(n, delta)
        if prefilter == 'star' and not in_mnon_by_star(deltabar):
            continue
        if in_mnon_by_group(deltabar, cap=cap):
            found.append(deltabar.to_list())
    logger.debug(f"Shard n={n} partner={partner_of_one}: {checked} candidates, {len(found)} members")
    return found


class EmbeddingClassifier:
    """Brute-force and constructive classification of nonorientable regular embeddings of K_{n,n}."""

    def __init__(self, config=None):
        """
        Initialize the classifier.

        Args:
            config: search configuration overrides (brute_max, workers, ...)
        """
        self.config = get_search_config(config)
        is_valid, error = validate_search_config(self.config)
        if not is_valid:
            raise DomainError(f"Invalid search configuration: {error}")

    def brute_force_mnon(self, n: int, budget: Optional[int] = None) -> List[DeltaBar]:
        """
        Test every involution delta fixing 0 and return the member delta-bars,
        sorted by image array.

        Args:
            n: degree of K_{n,n}
            budget: element cap per closure, defaults to 4n^2 + 1
        """
        if n < 2:
            raise DomainError(f"n must be at least 2, got {n}")
        if n > self.config['brute_max_limit']:
            raise BudgetExceeded(f"Brute force is limited to n <= {self.config['brute_max_limit']}, got {n}")

        if n == 2:
            # The normal form degenerates here (t is trivial); decide on the map itself
            flag_map = projective_plane_map()
            if is_regular(flag_map) and not is_orientable(flag_map):
                return [DeltaBar(2, Perm.identity(2))]
            return []

        cap = budget if budget is not None else 4 * n * n + 1
        prefilter = self.config['brute_prefilter']
        workers = self.config['workers']
        start = time.perf_counter()

        shards = list(range(1, n))
        if workers > 1:
            results = Parallel(n_jobs=workers, backend='loky')(
                delayed(search_shard)(n, partner, cap, prefilter) for partner in shards
            )
        else:
            results = [search_shard(n, partner, cap, prefilter) for partner in shards]

        images = sorted(image for shard in results for image in shard)
        members = [DeltaBar(n, Perm(image)) for image in images]
        logger.info(f"Brute force n={n}: {len(members)} members in {time.perf_counter() - start:.2f}s "
                    f"({workers} workers, prefilter={prefilter})")
        return members

    def classify_constructive(self, n: int) -> List[EmbeddingRecord]:
        """
        Build one record per member of the constructive family for n.

        Maps are derived and checked up to derive_max; beyond it the record
        carries the closed-form invariants and verified=False.
        """
        if n < 2:
            raise DomainError(f"n must be at least 2, got {n}")

        if n == 2:
            flag_map = projective_plane_map()
            return [EmbeddingRecord(
                n=2, x=None, deltabar=[0, 1], group_order=flag_map.flag_count,
                invariants=invariants(flag_map), class_id=0,
                source=RecordSource.CONSTRUCTIVE, verified=True, flag_map=flag_map,
            )]

        records = []
        derive = n <= self.config['derive_max']
        for deltabar in enumerate_nnon(n):
            if derive:
                records.append(self._derived_record(deltabar))
            else:
                records.append(self._formula_record(deltabar))
        self._assign_classes(records)
        logger.info(f"Constructive classification n={n}: {len(records)} records")
        return records

    def _derived_record(self, deltabar: DeltaBar) -> EmbeddingRecord:
        flag_map = map_of_deltabar(deltabar)
        verified = is_regular(flag_map) and not is_orientable(flag_map)
        if not verified:
            logger.error(f"Derived map of {deltabar} is not a nonorientable regular map")
        return EmbeddingRecord(
            n=deltabar.n, x=deltabar.x, deltabar=deltabar.to_list(),
            group_order=flag_map.flag_count, invariants=invariants(flag_map),
            class_id=-1, source=RecordSource.CONSTRUCTIVE, verified=verified, flag_map=flag_map,
        )

    def _formula_record(self, deltabar: DeltaBar) -> EmbeddingRecord:
        n = deltabar.n
        rotation, swap = build_r_l(deltabar)
        map_invariants = MapInvariants(
            vertices=2 * n, edges=n * n, faces=n * n // 4, orientable=False,
            valency=n, covalency=order(swap * rotation),
        )
        return EmbeddingRecord(
            n=n, x=deltabar.x, deltabar=deltabar.to_list(), group_order=4 * n * n,
            invariants=map_invariants, class_id=-1, source=RecordSource.CONSTRUCTIVE,
            verified=False,
        )

    def _assign_classes(self, records: List[EmbeddingRecord]):
        """
        Distinct x give distinct classes; structurally confirmed up to the
        isomorphism budget.
        """
        representatives = []
        for record in records:
            record.class_id = len(representatives)
            if record.flag_map is not None and record.n <= self.config['isomorphism_budget']:
                for class_id, other in enumerate(representatives):
                    if other.flag_map is not None and isomorphic(record.flag_map, other.flag_map, regular=True):
                        logger.warning(f"Maps for x={record.x} and x={other.x} at n={record.n} are isomorphic")
                        record.class_id = class_id
                        break
            if record.class_id == len(representatives):
                representatives.append(record)

    def audit_member(self, deltabar: DeltaBar) -> List[str]:
        """
        Check the structural conclusions every member outside the
        constructive family would have to satisfy. Returns violations.
        """
        n = deltabar.n
        d = deltabar.order_d
        notes = []
        if d != len(orbit(deltabar.perm, 1)):
            notes.append(f"n={n}: order {d} differs from orbit length of 1")
        if n % d or d >= n:
            notes.append(f"n={n}: order {d} is not a proper divisor of n")
        if n >= 3 and d == 2:
            notes.append(f"n={n}: member of order 2")
        try:
            if n % d == 0 and not in_mnon_by_group(reduction(deltabar, d)):
                notes.append(f"n={n}: reduction mod {d} is not a member")
        except CongruenceError as e:
            notes.append(f"n={n}: {e}")
        return notes

    def verify_theorem(self, n_low: int, n_high: int, brute_max: Optional[int] = None) -> List[VerificationReport]:
        """Compare predicted, constructive and (for small n) brute-force results over a range of n."""
        if not 2 <= n_low <= n_high:
            raise DomainError(f"Need 2 <= n_low <= n_high, got {n_low}..{n_high}")
        if brute_max is None:
            brute_max = self.config['brute_max']
        if min(brute_max, n_high) > self.config['brute_max_limit']:
            raise BudgetExceeded(f"Brute force is limited to n <= {self.config['brute_max_limit']}, got {brute_max}")

        reports = []
        for n in range(n_low, n_high + 1):
            reports.append(self._verify_one(n, brute_max))
        failed = [report.n for report in reports if not report.success]
        if failed:
            logger.warning(f"Disagreement at n = {failed}")
        return reports

    def _brute_record(self, member: DeltaBar) -> EmbeddingRecord:
        """Record for a brute-force member outside the constructive family."""
        record = None
        if member.n <= self.config['derive_max']:
            try:
                record = self._derived_record(member)
            except (NotAdmissibleError, ClosureOverflowError) as e:
                logger.warning(f"No derived map for brute-force member {member}: {e}")
        if record is None:
            record = self._formula_record(member)
        record.source = RecordSource.BRUTE_FORCE
        return record

    def _verify_one(self, n: int, brute_max: int) -> VerificationReport:
        start = time.perf_counter()
        predicted = predicted_count(n)
        records = self.classify_constructive(n)
        notes = []

        brute_count = None
        members_match = None
        if n <= brute_max:
            members = self.brute_force_mnon(n)
            brute_count = len(members)
            constructive = {tuple(record.deltabar) for record in records}
            found = {tuple(member.to_list()) for member in members}
            members_match = constructive == found
            for member in members:
                if tuple(member.to_list()) not in constructive:
                    notes.append(f"n={n}: brute-force member {member.to_list()} outside the constructive family")
                    notes.extend(self.audit_member(member))
                    records.append(self._brute_record(member))
                elif n >= 3 and member.order_d == 2:
                    notes.append(f"n={n}: member {member.to_list()} has order 2")
            for record in records:
                if record.source == RecordSource.CONSTRUCTIVE and tuple(record.deltabar) in found:
                    record.source = RecordSource.BOTH

        constructive_count = sum(1 for record in records if record.source != RecordSource.BRUTE_FORCE)
        report = VerificationReport(
            n=n, predicted=predicted, constructive_count=constructive_count, brute_count=brute_count,
            members_match=members_match, wall_time=time.perf_counter() - start, notes=notes,
            records=records,
        )
        logger.info(f"Verified {report}")
        return report

