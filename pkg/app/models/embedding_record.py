from enum import Enum
from typing import List, Optional

from app.models.flag_map import FlagMap, MapInvariants


class RecordSource(str, Enum):
    CONSTRUCTIVE = 'Constructive'
    BRUTE_FORCE = 'BruteForce'
    BOTH = 'Both'


class EmbeddingRecord:
    """One classified nonorientable regular embedding of K_{n,n}."""

    def __init__(self, n: int, x: Optional[int], deltabar: List[int], group_order: int,
                 invariants: MapInvariants, class_id: int, source: RecordSource,
                 verified: bool, flag_map: Optional[FlagMap] = None):
        self.n = n
        self.x = x
        self.deltabar = deltabar
        self.group_order = group_order
        self.invariants = invariants
        self.class_id = class_id
        self.source = source
        self.verified = verified
        # Kept for export only, never serialized with the record
        self.flag_map = flag_map

    def to_dict(self):
        """Convert record to dictionary for JSON serialization."""
        return {
            'n': self.n,
            'x': self.x,
            'deltabar': list(self.deltabar),
            'group_order': self.group_order,
            'class_id': self.class_id,
            'source': self.source.value,
            'verified': self.verified,
            'invariants': self.invariants.to_dict(),
        }

    def __repr__(self):
        return f'<EmbeddingRecord n={self.n} x={self.x} class={self.class_id} {self.source.value}>'


class VerificationReport:
    """Comparison of predicted, constructive and brute-force counts for one n."""

    def __init__(self, n: int, predicted: int, constructive_count: int, brute_count: Optional[int],
                 members_match: Optional[bool], wall_time: float, notes: Optional[List[str]] = None,
                 records: Optional[List[EmbeddingRecord]] = None):
        self.n = n
        self.predicted = predicted
        self.constructive_count = constructive_count
        self.brute_count = brute_count
        self.members_match = members_match
        self.wall_time = wall_time
        self.notes = list(notes or [])
        # Constructive records plus any brute-force finds outside the family; not serialized
        self.records = list(records or [])

    @property
    def agreement(self) -> bool:
        return self.predicted == self.constructive_count and (
            self.brute_count is None or self.brute_count == self.constructive_count
        )

    @property
    def success(self) -> bool:
        """Counts agree and, when brute force ran, so do the member sets."""
        return self.agreement and self.members_match is not False

    def to_dict(self, include_timing: bool = False):
        """
        Convert report to dictionary for JSON serialization.

        Wall time is left out unless asked for, so two runs compare equal.
        """
        data = {
            'n': self.n,
            'predicted': self.predicted,
            'constructive_count': self.constructive_count,
            'brute_count': self.brute_count,
            'members_match': self.members_match,
            'agreement': self.agreement,
            'notes': list(self.notes),
        }
        if include_timing:
            data['wall_time'] = round(self.wall_time, 6)
        return data

    def __repr__(self):
        status = 'ok' if self.success else 'DISAGREE'
        return (f'<VerificationReport n={self.n} predicted={self.predicted} '
                f'constructive={self.constructive_count} brute={self.brute_count} {status}>')
