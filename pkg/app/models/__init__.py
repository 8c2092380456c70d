from .perm import Perm, GroupClosure, ClosureStatus
from .congruence import Factorization, CongruenceSolutions
from .flag_map import FlagMap, MapInvariants
from .knn import DeltaBar, Triple, StarWitness, StarVariant
from .embedding_record import EmbeddingRecord, VerificationReport, RecordSource

__all__ = [
    'Perm', 'GroupClosure', 'ClosureStatus', 'Factorization', 'CongruenceSolutions',
    'FlagMap', 'MapInvariants', 'DeltaBar', 'Triple', 'StarWitness', 'StarVariant',
    'EmbeddingRecord', 'VerificationReport', 'RecordSource'
]
