from typing import Optional

from app.models.perm import Perm


class FlagMap:
    """
    A combinatorial map (F; lambda, rho, tau) on the flags 0..|F|-1.

    Instances are normally produced by flag_maps.validate, which checks the
    map axioms; the constructor itself does not.
    """

    def __init__(self, lam: Perm, rho: Perm, tau: Perm):
        self.lam = lam
        self.rho = rho
        self.tau = tau

    @property
    def flag_count(self) -> int:
        return self.lam.degree

    @property
    def generators(self):
        return (self.lam, self.rho, self.tau)

    def to_dict(self):
        """JSON-ready record; arrays are image arrays on 0-based flags."""
        return {
            'flag_count': self.flag_count,
            'lambda': self.lam.to_list(),
            'rho': self.rho.to_list(),
            'tau': self.tau.to_list(),
        }

    @classmethod
    def from_dict(cls, data) -> 'FlagMap':
        return cls(Perm(data['lambda']), Perm(data['rho']), Perm(data['tau']))

    def __eq__(self, other):
        if not isinstance(other, FlagMap):
            return NotImplemented
        return self.lam == other.lam and self.rho == other.rho and self.tau == other.tau

    def __hash__(self):
        return hash((self.lam.key, self.rho.key, self.tau.key))

    def __repr__(self):
        return f'<FlagMap {self.flag_count} flags>'


class MapInvariants:
    """Orbit counts and surface data of a flag map."""

    def __init__(self, vertices: int, edges: int, faces: int, orientable: bool,
                 valency: Optional[int], covalency: Optional[int]):
        self.vertices = vertices
        self.edges = edges
        self.faces = faces
        self.orientable = orientable
        self.valency = valency
        self.covalency = covalency

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.edges + self.faces

    @property
    def genus_or_crosscaps(self) -> int:
        """Orientable genus (2 - chi)/2, or crosscap number 2 - chi."""
        chi = self.euler_characteristic
        return (2 - chi) // 2 if self.orientable else 2 - chi

    @property
    def genus(self) -> Optional[int]:
        return self.genus_or_crosscaps if self.orientable else None

    @property
    def crosscaps(self) -> Optional[int]:
        return None if self.orientable else self.genus_or_crosscaps

    def to_dict(self):
        return {
            'vertices': self.vertices,
            'edges': self.edges,
            'faces': self.faces,
            'euler_characteristic': self.euler_characteristic,
            'orientable': self.orientable,
            'genus': self.genus,
            'crosscaps': self.crosscaps,
            'valency': self.valency,
            'covalency': self.covalency,
        }

    @classmethod
    def from_dict(cls, data) -> 'MapInvariants':
        return cls(
            vertices=data['vertices'],
            edges=data['edges'],
            faces=data['faces'],
            orientable=data['orientable'],
            valency=data.get('valency'),
            covalency=data.get('covalency'),
        )

    def __eq__(self, other):
        if not isinstance(other, MapInvariants):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        surface = f'genus {self.genus}' if self.orientable else f'{self.crosscaps} crosscaps'
        return (f'<MapInvariants V={self.vertices} E={self.edges} F={self.faces} '
                f'chi={self.euler_characteristic} {surface}>')
