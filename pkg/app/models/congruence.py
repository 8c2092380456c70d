from typing import List, Tuple

from app.exceptions import DomainError


class Factorization:
    """Prime factorization of a positive integer, primes ascending."""

    def __init__(self, n: int, factors: List[Tuple[int, int]]):
        product = 1
        for prime, exponent in factors:
            if exponent < 1:
                raise DomainError(f"Exponent of {prime} must be at least 1")
            product *= prime ** exponent
        if product != n:
            raise DomainError(f"Factors multiply to {product}, not {n}")
        self.n = n
        self.factors = list(factors)

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def to_dict(self):
        return {
            'n': self.n,
            'factors': [[p, a] for p, a in self.factors],
        }

    def __eq__(self, other):
        if not isinstance(other, Factorization):
            return NotImplemented
        return self.n == other.n and self.factors == other.factors

    def __repr__(self):
        if not self.factors:
            return f'<Factorization {self.n} = 1>'
        body = ' * '.join(f'{p}^{a}' if a > 1 else str(p) for p, a in self.factors)
        return f'<Factorization {self.n} = {body}>'


class CongruenceSolutions:
    """The residues x with x*x = 2 modulo some modulus."""

    def __init__(self, modulus: int, solutions):
        self.modulus = modulus
        self.solutions = sorted(set(int(x) % modulus for x in solutions))
        for x in self.solutions:
            if (x * x - 2) % modulus:
                raise DomainError(f"{x} does not square to 2 mod {modulus}")

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __contains__(self, x):
        return x in self.solutions

    def to_dict(self):
        return {'modulus': self.modulus, 'solutions': list(self.solutions)}

    def __repr__(self):
        return f'<CongruenceSolutions mod {self.modulus}: {self.solutions}>'
