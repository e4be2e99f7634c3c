from .curves import E, EllipticCurve, ap, is_prime, kronecker, legendre
from .tower import (TowerReport, betti_lower_bound, face_bound, format_tower_report,
                    genus_gamma0, primes_up_to, special_primes, tower_degree, tower_report,
                    whitehead_faces)

__all__ = ["E", "EllipticCurve", "ap", "is_prime", "kronecker", "legendre", "TowerReport",
           "betti_lower_bound", "face_bound", "format_tower_report", "genus_gamma0",
           "primes_up_to", "special_primes", "tower_degree", "tower_report", "whitehead_faces"]
