"""Exact-arithmetic engine for derivation Lie algebras of quadratic modules.

Subpackages compute, at desk scale: free graded Lie algebra bases and
quotients, derivation Lie algebras annihilating the canonical symplectic or
orthogonal element, their Chevalley-Eilenberg (co)homology and word-length
spectral sequence, homological perturbation transfer, Schur-functor and
stability bookkeeping, stable arithmetic-group invariants, and the
symmetric-function identities relating Borel and fiber-integrated
characteristic classes.
"""

__version__ = "0.1.0"

class UnstableRangeError(Exception):
    """Raised when a stable-invariant computation is requested below its enforced genus bound."""


class DivergenceError(Exception):
    """Raised when a perturbation series fails to terminate within its nilpotence bound."""
