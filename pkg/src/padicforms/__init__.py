"""Exact-arithmetic p-adic cochain algebra toolkit.

Subpackages cover: exact p-local arithmetic (arith), sparse integer and
p-local linear algebra (linalg), finite simplicial sets and their normalized
cochains (simplicial), cup and cup-i products (products), divided-power
algebras (divided), p-adic polynomial differential forms (derham), p-shifted
cochain lattices (decalage), Massey products (massey) and a batch CLI (cli).
"""

from padicforms.arith import SessionConfig

__version__ = "0.1.0"

__all__ = ["SessionConfig", "__version__"]
