"""Exact verification of lattice, cyclotomic-order and monodromy bounds for
Calabi-Yau covers of hyper-Kähler manifolds."""

from .betti import betti_lower_bound, classify_cover_types, kunneth_betti
from .lattice import (
    DivisorClass,
    Lattice,
    branch_component_bound,
    direct_sum,
    is_negative_definite,
    lattice_from_gram,
    primitive_orthogonal_complement,
    q_exceptional,
    signature,
    standard_lattice,
)
from .monodromy import commuting_orders_possible, galois_like_obstruction
from .orders import abelian_order_feasible, alpha, euler_phi, gl_order_feasible, order_witness
from .zariski import PrimeSystem, zariski_decompose

__version__ = "0.1.0"

__all__ = [
    "DivisorClass", "Lattice", "PrimeSystem",
    "abelian_order_feasible", "alpha", "betti_lower_bound", "branch_component_bound",
    "classify_cover_types", "commuting_orders_possible", "direct_sum", "euler_phi",
    "galois_like_obstruction", "gl_order_feasible", "is_negative_definite", "kunneth_betti",
    "lattice_from_gram", "order_witness", "primitive_orthogonal_complement", "q_exceptional",
    "signature", "standard_lattice", "zariski_decompose",
]
