"""Exact arithmetic for deciding when a moduli space Y of sheaves on a K3 surface X is isomorphic to X.

Everything is integer arithmetic on the rank-2 Picard lattice data
(r, s, d, gamma, delta, mu); see the README for the conventions.
"""
from .criteria import (BRANCHES, ConditionReport, Context, SeriesChoice, associated_xy, associated_xy_from_pq,
                       check_AG, check_AS, check_BG, check_BS, check_Aprime, check_Bprime, check_element,
                       check_gamma1, check_gamma2, check_Gprime, check_xy, element_to_pq, make_context,
                       nef_image, rhs)
from .decision import Verdict, decide_rho1, decide_rho2, oracle_decide_bounded
from .errors import K3SCError
from .lattice import LatticeElement, PolarizedLattice2, make_lattice
from .moduli import DivisorialLabel, delta_set, delta_union, gamma1_nonempty, generate_family
from .mukai import GammaSplit, MukaiInput, MukaiInvariants, derive_invariants, split_gamma
from .pell import FormEquation, exists_solution_with_congruences, solve_orbits

__version__ = "0.1.0"
