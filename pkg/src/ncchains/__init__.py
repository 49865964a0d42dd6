"""Chain systems, noncrossing lattices and their affine factorable analogues."""

from .chain_system import ChainSystem, build_poset, check_axioms, is_garside, poset_to_chain_system
from .poset import LabeledPoset, find_isomorphism
from .roots import CartanMatrix, RootDatum
from .cartan_types import datum_from_name, load_datum
from .finite_nc import hurwitz_orbit, nc_lattice
from .affine import McSul, compute_xi
from .tubes import TubeSystem, C_rpe, B_rpe
from .annulus import AffinePerm, parse_cycles, to_cycles

__all__ = [
    "ChainSystem", "build_poset", "check_axioms", "is_garside", "poset_to_chain_system",
    "LabeledPoset", "find_isomorphism", "CartanMatrix", "RootDatum", "datum_from_name",
    "load_datum", "hurwitz_orbit", "nc_lattice", "McSul", "compute_xi", "TubeSystem",
    "C_rpe", "B_rpe", "AffinePerm", "parse_cycles", "to_cycles",
]
__version__ = "0.1.0"
