"""Exact arithmetic for real almost Abelian Lie groups.

A group here is R^d x| R, described by a multiplicity function
assigning Jordan blocks to eigenvalues.  The package computes
exponential maps and their failure, centers and torsion, faithful
matrix representations, normal forms of discrete central subgroups,
automorphism actions, and closedness of connected subgroups in
quotients, all over the field Q(tau) with tau standing for 2*pi.
"""

from .autos import (
    GenericAut,
    HeisAut,
    InnerAut,
    apply_aut,
    compose,
    differential,
    identity_aut,
    inner_aut,
    invert,
    is_heisenberg_extension,
    preserves_lattice,
    validate_aut,
)
from .errors import (
    DegenerateDatum,
    ExactnessUnavailable,
    InvalidAutomorphism,
    NotCentral,
    NoWitness,
    UnsupportedLattice,
)
from .expmap import (
    CenterDescription,
    TorsionDescription,
    center,
    central_log,
    dilation_group,
    e2_witness,
    exp_map,
    is_central,
    is_exponential,
    torsion,
)
from .jordan import (
    AlgebraElement,
    GroupElement,
    MultiplicityFunction,
    algebra_element,
    build_jordan,
    group_element,
    group_identity,
    group_inverse,
    group_mul,
    multiplicity_function,
)
from .lattices import (
    DiscreteCentralSubgroup,
    has_faithful_quotient_rep,
    lattice_equal,
    normalize_subgroup,
    quotient_iso_certificate,
    reduce_generators,
    related_by_aut_check,
    related_by_aut_search,
    subgroup_from_data,
    validate_subgroup,
)
from .oracle import (
    OracleReport,
    ToleranceConfig,
    antihermitian_probe,
    dense_expm,
    exp_crosscheck,
    injectivity_probe,
)
from .reps import (
    algebra_rep,
    decompose,
    group_rep_G,
    group_rep_GI,
    group_rep_GII,
    is_simply_connected_G,
    quotient_chart,
    quotient_faithful_rep,
)
from .scalars import TAU, GaussRational, TauScalar, parse_gauss, parse_rational, parse_tau
from .specfile import SpecError, SpecFile, parse_spec_file, parse_spec_text
from .subgroups import (
    ConnectedSubgroupSpec,
    bbar,
    is_abelian_subalgebra,
    is_quotient_subgroup_closed,
    lift_subgroup,
    membership,
    split_lattice_through,
    validate_subspace,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
