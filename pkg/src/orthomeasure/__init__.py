"""Exact measure spaces, invariant measures, and state polytopes on finite
orthocomplemented lattices."""

from .cones import (
    PolyCone,
    StatePolytope,
    StateVertex,
    cone_from_rays,
    cones_equivalent,
    dual_cone,
    is_probability_measure,
    measure_coordinates,
    positive_cone,
    state_polytope,
)
from .errors import (
    BadOrthocomplementError,
    DimensionCapError,
    DomainMismatchError,
    EmptyPolytopeError,
    GroupTooLargeError,
    InconsistentExtensionError,
    IsotropicFormError,
    KernelViolationError,
    MeetClosureError,
    NotALatticeError,
    NotAMeasureError,
    NotAnAutomorphismError,
    NotAPartialOrderError,
    NotBooleanAtomisticError,
    NotDistributiveError,
    NotGeneratingError,
    NotGeneratingForActionError,
    NotInvariantOnGeneratorsError,
    OracleTooLargeError,
    OrthomeasureError,
    SchemaError,
    SizeCapError,
    UnboundedSliceError,
)
from .groemer import (
    GeneratingSet,
    PartialMeasure,
    classical_groemer_extend,
    inclusion_exclusion_check,
    is_generating_for_action,
    is_orthogonal_generating_set,
    load_generating_set,
    load_partial_measure,
    make_generating_set,
    orth_groemer_extend,
    weak_groemer_check,
)
from .indicators import (
    LinearFunctional,
    SimpleFunction,
    check_indicator_identities,
    functional_from_measure,
    indicator,
    invariant_functional_check,
    measure_from_functional,
)
from .lattice import (
    CheckResult,
    LatticeDescription,
    OrthoLattice,
    VerificationReport,
    are_isomorphic,
    atom_split_check,
    atoms,
    benzene,
    boolean,
    build_lattice,
    find_isomorphism,
    horizontal_sum,
    is_atomistic,
    is_boolean,
    is_distributive,
    is_orthomodular,
    load_lattice,
    mo,
    orthogonal_pairs,
    product,
    save_lattice,
    subspace_lattice,
    verify_ortho,
)
from .measures import (
    Domain,
    FormalSum,
    FPAbelianGroup,
    INTEGERS,
    Measure,
    MeasureModule,
    RATIONALS,
    brute_force_measures,
    coinvariants,
    hom_count,
    integers_mod,
    is_measure,
    measure_basis,
    measure_module,
    parse_domain,
    relation_matrix,
    universal_measure_eval,
)
from .intlinalg import smith_normal_form
from .symmetry import (
    GroupAction,
    LatticeAutomorphism,
    Orbit,
    automorphism_group,
    close_group,
    load_group,
    normalizer,
    orbit_of,
    orbits,
    quotient_map_injective,
    save_group,
    stabilizer,
    trivial_action,
)

__version__ = "0.1.0"
