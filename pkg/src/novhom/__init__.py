"""Exact-arithmetic filtered homological algebra over Novikov-type rings."""

from .fields import (  # noqa: F401
    QQ,
    CyclotomicField,
    PrimeField,
    RationalField,
    field_from_spec,
)
from .novikov import NovikovRing, make_novikov_ring  # noqa: F401
from .complexes import (  # noqa: F401
    ChainMap,
    FilteredComplex,
    Generator,
    expand_over_base_field,
    field_cohomology,
    truncate_below_filtration,
)
from .smith import (  # noqa: F401
    ModuleInvariants,
    module_cohomology,
    smith_normal_form,
    verify_smith,
)
from .spectral import (  # noqa: F401
    cross_check_einfinity,
    degeneration_page,
    spectral_sequence,
)
from .telescope import (  # noqa: F401
    InverseSystem,
    OneRay,
    completed_telescope_acyclicity,
    inverse_telescope,
    milnor_verification,
    telescope,
    telescope_vs_colimit,
)
from .toric import (  # noqa: F401
    DelzantPolytope,
    OrbitDescriptor,
    enumerate_orbit_families,
    kcrit_rescaling,
    orbit_actions,
    orbit_indices,
    radius_bounds,
    sigma_crit,
    weights_at_point,
)
from .quantum import (  # noqa: F401
    QuantumAlgebra,
    completed_cohomology,
    deformed_differential,
    is_nullhomologous,
)
from .cli import run_example  # noqa: F401

__version__ = "0.1.0"
