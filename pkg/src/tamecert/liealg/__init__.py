"""Root systems, Chevalley bases and sl_2 bookkeeping."""
from .chevalley import (  # noqa: F401
    CharPolyProfile,
    ChevalleyAlgebra,
    ChevalleyError,
    ad,
    cartan_element,
    chevalley,
    delta_profile,
    structure_constants,
)
from .roots import (  # noqa: F401
    RootSet,
    RootSystem,
    RootSystemError,
    build_root_system,
    cartan_matrix,
    dynkin_label,
)
from .sl2 import (  # noqa: F401
    adjoint_weights_sln,
    centralizer_dim_sln,
    clebsch_gordan,
    dominates,
    jordan_representative,
    lambda_invariant,
    partitions,
    transpose,
)
