"""kappalg: exact symbolic computation in 1/kappa-deformed enveloping algebras."""

from kappalg._kernel import kernel_backend
from kappalg.algebra import (
    AlgebraElement,
    GeneratorId,
    LiePresentation,
    commutator,
    multiply,
    normal_order,
    validate_presentation,
)
from kappalg.hopf import (
    CoproductMap,
    TwistSeries,
    check_coassociativity,
    check_homomorphism,
    check_intertwiner,
    check_modified_ybe,
    check_quasi_coassoc,
    check_quasitriangularity,
    coassociator,
    conjugate_by_twist,
    primitive_coproduct,
    twisted_rmatrix,
)
from kappalg.models import (
    KappaModel,
    bicross_verify,
    casimir_centrality,
    deformed_casimir,
    get_model,
    inverse_map_check,
    model_d2,
    model_d4,
    opposite_coproducts,
    quantum_map,
)
from kappalg.scalars import GaussianRational, I, imag, rat
from kappalg.series import (
    DeformationSeries,
    KappaScaled,
    series_add,
    series_commutator,
    series_exp,
    series_inv,
    series_log,
    series_mul,
    series_sqrt,
    series_truncate,
)
from kappalg.solver import (
    AnsatzConstraints,
    LinearSystem,
    Obstruction,
    Solution,
    ansatz_basis,
    solve_linear,
    solve_rmatrix_order,
    solve_twist_order,
    verify_outcome,
)
from kappalg.tensors import (
    TensorElement,
    embed,
    flip,
    permute,
    tensor,
    tensor_multiply,
    wedge,
)

__version__ = "0.1.0"
