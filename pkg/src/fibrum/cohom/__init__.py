"""Second cohomology with trivial coefficients and its uses: linkage, alpha_n, squeezing."""
from .alpha import alpha_1, alpha_n, commutator_product
from .h2 import (
    H2Class,
    H2Group,
    act_by_automorphism,
    apply_dual,
    coefficient_map,
    dual_homs,
    h2_class,
    h2_group,
    inflate,
    psi,
    subgroup_closure,
    symmetric_cocycle_basis,
    symmetric_image,
)
from .linkage import (
    LinkageVerdict,
    extension_class,
    faithful_reduction,
    linkage_via_cohomology,
    linkage_via_extension,
)
from .squeeze import (
    FullDecomposition,
    Reduction,
    SqueezeResult,
    full_decomposition,
    ins_del,
    reduce_decomposition,
    reduced_criterion_hypothesis,
    squeeze,
)
