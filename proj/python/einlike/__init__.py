"""Numerical curvature engine for doubly warped products with Gray-class
(Einstein-like) classification."""

from ._core import (
    __version__,
    EngineError,
    Jet,
    ScalarExpr,
    parse,
    MetricField,
    CurvaturePack,
    curvature,
    christoffel,
    ScalarFieldCalculus,
    scalar_field_calculus,
    conformal_rescale,
    FactorSpec,
    ProductSpec,
    build_doubly_warped,
    f_diamond,
    F_tensor,
    RicciBlocks,
    product_ricci_blocks,
    nabla_ricci_restriction,
    SpacetimeSpec,
    build_spacetime,
    spacetime_as_product,
    SpacetimeBlocks,
    spacetime_ricci_blocks,
    TheoremResult,
    theorem_residual,
    spacetime_theorem_residual,
    ScalarIdentityResult,
    scalar_identity_residual,
    ClassResult,
    GrayClassReport,
    classify,
    run_report,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
