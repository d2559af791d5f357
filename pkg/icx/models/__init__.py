from .expression import (
    Expression,
    ExpressionBuilder,
    binary_cost,
    binary_expression,
    evaluate,
    ones,
    parse,
    reconstruct,
    render,
)
from .digit_bounds import (
    DigitBoundTable,
    Schema,
    apply_schema,
    averaged_constant,
    certify_base,
    empirical_lower,
    memory_estimate,
    reference_constant,
)
from .synthesizer import ParamChoice, SynthesisResult, lambert_w, paper_params, synthesize
from .defects import (
    CensusMatrix,
    ClassificationParams,
    DefectRecord,
    SettledDefect,
    census,
    defect_record,
    discard_thresholds,
    is_add_irreducible,
    is_mult_irreducible,
)
from .verifier import CheckResult, VerificationReport, verify_constant_system, verify_paper_sets
from .analysis import (
    DensityScan,
    PointSet,
    conjecture_scan,
    defect_growth,
    density_scan,
    extreme_discrepancy,
    ratio_records,
    ratio_scan,
    s_j_points,
    star_discrepancy,
)

__all__ = [
    "Expression",
    "ExpressionBuilder",
    "binary_cost",
    "binary_expression",
    "evaluate",
    "ones",
    "parse",
    "reconstruct",
    "render",
    "DigitBoundTable",
    "Schema",
    "apply_schema",
    "averaged_constant",
    "certify_base",
    "empirical_lower",
    "memory_estimate",
    "reference_constant",
    "ParamChoice",
    "SynthesisResult",
    "lambert_w",
    "paper_params",
    "synthesize",
    "CensusMatrix",
    "ClassificationParams",
    "DefectRecord",
    "SettledDefect",
    "census",
    "defect_record",
    "discard_thresholds",
    "is_add_irreducible",
    "is_mult_irreducible",
    "CheckResult",
    "VerificationReport",
    "verify_constant_system",
    "verify_paper_sets",
    "DensityScan",
    "PointSet",
    "conjecture_scan",
    "defect_growth",
    "density_scan",
    "extreme_discrepancy",
    "ratio_records",
    "ratio_scan",
    "s_j_points",
    "star_discrepancy",
    ]
