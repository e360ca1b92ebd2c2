"""Orders on finitely generated groups: exact group arithmetic, finite
windows, order-extension certificates, and invariant-random-order samplers."""

from .errors import (
    ContradictionError,
    DomainNotCovered,
    ElementNotInWindow,
    GroupMismatch,
    GroupOrderError,
    InnerOrderIncomplete,
    IntegerOverflow,
    NotRectangular,
    NotTotal,
    SizeLimitExceeded,
    SolveTimeout,
    StabilizerCollision,
)
from .exactnum import SQRT2, Sqrt2Num
from .groups import (
    HEISENBERG,
    SL3Z,
    GeneratorSet,
    GroupElement,
    GroupId,
    Window,
    ball,
    commutator,
    default_generators,
    heisenberg_element,
    identity,
    interval_window,
    inverse,
    make_element,
    multiply,
    power,
    sl3_element,
    sl3_unipotent,
    window_closure,
    window_from_elements,
    zn,
    zn_element,
)
from .orders import (
    CylinderSpec,
    OrderMatrix,
    direction_set,
    is_total,
    matches_cylinder,
    past_set,
    render_levels,
    transitive_closure,
    translate_order,
)
from .constraints import (
    INVERSE_LEFT,
    PLAIN_LEFT,
    Comparison,
    ConstraintSystem,
    LinearFunctionalOrder,
    SemigroupSpec,
    build_extension_system,
    cone_contains,
    cone_order,
    extends_quadrant,
    functional_order_compare,
    heisenberg_positive_order,
    lex_functional,
    quadrant_order,
    sl3_positive_order,
)
from .engine import (
    Certificate,
    SL3Instance,
    TraceStep,
    build_sl3_instance,
    propagate_only,
    solve,
    verify_certificate,
)
from .sampling import (
    ActionSpec,
    AveragingScheme,
    bernoulli_action,
    box,
    cesaro,
    coset_extension,
    realize,
    reconstruct,
    rotation_action,
    shadowing_report,
    specification_glue,
    stabilizer_check,
    torus_action,
    uniform_order,
)
from .stats import (
    ChisqReport,
    EstimateReport,
    InvarianceReport,
    all_total_patterns,
    chi2_quantile,
    estimate_cylinder,
    invariance_test,
    pattern_id,
    uniformity_chisq,
)

__version__ = "0.1.0"
