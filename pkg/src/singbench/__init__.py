"""Symbolic + numeric workbench for parallel-robot singularity analysis."""

from .brackets import (
    Bracket,
    BracketPolynomial,
    Extensor,
    InvalidInputError,
    Label,
    join,
    meet,
    meet_all,
    normalize_bracket,
    poly_add,
    substitute_labels,
    swap_interchange_test,
)
from .superbracket import (
    AUTO_REDUCE_THRESHOLD,
    Leg,
    LegOrder,
    expand_superbracket,
    monomial_count,
    shortest_form_search,
    suggest_auto_reduce,
)
from .entities import (
    GeometricEntity,
    ManualEntities,
    SingularityCondition,
    classify,
    find_line_pairs,
    find_planes,
    find_tetrahedra,
    identify,
    star_relabel,
    strip_stars,
    verify_condition,
)
from .geometry import (
    CONDITION_NUMBER_THRESHOLD,
    DEFAULT_EPSILON,
    DegenerateGeometryError,
    Pose,
    SingularityReport,
    bracket_value,
    check_four_planes,
    check_lines_intersect,
    check_planes_and_line,
    check_tetrahedron,
    condition_number,
    evaluate_polynomial,
    jacobian_oracle,
    plane_coeffs,
    singularity_report,
)
from .robot import (
    AnchorPoint,
    RobotStructure,
    StructureClass,
    classify_structure,
    coordinates_at,
    dumps_robot,
    load_robot,
    loads_robot,
    robot_from_dict,
    robot_to_dict,
    save_robot,
    validate,
)
from .analysis import (
    AnalysisResult,
    StructureValidationError,
    analyze_structure,
    entities_view,
    evaluate_structure,
)

__version__ = "0.1.0"
