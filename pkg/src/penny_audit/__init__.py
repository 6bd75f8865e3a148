"""penny-audit — Exact penny graph construction, structural audits and interval certificates."""

from .audit import (
    AuditReport,
    CheckResult,
    KernelRecord,
    PatternOccurrence,
    Violation,
    audit_basic,
    audit_deg5,
    check_theorem_tn2,
    classify_edge_type,
    classify_popularity,
    confirm_violation,
    edge_type_histogram,
    find_forbidden_patterns,
    find_kernels_and_apricots,
    run_full_audit,
)
from .bound import BoundField
from .certificates import (
    CloverCertificate,
    CloverCertifier,
    KifliCertificate,
    KifliCertifier,
    certify_clover,
    certify_kifli,
    clover_angle,
    clover_angle_prime,
    clover_functions,
    emit_angle_plot,
    kifli_dist_sq,
    kifli_dist_sq_dy,
    tune_clover,
)
from .configurations import clover_configuration, kifli_configuration, kifli_configuration_exact
from .discharging import (
    ChargeLedger,
    DensityVerdict,
    balanced_q,
    density_target,
    run_discharging,
    verify_density_bound,
)
from .exceptions import (
    ClassificationError,
    DomainError,
    FieldError,
    FormError,
    GenerationError,
    GeometryError,
    HypothesesUnmet,
    InputError,
    PennyError,
    ValidationError,
)
from .fields import (
    ChoiceField,
    Field,
    FloatField,
    FractionField,
    IntegerField,
    ListField,
    MappingField,
    StringField,
)
from .fixtures import Fixture, fixture_names, load_fixture
from .forms import BaseForm, Form
from .generators import (
    Annealer,
    DensifyResult,
    Instance,
    InstanceSpec,
    densify_search,
    gen_hex_lattice,
    gen_perturbed,
    gen_random,
    hex_lattice_edges,
    max_penny_edges,
    regenerate,
)
from .geometry import Point, Scalar, clockwise_angle, dist_sq, orientation
from .graph import (
    PennyGraph,
    build_declared_graph,
    build_penny_graph,
    check_general_position,
    enumerate_faces,
)
from .interval import Interval
from .io import PointSet, read_point_set, write_json
from .types import Mode, Variant, Verdict
from .validators import (
    MaxValue,
    MinLength,
    MinValue,
    OneOf,
    OpenInterval,
    Required,
    Validator,
)
from .version import __version__

__all__ = [
    # Exact geometry
    "Scalar",
    "Point",
    "orientation",
    "dist_sq",
    "clockwise_angle",
    # Penny graphs
    "PennyGraph",
    "build_penny_graph",
    "build_declared_graph",
    "check_general_position",
    "enumerate_faces",
    # Structural audits
    "AuditReport",
    "CheckResult",
    "KernelRecord",
    "PatternOccurrence",
    "Violation",
    "audit_basic",
    "audit_deg5",
    "find_kernels_and_apricots",
    "classify_popularity",
    "classify_edge_type",
    "edge_type_histogram",
    "find_forbidden_patterns",
    "check_theorem_tn2",
    "run_full_audit",
    "confirm_violation",
    # Discharging
    "ChargeLedger",
    "DensityVerdict",
    "balanced_q",
    "density_target",
    "run_discharging",
    "verify_density_bound",
    # Certificates
    "Interval",
    "KifliCertificate",
    "KifliCertifier",
    "CloverCertificate",
    "CloverCertifier",
    "kifli_dist_sq",
    "kifli_dist_sq_dy",
    "clover_functions",
    "clover_angle",
    "clover_angle_prime",
    "tune_clover",
    "certify_kifli",
    "certify_clover",
    "emit_angle_plot",
    "kifli_configuration",
    "kifli_configuration_exact",
    "clover_configuration",
    # Generators
    "Instance",
    "InstanceSpec",
    "Annealer",
    "DensifyResult",
    "gen_hex_lattice",
    "gen_perturbed",
    "gen_random",
    "densify_search",
    "hex_lattice_edges",
    "max_penny_edges",
    "regenerate",
    "Fixture",
    "fixture_names",
    "load_fixture",
    # Files
    "PointSet",
    "read_point_set",
    "write_json",
    # Schemas
    "BaseForm",
    "Form",
    "BoundField",
    "Field",
    "StringField",
    "IntegerField",
    "FractionField",
    "FloatField",
    "ChoiceField",
    "ListField",
    "MappingField",
    "Validator",
    "Required",
    "MinLength",
    "MinValue",
    "MaxValue",
    "OpenInterval",
    "OneOf",
    # Exceptions
    "PennyError",
    "ValidationError",
    "FieldError",
    "FormError",
    "InputError",
    "GeometryError",
    "HypothesesUnmet",
    "ClassificationError",
    "DomainError",
    "GenerationError",
    # Types
    "Mode",
    "Variant",
    "Verdict",
    "__version__",
]
