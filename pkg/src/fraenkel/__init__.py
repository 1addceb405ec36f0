"""Fraenkel asymmetry, partition functionals and the constants around them."""

from .asymmetry import (
    AsymmetryOptions,
    AsymmetryResult,
    BodyTemplate,
    fraenkel_asymmetry,
    generalized_asymmetry,
    grid_scan_asymmetry,
)
from .certificate import (
    CertificateReport,
    ProofParams,
    big_set_bound,
    certificate_report,
    certify_constant,
    final_inequality_lhs,
    lens_lower_bound_check,
    neighborhood_amplification,
    optimize_parameters,
    pair_neighborhood_factor,
    shrink_disks,
    small_overlap_bound,
)
from .generators import GeneratorSpec, generate, lattice_disks, packing_density, packing_disks
from .geometry import (
    Disk,
    GeometryError,
    Point,
    Region,
    SimplePolygon,
    dilated_union_area,
    disk_polygon,
    disk_polygon_intersection_area,
    lens_area,
    polygon_area,
    regular_polygon,
    symmetric_difference_area,
)
from .partition import (
    FunctionalReport,
    Partition,
    PartitionError,
    asymmetry_mass_lemma_check,
    check_big_set_lemma,
    deviation,
    evaluate_functional,
)
from .spectral import (
    SpectralConstants,
    hansen_nadirashvili_factor,
    hexagonal_obstruction,
    improved_pleijel_factor,
    lambda1_disk,
    pleijel_limit,
    spectral_partition_bound,
    weyl_eigenvalue,
)

__version__ = "0.1.0"
