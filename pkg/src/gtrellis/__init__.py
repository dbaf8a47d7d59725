"""Group trellis sections over finite groups: chains, Schreier forms, generator tables, encoders."""

from .composition import (
    refined_representative_array,
    schreier_array,
    solvability_equivalence,
    x_composition_chain,
    y_composition_chain,
)
from .encoder import (
    EncoderState,
    TrackResult,
    degradation_profile,
    encode,
    impulse_response,
    new_encoder,
    register_view,
    step,
    track,
)
from .errors import *  # noqa: F401,F403
from .generators import GeneratorTable, eta_check, factorize, generators_at, representative_array
from .groups import (
    Chain,
    CosetList,
    FiniteGroup,
    Subgroup,
    VerifiedIsomorphism,
    composition_refinement,
    cyclic,
    derived_series,
    dihedral,
    direct_product,
    eta,
    find_isomorphism,
    group_from_spec,
    group_from_table,
    intersect,
    is_normal,
    is_solvable,
    jordan_holder_factors,
    product_set,
    quotient_group,
    right_cosets,
    standard_group,
    subgroup,
    subgroup_closure,
    symmetric,
)
from .schreier import (
    adjacent_column_iso,
    column_shift_iso,
    controllable_form,
    dual_matrix,
    rectangle_family,
    schreier_matrix,
    star_chain,
    zassenhaus_iso,
)
from .search import search_subdirect
from .textio import SectionDocument, dump_section, load_bundled, load_section, parse_section
from .trellis import (
    ChainPair,
    TrellisSection,
    chains,
    complete_section,
    componentwise_product,
    join_paths,
    next_set,
    prev_in_pletty,
    prev_set,
    section_from_parts,
    shift_register_section,
)

__version__ = "0.1.0"
