"""Digital grid maps into small digital images: degrees, spider-move
homotopy certificates, brute-force equivalence search, and a certified
normal form for maps into the six-point sphere."""

from .grid import (
    DigitalImage,
    Explicit,
    LatticeCq,
    Rectangle,
    adjacent,
    boundary,
    first_discontinuity,
    interior_mask,
    is_continuous,
    product_image,
    rect_adjacent,
    values_continuous,
)
from .sphere import (
    BASEPOINT,
    LABEL_TOKENS,
    S2,
    S2Label,
    antipode,
    label_token,
    make_sphere,
    token_label,
)
from .gridmap import (
    GridMap,
    SubRect,
    apply_alpha,
    apply_beta,
    border_wrap,
    constant_map,
    from_array,
    inverse,
    map_compose,
    paste,
    product,
    product_combine,
    product_split,
    subdivide,
    trivial_extend,
)
from .degree import (
    OrientedTriangle,
    degree_minus_one_map,
    degree_one_map,
    oriented_triangles,
    triangle_count,
    triangulate,
)
from .homotopy import (
    Certificate,
    SpiderMove,
    VerifyResult,
    apply_spider,
    chain_certificates,
    decompose_one_step,
    doubling_trace,
    flood,
    identity_certificate,
    one_step_check,
    spider_valid,
    translate_trace,
    verify_certificate,
)
from .normalize import (
    Island,
    NormalForm,
    cancel_certificate,
    canonical_stack,
    classify_island,
    find_islands,
    isolate_e1,
    normal_form,
    pi2_class,
    reduce_islands,
)
from .oracle import Equivalent, SearchBudget, Unknown, homotopy_decide
from .formats import (
    ParseError,
    dump_certificate,
    dump_image,
    dump_map,
    index_of_token,
    load_certificate,
    load_image,
    load_map,
    token_of_index,
)
from .generate import gen_random
from .render import RenderSpec, render_ascii, render_map, render_svg

__version__ = "1.0.0"

__all__ = [
    "BASEPOINT",
    "Certificate",
    "DigitalImage",
    "Equivalent",
    "Explicit",
    "GridMap",
    "Island",
    "LABEL_TOKENS",
    "LatticeCq",
    "NormalForm",
    "OrientedTriangle",
    "ParseError",
    "Rectangle",
    "RenderSpec",
    "S2",
    "S2Label",
    "SearchBudget",
    "SpiderMove",
    "SubRect",
    "Unknown",
    "VerifyResult",
    "adjacent",
    "antipode",
    "apply_alpha",
    "apply_beta",
    "apply_spider",
    "border_wrap",
    "boundary",
    "cancel_certificate",
    "canonical_stack",
    "chain_certificates",
    "classify_island",
    "constant_map",
    "decompose_one_step",
    "degree_minus_one_map",
    "degree_one_map",
    "doubling_trace",
    "dump_certificate",
    "dump_image",
    "dump_map",
    "find_islands",
    "first_discontinuity",
    "flood",
    "from_array",
    "gen_random",
    "homotopy_decide",
    "identity_certificate",
    "index_of_token",
    "interior_mask",
    "inverse",
    "is_continuous",
    "isolate_e1",
    "label_token",
    "load_certificate",
    "load_image",
    "load_map",
    "make_sphere",
    "map_compose",
    "normal_form",
    "one_step_check",
    "oriented_triangles",
    "paste",
    "pi2_class",
    "product",
    "product_combine",
    "product_image",
    "product_split",
    "rect_adjacent",
    "reduce_islands",
    "render_ascii",
    "render_map",
    "render_svg",
    "spider_valid",
    "subdivide",
    "token_label",
    "token_of_index",
    "translate_trace",
    "triangle_count",
    "triangulate",
    "trivial_extend",
    "values_continuous",
    "verify_certificate",
]
