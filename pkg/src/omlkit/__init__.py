"""Finite orthomodular lattice algebra, the Kalmbach construction, ladder
truncations with the 2-covering property, and exact Hahn-series Hermitian
forms with the type/pi machinery.
"""

from .errors import OmlkitError
from .lattice import (
    BoundedLattice,
    atoms,
    compactness_witness,
    covers,
    height,
    interval,
    lattice_from_covers,
    maximal_chains,
    predicates,
)
from .ortho import (
    OrthoLattice,
    blocks,
    center,
    commutator,
    commutes,
    decompose,
    has_n_covering,
    horizontal_sum,
    interval_oml,
    is_directly_irreducible,
    is_orthomodular,
    ortholattice,
    product,
)
from .kalmbach import KalmbachOML, kalmbach, kleq, kperp, phi_chain
from .rn import classify_atoms, rn_lattice, rn_report
from .hahn import (
    GammaExp,
    HahnScalar,
    HahnSeries,
    INF,
    TypeClass,
    emit_series,
    parse_series,
    tclass,
)
from .keller import (
    KVector,
    Subspace,
    anisotropy_check,
    basis_vector,
    closure_check,
    counting_types,
    form,
    ortho_complement,
    orthogonalize,
    pi_map,
    type_of,
)
from .latfile import (
    LatticeDocument,
    build_lattice,
    document_from_lattice,
    emit_lattice,
    export_dot,
    parse_lattice,
)
from .corpus import lattice_corpus, oml_corpus

__version__ = "0.1.0"

__all__ = [
    "BoundedLattice", "OrthoLattice", "KalmbachOML", "LatticeDocument",
    "GammaExp", "HahnScalar", "HahnSeries", "INF", "TypeClass", "KVector",
    "Subspace", "OmlkitError",
    "lattice_from_covers", "covers", "atoms", "maximal_chains", "interval",
    "height", "predicates", "compactness_witness",
    "ortholattice", "is_orthomodular", "commutator", "commutes", "blocks",
    "center", "is_directly_irreducible", "decompose", "product",
    "horizontal_sum", "interval_oml", "has_n_covering",
    "kalmbach", "kleq", "kperp", "phi_chain",
    "rn_lattice", "rn_report", "classify_atoms",
    "tclass", "parse_series", "emit_series",
    "form", "anisotropy_check", "type_of", "orthogonalize", "pi_map",
    "ortho_complement", "closure_check", "counting_types", "basis_vector",
    "parse_lattice", "emit_lattice", "document_from_lattice", "build_lattice",
    "export_dot", "lattice_corpus", "oml_corpus",
]
