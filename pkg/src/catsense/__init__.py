"""catsense: displacement-sensing bounds for cat-state probes, with oracle checks."""

from .bounds import (
    BoundResult,
    FamilyKind,
    ProbeFamily,
    curve,
    entangled_cat_generator_variance,
    entangled_cat_ntot,
    eps_min_entangled_cat,
    eps_min_separable_cats,
    eps_min_single_cat,
    eps_min_sql,
    eps_min_squeezed,
    eps_min_squeezed_exact,
    invert_ntot,
)
from .coherent import (
    CoherentLabel,
    SuperpositionState,
    displace,
    expect_generator,
    make_entangled_cat,
    mean_photon_number,
    norm_squared,
    overlap,
    variance_generator,
)
from .errors import CatsenseError
from .fock import FockVector, coherent_vector, qfi_fidelity_fd, qfi_pure, squeezed_vector, to_fock

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "CatsenseError",
    "CoherentLabel",
    "FamilyKind",
    "FockVector",
    "ProbeFamily",
    "SuperpositionState",
    "coherent_vector",
    "curve",
    "displace",
    "entangled_cat_generator_variance",
    "entangled_cat_ntot",
    "eps_min_entangled_cat",
    "eps_min_separable_cats",
    "eps_min_single_cat",
    "eps_min_sql",
    "eps_min_squeezed",
    "eps_min_squeezed_exact",
    "expect_generator",
    "invert_ntot",
    "make_entangled_cat",
    "mean_photon_number",
    "norm_squared",
    "overlap",
    "qfi_fidelity_fd",
    "qfi_pure",
    "squeezed_vector",
    "to_fock",
    "variance_generator",
]
