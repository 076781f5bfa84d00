"""Finite affine crystals for the one-column tensor families, their
classical tableau models, and the combinatorial bijection with energies."""

from .cartan import (
    CartanSpec,
    KRSpec,
    Partition,
    cartan,
    classical_weights,
    kr_spec,
    partition_to_weight,
    weight_to_partition,
)
from .crystals import (
    CapExceeded,
    E,
    F,
    TensorCrystal,
    apply_word,
    generate_component,
    raise_to_highest,
    reversed_word,
)
from .kr import (
    LEFT,
    RIGHT,
    CoordCrystal,
    KRCrystal,
    build_kr,
    coord_to_tableau,
    enumerate_highest,
    highest_left_check,
    highest_right_check,
    tableau_to_coord,
)
from .pmdiag import (
    PMDiagram,
    PMPair,
    PMStats,
    e1_on_pair,
    enumerate_pm,
    pair_of_diagram,
    phi,
    phi_inv,
    pm_stats,
    s_map,
    stats_to_diagram,
    to_highest_word,
)
from .rmatrix import (
    RTable,
    brute_force_R,
    closed_form_R,
    closed_form_Rinv,
    verify_theorem,
)
from .tableaux import TableauCrystal, highest_tableau, reading_word, shape, tableau_apply

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CartanSpec",
    "CoordCrystal",
    "E",
    "F",
    "KRCrystal",
    "KRSpec",
    "LEFT",
    "PMDiagram",
    "PMPair",
    "PMStats",
    "Partition",
    "RIGHT",
    "RTable",
    "TableauCrystal",
    "TensorCrystal",
    "apply_word",
    "brute_force_R",
    "build_kr",
    "cartan",
    "classical_weights",
    "closed_form_R",
    "closed_form_Rinv",
    "coord_to_tableau",
    "e1_on_pair",
    "enumerate_highest",
    "enumerate_pm",
    "generate_component",
    "highest_left_check",
    "highest_right_check",
    "highest_tableau",
    "kr_spec",
    "pair_of_diagram",
    "partition_to_weight",
    "phi",
    "phi_inv",
    "pm_stats",
    "raise_to_highest",
    "reading_word",
    "reversed_word",
    "s_map",
    "shape",
    "stats_to_diagram",
    "tableau_apply",
    "tableau_to_coord",
    "to_highest_word",
    "verify_theorem",
    "weight_to_partition",
]
