"""Bijection between P_k- and Q_k-avoiding transversals of Young diagrams."""
from .bijection import (
    Phi,
    Psi,
    StepRecord,
    SubmatrixG,
    Trace,
    boards_phi,
    boards_psi,
    higher_than,
    lower_than,
    phi_step,
    psi_step,
    select_phi,
    select_psi,
    theta,
    theta_prime,
)
from .core import (
    Cell,
    ClassicalPattern,
    Pop,
    Transversal,
    YoungDiagram,
    diagram_new,
    parse_transversal,
    pop_parse,
    pop_pattern_set,
    pop_Pk,
    pop_Qk,
    transversal_new,
)
from .enumeration import census, shapes_with_transversals, transversals
from .patterns import (
    contains_Pk,
    contains_Qk,
    count_avoiders,
    occurrence_exists_classical,
    occurrence_exists_pop,
)

__version__ = "0.1.0"
