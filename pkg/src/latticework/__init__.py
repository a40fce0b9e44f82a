"""Finite-lattice and universal-algebra workbench.

Finite posets and lattices with brute-force completeness, compactness, and
algebraicity sweeps; the partition lattice; congruence lattices of finite
algebras with the compact / finitely-generated correspondence; and four
tree-presented lattice constructions whose closed forms are cross-checked
against materialized transitive-closure oracles.
"""

from .algebras import (
    CongruenceLattice,
    FiniteAlgebra,
    Operation,
    compact_congruences,
    congruence_lattice,
    congruences_by_closure,
    congruences_by_filter,
    is_congruence,
    minimal_generating_pairs,
    principal_congruence,
)
from .constructions import (
    CHAIN_A,
    CHAIN_OMEGA,
    SUM_BOTTOM,
    SUM_TOP,
    TNA_A,
    TNA_ONE,
    TNA_ZERO,
    ChainElement,
    DoubleTreeElement,
    SumElement,
    TnAElement,
    VerdictRow,
    chain_facts,
    chain_is_compact,
    chain_join,
    chain_leq,
    chain_meet,
    chain_nat,
    designated_index,
    dt_is_complete,
    dt_join,
    dt_leq,
    dt_meet,
    dt_star,
    materialize,
    materialize_chain,
    materialize_double_tree,
    materialize_sum,
    materialize_tna,
    reduction_verdicts,
    sum_a,
    sum_is_compact_a,
    sum_join,
    sum_leq,
    sum_meet,
    sum_node,
    tna_is_algebraic,
    tna_is_complete,
    tna_join,
    tna_leq,
    tna_meet,
    tna_node,
)
from .errors import (
    GuardError,
    InputFormatError,
    NotALatticeError,
    PosetError,
    WorkbenchError,
)
from .order import (
    DEFAULT_SUBSET_BOUND,
    FiniteLattice,
    FinitePoset,
    LabeledLattice,
    bf_compact_elements,
    bf_is_algebraic,
    bf_is_complete,
    is_lattice,
    transitive_closure,
)
from .partitions import (
    EqRelation,
    all_partitions,
    eq_join,
    eq_meet,
    full_eq_lattice,
    is_complete_sublattice,
)
from .render import hasse_figure, to_dot
from .trees import (
    FiniteTree,
    PathWitness,
    RegularTree,
    all_members,
    format_node_string,
    has_infinite_path,
    is_well_founded,
    pad,
    parse_node_string,
    tree_from_json,
    truncate,
)
from .verify import run_verify

__version__ = "0.1.0"
