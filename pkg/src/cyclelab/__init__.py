"""Hamiltonicity degree conditions, cycle spectra and exhaustive verification for small digraphs."""
from .conditions import Condition, ConditionReport, GoodPair, PairCheck, check_condition, good_pairs
from .cycles import (
    SpectrumReport,
    cycle_spectrum,
    find_cycle_of_length,
    hamiltonian_cycle,
    longest_non_hamiltonian_cycle,
    oracle_all_cycles,
)
from .digraph import Digraph, canonical_cycle, is_cycle, is_path
from .formats import emit_edges, emit_mask, parse
from .lemmas import (
    Bypass,
    CrossingAudit,
    InsertionResult,
    crossing_audit,
    cycle_witnesses_through,
    find_bypass,
    find_partner,
    insertion_hypotheses,
)
from .verifier import (
    CounterexampleRecord,
    EnumerationCursor,
    VerificationSummary,
    classify_extremal,
    full_range,
    mine_conjecture,
    scan,
    verify_main_theorem,
    verify_theorem_c,
)

__version__ = "0.1.0"
