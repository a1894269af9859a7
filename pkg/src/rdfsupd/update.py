"""Execution of update operations under every supported strategy.

All strategies share one skeleton: evaluate the WHERE clause once against
the pre-update snapshot, instantiate both templates with every solution,
drop instantiations that stay non-ground, then apply deletions before
insertions.  They differ in which entailment regime binds the WHERE clause,
how templates are rewritten beforehand, and which normalisation runs
afterwards:

==========  =============================================================
naive       plain set difference/union, no reasoning; result mode plain
mat0        naive over the closed store, then re-materialise
mat1a       also erase every consequence of the deleted assertions
mat1b       like mat1a but explicit inserts survive: the explicit
            partition is updated set-wise and the implicit one is
            maintained by delete-and-rederive
mat2        delete instantiations plus all their causes, insert
            instantiations plus all their effects (rewritten operation)
red0        naive with entailed WHERE bindings, then re-reduce
red1        additionally deletes all causes of the delete instantiations
outcut      subsumption deletions cut the edges leaving the subclass
incut       subsumption deletions cut the edges entering the superclass
==========  =============================================================

Stores are snapshots: every function returns a new store.
"""

from __future__ import annotations

from enum import Enum
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from rdfsupd.entailment import abox_fixpoint, materialise, reduce_store
from rdfsupd.errors import ModeError, NonStandardUse, UnsupportedFeature, VarInPredicate
from rdfsupd.model import (
    ABOX_KINDS,
    TBOX_KINDS,
    Atom,
    Bgp,
    StoreMode,
    Substitution,
    TriplePattern,
    TripleStore,
    atom_to_triple,
    atom_vars,
    classify_triple,
    ground_atom_wellformed,
    substitute,
    term_key,
)
from rdfsupd.query import AnswerSet, update_solutions
from rdfsupd.rewrite import (
    CutDirection,
    build_cut_update,
    build_mat2_update,
    build_red1_update,
)
from rdfsupd.sparql import UpdateOperation


class Semantics(Enum):
    """Update strategy identifiers, as accepted by the CLI."""

    NAIVE = "naive"
    MAT0 = "mat0"
    MAT1A = "mat1a"
    MAT1B = "mat1b"
    MAT2 = "mat2"
    RED0 = "red0"
    RED1 = "red1"
    OUTCUT = "outcut"
    INCUT = "incut"

    @classmethod
    def parse(cls, name: str) -> "Semantics":
        key = name.strip().lower()
        if key == "mat3":
            raise UnsupportedFeature(
                "the mat3 strategy is not implemented; its two candidate "
                "constructions (mat1a combined with mat2, or mat1b combined "
                "with mat2) are left open"
            )
        for sem in cls:
            if sem.value == key:
                return sem
        raise ValueError(
            f"unknown semantics {name!r}; expected one of "
            + ", ".join(s.value for s in cls)
        )


_MAT_SEMANTICS = {Semantics.MAT0, Semantics.MAT1A, Semantics.MAT1B,
                  Semantics.MAT2, Semantics.OUTCUT, Semantics.INCUT}
_RED_SEMANTICS = {Semantics.RED0, Semantics.RED1}


def _split_tbox_abox(atoms: frozenset) -> tuple[frozenset, frozenset]:
    tbox = frozenset(a for a in atoms if isinstance(a, TBOX_KINDS))
    return tbox, atoms - tbox


@dataclass(frozen=True)
class InstantiationResult:
    """Ground atoms to delete and insert, computed from one binding set."""

    deletes: frozenset
    inserts: frozenset

    @property
    def delete_abox(self) -> frozenset:
        return frozenset(a for a in self.deletes if isinstance(a, ABOX_KINDS))

    @property
    def insert_abox(self) -> frozenset:
        return frozenset(a for a in self.inserts if isinstance(a, ABOX_KINDS))


def _finish_atom(a: Atom) -> Optional[Atom]:
    if isinstance(a, TriplePattern):
        try:
            a = classify_triple(*atom_to_triple(a), general=True)
        except (NonStandardUse, VarInPredicate):
            return None
    if not ground_atom_wellformed(a):
        # A general WHERE clause can bind reserved vocabulary (it occurs in
        # predicate positions of the triple view); instantiations outside
        # the storable fragment are dropped like non-ground ones.
        return None
    return a


def _ground_template(template: Bgp, theta: Substitution,
                     free: frozenset = frozenset(),
                     universe: frozenset = frozenset()) -> Iterable[Atom]:
    """Ground instantiations of a template under one solution.

    Variables in `free` are any-term binder variables: they range over the
    whole term universe independently, so each template atom grounds them
    locally instead of the caller enumerating their cross product.
    """
    for atom in template:
        a = substitute(atom, theta)
        missing = atom_vars(a)
        if not missing:
            done = _finish_atom(a)
            if done is not None:
                yield done
            continue
        if missing <= free:
            for combo in product(sorted(universe, key=term_key),
                                 repeat=len(missing)):
                done = _finish_atom(substitute(a, dict(zip(sorted(missing,
                                                                  key=term_key),
                                                           combo))))
                if done is not None:
                    yield done


def instantiate(op: UpdateOperation, bindings) -> InstantiationResult:
    """Instantiate both templates with every binding, keeping ground atoms.

    `bindings` is an answer set or any iterable of substitutions.  Both
    result sets come from the same binding collection: WHERE is evaluated
    once against the pre-update state, so a self-referential operation
    cannot see its own writes.
    """
    if isinstance(bindings, AnswerSet):
        bindings = bindings.substitutions()
    return _instantiate_stream(
        op, ((theta, frozenset()) for theta in bindings), frozenset()
    )


def _instantiate_stream(op: UpdateOperation, solutions, universe: frozenset
                        ) -> InstantiationResult:
    deletes, inserts = set(), set()
    for theta, free in solutions:
        deletes.update(_ground_template(op.delete_template, theta, free, universe))
        inserts.update(_ground_template(op.insert_template, theta, free, universe))
    return InstantiationResult(frozenset(deletes), frozenset(inserts))


def _evaluate(op: UpdateOperation, store: TripleStore,
              entailed: bool = False) -> InstantiationResult:
    return _instantiate_stream(
        op, update_solutions(op.where, store, entailed=entailed), store.terms
    )


def _apply_sets(store: TripleStore, inst: InstantiationResult) -> TripleStore:
    """(G minus deletions) union insertions; deletions first, plain result."""
    del_tbox, del_abox = _split_tbox_abox(inst.deletes)
    ins_tbox, ins_abox = _split_tbox_abox(inst.inserts)
    return TripleStore(
        tbox=(store.tbox - del_tbox) | ins_tbox,
        abox_explicit=(store.abox - del_abox) | ins_abox,
        abox_implicit=frozenset(),
        mode=StoreMode.PLAIN,
    )


def apply_naive(store: TripleStore, op: UpdateOperation) -> TripleStore:
    """Baseline: simple-entailment WHERE, set-wise delete then insert."""
    inst = _evaluate(op, store)
    return _apply_sets(store, inst)


def _require_mode(store: TripleStore, mode: StoreMode, hint: str):
    if store.mode is not mode:
        raise ModeError(
            f"this strategy needs a {mode.value} store "
            f"(got {store.mode.value}; {hint})"
        )


def _reject_terminological_templates(op: UpdateOperation, sem: str):
    for template in (op.delete_template, op.insert_template):
        for atom in template:
            if not isinstance(atom, ABOX_KINDS):
                raise UnsupportedFeature(
                    f"{sem} only supports assertional templates; "
                    "terminological updates go through naive, mat0, outcut, "
                    "or incut"
                )


def apply_mat0(store: TripleStore, op: UpdateOperation) -> TripleStore:
    """Naive update on the closed store, then re-materialise."""
    _require_mode(store, StoreMode.MATERIALISED, "run mat first")
    return materialise(apply_naive(store, op))


def apply_mat1a(store: TripleStore, op: UpdateOperation) -> TripleStore:
    """Delete the instantiations together with everything they entail, then
    insert and re-materialise.  Explicitly inserted consequences do not
    survive: the strategy tracks no provenance."""
    _require_mode(store, StoreMode.MATERIALISED, "run mat first")
    _reject_terminological_templates(op, "mat1a")
    inst = _evaluate(op, store)
    delete_closure = abox_fixpoint(store.tbox, inst.delete_abox)
    abox = (store.abox - delete_closure) | inst.insert_abox
    return materialise(
        TripleStore(store.tbox, abox, frozenset(), StoreMode.PLAIN)
    )


def apply_mat1b(store: TripleStore, op: UpdateOperation) -> TripleStore:
    """Partition-aware variant: deletions and insertions edit the explicit
    ABox, and the implicit ABox is maintained incrementally by
    delete-and-rederive (over-delete every consequence of the deleted
    assertions, then re-derive from the surviving facts plus the new
    explicit set).  Equivalent to re-deriving the implicit set from scratch,
    which the property suite verifies."""
    _require_mode(store, StoreMode.MATERIALISED, "run mat first")
    _reject_terminological_templates(op, "mat1b")
    inst = _evaluate(op, store)
    explicit = (store.abox_explicit - inst.delete_abox) | inst.insert_abox
    survivors = store.abox - abox_fixpoint(store.tbox, inst.delete_abox)
    closure = abox_fixpoint(store.tbox, survivors | explicit)
    return TripleStore(
        tbox=store.tbox,
        abox_explicit=explicit,
        abox_implicit=closure - explicit,
        mode=StoreMode.MATERIALISED,
    )


def apply_mat2(store: TripleStore, op: UpdateOperation) -> TripleStore:
    """Causes-and-effects strategy, executed as a rewritten naive update.

    The result is materialised by construction: removing an instantiation
    together with every assertion that derives it cannot strand a derived
    fact, and insertions carry their full consequence set.
    """
    _require_mode(store, StoreMode.MATERIALISED, "run mat first")
    _reject_terminological_templates(op, "mat2")
    rewritten = build_mat2_update(op, store.tbox)
    plain = apply_naive(store, rewritten)
    return TripleStore(
        plain.tbox, plain.abox, frozenset(), StoreMode.MATERIALISED
    )


def apply_red0(store: TripleStore, op: UpdateOperation,
               where_regime: str = "rdfs") -> TripleStore:
    """Naive update followed by re-reduction.

    WHERE bindings default to entailed answers (found by rewriting, so
    implicit matches are visible on the redundancy-free store); pass
    ``where_regime="simple"`` for explicit-only matching.
    """
    _require_mode(store, StoreMode.REDUCED, "run red first")
    _reject_terminological_templates(op, "red0")
    inst = _evaluate(op, store, entailed=where_regime != "simple")
    return reduce_store(_apply_sets(store, inst))


def apply_red1(store: TripleStore, op: UpdateOperation) -> TripleStore:
    """Causes-deleting reduced strategy: delete template rewritten to all
    causes (insert template untouched), applied naively, then re-reduce."""
    _require_mode(store, StoreMode.REDUCED, "run red first")
    _reject_terminological_templates(op, "red1")
    rewritten = build_red1_update(op, store.tbox)
    return reduce_store(apply_naive(store, rewritten))


def apply_tbox_cut(store: TripleStore, op: UpdateOperation,
                   direction: CutDirection) -> TripleStore:
    """Subsumption-cut strategy for general updates.

    Works on a store with materialised TBox (which `materialise` produces);
    the cut then removes, per deleted `A sc B` triple, a minimal edge cut
    disconnecting A from B.  Assertional updates degenerate to mat0.
    """
    _require_mode(store, StoreMode.MATERIALISED, "run mat first")
    rewritten = build_cut_update(op, direction)
    return materialise(apply_naive(store, rewritten))


def bootstrap_partition(store: TripleStore) -> TripleStore:
    """Canonical explicit/implicit split for a store without update history:
    the reduced core becomes explicit, everything else implicit."""
    _require_mode(store, StoreMode.MATERIALISED, "run mat first")
    core = reduce_store(store).abox
    return TripleStore(
        tbox=store.tbox,
        abox_explicit=core,
        abox_implicit=store.abox - core,
        mode=StoreMode.MATERIALISED,
    )


def run(store: TripleStore, op: UpdateOperation, semantics: Semantics,
        where_regime: Optional[str] = None) -> TripleStore:
    """Dispatch an update under the chosen strategy.

    The store mode must match the strategy family (any mode for naive,
    materialised for mat*/cuts, reduced for red*); the input snapshot is
    never modified.
    """
    if semantics in _MAT_SEMANTICS:
        _require_mode(store, StoreMode.MATERIALISED, "run mat first")
    elif semantics in _RED_SEMANTICS:
        _require_mode(store, StoreMode.REDUCED, "run red first")
    if semantics is Semantics.NAIVE:
        return apply_naive(store, op)
    if semantics is Semantics.MAT0:
        return apply_mat0(store, op)
    if semantics is Semantics.MAT1A:
        return apply_mat1a(store, op)
    if semantics is Semantics.MAT1B:
        return apply_mat1b(store, op)
    if semantics is Semantics.MAT2:
        return apply_mat2(store, op)
    if semantics is Semantics.RED0:
        return apply_red0(store, op, where_regime or "rdfs")
    if semantics is Semantics.RED1:
        return apply_red1(store, op)
    if semantics is Semantics.OUTCUT:
        return apply_tbox_cut(store, op, CutDirection.OUT)
    if semantics is Semantics.INCUT:
        return apply_tbox_cut(store, op, CutDirection.IN)
    raise ValueError(f"unhandled semantics {semantics!r}")
