"""Pattern evaluation: simple matching and the two entailment strategies.

`eval_simple` is homomorphism matching of patterns against the stored
triples, with no reasoning.  Entailed answers come either from
`answers_rdfs_rewriting` (unfold the query against the TBox, evaluate the
union over the raw ABox) or from `answers_rdfs_materialisation` (evaluate
the query as-is over the closed store); the two agree on non-general
queries, which the test suite checks exhaustively.

Answers are sets of total substitutions (set semantics, unlike SPARQL's
bags).  When an explicit variable tuple is requested, a union disjunct that
does not bind all requested variables contributes no rows.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Optional, Union

from rdfsupd.entailment import materialise, tbox_closure
from rdfsupd.model import (
    RDFS_SUBCLASSOF,
    AnyTermAtom,
    Atom,
    Bgp,
    ClassAtom,
    DomainAtom,
    Iri,
    PathAtom,
    RangeAtom,
    RoleAtom,
    StoreMode,
    SubClassAtom,
    SubPropAtom,
    Substitution,
    TriplePattern,
    TripleStore,
    UnionPattern,
    Var,
    atom_sort_key,
    atom_terms,
    atom_vars,
    term_key,
)

Pattern = Union[Bgp, UnionPattern]


@dataclass(frozen=True)
class AnswerSet:
    """Ordered projection variables plus a set of rows aligned with them."""

    vars: tuple[Var, ...]
    rows: frozenset

    def substitutions(self) -> list[dict]:
        return [dict(zip(self.vars, row)) for row in sorted(self.rows)]

    def column(self, var: Var) -> frozenset:
        i = self.vars.index(var)
        return frozenset(row[i] for row in self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __bool__(self) -> bool:
        return bool(self.rows)


class _Index:
    """Per-evaluation view of one store snapshot."""

    def __init__(self, store: TripleStore):
        self.store = store
        self.class_pairs: list[tuple[Iri, Iri]] = []
        self.roles_by_pred: dict[Iri, list[tuple[Iri, Iri]]] = {}
        for a in store.abox:
            if isinstance(a, ClassAtom):
                self.class_pairs.append((a.inst, a.cls))
            else:
                self.roles_by_pred.setdefault(a.prop, []).append((a.subj, a.obj))
        self.tbox_pairs: dict[type, list[tuple[Iri, Iri]]] = {
            SubClassAtom: [], SubPropAtom: [], DomainAtom: [], RangeAtom: []
        }
        for ax in store.tbox:
            self.tbox_pairs[type(ax)].append(atom_terms(ax))  # type: ignore[arg-type]
        self.triples = store.triples
        self.universe = store.terms
        self._reach: dict[tuple[Iri, bool], dict[Iri, set[Iri]]] = {}

    def _edges(self, pred: Iri, forward: bool) -> dict[Iri, set[Iri]]:
        key = (pred, forward)
        adj = self._reach.get(key)
        if adj is None:
            kind = SubClassAtom if pred == RDFS_SUBCLASSOF else SubPropAtom
            adj = {}
            for a, b in self.tbox_pairs[kind]:
                src, dst = (a, b) if forward else (b, a)
                adj.setdefault(src, set()).add(dst)
            self._reach[key] = adj
        return adj

    def reachable(self, start: Iri, pred: Iri, forward: bool = True) -> set[Iri]:
        """Nodes reachable from `start` via one or more `pred` edges."""
        adj = self._edges(pred, forward)
        seen: set[Iri] = set()
        stack = list(adj.get(start, ()))
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            stack.extend(adj.get(n, ()))
        return seen


def _unify(pattern: tuple, fact: tuple, subst: dict) -> Optional[dict]:
    out = subst
    for pt, ft in zip(pattern, fact):
        if isinstance(pt, Var):
            bound = out.get(pt)
            if bound is None:
                if out is subst:
                    out = dict(subst)
                out[pt] = ft
            elif bound != ft:
                return None
        elif pt != ft:
            return None
    return out


def _match_atom(atom: Atom, subst: dict, idx: _Index) -> Iterator[dict]:
    if isinstance(atom, ClassAtom):
        for fact in idx.class_pairs:
            ext = _unify((atom.inst, atom.cls), fact, subst)
            if ext is not None:
                yield ext
        return
    if isinstance(atom, RoleAtom):
        prop = subst.get(atom.prop, atom.prop) if isinstance(atom.prop, Var) \
            else atom.prop
        if isinstance(prop, Var):
            candidates = [
                (s, p, o)
                for p, pairs in idx.roles_by_pred.items()
                for s, o in pairs
            ]
            for fact in candidates:
                ext = _unify((atom.subj, atom.prop, atom.obj), fact, subst)
                if ext is not None:
                    yield ext
            return
        for s, o in idx.roles_by_pred.get(prop, ()):
            ext = _unify((atom.subj, atom.obj), (s, o), subst)
            if ext is not None:
                yield ext
        return
    if isinstance(atom, TriplePattern):
        for fact in idx.triples:
            ext = _unify((atom.subj, atom.pred, atom.obj), fact, subst)
            if ext is not None:
                yield ext
        return
    if isinstance(atom, (SubClassAtom, SubPropAtom, DomainAtom, RangeAtom)):
        for fact in idx.tbox_pairs[type(atom)]:
            ext = _unify(atom_terms(atom), fact, subst)
            if ext is not None:
                yield ext
        return
    if isinstance(atom, PathAtom):
        subj = subst.get(atom.subj, atom.subj) if isinstance(atom.subj, Var) \
            else atom.subj
        obj = subst.get(atom.obj, atom.obj) if isinstance(atom.obj, Var) \
            else atom.obj
        # Zero-length steps only reach terms that occur somewhere in the store.
        if isinstance(subj, Iri):
            targets = idx.reachable(subj, atom.pred)
            if subj in idx.universe:
                targets = targets | {subj}
            if isinstance(obj, Iri):
                if obj in targets:
                    yield subst
                return
            for t in targets:
                ext = dict(subst)
                ext[obj] = t
                yield ext
            return
        if isinstance(obj, Iri):
            sources = idx.reachable(obj, atom.pred, forward=False)
            if obj in idx.universe:
                sources = sources | {obj}
            for s in sources:
                ext = dict(subst)
                ext[subj] = s
                yield ext
            return
        for u in idx.universe:
            for v in idx.reachable(u, atom.pred) | {u}:
                ext = _unify((subj, obj), (u, v), subst)
                if ext is not None:
                    yield ext
        return
    if isinstance(atom, AnyTermAtom):
        term = subst.get(atom.term, atom.term) if isinstance(atom.term, Var) \
            else atom.term
        if isinstance(term, Iri):
            if term in idx.universe:
                yield subst
            return
        for t in idx.universe:
            ext = dict(subst)
            ext[term] = t
            yield ext
        return
    raise TypeError(f"cannot evaluate atom {atom!r}")


def _eval_atoms(atoms: list, subst: dict, idx: _Index) -> Iterator[dict]:
    if not atoms:
        yield subst
        return
    # Greedy join order: fewest unbound variables first, canonical tie-break.
    def rank(a):
        return (sum(1 for v in atom_vars(a) if v not in subst), atom_sort_key(a))

    best = min(atoms, key=rank)
    rest = [a for a in atoms if a != best]
    for ext in _match_atom(best, subst, idx):
        yield from _eval_atoms(rest, ext, idx)


def _bgp_solutions(bgp: Bgp, idx: _Index) -> Iterator[dict]:
    yield from _eval_atoms(bgp.sorted_atoms(), {}, idx)


def _as_union(pattern: Pattern) -> UnionPattern:
    return pattern if isinstance(pattern, UnionPattern) else UnionPattern.single(pattern)


def eval_simple(pattern: Pattern, store: TripleStore,
                vars: Optional[tuple[Var, ...]] = None) -> AnswerSet:
    """Simple-entailment evaluation: match the pattern against the stored
    triples and nothing else.  The empty pattern yields one empty row."""
    union = _as_union(pattern)
    if vars is None:
        vars = tuple(sorted(union.vars(), key=term_key))
    idx = _Index(store)
    wanted = set(vars)
    rows = set()
    for d in union.disjuncts:
        if wanted - d.vars():
            continue
        for theta in _bgp_solutions(d, idx):
            rows.add(tuple(theta[v] for v in vars))
    return AnswerSet(tuple(vars), frozenset(rows))


def simple_substitutions(pattern: Pattern, store: TripleStore
                         ) -> Iterator[Substitution]:
    """All solutions of all disjuncts, each over its own disjunct's variables.

    This is the raw binding stream update execution feeds into templates; no
    cross-disjunct projection happens here.
    """
    idx = _Index(store)
    for d in _as_union(pattern).disjuncts:
        yield from _bgp_solutions(d, idx)


def update_solutions(pattern: Pattern, store: TripleStore,
                     entailed: bool = False
                     ) -> Iterator[tuple[Substitution, frozenset]]:
    """Binding stream for update execution: (solution, free-range variables).

    A variable constrained only by an any-term binder ranges over the whole
    term universe independently of everything else, so enumerating it inside
    the join would blow the solution set up exponentially for no gain: the
    template instantiations it produces are a union over each such variable
    separately.  Those variables are therefore stripped from the join and
    reported alongside each solution; instantiation grounds them against the
    universe per template atom.  With an empty universe a binder matches
    nothing and kills its disjunct.

    With ``entailed=True`` the remaining pattern is answered under
    entailment by rewriting (binders and other non-assertional atoms pass
    through the rewriter untouched).
    """
    idx = _Index(store)
    for d in _as_union(pattern).disjuncts:
        binders = {
            a for a in d.atoms
            if isinstance(a, AnyTermAtom) and isinstance(a.term, Var)
        }
        rest = d.atoms - binders
        rest_vars = frozenset(v for a in rest for v in atom_vars(a))
        free = frozenset(a.term for a in binders) - rest_vars
        if free and not idx.universe:
            continue
        kept = Bgp(rest | {a for a in binders if a.term in rest_vars},
                   general=d.general)
        if entailed:
            stream = rewritten_substitutions(UnionPattern.single(kept), store)
        else:
            stream = _bgp_solutions(kept, idx)
        for theta in stream:
            yield theta, free


def rewritten_substitutions(pattern: Pattern, store: TripleStore
                            ) -> Iterator[Substitution]:
    """Entailed bindings via rewriting: unfold each disjunct against the
    TBox, evaluate over the raw assertions, project each solution back to
    the disjunct's own variables (rewriting-introduced witnesses are
    existential)."""
    from rdfsupd.rewrite import rewrite_bgp

    idx = _Index(store)
    for d in _as_union(pattern).disjuncts:
        dvars = d.vars()
        seen = set()
        for cq in rewrite_bgp(d, store.tbox).ucq.disjuncts:
            for theta in _bgp_solutions(cq, idx):
                proj = {v: theta[v] for v in dvars}
                key = frozenset(proj.items())
                if key not in seen:
                    seen.add(key)
                    yield proj


def answers_rdfs_rewriting(pattern: Pattern, store: TripleStore,
                           vars: Optional[tuple[Var, ...]] = None) -> AnswerSet:
    """Entailed answers computed by query rewriting over the raw ABox."""
    union = _as_union(pattern)
    if vars is None:
        vars = tuple(sorted(union.vars(), key=term_key))
    wanted = set(vars)
    rows = set()
    for theta in rewritten_substitutions(union, store):
        if wanted <= set(theta):
            rows.add(tuple(theta[v] for v in vars))
    return AnswerSet(tuple(vars), frozenset(rows))


def answers_rdfs_materialisation(pattern: Pattern, store: TripleStore,
                                 vars: Optional[tuple[Var, ...]] = None
                                 ) -> AnswerSet:
    """Entailed answers computed over the closed store.

    A store already tagged materialised is used as-is for assertional
    patterns; general patterns additionally get the TBox transitively closed
    (a no-op for stores produced by `materialise`).  Other stores are closed
    on the fly; the input snapshot is never touched.
    """
    union = _as_union(pattern)
    if store.mode is StoreMode.MATERIALISED:
        target = store
        if union.is_general or any(
            not isinstance(a, (ClassAtom, RoleAtom))
            for d in union.disjuncts for a in d.atoms
        ):
            target = replace(store, tbox=tbox_closure(store.tbox))
    else:
        target = materialise(store)
    return eval_simple(union, target, vars)
