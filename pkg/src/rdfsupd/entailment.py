"""Entailment engines: materialisation, redundancy elimination, mode checks.

Six inference rules drive everything.  Four assertional rules derive ABox
facts (property inheritance, domain, range, class inheritance); two
terminological rules close subclass/subproperty chains transitively.
`materialise` runs all six to fixpoint, `materialise_abox` only the
assertional four, and `reduce_store` strips every assertion derivable from
the remaining ones, keeping one lexicographically-smallest representative
per subsumption cycle so no entailments are lost.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from rdfsupd import kernel
from rdfsupd.model import (
    ClassAtom,
    DomainAtom,
    Iri,
    RangeAtom,
    RoleAtom,
    StoreMode,
    SubClassAtom,
    SubPropAtom,
    Term,
    TripleStore,
    term_key,
)


class RuleId(Enum):
    """The six inference rules, in presentation order.

    The first four in `ABOX_RULES` derive assertional facts; the two in
    `TBOX_RULES` close subsumption chains and only matter for terminological
    queries and TBox updates.
    """

    SP_INHERIT = "sp_inherit"
    RANGE = "range"
    SC_INHERIT = "sc_inherit"
    SP_TRANS = "sp_trans"
    DOMAIN = "domain"
    SC_TRANS = "sc_trans"


ABOX_RULES = frozenset(
    {RuleId.SP_INHERIT, RuleId.RANGE, RuleId.SC_INHERIT, RuleId.DOMAIN}
)
TBOX_RULES = frozenset({RuleId.SP_TRANS, RuleId.SC_TRANS})


class _Codec:
    """Bidirectional term <-> int interning for kernel calls.

    Variables are interned like IRIs, so pattern closure (treating variables
    as constants) reuses the same kernels.
    """

    def __init__(self):
        self._ids: dict[Term, int] = {}
        self._terms: list[Term] = []

    def enc(self, term: Term) -> int:
        i = self._ids.get(term)
        if i is None:
            i = len(self._terms)
            self._ids[term] = i
            self._terms.append(term)
        return i

    def dec(self, i: int) -> Term:
        return self._terms[i]


def _encode_tbox(codec: _Codec, tbox: Iterable):
    sc, sp, dom, rng = [], [], [], []
    for ax in tbox:
        if isinstance(ax, SubClassAtom):
            sc.append((codec.enc(ax.sub), codec.enc(ax.sup)))
        elif isinstance(ax, SubPropAtom):
            sp.append((codec.enc(ax.sub), codec.enc(ax.sup)))
        elif isinstance(ax, DomainAtom):
            dom.append((codec.enc(ax.prop), codec.enc(ax.cls)))
        elif isinstance(ax, RangeAtom):
            rng.append((codec.enc(ax.prop), codec.enc(ax.cls)))
        else:
            raise TypeError(f"not a terminological axiom: {ax!r}")
    return sc, sp, dom, rng


def abox_fixpoint(tbox: Iterable, abox: Iterable) -> frozenset:
    """Closure of `abox` under the four assertional rules, given `tbox`.

    Accepts atoms with variables (treated as opaque constants), which is how
    effect expansion of templates reuses this.
    """
    codec = _Codec()
    sc, sp, dom, rng = _encode_tbox(codec, tbox)
    classes, roles = [], []
    for a in abox:
        if isinstance(a, ClassAtom):
            classes.append((codec.enc(a.inst), codec.enc(a.cls)))
        elif isinstance(a, RoleAtom):
            roles.append((codec.enc(a.subj), codec.enc(a.prop), codec.enc(a.obj)))
        else:
            raise TypeError(f"not an assertional atom: {a!r}")
    cls_out, role_out = kernel.abox_closure(sc, sp, dom, rng, classes, roles)
    out = {ClassAtom(codec.dec(i), codec.dec(c)) for i, c in cls_out}
    out.update(
        RoleAtom(codec.dec(s), codec.dec(p), codec.dec(o)) for s, p, o in role_out
    )
    return frozenset(out)


def tbox_closure(tbox: Iterable) -> frozenset:
    """Fixpoint of the two transitivity rules; other axiom kinds pass through."""
    tbox = frozenset(tbox)
    codec = _Codec()
    sc, sp, _, _ = _encode_tbox(codec, tbox)
    out = set(tbox)
    out.update(
        SubClassAtom(codec.dec(a), codec.dec(b))
        for a, b in kernel.transitive_closure(sc)
    )
    out.update(
        SubPropAtom(codec.dec(a), codec.dec(b))
        for a, b in kernel.transitive_closure(sp)
    )
    return frozenset(out)


def materialise(store: TripleStore) -> TripleStore:
    """Close the whole store under all six rules.

    The explicit ABox partition is preserved; everything newly derived (or
    already present but not explicit) lands in the implicit partition.  The
    mode tag tracks the assertional notion only, but the TBox comes out
    transitively closed as well.
    """
    closure = abox_fixpoint(store.tbox, store.abox)
    return TripleStore(
        tbox=tbox_closure(store.tbox),
        abox_explicit=store.abox_explicit,
        abox_implicit=closure - store.abox_explicit,
        mode=StoreMode.MATERIALISED,
    )


def materialise_abox(store: TripleStore) -> TripleStore:
    """Close the ABox under the four assertional rules; TBox untouched."""
    closure = abox_fixpoint(store.tbox, store.abox)
    return TripleStore(
        tbox=store.tbox,
        abox_explicit=store.abox_explicit,
        abox_implicit=closure - store.abox_explicit,
        mode=StoreMode.MATERIALISED,
    )


def _closed_pairs(tbox, kind) -> set[tuple[Iri, Iri]]:
    codec = _Codec()
    edges = [
        (codec.enc(ax.sub), codec.enc(ax.sup)) for ax in tbox if isinstance(ax, kind)
    ]
    return {(codec.dec(a), codec.dec(b)) for a, b in kernel.transitive_closure(edges)}


def reduce_store(store: TripleStore) -> TripleStore:
    """Strip every assertion derivable from the rest of the store.

    An assertion is redundant when the others (outside its own mutual-
    implication class) still derive it.  Within a class of mutually implied
    assertions (possible only under cyclic subsumptions) exactly one
    survivor is kept: the one with the smallest class/property IRI.  The
    TBox is left as-is; derivability is checked against its transitive
    closure so chains count even when the TBox is not closed.
    """
    sc = _closed_pairs(store.tbox, SubClassAtom)
    sp = _closed_pairs(store.tbox, SubPropAtom)

    def cls_le(d: Iri, c: Iri) -> bool:
        return d == c or (d, c) in sc

    def prop_le(q: Iri, p: Iri) -> bool:
        return q == p or (q, p) in sp

    dom_by_prop: dict[Iri, set[Iri]] = {}
    rng_by_prop: dict[Iri, set[Iri]] = {}
    for ax in store.tbox:
        if isinstance(ax, DomainAtom):
            dom_by_prop.setdefault(ax.prop, set()).add(ax.cls)
        elif isinstance(ax, RangeAtom):
            rng_by_prop.setdefault(ax.prop, set()).add(ax.cls)

    # Domain/range fire on derived superproperty assertions too, so a role's
    # effective domain/range classes include those of all its superproperties.
    sup_props: dict[Iri, set[Iri]] = {}
    for q, p in sp:
        sup_props.setdefault(q, set()).add(p)

    def eff_classes(prop: Iri, by_prop: dict[Iri, set[Iri]]) -> set[Iri]:
        out = set(by_prop.get(prop, ()))
        for q in sup_props.get(prop, ()):
            out.update(by_prop.get(q, ()))
        return out

    classes_by_inst: dict[Iri, set[Iri]] = {}
    props_by_pair: dict[tuple[Iri, Iri], set[Iri]] = {}
    out_props: dict[Iri, set[Iri]] = {}
    in_props: dict[Iri, set[Iri]] = {}
    for a in store.abox:
        if isinstance(a, ClassAtom):
            classes_by_inst.setdefault(a.inst, set()).add(a.cls)
        else:
            props_by_pair.setdefault((a.subj, a.obj), set()).add(a.prop)
            out_props.setdefault(a.subj, set()).add(a.prop)
            in_props.setdefault(a.obj, set()).add(a.prop)

    def equiv_groups(items: set[Iri], le) -> list[set[Iri]]:
        groups: list[set[Iri]] = []
        for x in sorted(items, key=term_key):
            for g in groups:
                rep = next(iter(g))
                if le(x, rep) and le(rep, x):
                    g.add(x)
                    break
            else:
                groups.append({x})
        return groups

    survivors = set()
    for inst, present in classes_by_inst.items():
        for group in equiv_groups(present, cls_le):
            rep = min(group, key=term_key)
            derived = any(
                cls_le(d, rep) for d in present - group
            ) or any(
                cls_le(dc, rep)
                for p in out_props.get(inst, ())
                for dc in eff_classes(p, dom_by_prop)
            ) or any(
                cls_le(rc, rep)
                for p in in_props.get(inst, ())
                for rc in eff_classes(p, rng_by_prop)
            )
            if not derived:
                survivors.add(ClassAtom(inst, rep))
    for (s, o), present in props_by_pair.items():
        for group in equiv_groups(present, prop_le):
            rep = min(group, key=term_key)
            if not any(prop_le(q, rep) for q in present - group):
                survivors.add(RoleAtom(s, rep, o))

    return TripleStore(
        tbox=store.tbox,
        abox_explicit=frozenset(survivors),
        abox_implicit=frozenset(),
        mode=StoreMode.REDUCED,
    )


def is_materialised(store: TripleStore) -> bool:
    """Does the ABox already contain everything the assertional rules derive?"""
    return store.abox == abox_fixpoint(store.tbox, store.abox)


def is_reduced(store: TripleStore) -> bool:
    """Is the ABox free of assertions derivable from the rest?"""
    return store.abox == reduce_store(store).abox
