"""Pure-Python fixpoint kernels over integer-encoded facts.

These are the hot loops behind materialisation and every update strategy
that re-derives consequences.  A compiled twin with the same signatures
lives in `_closure_native.pyx`; `rdfsupd.kernel` picks one at import time.

Encoding is left to the caller: terms are opaque non-negative ints, facts
are tuples of ints.  Both kernels are deterministic and return plain sets.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

Pair = tuple[int, int]
Triple = tuple[int, int, int]


def abox_closure(
    sc: Iterable[Pair],
    sp: Iterable[Pair],
    dom: Iterable[Pair],
    rng: Iterable[Pair],
    classes: Iterable[Pair],
    roles: Iterable[Triple],
) -> tuple[set[Pair], set[Triple]]:
    """Fixpoint of the four assertional inference rules.

    sc/sp: (sub, sup) subclass / subproperty edges; dom/rng: (prop, cls);
    classes: (inst, cls) memberships; roles: (subj, prop, obj) assertions.
    Returns the closed (classes, roles) sets.  Semi-naive: each fact is
    expanded exactly once, so chains through a non-closed TBox are followed
    by iteration rather than by pre-closing the TBox.
    """
    sup_cls: dict[int, list[int]] = {}
    sup_prop: dict[int, list[int]] = {}
    dom_cls: dict[int, list[int]] = {}
    rng_cls: dict[int, list[int]] = {}
    for a, b in set(sc):
        sup_cls.setdefault(a, []).append(b)
    for a, b in set(sp):
        sup_prop.setdefault(a, []).append(b)
    for p, c in set(dom):
        dom_cls.setdefault(p, []).append(c)
    for p, c in set(rng):
        rng_cls.setdefault(p, []).append(c)

    cls_out: set[Pair] = set(map(tuple, classes))
    role_out: set[Triple] = set(map(tuple, roles))
    cls_todo = deque(cls_out)
    role_todo = deque(role_out)

    while role_todo or cls_todo:
        while role_todo:
            s, p, o = role_todo.popleft()
            for q in sup_prop.get(p, ()):
                f = (s, q, o)
                if f not in role_out:
                    role_out.add(f)
                    role_todo.append(f)
            for c in dom_cls.get(p, ()):
                f = (s, c)
                if f not in cls_out:
                    cls_out.add(f)
                    cls_todo.append(f)
            for c in rng_cls.get(p, ()):
                f = (o, c)
                if f not in cls_out:
                    cls_out.add(f)
                    cls_todo.append(f)
        while cls_todo:
            i, c = cls_todo.popleft()
            for d in sup_cls.get(c, ()):
                f = (i, d)
                if f not in cls_out:
                    cls_out.add(f)
                    cls_todo.append(f)
    return cls_out, role_out


def transitive_closure(edges: Iterable[Pair]) -> set[Pair]:
    """All pairs connected by one or more edges.

    Cycles yield self-pairs (a, a); no reflexive pairs otherwise.
    """
    succ: dict[int, set[int]] = {}
    pred: dict[int, set[int]] = {}
    out: set[Pair] = set()
    work = deque(set(map(tuple, edges)))
    while work:
        a, b = work.popleft()
        if (a, b) in out:
            continue
        out.add((a, b))
        succ.setdefault(a, set()).add(b)
        pred.setdefault(b, set()).add(a)
        for c in succ.get(b, ()):
            if (a, c) not in out:
                work.append((a, c))
        for z in pred.get(a, ()):
            if (z, b) not in out:
                work.append((z, b))
    return out
