# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of `_closure_py`: same signatures, same results.

Facts are packed into 64-bit keys (21 bits per term id) and closed inside
C++ hash sets; the Python-visible conversion happens once per call.  Term
ids above the packing limit fall back to the pure kernel via an explicit
error, which `rdfsupd.kernel` never triggers in practice (stores would need
two million distinct terms).
"""

from libcpp.unordered_set cimport unordered_set
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libc.stdint cimport int64_t

cdef enum:
    TERM_BITS = 21
    TERM_MASK = (1 << 21) - 1


cdef inline int64_t pack2(int64_t a, int64_t b):
    return (a << TERM_BITS) | b


cdef inline int64_t pack3(int64_t a, int64_t b, int64_t c):
    return (((a << TERM_BITS) | b) << TERM_BITS) | c


cdef void _check_limit(int64_t term) except *:
    if term < 0 or term > TERM_MASK:
        raise OverflowError(
            f"term id {term} exceeds the native kernel's packing limit"
        )


def abox_closure(sc, sp, dom, rng, classes, roles):
    """Fixpoint of the four assertional inference rules (see `_closure_py`)."""
    cdef unordered_map[int64_t, vector[int64_t]] sup_cls, sup_prop, dom_cls, rng_cls
    cdef unordered_set[int64_t] cls_out, role_out
    cdef vector[int64_t] cls_todo, role_todo
    cdef int64_t a, b, c, s, p, o, key
    cdef size_t ci = 0, ri = 0

    for pair in sc:
        a, b = pair
        _check_limit(a); _check_limit(b)
        sup_cls[a].push_back(b)
    for pair in sp:
        a, b = pair
        _check_limit(a); _check_limit(b)
        sup_prop[a].push_back(b)
    for pair in dom:
        a, b = pair
        _check_limit(a); _check_limit(b)
        dom_cls[a].push_back(b)
    for pair in rng:
        a, b = pair
        _check_limit(a); _check_limit(b)
        rng_cls[a].push_back(b)

    for pair in classes:
        a, b = pair
        _check_limit(a); _check_limit(b)
        key = pack2(a, b)
        if cls_out.insert(key).second:
            cls_todo.push_back(key)
    for triple in roles:
        s, p, o = triple
        _check_limit(s); _check_limit(p); _check_limit(o)
        key = pack3(s, p, o)
        if role_out.insert(key).second:
            role_todo.push_back(key)

    while ri < role_todo.size() or ci < cls_todo.size():
        while ri < role_todo.size():
            key = role_todo[ri]
            ri += 1
            o = key & TERM_MASK
            p = (key >> TERM_BITS) & TERM_MASK
            s = key >> (2 * TERM_BITS)
            if sup_prop.count(p):
                for b in sup_prop[p]:
                    key = pack3(s, b, o)
                    if role_out.insert(key).second:
                        role_todo.push_back(key)
            if dom_cls.count(p):
                for c in dom_cls[p]:
                    key = pack2(s, c)
                    if cls_out.insert(key).second:
                        cls_todo.push_back(key)
            if rng_cls.count(p):
                for c in rng_cls[p]:
                    key = pack2(o, c)
                    if cls_out.insert(key).second:
                        cls_todo.push_back(key)
        while ci < cls_todo.size():
            key = cls_todo[ci]
            ci += 1
            c = key & TERM_MASK
            a = key >> TERM_BITS
            if sup_cls.count(c):
                for b in sup_cls[c]:
                    key = pack2(a, b)
                    if cls_out.insert(key).second:
                        cls_todo.push_back(key)

    cls_py = set()
    for key in cls_out:
        cls_py.add((key >> TERM_BITS, key & TERM_MASK))
    role_py = set()
    for key in role_out:
        role_py.add(
            (key >> (2 * TERM_BITS), (key >> TERM_BITS) & TERM_MASK,
             key & TERM_MASK)
        )
    return cls_py, role_py


def transitive_closure(edges):
    """All pairs connected by one or more edges (see `_closure_py`)."""
    cdef unordered_map[int64_t, vector[int64_t]] succ, pred
    cdef unordered_set[int64_t] out
    cdef vector[int64_t] work
    cdef int64_t a, b, c, z, key
    cdef size_t i = 0

    for pair in edges:
        a, b = pair
        _check_limit(a); _check_limit(b)
        key = pack2(a, b)
        if not out.count(key):
            work.push_back(key)
            out.insert(key)

    # `out` doubles as the seen-set; adjacency grows as pairs are dequeued.
    while i < work.size():
        key = work[i]
        i += 1
        b = key & TERM_MASK
        a = key >> TERM_BITS
        succ[a].push_back(b)
        pred[b].push_back(a)
        if succ.count(b):
            for c in succ[b]:
                key = pack2(a, c)
                if out.insert(key).second:
                    work.push_back(key)
        if pred.count(a):
            for z in pred[a]:
                key = pack2(z, b)
                if out.insert(key).second:
                    work.push_back(key)
    return {(key >> TERM_BITS, key & TERM_MASK) for key in out}
