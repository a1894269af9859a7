import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ex
from rdfsupd.errors import NonStandardUse, ParseError, UnsupportedFeature
from rdfsupd.model import (
    ClassAtom,
    DomainAtom,
    Iri,
    RangeAtom,
    RoleAtom,
    StoreMode,
    SubClassAtom,
    SubPropAtom,
    TripleStore,
)
from rdfsupd.turtle import parse_turtle, serialize_turtle, shorten_iri


class TestParse:
    def test_family_example(self, family_store):
        assert len(family_store.tbox) == 10
        assert len(family_store.abox) == 2
        assert family_store.mode is StoreMode.PLAIN
        assert RoleAtom(ex("joe"), ex("hasParent"), ex("jack")) in family_store.abox

    def test_empty(self):
        store = parse_turtle("")
        assert store == TripleStore()
        assert store.mode is StoreMode.PLAIN

    def test_comments_and_whitespace(self):
        store = parse_turtle("# nothing here\n:a :p :b . # trailing\n")
        assert len(store.abox) == 1

    def test_a_keyword_and_lists(self):
        store = parse_turtle(":x a :C, :D; :p :y .")
        assert store.abox == frozenset(
            {
                ClassAtom(ex("x"), ex("C")),
                ClassAtom(ex("x"), ex("D")),
                RoleAtom(ex("x"), ex("p"), ex("y")),
            }
        )

    def test_full_iris_and_user_prefix(self):
        store = parse_turtle(
            "@prefix f: <http://family.test/> .\n"
            "<http://a.test/x> f:knows <http://a.test/y> ."
        )
        assert store.abox == frozenset(
            {
                RoleAtom(
                    Iri("http://a.test/x"),
                    Iri("http://family.test/knows"),
                    Iri("http://a.test/y"),
                )
            }
        )

    def test_prefix_override(self):
        store = parse_turtle("@prefix : <http://other.test/> .\n:a :p :b .")
        assert RoleAtom(
            Iri("http://other.test/a"),
            Iri("http://other.test/p"),
            Iri("http://other.test/b"),
        ) in store.abox

    def test_undeclared_prefix(self):
        with pytest.raises(ParseError):
            parse_turtle("nope:a :p :b .")

    def test_literal_rejected(self):
        with pytest.raises(UnsupportedFeature):
            parse_turtle(':joe :age "41".')
        with pytest.raises(UnsupportedFeature):
            parse_turtle(":joe :age 41 .")

    def test_blank_node_and_collection_rejected(self):
        with pytest.raises(UnsupportedFeature):
            parse_turtle(":joe :knows _:b1 .")
        with pytest.raises(UnsupportedFeature):
            parse_turtle(":joe :knows [ :p :q ] .")
        with pytest.raises(UnsupportedFeature):
            parse_turtle(":joe :list (:a :b) .")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_turtle(":a :p .")
        assert err.value.line == 1
        assert err.value.col == 7

    def test_missing_dot(self):
        with pytest.raises(ParseError):
            parse_turtle(":a :p :b")

    def test_nonstandard_use_propagates(self):
        with pytest.raises(NonStandardUse):
            parse_turtle(":x a rdfs:Resource .")
        with pytest.raises(NonStandardUse):
            parse_turtle(":x rdfs:label :y .")


class TestSerialize:
    def test_empty_store_prologue_only(self):
        text = serialize_turtle(TripleStore())
        lines = [l for l in text.splitlines() if l]
        assert lines == [
            "@prefix : <http://example.org/> .",
            "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .",
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .",
        ]

    def test_contains_expected_line(self, family_store):
        assert ":joe :hasParent :jack ." in serialize_turtle(family_store)

    def test_roundtrip_family(self, family_store, family_mat):
        for store in (family_store, family_mat):
            again = parse_turtle(serialize_turtle(store))
            assert again.tbox == store.tbox
            assert again.abox == store.abox

    def test_deterministic(self, family_mat):
        assert serialize_turtle(family_mat) == serialize_turtle(family_mat)

    def test_unshortenable_iri(self):
        store = TripleStore.from_atoms(
            [RoleAtom(Iri("urn:x"), Iri("urn:p"), Iri("urn:y"))]
        )
        text = serialize_turtle(store)
        assert "<urn:x> <urn:p> <urn:y> ." in text
        assert parse_turtle(text) == store

    def test_shorten_iri(self):
        assert shorten_iri(ex("joe")) == ":joe"
        assert shorten_iri(Iri("http://www.w3.org/2000/01/rdf-schema#thing")) \
            == "rdfs:thing"
        assert shorten_iri(Iri("urn:x")) == "<urn:x>"


_names = st.sampled_from(["a", "b", "c", "d", "p", "q", "r", "A", "B", "C"])


def _atoms():
    return st.one_of(
        st.builds(lambda x, y: SubClassAtom(ex("K" + x), ex("K" + y)), _names, _names),
        st.builds(lambda x, y: SubPropAtom(ex("r" + x), ex("r" + y)), _names, _names),
        st.builds(lambda x, y: DomainAtom(ex("r" + x), ex("K" + y)), _names, _names),
        st.builds(lambda x, y: RangeAtom(ex("r" + x), ex("K" + y)), _names, _names),
        st.builds(lambda x, y: ClassAtom(ex(x), ex("K" + y)), _names, _names),
        st.builds(
            lambda x, p, y: RoleAtom(ex(x), ex("r" + p), ex(y)),
            _names, _names, _names,
        ),
    )


@settings(max_examples=200, deadline=None)
@given(st.frozensets(_atoms(), max_size=12))
def test_roundtrip_random_stores(atoms):
    store = TripleStore.from_atoms(atoms)
    again = parse_turtle(serialize_turtle(store))
    assert again.tbox == store.tbox
    assert again.abox == store.abox
