"""Shared fixtures: the family example everything in the docs builds on."""

import pytest

from rdfsupd import Iri, materialise, parse_turtle, reduce_store
from rdfsupd.model import EXAMPLE_NS

#: Two role assertions plus the ten-axiom family ontology.
FAMILY_TEXT = """
:joe :hasParent :jack. :joe :hasMother :jane.

:hasFather rdfs:subPropertyOf :hasParent.
:hasMother rdfs:subPropertyOf :hasParent.
:Father rdfs:subClassOf :Parent.
:Mother rdfs:subClassOf :Parent.
:hasFather rdfs:range :Father; rdfs:domain :Child.
:hasMother rdfs:range :Mother; rdfs:domain :Child.
:hasParent rdfs:range :Parent; rdfs:domain :Child.
"""

#: Two-level subclass chain used by the strategy-divergence examples.
CHAIN_TEXT = ":C rdfs:subClassOf :D . :D rdfs:subClassOf :E ."

#: Six-edge subclass diamond used by the cut examples.
DIAMOND_TEXT = """
:A rdfs:subClassOf :B . :B rdfs:subClassOf :C .
:B rdfs:subClassOf :D . :C rdfs:subClassOf :E .
:D rdfs:subClassOf :E . :E rdfs:subClassOf :F .
"""


def ex(name: str) -> Iri:
    return Iri(EXAMPLE_NS + name)


@pytest.fixture
def family_store():
    return parse_turtle(FAMILY_TEXT)


@pytest.fixture
def family_mat(family_store):
    return materialise(family_store)


@pytest.fixture
def family_red(family_store):
    return reduce_store(family_store)


@pytest.fixture
def chain_store():
    return parse_turtle(CHAIN_TEXT)


@pytest.fixture
def diamond_store():
    return parse_turtle(DIAMOND_TEXT)
