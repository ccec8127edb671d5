import pytest
from hypothesis import given, strategies as st

from morphdisamb.fs import PRESENT, Constraint, FeatureStructure, subsumes
from morphdisamb.terms import TermSyntaxError

from conftest import fs, parses

GELISINDEKI = ("[cat:adj,stem:[cat:noun,stem:[cat:verb,root:gel,sense:pos],suffix:yis,"
               "agr:'3SG',poss:'2SG',case:loc],suffix:rel]")


def test_parse_and_print_nested():
    p = fs(GELISINDEKI)
    assert p.cat == "adj"
    assert p.stem.stem.get("root") == "gel"
    assert p.innermost_root() == "gel"
    assert p.to_text() == GELISINDEKI


def test_quoted_atoms_survive():
    p = fs("[cat:punct,root:',']")
    assert p.get("root") == ","
    assert p.to_text() == "[cat:punct,root:',']"


def test_equality_ignores_attribute_order():
    assert fs("[cat:noun,case:nom]") == fs("[case:nom,cat:noun]")
    assert hash(fs("[cat:noun,case:nom]")) == hash(fs("[case:nom,cat:noun]"))
    assert fs("[cat:noun,case:nom]") != fs("[cat:noun,case:acc]")


@pytest.mark.parametrize("bad", ["[cat:noun", "[cat:]", "cat:noun", "[cat:noun,[x]]"])
def test_malformed_structures_raise(bad):
    with pytest.raises(TermSyntaxError):
        FeatureStructure.parse(bad)


def test_syntax_error_reports_position():
    with pytest.raises(TermSyntaxError) as e:
        FeatureStructure.parse("[cat:noun,\n case:nom,,]")
    assert e.value.line == 2


# subsumption -----------------------------------------------------------------

def test_partial_constraint_matches():
    p = fs("[cat:noun,root:kaz,agr:'3SG',poss:'NONE',case:acc]")
    assert subsumes(Constraint.parse("[case:acc]"), p)
    assert subsumes(Constraint.parse("[cat:noun,case:acc]"), p)
    assert not subsumes(Constraint.parse("[cat:verb]"), p)
    assert not subsumes(Constraint.parse("[case:nom]"), p)


def test_nested_constraint_reaches_into_stem():
    p = fs(GELISINDEKI)
    assert subsumes(Constraint.parse("[stem:[cat:noun,poss:'2SG']]"), p)
    assert subsumes(Constraint.parse("[stem:[stem:[root:gel]]]"), p)
    assert not subsumes(Constraint.parse("[stem:[cat:verb]]"), p)


def test_stem_no_requires_underived_parse():
    c = Constraint.parse("[cat:adj,stem:no]")
    assert subsumes(c, fs("[cat:adj,root:eski]"))
    assert not subsumes(c, fs("[cat:adj,stem:[cat:verb,root:al],suffix:yan]"))


def test_bare_attribute_means_present():
    c = Constraint.parse("[cat:noun,poss]")
    assert c.items()[1] == ("poss", PRESENT)
    assert subsumes(c, fs("[cat:noun,poss:'NONE']"))
    assert not subsumes(c, fs("[cat:noun,case:nom]"))


def test_token_condition_needs_surface():
    c = Constraint.parse("[token:bir,type:cardinal]")
    p = fs("[cat:adj,root:bir,type:cardinal]")
    assert subsumes(c, p, "bir")
    assert not subsumes(c, p, "Bir")
    assert not subsumes(c, p)


def test_constraint_round_trip_and_size():
    text = "[cat:noun,stem:no,poss,token:bunun]"
    c = Constraint.parse(text)
    assert c.to_text() == text
    assert c.size() == 4
    assert Constraint.parse("[stem:[cat:noun,case:nom]]").size() == 2


# properties --------------------------------------------------------------------

@given(parses())
def test_structure_subsumes_itself(p):
    assert subsumes(Constraint.from_fs(p), p)


@given(parses(), st.data())
def test_dropping_conditions_keeps_a_match(p, data):
    items = Constraint.from_fs(p).items()
    keep = data.draw(st.lists(st.sampled_from(range(len(items))), unique=True))
    sub = Constraint([items[k] for k in sorted(keep)])
    assert subsumes(sub, p)


@given(parses(), parses())
def test_more_conditions_never_match_more(p, q):
    big = Constraint.from_fs(p)
    small = Constraint(big.items()[:1])
    if subsumes(big, q):
        assert subsumes(small, q)


@given(parses())
def test_text_round_trip(p):
    assert FeatureStructure.parse(p.to_text()) == p
    assert FeatureStructure.parse(p.to_text()).to_text() == p.to_text()
