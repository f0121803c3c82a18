import pytest

import pairsat


def test_canonical_round_trip():
    assert pairsat.canonical("forall x in y . (x = x)") == "forall x in y . x = x"
    with pytest.raises(pairsat.ParseError):
        pairsat.canonical("x in")


def test_check_sat():
    r = pairsat.check_sat("x in y")
    assert r["sat"]
    assert pairsat.evaluate(r["model"]["text"], "x in y")
    assert not pairsat.check_sat("x in x")["sat"]
    with pytest.raises(pairsat.ResourceError):
        pairsat.check_sat("@f = @g and @h = @k and @a = @b", level=4)


def test_validate_and_normalize():
    assert pairsat.validate("x in y") == []
    assert pairsat.validate("x sub dom(@f)")
    assert pairsat.validate("x sub dom(@f)", extensions=True) == []
    assert pairsat.normalize("x in y or not x in y") == ["x in y", "x notin y"]


def test_reduce():
    r = pairsat.reduce("[a,b] in @f")
    assert r["tau"] == "[a,b] in p$f"
    assert r["renaming"] == {"f": "p$f"}


def test_constructs():
    names = pairsat.constructs()
    assert len(names) == 29
    assert pairsat.expand("empty_set", ["x"]) == "forall x' in x . x' != x'"
    agree, total = pairsat.sweep("inverse", 3, 1)
    assert agree == total == 17 * 17


def test_encoders():
    assert pairsat.encode_propositional("p | ~p") == "x_p in X or x_p notin X"
    phi = pairsat.encode_domino("types: a; H a: a; V a: a")
    assert phi.count("sub dom") == 2
    assert pairsat.check_peano("N = {}\nZ = {}\n@S = {}\n").startswith("fails P1")
