"""Algebra families: chains, powersets, interval algebras, products,
horizontal sums, and the token parser behind the command line."""

import pytest

import zoo_instances as zoo
from effecta import generate, parse_family_tokens
from effecta.errors import ParseError, SizeLimitExceeded


def test_chain_structure():
    M = zoo.chain(5)
    assert M.n == 6
    assert M.labels == ("0", "1", "2", "3", "4", "5")
    assert M.label(M.one) == "5"
    assert M.add(M.index("2"), M.index("3")) == M.index("5")
    assert M.add(M.index("3"), M.index("3")) is None
    assert M.label(M.comp(M.index("1"))) == "4"


def test_boolean_structure():
    M = zoo.boolean(3)
    assert M.n == 8
    assert set(M.labels) == {"{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}",
                             "{2,3}", "{1,2,3}"}
    a, b = M.index("{1}"), M.index("{2,3}")
    assert M.add(a, b) == M.index("{1,2,3}")
    assert M.add(a, M.index("{1,2}")) is None       # overlapping sets
    assert M.comp(M.index("{1,3}")) == M.index("{2}")


def test_interval_structure():
    M = zoo.interval(1, 2)
    assert M.n == 6
    assert M.label(M.zero) == "(0,0)" and M.label(M.one) == "(1,2)"
    assert M.add(M.index("(0,1)"), M.index("(1,1)")) == M.index("(1,2)")
    assert M.add(M.index("(1,1)"), M.index("(1,1)")) is None
    assert M.label(M.comp(M.index("(0,2)"))) == "(1,0)"


def test_product_is_componentwise():
    M = zoo.product_of(("chain", 2), ("chain", 3))
    assert M.n == 12
    a = M.index("(1,2)")
    b = M.index("(1,1)")
    assert M.add(a, b) == M.index("(2,3)")
    assert M.add(a, a) is None                       # 2+2 > 2 in the left slot
    assert M.label(M.comp(a)) == "(1,1)"


def test_horizontal_sum_shares_only_bounds(mo2):
    assert mo2.n == 6
    assert set(mo2.labels) == {"0", "1", "h0:{1}", "h0:{2}",
                               "h1:{1}", "h1:{2}"}
    a = mo2.index("h0:{1}")
    b = mo2.index("h1:{1}")
    assert mo2.add(a, b) is None                     # different summands
    assert mo2.add(a, mo2.index("h0:{2}")) == mo2.one


def test_generate_rejects_bad_specs():
    with pytest.raises(ParseError):
        generate(("chain", 0))
    with pytest.raises(ParseError):
        generate(("boolean", 0))
    with pytest.raises(ParseError):
        generate(("interval", ()))
    with pytest.raises(ParseError):
        generate(("nope", 3))


def test_degenerate_one_member_composites_are_relabelings():
    assert generate(("horizontal_sum", [("chain", 2)])).n == 3
    assert generate(("product", [("chain", 3)])).n == 4


def test_generate_respects_the_size_budget():
    with pytest.raises(SizeLimitExceeded):
        generate(("boolean", 5), max_size=16)
    assert generate(("boolean", 4), max_size=16).n == 16


def test_parse_family_tokens_full_grammar():
    assert parse_family_tokens(["chain", "3"]) == ("chain", 3)
    assert parse_family_tokens(["boolean", "2"]) == ("boolean", 2)
    assert parse_family_tokens(["interval", "1", "2"]) == ("interval", (1, 2))
    assert parse_family_tokens(["product", "chain2", "chain3"]) == \
        ("product", [("chain", 2), ("chain", 3)])
    assert parse_family_tokens(["horizontal-sum", "boolean2", "chain2"]) == \
        ("horizontal_sum", [("boolean", 2), ("chain", 2)])
    assert parse_family_tokens(["horizontal_sum", "boolean2", "boolean2"]) == \
        ("horizontal_sum", [("boolean", 2), ("boolean", 2)])


def test_parse_family_tokens_rejects_garbage():
    for tokens in (["chain"], ["chain", "x"], ["martian", "3"],
                   ["interval"], ["product", "widget9"], []):
        with pytest.raises(ParseError):
            parse_family_tokens(tokens)


def test_parsed_tokens_generate_the_same_algebra(mo2):
    spec = parse_family_tokens(["horizontal-sum", "boolean2", "boolean2"])
    M = generate(spec)
    assert M.labels == mo2.labels
    assert [tuple(r) for r in M._sum] == [tuple(r) for r in mo2._sum]
