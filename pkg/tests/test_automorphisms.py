"""Endomorphisms, the automorphism test, and actions on subgroups/currents."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from subsetcurrents import (
    Alphabet,
    Endomorphism,
    NotAutomorphismError,
    act_on_current,
    act_on_subgroup,
    apply_word,
    canonical_key_based,
    counting_current,
    from_generators,
    functional_rk,
    intersection_functional_N,
    is_automorphism,
    nielsen_generators,
    parse_automorphism_file,
    parse_word,
    random_automorphism,
    reduced_rank,
    random_subgroup,
)

AL2 = Alphabet(2)
AL3 = Alphabet(3)


def sub(*words, alphabet=AL2):
    return from_generators([parse_word(w, alphabet) for w in words], alphabet)


def endo(*images, alphabet=AL2):
    return Endomorphism(
        tuple(parse_word(w, alphabet) for w in images), alphabet
    )


def test_apply_word_oracle():
    phi = endo("ab", "b")
    assert apply_word(phi, parse_word("aB", AL2)) == (1,)
    assert apply_word(phi, parse_word("a", AL2)) == (1, 2)
    assert apply_word(phi, ()) == ()


def test_identity_endomorphism():
    ident = Endomorphism.identity(AL2)
    w = parse_word("abAB", AL2)
    assert apply_word(ident, w) == w
    assert is_automorphism(ident)


def test_compose():
    phi = endo("ab", "b")
    psi = endo("a", "ba")
    w = parse_word("ab", AL2)
    assert apply_word(phi.compose(psi), w) == apply_word(phi, apply_word(psi, w))


def test_is_automorphism_accepts_nielsen():
    for al in (AL2, AL3):
        gens = nielsen_generators(al)
        n = al.rank
        assert len(gens) == n + n * (n - 1) // 2 + n * (n - 1)
        for phi in gens:
            assert is_automorphism(phi)


def test_is_automorphism_rejects():
    assert not is_automorphism(endo("a", "a"))
    assert not is_automorphism(endo("aa", "b"))
    assert not is_automorphism(endo("ab", "ba"))
    assert not is_automorphism(endo("1", "b"))


def test_random_automorphism_deterministic():
    phi1 = random_automorphism(random.Random(9), AL2, 6)
    phi2 = random_automorphism(random.Random(9), AL2, 6)
    assert phi1 == phi2
    assert is_automorphism(phi1)


def test_act_on_subgroup_golden():
    phi = endo("ab", "b")
    image = act_on_subgroup(phi, sub("a"))
    assert canonical_key_based(image) == canonical_key_based(sub("ab"))
    # rank is preserved by any automorphism
    h = sub("aa", "b")
    assert reduced_rank(act_on_subgroup(phi, h)) == reduced_rank(h)


def test_act_requires_automorphism_when_asked():
    squash = endo("a", "a")
    act_on_subgroup(squash, sub("b"))  # allowed as a plain endomorphism
    with pytest.raises(NotAutomorphismError):
        act_on_subgroup(squash, sub("b"), require_automorphism=True)


def test_act_on_current_preserves_functionals():
    rng = random.Random(31)
    for _ in range(10):
        phi = random_automorphism(rng, AL2, 5)
        h = random_subgroup(rng, AL2)
        mu = counting_current(h)
        assert functional_rk(act_on_current(phi, mu)) == functional_rk(mu)


def test_act_on_current_respects_intersection():
    rng = random.Random(32)
    for _ in range(5):
        phi = random_automorphism(rng, AL2, 5)
        mu = counting_current(random_subgroup(rng, AL2))
        nu = counting_current(random_subgroup(rng, AL2))
        assert intersection_functional_N(
            act_on_current(phi, mu), act_on_current(phi, nu)
        ) == intersection_functional_N(mu, nu)


def test_parse_automorphism_file():
    phi = parse_automorphism_file("ab\nb\n", AL2)
    assert phi == endo("ab", "b")
    with pytest.raises(ValueError):
        parse_automorphism_file("ab\n", AL2)  # one image missing
    with pytest.raises(ValueError):
        parse_automorphism_file("a\nb\nc\n", AL2)


@given(st.integers(0, 2**32 - 1))
def test_automorphism_action_invertible_on_words(seed):
    rng = random.Random(seed)
    phi = random_automorphism(rng, AL2, 4)
    w = tuple(
        rng.choice(AL2.signed_letters()) for _ in range(rng.randint(0, 6))
    )
    from subsetcurrents import reduce_word

    w = reduce_word(w)
    image = apply_word(phi, w)
    # automorphisms are injective: nontrivial words stay nontrivial
    if w:
        assert image != ()
