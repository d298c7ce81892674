from __future__ import annotations

import pytest

from hierctl.automata import AutomataError, enumerate_bounded
from hierctl.relations import (PairEvent, QuadEvent, build_quad,
                               decompose_pairs, decompose_sequence,
                               relabel_pair, sync_pair_compose)

from conftest import make_alphabet, tree


def test_pair_event_names_roundtrip():
    pe = PairEvent("a", None)
    assert pe.name == "a:-"
    assert PairEvent.parse("a:-") == pe
    assert PairEvent.parse("-:b") == PairEvent(None, "b")
    with pytest.raises(AutomataError):
        PairEvent(None, None)


def test_quad_event_names_roundtrip():
    qe = QuadEvent.of("a", None, "a", None)
    assert qe.name == "a:-|a:-"
    assert QuadEvent.parse(qe.name).parts == ("a", None, "a", None)


def test_sync_pair_compose_pairs():
    al = make_alphabet("ab")
    a = tree([("a",), ("a", "b")], al)
    b = tree([("a",), ("b", "a")], al)
    pairs = decompose_pairs(sync_pair_compose(a, b, {"a"}), bound=6)
    # pairs agree on their projections to {a}
    assert (("a",), ("a",)) in pairs
    assert (("a",), ("b", "a")) in pairs
    assert (("a", "b"), ("a",)) in pairs
    assert all(tuple(x for x in l if x == "a") == tuple(x for x in r if x == "a")
               for l, r in pairs)


def test_sync_pair_compose_accepts_all_interleavings():
    al = make_alphabet("ab")
    a = tree([("b",)], al)
    b = tree([("b",)], al)
    p = sync_pair_compose(a, b, set()).automaton
    seqs = set(enumerate_bounded(p, 2))
    assert ("b:-", "-:b") in seqs and ("-:b", "b:-") in seqs


def test_relabel_erases_low_level_components():
    al = make_alphabet("ab", highlevel="a")
    x = tree([("a", "b")], al)
    p = sync_pair_compose(x, x, {"a", "b"})
    both = relabel_pair(p, "both")
    assert decompose_pairs(both, 4) == [(("a",), ("a",))]
    right = relabel_pair(p, "right")
    assert decompose_pairs(right, 4) == [(("a", "b"), ("a",))]


def test_decompose_sequence_quad():
    seq = ("a:a|a:a", "b:-|-:-", "-:-|b:-")
    assert decompose_sequence(seq, "quad") == (
        ("a", "b"), ("a",), ("a", "b"), ("a",))


def test_build_quad_language_decomposes_to_matched_pairs():
    # a observable+high, b unobservable+low: quads are (s, Q(s), s', Q(s'))
    # with P(s) = P(s')
    al = make_alphabet("ab", observable="a", highlevel="a")
    g = tree([(), ("a",), ("b",), ("b", "a")], al)
    h = build_quad(g)
    seen = {decompose_sequence(w, "quad")
            for w in enumerate_bounded(h.automaton, 4)}
    for (s, t, sp, tp) in seen:
        q = lambda w: tuple(x for x in w if x == "a")
        assert t == q(s) and tp == q(sp)
        assert q(s) == q(sp)  # here P = Q since Σo = Σhi = {a}
    assert (("b", "a"), ("a",), ("a",), ("a",)) in seen
