from __future__ import annotations

from pathlib import Path

import pytest

from hierctl.automata import Alphabet, Automaton
from hierctl.saut import parse_automaton

DATA = Path(__file__).resolve().parent.parent / "data"


def load(name: str) -> Automaton:
    return parse_automaton((DATA / name).read_text(encoding="utf-8"))


def make_alphabet(names, controllable=None, observable=None,
                  highlevel=None) -> Alphabet:
    """Alphabet from flag sets; None means the flag is on everywhere."""
    names = tuple(names)
    return Alphabet.make(
        names,
        names if controllable is None else controllable,
        names if observable is None else observable,
        names if highlevel is None else highlevel)


def tree(words, alphabet) -> Automaton:
    """Prefix-tree recognizer marking exactly the given words."""
    words = [tuple(w) for w in words]
    prefixes = {()}
    for w in words:
        for i in range(len(w) + 1):
            prefixes.add(w[:i])
    name = {p: "t" + "".join(p) for p in prefixes}
    trans = {(name[p[:-1]], p[-1], name[p]) for p in prefixes if p}
    states = tuple(name[p] for p in sorted(prefixes, key=lambda p: (len(p), p)))
    return Automaton(alphabet, states, frozenset(trans),
                     frozenset({name[()]}), frozenset(name[tuple(w)] for w in words))


@pytest.fixture
def ex1_plant():
    return load("ex1-plant.saut")


@pytest.fixture
def ex1_spec():
    return load("ex1-spec.saut")


@pytest.fixture
def relobs_plant():
    return load("relobs-plant.saut")


@pytest.fixture
def relobs_spec():
    return load("relobs-spec.saut")


@pytest.fixture
def relobs_ambient():
    return load("relobs-ambient.saut")
