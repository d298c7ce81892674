"""Pair-event machinery: synchronized pair composition, component
relabelings, and the quadruple automaton used by the LOC decision procedure.

Pair events are first-class alphabet members of ordinary automata, so the
whole regular-language toolbox (inclusion, difference, enumeration) applies
to them unchanged. A pair event renders as "l:r" with "-" for an erased
component; a quadruple event is a pair of pairs, rendered "a:b|c:d".

Sequence-level versus pair-level semantics is the central trap here: an
accepted *sequence* of pair events determines one string pair by
component-wise concatenation, but one string pair usually has many
interleavings. Inclusion over these automata is sequence-level; pair-level
questions go through `decompose_pairs` or the realizability confirmation in
`hierarchy`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .automata import (Alphabet, Automaton, AutomataError, Event,
                       eliminate_silent, iter_marked_words, merge_alphabets)

EPS_MARK = "-"


@dataclass(frozen=True)
class PairEvent:
    left: str | None
    right: str | None

    def __post_init__(self):
        if self.left is None and self.right is None:
            raise AutomataError("fully erased pair events are silent, not events")

    @property
    def name(self) -> str:
        return f"{self.left or EPS_MARK}:{self.right or EPS_MARK}"

    @staticmethod
    def parse(name: str) -> "PairEvent":
        l, _, r = name.partition(":")
        return PairEvent(None if l == EPS_MARK else l,
                         None if r == EPS_MARK else r)


@dataclass(frozen=True)
class QuadEvent:
    """Quadruple event as a pair of pairs; components may each be erased."""

    first: PairEvent | None
    second: PairEvent | None

    @property
    def parts(self) -> tuple:
        a = self.first.left if self.first else None
        b = self.first.right if self.first else None
        c = self.second.left if self.second else None
        d = self.second.right if self.second else None
        return (a, b, c, d)

    @property
    def name(self) -> str:
        a, b, c, d = self.parts
        return "{}:{}|{}:{}".format(a or EPS_MARK, b or EPS_MARK,
                                    c or EPS_MARK, d or EPS_MARK)

    @staticmethod
    def of(a, b, c, d) -> "QuadEvent":
        first = PairEvent(a, b) if (a or b) else None
        second = PairEvent(c, d) if (c or d) else None
        if first is None and second is None:
            raise AutomataError("fully erased quadruple")
        return QuadEvent(first, second)

    @staticmethod
    def parse(name: str) -> "QuadEvent":
        fst, _, snd = name.partition("|")
        a, _, b = fst.partition(":")
        c, _, d = snd.partition(":")
        conv = lambda x: None if x == EPS_MARK else x
        return QuadEvent.of(conv(a), conv(b), conv(c), conv(d))


@dataclass(frozen=True)
class PairAutomaton:
    """Automaton over pair events plus its two component alphabets."""

    automaton: Automaton
    left: Alphabet
    right: Alphabet

    @cached_property
    def decoded(self) -> dict:
        return {name: PairEvent.parse(name)
                for name in self.automaton.alphabet.names}


@dataclass(frozen=True)
class QuadAutomaton:
    """Automaton over quadruple events plus the base alphabet."""

    automaton: Automaton
    base: Alphabet

    @cached_property
    def decoded(self) -> dict:
        return {name: QuadEvent.parse(name)
                for name in self.automaton.alphabet.names}


def _pair_event(name: str | None, other: str | None) -> Event:
    return Event(PairEvent(name, other).name)


def pair_alphabet(a: Alphabet, b: Alphabet, sync: frozenset) -> Alphabet:
    """Pair events of a ∥_sync b in deterministic (merged-alphabet) order."""
    common = merge_alphabets(a, b)
    events = []
    for e in common.names:
        if e in sync:
            if e in a and e in b:
                events.append(Event(PairEvent(e, e).name))
        else:
            if e in a:
                events.append(Event(PairEvent(e, None).name))
            if e in b:
                events.append(Event(PairEvent(None, e).name))
    return Alphabet(tuple(events))


def sync_pair_compose(a: Automaton, b: Automaton, sync) -> PairAutomaton:
    """Pair product synchronizing only on `sync`.

    Accepted sequences decompose to exactly the pairs (w, w') in
    L_m(a) × L_m(b) whose projections to `sync` coincide, with every
    interleaving of the unsynchronized moves accepted.
    """
    sync = frozenset(sync)
    common = merge_alphabets(a.alphabet, b.alphabet)
    missing = sync - set(common.names)
    if missing:
        raise AutomataError(f"sync events not in the common alphabet: {sorted(missing)}")
    a = eliminate_silent(a)
    b = eliminate_silent(b)
    alphabet = pair_alphabet(a.alphabet, b.alphabet, sync)

    start = [(p, q) for p in a.sorted_states(a.initial)
             for q in b.sorted_states(b.initial)]
    names, order, trans = {}, [], set()
    queue = deque()
    for pq in start:
        if pq not in names:
            names[pq] = f"({pq[0]}|{pq[1]})"
            order.append(pq)
            queue.append(pq)
    while queue:
        p, q = queue.popleft()
        moves = []
        for e in common.names:
            if e in sync:
                if e in a.alphabet and e in b.alphabet:
                    for pn in a.succ[p].get(e, ()):
                        for qn in b.succ[q].get(e, ()):
                            moves.append((PairEvent(e, e).name, (pn, qn)))
            else:
                if e in a.alphabet:
                    for pn in a.succ[p].get(e, ()):
                        moves.append((PairEvent(e, None).name, (pn, q)))
                if e in b.alphabet:
                    for qn in b.succ[q].get(e, ()):
                        moves.append((PairEvent(None, e).name, (p, qn)))
        for lbl, nxt in moves:
            if nxt not in names:
                names[nxt] = f"({nxt[0]}|{nxt[1]})"
                order.append(nxt)
                queue.append(nxt)
            trans.add((names[(p, q)], lbl, names[nxt]))
    marked = frozenset(names[(p, q)] for (p, q) in order
                       if p in a.marked and q in b.marked)
    aut = Automaton(alphabet, tuple(names[s] for s in order), frozenset(trans),
                    frozenset(names[s] for s in start), marked)
    return PairAutomaton(aut, a.alphabet, b.alphabet)


def relabel_pair(p: PairAutomaton, mode: str) -> PairAutomaton:
    """Erase non-high-level letters component-wise.

    mode "both" applies the high-level projection to both components; mode
    "right" only to the right one. Pairs erased to (ε,ε) become silent and
    are eliminated.
    """
    if mode not in ("both", "right"):
        raise AutomataError(f"unknown relabel mode {mode!r}")
    left_keep = p.left.highlevel if mode == "both" else frozenset(p.left.names)
    right_keep = p.right.highlevel

    def image(name: str) -> str | None:
        pe = p.decoded[name]
        l = pe.left if (pe.left and pe.left in left_keep) else None
        r = pe.right if (pe.right and pe.right in right_keep) else None
        if l is None and r is None:
            return None
        return PairEvent(l, r).name

    new_names = []
    seen = set()
    for name in p.automaton.alphabet.names:
        img = image(name)
        if img is not None and img not in seen:
            seen.add(img)
            new_names.append(img)
    alphabet = Alphabet(tuple(Event(n) for n in new_names))
    trans = frozenset((src, image(lbl), dst)
                      for (src, lbl, dst) in p.automaton.transitions)
    aut = eliminate_silent(Automaton(alphabet, p.automaton.states, trans,
                                     p.automaton.initial, p.automaton.marked))
    new_left = p.left.restrict(p.left.highlevel) if mode == "both" else p.left
    return PairAutomaton(aut, new_left, p.right.restrict(p.right.highlevel))


def decompose_sequence(word, kind: str = "pair") -> tuple:
    """Component-wise concatenation of a pair/quad event-name sequence."""
    if kind == "pair":
        comps: tuple = ((), ())
        for name in word:
            pe = PairEvent.parse(name)
            comps = (comps[0] + ((pe.left,) if pe.left else ()),
                     comps[1] + ((pe.right,) if pe.right else ()))
        return comps
    out = [(), (), (), ()]
    for name in word:
        qe = QuadEvent.parse(name)
        for i, x in enumerate(qe.parts):
            if x is not None:
                out[i] = out[i] + (x,)
    return tuple(out)


def decompose_pairs(p: PairAutomaton, bound: int) -> list:
    """Deduplicated string pairs from accepted sequences of length <= bound."""
    pairs = {decompose_sequence(w) for w in iter_marked_words(p.automaton, bound)}
    return sorted(pairs)


def quad_alphabet(base: Alphabet, loc_events=()) -> Alphabet:
    """The quadruple alphabet of the LOC verifier automaton H.

    Contains the four transition-rule groups for every base event, plus the
    marker quadruples (ε,e,ε,e) and (e,ε,e,ε) for each event in `loc_events`
    (the controllable high-level events whose LOC instances are checked).
    """
    obs, hi = base.observable, base.highlevel
    events: list[str] = []
    for a in base.names:
        if a in obs and a in hi:
            events.append(QuadEvent.of(a, a, a, a).name)
        elif a in obs:
            events.append(QuadEvent.of(a, None, a, None).name)
        elif a in hi:
            events.append(QuadEvent.of(a, a, None, None).name)
            events.append(QuadEvent.of(None, None, a, a).name)
        else:
            events.append(QuadEvent.of(a, None, None, None).name)
            events.append(QuadEvent.of(None, None, a, None).name)
    for e in loc_events:
        events.append(QuadEvent.of(None, e, None, e).name)
        events.append(QuadEvent.of(e, None, e, None).name)
    return Alphabet(tuple(Event(n) for n in events))


def build_quad(g: Automaton, alphabet: Alphabet | None = None) -> QuadAutomaton:
    """The verifier automaton H over state space Q^4.

    Accepted quadruple sequences decompose to exactly the tuples
    (s, Q(s), s', Q(s')) with s, s' in L_m(g) and P(s) = P(s').
    """
    g = eliminate_silent(g)
    base = g.alphabet
    if alphabet is None:
        alphabet = quad_alphabet(base)
    obs, hi = base.observable, base.highlevel

    def rules(p, q, r, s):
        # each yields (quad-name, next-state) mirroring the four rule groups
        for a in base.names:
            if a in obs and a in hi:
                for pn in g.succ[p].get(a, ()):
                    for qn in g.succ[q].get(a, ()):
                        for rn in g.succ[r].get(a, ()):
                            for sn in g.succ[s].get(a, ()):
                                yield QuadEvent.of(a, a, a, a).name, (pn, qn, rn, sn)
            elif a in obs:
                for pn in g.succ[p].get(a, ()):
                    for rn in g.succ[r].get(a, ()):
                        for qn in g.succ[q].get(a, ()) + (q,):
                            for sn in g.succ[s].get(a, ()) + (s,):
                                yield QuadEvent.of(a, None, a, None).name, (pn, qn, rn, sn)
            elif a in hi:
                for pn in g.succ[p].get(a, ()):
                    for qn in g.succ[q].get(a, ()):
                        yield QuadEvent.of(a, a, None, None).name, (pn, qn, r, s)
                for rn in g.succ[r].get(a, ()):
                    for sn in g.succ[s].get(a, ()):
                        yield QuadEvent.of(None, None, a, a).name, (p, q, rn, sn)
            else:
                for pn in g.succ[p].get(a, ()):
                    for qn in g.succ[q].get(a, ()) + (q,):
                        yield QuadEvent.of(a, None, None, None).name, (pn, qn, r, s)
                for rn in g.succ[r].get(a, ()):
                    for sn in g.succ[s].get(a, ()) + (s,):
                        yield QuadEvent.of(None, None, a, None).name, (p, q, rn, sn)

    init = [(p, q, r, s)
            for p in g.sorted_states(g.initial) for q in g.sorted_states(g.initial)
            for r in g.sorted_states(g.initial) for s in g.sorted_states(g.initial)]
    names, order, trans = {}, [], set()
    queue = deque()
    for st in init:
        if st not in names:
            names[st] = "({}|{}|{}|{})".format(*st)
            order.append(st)
            queue.append(st)
    while queue:
        st = queue.popleft()
        for lbl, nxt in rules(*st):
            if nxt not in names:
                names[nxt] = "({}|{}|{}|{})".format(*nxt)
                order.append(nxt)
                queue.append(nxt)
            trans.add((names[st], lbl, names[nxt]))
    marked = frozenset(names[st] for st in order if all(x in g.marked for x in st))
    aut = Automaton(alphabet, tuple(names[st] for st in order), frozenset(trans),
                    frozenset(names[st] for st in init), marked)
    return QuadAutomaton(aut, base)
