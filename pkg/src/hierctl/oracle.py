"""Bounded brute-force oracle for every property the toolkit decides.

The oracle re-evaluates each definition literally: universal quantifiers
range over explicitly enumerated words up to a length bound, and inner
existential quantifiers are decided exactly by small ad-hoc reachability
searches written directly against the transition structure. None of the
pair-event reductions, subset constructions, or difference automata from
the main code paths are involved, so agreement between a checker and the
oracle is meaningful evidence.

A reported violation is always genuine. A report of "no violation found"
is conclusive only when the bound covers the instance (for example on
acyclic automata with the bound at least the longest word); otherwise it
is a bounded claim, which is exactly what the cross-check tests use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .automata import Automaton, all_marked, eliminate_silent, trim

Word = tuple


@dataclass(frozen=True)
class OracleReport:
    prop: str
    bound: int
    ok: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"property": self.prop, "bound": self.bound, "ok": self.ok,
                "witness": {k: list(v) if isinstance(v, tuple) else v
                            for k, v in self.witness.items()}}


# ---------------------------------------------------------------------------
# word-level plumbing

def _closure_rec(a: Automaton) -> Automaton:
    """Trimmed recognizer: its generated language is closure(L_m(a))."""
    return trim(eliminate_silent(a))


def _gen_rec(a: Automaton) -> Automaton:
    """Recognizer whose generated language is L(a)."""
    return all_marked(a)


def _bounded_words(a: Automaton, bound: int) -> list:
    """Generated words of `a` up to the bound, length-lexicographic."""
    out = []
    frontier = [((), frozenset(a.initial))]
    if not a.initial:
        return out
    for _ in range(bound + 1):
        nxt = []
        for word, states in frontier:
            out.append(word)
            for e in a.alphabet.names:
                step = a.step(states, e)
                if step:
                    nxt.append((word + (e,), step))
        frontier = nxt
        if not frontier:
            break
    return out


def _in_gen(a: Automaton, w: Word) -> bool:
    return bool(a.run(w))


def _proj(alphabet, w: Word, kept) -> Word:
    return tuple(x for x in w if x in kept)


def _group_by(words, key) -> dict:
    groups: dict = {}
    for w in words:
        groups.setdefault(key(w), []).append(w)
    return groups


# ---------------------------------------------------------------------------
# classical properties

def oracle_controllability(k: Automaton, g: Automaton, bound: int) -> OracleReport:
    kc = _closure_rec(k)
    gl = _gen_rec(g)
    unc = g.alphabet.uncontrollable
    for s in _bounded_words(kc, bound):
        for e in sorted(unc, key=g.alphabet.names.index):
            if _in_gen(gl, s + (e,)) and not _in_gen(kc, s + (e,)):
                return OracleReport("controllability", bound, False,
                                    {"s": s, "e": (e,)})
    return OracleReport("controllability", bound, True)


def _oracle_obs_engine(k: Automaton, c: Automaton, g: Automaton,
                       events, bound: int, prop: str) -> OracleReport:
    kc = _closure_rec(k)
    cc = _closure_rec(c)
    gl = _gen_rec(g)
    obs = g.alphabet.observable
    kwords = _bounded_words(kc, bound)
    cwords = _bounded_words(cc, bound)
    groups = _group_by(cwords, lambda w: _proj(g.alphabet, w, obs))
    for s in kwords:
        mates = groups.get(_proj(g.alphabet, s, obs), ())
        for e in events:
            if not _in_gen(kc, s + (e,)):
                continue
            for sp in mates:
                if _in_gen(gl, sp + (e,)) and not _in_gen(kc, sp + (e,)):
                    return OracleReport(prop, bound, False,
                                        {"s": s, "s_prime": sp, "e": (e,)})
    return OracleReport(prop, bound, True)


def oracle_observability(k: Automaton, g: Automaton, bound: int) -> OracleReport:
    events = sorted(g.alphabet.controllable, key=g.alphabet.names.index)
    return _oracle_obs_engine(k, k, g, events, bound, "observability")


def oracle_relative_observability(k: Automaton, c: Automaton, g: Automaton,
                                  bound: int) -> OracleReport:
    return _oracle_obs_engine(k, c, g, list(g.alphabet.names), bound,
                              "relative-observability")


def oracle_normality(k: Automaton, g: Automaton, bound: int) -> OracleReport:
    kc = _closure_rec(k)
    gl = _gen_rec(g)
    obs = g.alphabet.observable
    kimages = {_proj(g.alphabet, w, obs) for w in _bounded_words(kc, bound)}
    for w in _bounded_words(gl, bound):
        if _proj(g.alphabet, w, obs) in kimages and not _in_gen(kc, w):
            return OracleReport("normality", bound, False, {"word": w})
    return OracleReport("normality", bound, True)


def oracle_nonconflicting(a: Automaton, b: Automaton, bound: int) -> OracleReport:
    """Reachable joint closure states must stay co-reachable to joint marking."""
    at, bt = _closure_rec(a), _closure_rec(b)
    in_a = set(at.alphabet.names)
    in_b = set(bt.alphabet.names)
    events = list(dict.fromkeys(at.alphabet.names + bt.alphabet.names))

    def moves(p, q):
        for e in events:
            if e in in_a and e in in_b:
                for pn in at.succ[p].get(e, ()):
                    for qn in bt.succ[q].get(e, ()):
                        yield e, (pn, qn)
            elif e in in_a:
                for pn in at.succ[p].get(e, ()):
                    yield e, (pn, q)
            else:
                for qn in bt.succ[q].get(e, ()):
                    yield e, (p, qn)

    reached = {(p, q): () for p in at.initial for q in bt.initial}
    frontier = list(reached)
    while frontier:
        nxt = []
        for pq in frontier:
            if len(reached[pq]) >= bound:
                continue
            for e, new in moves(*pq):
                if new not in reached:
                    reached[new] = reached[pq] + (e,)
                    nxt.append(new)
        frontier = nxt

    def coreachable(pq) -> bool:
        seen = {pq}
        stack = [pq]
        while stack:
            cur = stack.pop()
            if cur[0] in at.marked and cur[1] in bt.marked:
                return True
            for _, new in moves(*cur):
                if new not in seen:
                    seen.add(new)
                    stack.append(new)
        return False

    for pq, word in sorted(reached.items(), key=lambda kv: (len(kv[1]), kv[1])):
        if not coreachable(pq):
            return OracleReport("nonconflicting", bound, False, {"word": word})
    return OracleReport("nonconflicting", bound, True)


# ---------------------------------------------------------------------------
# hierarchical consistency

def _q_of(alphabet, w: Word) -> Word:
    return _proj(alphabet, w, alphabet.highlevel)


def _p_of(alphabet, w: Word) -> Word:
    return _proj(alphabet, w, alphabet.observable)


def _exists_oc_pair(gl: Automaton, t: Word, tp: Word) -> bool:
    """∃ s, s' ∈ L with Q(s)=t, Q(s')=tp, P(s)=P(s')."""
    alphabet = gl.alphabet
    obs, hi = alphabet.observable, alphabet.highlevel
    start = {(p, q, 0, 0) for p in gl.initial for q in gl.initial}
    seen = set(start)
    stack = list(start)
    while stack:
        p, q, i, j = stack.pop()
        if i == len(t) and j == len(tp):
            return True
        for e in alphabet.names:
            if e in obs:
                ni = _advance(t, i, e, hi)
                nj = _advance(tp, j, e, hi)
                if ni is None or nj is None:
                    continue
                for pn in gl.succ[p].get(e, ()):
                    for qn in gl.succ[q].get(e, ()):
                        st = (pn, qn, ni, nj)
                        if st not in seen:
                            seen.add(st)
                            stack.append(st)
            else:
                ni = _advance(t, i, e, hi)
                if ni is not None:
                    for pn in gl.succ[p].get(e, ()):
                        st = (pn, q, ni, j)
                        if st not in seen:
                            seen.add(st)
                            stack.append(st)
                nj = _advance(tp, j, e, hi)
                if nj is not None:
                    for qn in gl.succ[q].get(e, ()):
                        st = (p, qn, i, nj)
                        if st not in seen:
                            seen.add(st)
                            stack.append(st)
    return False


def _advance(t: Word, i: int, e: str, hi) -> int | None:
    """Next index into t after consuming e, or None if e contradicts t."""
    if e not in hi:
        return i
    if i < len(t) and t[i] == e:
        return i + 1
    return None


def _exists_moc_mate(gl: Automaton, obs_word: Word, tp: Word) -> bool:
    """∃ s' ∈ L with P(s') = obs_word and Q(s') = tp."""
    alphabet = gl.alphabet
    obs, hi = alphabet.observable, alphabet.highlevel
    start = {(q, 0, 0) for q in gl.initial}
    seen = set(start)
    stack = list(start)
    while stack:
        q, k, j = stack.pop()
        if k == len(obs_word) and j == len(tp):
            return True
        for e in alphabet.names:
            if e in obs:
                if k >= len(obs_word) or obs_word[k] != e:
                    continue
                nk = k + 1
            else:
                nk = k
            nj = _advance(tp, j, e, hi)
            if nj is None:
                continue
            for qn in gl.succ[q].get(e, ()):
                st = (qn, nk, nj)
                if st not in seen:
                    seen.add(st)
                    stack.append(st)
    return False


def _q_language(gl: Automaton, bound: int) -> list:
    return sorted({_q_of(gl.alphabet, w) for w in _bounded_words(gl, bound)},
                  key=lambda w: (len(w), w))


def oracle_oc(g: Automaton, bound: int) -> OracleReport:
    gl = _gen_rec(g)
    shared = gl.alphabet.highlevel & gl.alphabet.observable
    ts = _q_language(gl, bound)
    groups = _group_by(ts, lambda w: _proj(gl.alphabet, w, shared))
    for key, members in sorted(groups.items()):
        for t in members:
            for tp in members:
                if not _exists_oc_pair(gl, t, tp):
                    return OracleReport("oc", bound, False,
                                        {"t": t, "t_prime": tp})
    return OracleReport("oc", bound, True)


def oracle_moc(g: Automaton, bound: int) -> OracleReport:
    gl = _gen_rec(g)
    alphabet = gl.alphabet
    shared = alphabet.highlevel & alphabet.observable
    ts = _q_language(gl, bound)
    groups = _group_by(ts, lambda w: _proj(alphabet, w, shared))
    for s in _bounded_words(gl, bound):
        key = _proj(alphabet, _q_of(alphabet, s), shared)
        for tp in groups.get(key, ()):
            if not _exists_moc_mate(gl, _p_of(alphabet, s), tp):
                return OracleReport("moc", bound, False,
                                    {"s": s, "t_prime": tp})
    return OracleReport("moc", bound, True)


def _loc_continuations_meet(gl: Automaton, s: Word, sp: Word, e: str) -> bool:
    """∃ low-level u, u' with P(u)=P(u'), sue ∈ L, s'u'e ∈ L."""
    alphabet = gl.alphabet
    obs, hi = alphabet.observable, alphabet.highlevel
    start = {(p, q) for p in gl.run(s) for q in gl.run(sp)}
    seen = set(start)
    stack = list(start)
    while stack:
        p, q = stack.pop()
        if gl.succ[p].get(e) and gl.succ[q].get(e):
            return True
        for a in alphabet.names:
            if a in hi:
                continue
            if a in obs:
                nexts = [(pn, qn) for pn in gl.succ[p].get(a, ())
                         for qn in gl.succ[q].get(a, ())]
            else:
                nexts = [(pn, q) for pn in gl.succ[p].get(a, ())] + \
                        [(p, qn) for qn in gl.succ[q].get(a, ())]
            for st in nexts:
                if st not in seen:
                    seen.add(st)
                    stack.append(st)
    return False


def _q_extends(gl: Automaton, t: Word) -> bool:
    """t ∈ Q(L), decided exactly."""
    alphabet = gl.alphabet
    hi = alphabet.highlevel
    seen = {(q, 0) for q in gl.initial}
    stack = list(seen)
    while stack:
        q, i = stack.pop()
        if i == len(t):
            return True
        for e in alphabet.names:
            ni = _advance(t, i, e, hi)
            if ni is None:
                continue
            for qn in gl.succ[q].get(e, ()):
                if (qn, ni) not in seen:
                    seen.add((qn, ni))
                    stack.append((qn, ni))
    return False


def oracle_loc(g: Automaton, bound: int) -> OracleReport:
    gl = _gen_rec(g)
    alphabet = gl.alphabet
    events = sorted(alphabet.highlevel & alphabet.controllable,
                    key=alphabet.names.index)
    words = _bounded_words(gl, bound)
    groups = _group_by(words, lambda w: _p_of(alphabet, w))
    for _, members in sorted(groups.items()):
        for s in members:
            for sp in members:
                for e in events:
                    if not _q_extends(gl, _q_of(alphabet, s) + (e,)):
                        continue
                    if not _q_extends(gl, _q_of(alphabet, sp) + (e,)):
                        continue
                    if not _loc_continuations_meet(gl, s, sp, e):
                        return OracleReport("loc", bound, False,
                                            {"s": s, "s_prime": sp, "e": (e,)})
    return OracleReport("loc", bound, True)


def oracle_observer(g: Automaton, bound: int) -> OracleReport:
    gl = _gen_rec(g)
    alphabet = gl.alphabet
    hi = sorted(alphabet.highlevel, key=alphabet.names.index)

    def hi_continuations(states, limit):
        """Bounded t with ∃u: (from states) u realizes t high-level."""
        out = []
        frontier = [((), frozenset(states))]
        for _ in range(limit + 1):
            nxt = []
            for t, cur in frontier:
                out.append(t)
                closure = _low_closure(gl, cur)
                for e in hi:
                    step = gl.step(closure, e)
                    if step:
                        nxt.append((t + (e,), step))
            frontier = nxt
            if not frontier:
                break
        return out

    for s in _bounded_words(gl, bound):
        realizable = set(hi_continuations(gl.run(s), bound))
        qs = _q_of(alphabet, s)
        # every t with Q(s)t ∈ Q(L) must be realizable from s itself
        for t in _abstract_continuations(gl, qs, bound):
            if t not in realizable:
                return OracleReport("observer", bound, False,
                                    {"s": s, "t": t})
    return OracleReport("observer", bound, True)


def _low_closure(gl: Automaton, states) -> frozenset:
    seen = set(states)
    stack = list(states)
    low = gl.alphabet.lowlevel
    while stack:
        q = stack.pop()
        for e, targets in gl.succ[q].items():
            if e in low:
                for t in targets:
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)
    return frozenset(seen)


def _abstract_continuations(gl: Automaton, qs: Word, bound: int) -> list:
    """Bounded t with qs·t ∈ Q(L)."""
    alphabet = gl.alphabet
    hi = alphabet.highlevel
    # states reachable by any w with Q(w) = qs
    cur = set()
    frontier = {(q, 0) for q in gl.initial}
    seen = set(frontier)
    while frontier:
        nxt = set()
        for q, i in frontier:
            if i == len(qs):
                cur.add(q)
            for e in alphabet.names:
                ni = _advance(qs, i, e, hi)
                if ni is None:
                    continue
                for qn in gl.succ[q].get(e, ()):
                    if (qn, ni) not in seen:
                        seen.add((qn, ni))
                        nxt.add((qn, ni))
        frontier = nxt
    out = []
    level = [((), frozenset(cur))]
    his = sorted(hi, key=alphabet.names.index)
    for _ in range(bound + 1):
        nxt = []
        for t, states in level:
            if states:
                out.append(t)
            closure = _low_closure(gl, states)
            for e in his:
                step = gl.step(closure, e)
                if step:
                    nxt.append((t + (e,), step))
        level = nxt
        if not level:
            break
    return out


def oracle_lcc(g: Automaton, bound: int) -> OracleReport:
    gl = _gen_rec(g)
    alphabet = gl.alphabet
    events = sorted(alphabet.highlevel & alphabet.uncontrollable,
                    key=alphabet.names.index)
    low = alphabet.lowlevel
    low_unc = low & alphabet.uncontrollable

    def reach(states, allowed):
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for a, targets in gl.succ[q].items():
                if a in allowed:
                    for t in targets:
                        if t not in seen:
                            seen.add(t)
                            stack.append(t)
        return seen

    for s in _bounded_words(gl, bound):
        reached = gl.run(s)
        for e in events:
            if not _q_extends(gl, _q_of(alphabet, s) + (e,)):
                continue
            via_any = any(gl.succ[q].get(e) for q in reach(reached, low))
            via_unc = any(gl.succ[q].get(e) for q in reach(reached, low_unc))
            if via_any and not via_unc:
                return OracleReport("lcc", bound, False, {"s": s, "e": (e,)})
    return OracleReport("lcc", bound, True)


# ---------------------------------------------------------------------------
# bounded supremal synthesis

def oracle_sup_normal(b: Automaton, m: Automaton, bound: int) -> list:
    """Bounded words of supN(B, M) = B − P⁻¹[P(M−B)]Σ* for closed B ⊆ M."""
    bc = _closure_rec(b)
    mc = _closure_rec(m)
    obs = b.alphabet.observable
    bad = {_proj(b.alphabet, w, obs) for w in _bounded_words(mc, bound)
           if not _in_gen(bc, w)}
    out = []
    for w in _bounded_words(bc, bound):
        prefixes = [w[:i] for i in range(len(w) + 1)]
        if all(_proj(b.alphabet, x, obs) not in bad for x in prefixes):
            out.append(w)
    return sorted(out, key=lambda w: (len(w), w))


def oracle_sup_relobs(k: Automaton, c: Automaton, g: Automaton,
                      bound: int) -> list:
    """Bounded greatest fixpoint for the supremal C-observable sublanguage.

    Exact on instances whose languages the bound exhausts (acyclic test
    plants); prefix closure is maintained by removing extensions together
    with a removed word.
    """
    kc = _closure_rec(k)
    cc = _closure_rec(c)
    gl = _gen_rec(g)
    alphabet = g.alphabet
    obs = alphabet.observable
    live = set(_bounded_words(kc, bound + 1))
    # mates are capped one step short so their extension stays inside the
    # enumerated universe; otherwise the cutoff itself would doom words
    cwords = [w for w in _bounded_words(cc, bound + 1) if len(w) <= bound]
    changed = True
    while changed:
        changed = False
        doomed = set()
        for se in live:
            if not se:
                continue
            s, e = se[:-1], se[-1]
            for sp in cwords:
                if _proj(alphabet, sp, obs) != _proj(alphabet, s, obs):
                    continue
                spe = sp + (e,)
                if _in_gen(gl, spe) and spe not in live:
                    doomed.add(se)
                    break
        if doomed:
            changed = True
            live = {w for w in live
                    if not any(w[:i] in doomed for i in range(1, len(w) + 1))}
    return sorted((w for w in live if len(w) <= bound),
                  key=lambda w: (len(w), w))


PROPERTY_ORACLES = {
    "controllability": oracle_controllability,
    "observability": oracle_observability,
    "relobs": oracle_relative_observability,
    "normality": oracle_normality,
    "nonconflicting": oracle_nonconflicting,
    "oc": oracle_oc,
    "moc": oracle_moc,
    "loc": oracle_loc,
    "observer": oracle_observer,
    "lcc": oracle_lcc,
}
