"""The `.saut` line-oriented automaton format.

Grammar (sections in this fixed order, lines starting with '#' are comments):

    event <name> <c|u> <o|x> <hi|lo>
    state <name>
    initial <name>
    marked <name>
    trans <src> <event> <dst>

'@' and '#' are reserved event names injected by the hardness-gadget
builders; user files may not declare them unless `allow_reserved` is set
(the CLI sets it so gadget output files can be fed back in).
"""

from __future__ import annotations

from .automata import Alphabet, AutomataError, Automaton, Event

_SECTIONS = ("event", "state", "initial", "marked", "trans")
RESERVED_EVENTS = ("@", "#")


class SautParseError(AutomataError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_automaton(text: str, *, allow_reserved: bool = False) -> Automaton:
    events: list[Event] = []
    event_names: set = set()
    states: list[str] = []
    state_names: set = set()
    initial: set = set()
    marked: set = set()
    trans: set = set()
    section = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kw = parts[0]
        if kw not in _SECTIONS:
            raise SautParseError(lineno, f"unknown keyword {kw!r}")
        want = _SECTIONS.index(kw)
        if want < section:
            raise SautParseError(lineno, f"{kw!r} section out of order")
        section = want

        if kw == "event":
            if len(parts) != 5:
                raise SautParseError(lineno, "expected: event <name> <c|u> <o|x> <hi|lo>")
            name, cflag, oflag, hflag = parts[1:]
            if name in event_names:
                raise SautParseError(lineno, f"duplicate event {name!r}")
            if name in RESERVED_EVENTS and not allow_reserved:
                raise SautParseError(lineno, f"event name {name!r} is reserved for gadgets")
            if cflag not in ("c", "u") or oflag not in ("o", "x") or hflag not in ("hi", "lo"):
                raise SautParseError(lineno, f"bad flags for event {name!r}")
            events.append(Event(name, cflag == "c", oflag == "o", hflag == "hi"))
            event_names.add(name)
        elif kw == "state":
            if len(parts) != 2:
                raise SautParseError(lineno, "expected: state <name>")
            if parts[1] in state_names:
                raise SautParseError(lineno, f"duplicate state {parts[1]!r}")
            states.append(parts[1])
            state_names.add(parts[1])
        elif kw in ("initial", "marked"):
            if len(parts) != 2:
                raise SautParseError(lineno, f"expected: {kw} <name>")
            if parts[1] not in state_names:
                raise SautParseError(lineno, f"unknown state {parts[1]!r}")
            (initial if kw == "initial" else marked).add(parts[1])
        else:
            if len(parts) != 4:
                raise SautParseError(lineno, "expected: trans <src> <event> <dst>")
            src, ev, dst = parts[1:]
            if src not in state_names:
                raise SautParseError(lineno, f"unknown state {src!r}")
            if dst not in state_names:
                raise SautParseError(lineno, f"unknown state {dst!r}")
            if ev not in event_names:
                raise SautParseError(lineno, f"unknown event {ev!r}")
            trans.add((src, ev, dst))

    return Automaton(Alphabet(tuple(events)), tuple(states), frozenset(trans),
                     frozenset(initial), frozenset(marked))


def serialize_automaton(a: Automaton) -> str:
    """Canonical text form; two serializations of equal automata are identical."""
    if a.has_silent:
        raise AutomataError("silent transitions are internal-only and cannot be serialized")
    lines = []
    for e in a.alphabet.events:
        lines.append("event {} {} {} {}".format(
            e.name, "c" if e.controllable else "u",
            "o" if e.observable else "x", "hi" if e.highlevel else "lo"))
    for s in a.states:
        lines.append(f"state {s}")
    for s in a.sorted_states(a.initial):
        lines.append(f"initial {s}")
    for s in a.sorted_states(a.marked):
        lines.append(f"marked {s}")
    eidx = {e: i for i, e in enumerate(a.alphabet.names)}
    for (src, ev, dst) in sorted(
            a.transitions,
            key=lambda t: (a.state_index[t[0]], eidx[t[1]], a.state_index[t[2]])):
        lines.append(f"trans {src} {ev} {dst}")
    return "\n".join(lines) + "\n"
