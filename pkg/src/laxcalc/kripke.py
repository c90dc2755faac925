"""Finite possible-world models for the propositional lax logics SL, RL, JL, LL.

A frame is a finite set of worlds with a preorder ``ri`` (intuitionistic
accessibility) and a relation ``rm`` (modal accessibility).  All four
classes ask for inclusion (rm within ri) and forward confluence; RL adds a
reflexive ``rm``, JL a transitive one, LL both.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Union


# ----------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "T"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} -> {self.right})"


@dataclass(frozen=True)
class Diamond:
    body: "Formula"

    def __str__(self) -> str:
        return f"<>{self.body}"


@dataclass(frozen=True)
class Circ:
    """Lax modality read globally: every future world has a modal successor."""
    body: "Formula"

    def __str__(self) -> str:
        return f"O {self.body}"


@dataclass(frozen=True)
class Box:
    body: "Formula"

    def __str__(self) -> str:
        return f"[]{self.body}"


Formula = Union[Atom, Top, And, Imp, Diamond, Circ, Box]


def formula_depth(a: Formula) -> int:
    match a:
        case Atom() | Top():
            return 0
        case And(l, r) | Imp(l, r):
            return 1 + max(formula_depth(l), formula_depth(r))
        case Diamond(b) | Circ(b) | Box(b):
            return 1 + formula_depth(b)
    raise TypeError(f"not a formula: {a!r}")


def atoms_of(a: Formula) -> set:
    match a:
        case Atom(name):
            return {name}
        case Top():
            return set()
        case And(l, r) | Imp(l, r):
            return atoms_of(l) | atoms_of(r)
        case Diamond(b) | Circ(b) | Box(b):
            return atoms_of(b)
    raise TypeError(f"not a formula: {a!r}")


def axiom_s(a: Formula, b: Formula) -> Formula:
    return Imp(And(a, Diamond(b)), Diamond(And(a, b)))


def axiom_r(a: Formula) -> Formula:
    return Imp(a, Diamond(a))


def axiom_j(a: Formula) -> Formula:
    return Imp(Diamond(Diamond(a)), Diamond(a))


# ------------------------------------------------------------------- frames

class FrameClass(enum.Enum):
    SL = "sl"
    RL = "rl"
    JL = "jl"
    LL = "ll"

    @property
    def needs_reflexive(self) -> bool:
        return self in (FrameClass.RL, FrameClass.LL)

    @property
    def needs_transitive(self) -> bool:
        return self in (FrameClass.JL, FrameClass.LL)


@dataclass(frozen=True)
class FiniteFrame:
    worlds: tuple
    ri: frozenset
    rm: frozenset

    def ri_succ(self, w) -> list:
        return [v for v in self.worlds if (w, v) in self.ri]

    def rm_succ(self, w) -> list:
        return [v for v in self.worlds if (w, v) in self.rm]


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.condition} at {self.witness}"


@dataclass
class Report:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "Ok" if self.ok else "\n".join(map(str, self.violations))


def check_frame(frame: FiniteFrame, cls: FrameClass = FrameClass.SL) -> Report:
    """Every violated frame condition, each with a witnessing tuple."""
    ws, ri, rm = frame.worlds, frame.ri, frame.rm
    out = []
    for w in ws:
        if (w, w) not in ri:
            out.append(Violation("Ri-reflexivity", (w,)))
    for (u, v), (v2, w) in itertools.product(sorted(ri), sorted(ri)):
        if v == v2 and (u, w) not in ri:
            out.append(Violation("Ri-transitivity", (u, v, w)))
    for pair in sorted(rm):
        if pair not in ri:
            out.append(Violation("Inclusion", pair))
    for (w, w2) in sorted(ri):
        for v in frame.rm_succ(w):
            if not any((w2, v2) in rm and (v, v2) in ri for v2 in ws):
                out.append(Violation("Forward confluence", (w, w2, v)))
    if cls.needs_reflexive:
        for w in ws:
            if (w, w) not in rm:
                out.append(Violation("Rm-reflexivity", (w,)))
    if cls.needs_transitive:
        for (u, v), (v2, w) in itertools.product(sorted(rm), sorted(rm)):
            if v == v2 and (u, w) not in rm:
                out.append(Violation("Rm-transitivity", (u, v, w)))
    return Report(out)


# ------------------------------------------------------------------- models

class UnknownAtom(Exception):
    pass


class BoundExceeded(Exception):
    pass


@dataclass(frozen=True)
class FiniteModel:
    frame: FiniteFrame
    valuation: dict = field(hash=False)

    def is_hereditary(self) -> bool:
        return all(v in ws for ws in self.valuation.values()
                   for (w, v) in self.frame.ri if w in ws)


def satisfies(model: FiniteModel, w, a: Formula) -> bool:
    """Truth of ``a`` at world ``w``, by quantifying over the finite frame."""
    f = model.frame
    match a:
        case Atom(name):
            if name not in model.valuation:
                raise UnknownAtom(name)
            return w in model.valuation[name]
        case Top():
            return True
        case And(l, r):
            return satisfies(model, w, l) and satisfies(model, w, r)
        case Imp(l, r):
            return all(not satisfies(model, w2, l) or satisfies(model, w2, r)
                       for w2 in f.ri_succ(w))
        case Diamond(b):
            return any(satisfies(model, v, b) for v in f.rm_succ(w))
        case Circ(b):
            return all(any(satisfies(model, v, b) for v in f.rm_succ(w2))
                       for w2 in f.ri_succ(w))
        case Box(b):
            return all(satisfies(model, v, b)
                       for w2 in f.ri_succ(w) for v in f.rm_succ(w2))
    raise TypeError(f"not a formula: {a!r}")


def valid_in_model(model: FiniteModel, a: Formula) -> bool:
    return all(satisfies(model, w, a) for w in model.frame.worlds)


class TruthSets:
    """Truth sets of formulas in one model, computed bottom-up and cached.

    Agrees with ``satisfies`` world by world; exists because the exhaustive
    suites evaluate many formulas that share subformulas.
    """

    def __init__(self, model: FiniteModel):
        self.model = model
        f = model.frame
        self.worlds = frozenset(f.worlds)
        self.up = {w: frozenset(f.ri_succ(w)) for w in f.worlds}
        self.mod = {w: frozenset(f.rm_succ(w)) for w in f.worlds}
        self.cache: dict = {}

    def __call__(self, a: Formula) -> frozenset:
        hit = self.cache.get(a)
        if hit is not None:
            return hit
        ws = self.worlds
        match a:
            case Atom(name):
                if name not in self.model.valuation:
                    raise UnknownAtom(name)
                out = frozenset(self.model.valuation[name])
            case Top():
                out = ws
            case And(l, r):
                out = self(l) & self(r)
            case Imp(l, r):
                bad = self(l) - self(r)
                out = frozenset(w for w in ws if not (self.up[w] & bad))
            case Diamond(b):
                sb = self(b)
                out = frozenset(w for w in ws if self.mod[w] & sb)
            case Circ(b):
                sb = self(b)
                reach = frozenset(w for w in ws if self.mod[w] & sb)
                out = frozenset(w for w in ws if self.up[w] <= reach)
            case Box(b):
                sb = self(b)
                out = frozenset(w for w in ws
                                if all(self.mod[w2] <= sb for w2 in self.up[w]))
            case _:
                raise TypeError(f"not a formula: {a!r}")
        self.cache[a] = out
        return out


# -------------------------------------------------------------- enumeration

MAX_WORLDS = 4


def _preorders(n: int) -> Iterator[frozenset]:
    ws = range(n)
    off = [(a, b) for a in ws for b in ws if a != b]
    refl = frozenset((w, w) for w in ws)
    for bits in range(1 << len(off)):
        rel = refl | {off[k] for k in range(len(off)) if bits >> k & 1}
        if all((a, c) in rel for (a, b) in rel for (b2, c) in rel if b == b2):
            yield frozenset(rel)


def enumerate_frames(max_worlds: int, cls: FrameClass = FrameClass.SL) -> Iterator[FiniteFrame]:
    """All frames of the class over worlds 0..n-1, for 1 <= n <= max_worlds."""
    if max_worlds > MAX_WORLDS:
        raise BoundExceeded(f"at most {MAX_WORLDS} worlds are supported, got {max_worlds}")
    for n in range(1, max_worlds + 1):
        worlds = tuple(range(n))
        for ri in _preorders(n):
            pairs = sorted(ri)
            for bits in range(1 << len(pairs)):
                rm = frozenset(pairs[k] for k in range(len(pairs)) if bits >> k & 1)
                frame = FiniteFrame(worlds, ri, rm)
                if check_frame(frame, cls).ok:
                    yield frame


def up_sets(frame: FiniteFrame) -> list:
    """Every subset of worlds closed upwards under ``ri``."""
    out = []
    ws = frame.worlds
    for bits in range(1 << len(ws)):
        s = frozenset(w for k, w in enumerate(ws) if bits >> k & 1)
        if all(v in s for (w, v) in frame.ri if w in s):
            out.append(s)
    return out


def enumerate_models(max_worlds: int, cls: FrameClass = FrameClass.SL,
                     atoms: tuple = ("p", "q")) -> Iterator[FiniteModel]:
    for frame in enumerate_frames(max_worlds, cls):
        ups = up_sets(frame)
        for choice in itertools.product(ups, repeat=len(atoms)):
            yield FiniteModel(frame, dict(zip(atoms, choice)))


def definable_formulas(model: FiniteModel, depth: int, atoms: tuple = ("p", "q"),
                       modalities: tuple = (Diamond,)) -> list:
    """One representative formula per truth set reachable within ``depth``.

    Truth is compositional, so two formulas with the same truth set are
    interchangeable inside any larger formula.  Keeping one representative
    per truth set at each level therefore covers every formula up to
    ``depth`` while staying small.
    """
    ts = TruthSets(model)
    reps: dict = {}
    for a in [Top(), *map(Atom, atoms)]:
        reps.setdefault(ts(a), a)
    for _ in range(depth):
        cur = list(reps.values())
        new = dict(reps)
        for a in cur:
            for m in modalities:
                new.setdefault(ts(m(a)), m(a))
            for b in cur:
                new.setdefault(ts(And(a, b)), And(a, b))
                new.setdefault(ts(Imp(a, b)), Imp(a, b))
        reps = new
    return list(reps.values())


# ----------------------------------------------------------- text format

class FrameSyntaxError(Exception):
    def __init__(self, line: int, msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}")


def parse_model(text: str) -> FiniteModel:
    """Read a model from the line-based frame format.

    ::

        worlds: w v u        # optional; otherwise collected from the pairs
        Ri w v               # one pair per line; reflexive pairs are implied
        Rm w v
        V p: w v             # valuation of atom p

    Reflexivity of ``Ri`` is added automatically, transitivity is not.
    """
    worlds: list = []
    ri, rm, val = set(), set(), {}

    def note(w):
        if w not in worlds:
            worlds.append(w)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head.rstrip(":").lower() == "worlds":
            for w in rest.split():
                note(w)
        elif head in ("Ri", "Rm"):
            parts = rest.split()
            if len(parts) != 2:
                raise FrameSyntaxError(lineno, f"{head} expects two worlds")
            for w in parts:
                note(w)
            (ri if head == "Ri" else rm).add(tuple(parts))
        elif head == "V":
            name, sep, ws = rest.partition(":")
            if not sep or not name.strip():
                raise FrameSyntaxError(lineno, "expected 'V atom: worlds...'")
            for w in ws.split():
                note(w)
            val[name.strip()] = frozenset(ws.split())
        else:
            raise FrameSyntaxError(lineno, f"unknown directive {head!r}")
    ri |= {(w, w) for w in worlds}
    return FiniteModel(FiniteFrame(tuple(worlds), frozenset(ri), frozenset(rm)), val)


def parse_formula(text: str) -> Formula:
    """Formulas: atoms, ``T``, ``&``, ``->``, ``<>``, ``O``, ``[]``, parentheses.

    ``<>``/``O``/``[]`` bind tightest, then ``&``, then ``->``; both binary
    connectives associate to the right.
    """
    toks = _ftokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def eat(tok=None):
        nonlocal pos
        t = peek()
        if t is None or (tok is not None and t != tok):
            raise ValueError(f"formula: expected {tok or 'more input'} at token {pos}, found {t!r}")
        pos += 1
        return t

    def imp():
        left = conj()
        if peek() == "->":
            eat()
            return Imp(left, imp())
        return left

    def conj():
        left = unary()
        if peek() == "&":
            eat()
            return And(left, conj())
        return left

    def unary():
        t = peek()
        if t == "<>":
            eat()
            return Diamond(unary())
        if t == "O":
            eat()
            return Circ(unary())
        if t == "[]":
            eat()
            return Box(unary())
        if t == "(":
            eat()
            inner = imp()
            eat(")")
            return inner
        if t == "T":
            eat()
            return Top()
        if t is not None and t.isidentifier():
            eat()
            return Atom(t)
        raise ValueError(f"formula: unexpected {t!r}")

    out = imp()
    if pos != len(toks):
        raise ValueError(f"formula: trailing input {toks[pos]!r}")
    return out


_FTOKEN = re.compile(r"\s*(<>|\[\]|->|[()&]|[A-Za-z_][A-Za-z0-9_']*)")


def _ftokens(text: str) -> list:
    out, pos = [], 0
    while text[pos:].strip():
        m = _FTOKEN.match(text, pos)
        if not m:
            raise ValueError(f"formula: unexpected character {text[pos:].lstrip()[0]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out
