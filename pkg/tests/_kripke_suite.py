"""Exhaustive checks over all small hereditary models of each frame class."""

from __future__ import annotations

from laxcalc.kripke import (
    Atom, Box, Circ, Diamond, FrameClass, TruthSets, axiom_j, axiom_r,
    axiom_s, definable_formulas, enumerate_models, satisfies,
)

AXIOMS = {
    "S": (lambda reps: [axiom_s(a, b) for a in reps for b in reps]),
    "R": (lambda reps: [axiom_r(a) for a in reps]),
    "J": (lambda reps: [axiom_j(a) for a in reps]),
}

# which classes force each axiom
FORCED = {
    "S": set(FrameClass),
    "R": {FrameClass.RL, FrameClass.LL},
    "J": {FrameClass.JL, FrameClass.LL},
}


def run(max_worlds: int = 3, depth: int = 3, atoms=("p", "q")) -> dict:
    """Per class: model count, failures, and the first countermodel per axiom."""
    out = {}
    for cls in FrameClass:
        failures, counter, models = [], {}, 0
        for model in enumerate_models(max_worlds, cls, atoms):
            models += 1
            ts = TruthSets(model)
            ws = ts.worlds
            reps = definable_formulas(model, depth, atoms)
            for a in reps:
                s = ts(a)
                # monotonicity: truth sets are up-closed, and agree with the direct clauses
                if any(not ts.up[w] <= s for w in s):
                    failures.append(("monotonicity", cls, model, a))
                if {w for w in ws if satisfies(model, w, a)} != s:
                    failures.append(("evaluator agreement", cls, model, a))
                if ts(Diamond(a)) != ts(Circ(a)):
                    failures.append(("diamond/circle agreement", cls, model, a))
                if cls is FrameClass.LL and ts(Box(a)) != s:
                    failures.append(("box triviality", cls, model, a))
            for name, inst in AXIOMS.items():
                valid = all(ts(f) == ws for f in inst(reps))
                if cls in FORCED[name] and not valid:
                    failures.append((f"axiom {name}", cls, model, None))
                if not valid and name not in counter:
                    counter[name] = model
        out[cls] = {"models": models, "failures": failures, "countermodels": counter}
    return out
