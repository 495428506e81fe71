"""Result type, errors and the trace bookkeeping shared by the solvers."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..fusion import FusionEvent
from ..model import Instance
from ..preprocess import PreprocessTrace, SingletonElim, preprocess_to_convergence


class StructureViolation(RuntimeError):
    """A structural property the class guarantees does not hold; the input
    was not actually free of the class pattern."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


class PatternPresent(ValueError):
    """The instance contains the pattern its solver relies on forbidding."""


@dataclass(frozen=True)
class PointRemoval:
    """A point dropped because some other point can always replace it."""
    point: str
    gadget: str


@dataclass(frozen=True)
class Committed:
    """Values fixed directly by a solver (propagation or search)."""
    assignment: tuple


@dataclass
class SolveResult:
    sat: bool
    assignment: dict | None = None
    trace: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "Sat" if self.sat else "Unsat"

    def __repr__(self):
        return f"SolveResult({self.verdict}, {len(self.trace)} events)"


def lift(events, assignment: dict) -> dict:
    """Turn a solution of the final instance into one of the original by
    undoing the recorded steps in reverse order."""
    out = dict(assignment)
    for e in reversed(events):
        if isinstance(e, SingletonElim):
            out[e.variable] = e.point
        elif isinstance(e, FusionEvent):
            out = e.expand(out)
        elif isinstance(e, Committed):
            out.update(e.assignment)
    return out


class Run:
    """Mutable solver state: the current instance and the events so far."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.events: list = []
        self.unsat = False

    def preprocess(self) -> bool:
        """Preprocess to convergence; ``False`` if a domain wiped out."""
        self.instance, tr = preprocess_to_convergence(self.instance)
        self.events.extend(tr.events)
        self.unsat = tr.unsat
        return not tr.unsat

    def remove_point(self, p: str, gadget: str):
        self.instance = self.instance.restrict(drop=[p])
        self.events.append(PointRemoval(p, gadget))

    def unsat_result(self) -> SolveResult:
        return SolveResult(False, None, self.events)

    def sat_result(self, assignment: dict) -> SolveResult:
        return SolveResult(True, lift(self.events, assignment), self.events)


def first_values(instance: Instance) -> dict:
    return {v: instance.domains[v][0] for v in instance.variables}


def components(instance: Instance) -> list:
    """Variable sets of the connected components of the constraint graph,
    in declaration order."""
    from ..model import neighbours
    adj = neighbours(instance)
    seen, out = set(), []
    for v in instance.variables:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        order = {x: i for i, x in enumerate(instance.variables)}
        out.append(sorted(comp, key=order.__getitem__))
    return out


__all__ = ["StructureViolation", "PatternPresent", "PointRemoval", "Committed",
           "SolveResult", "lift", "Run", "first_values", "components", "PreprocessTrace"]
