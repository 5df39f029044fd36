"""De Bruijn lambda terms, beta/eta steps, redex discovery, and a fuel-bounded normalizer.

Terms are open (free indices are permitted).  A reduction step is addressed by
a path of child selectors and carries an orientation; inverse beta steps carry
the full redex term so that replay is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Union


class NegativeIndex(ValueError):
    """Shifting would push a free index below zero."""


class InvalidStep(ValueError):
    """The step's pattern does not match the addressed subterm."""


class EtaFreeVarViolation(InvalidStep):
    """Var 0 occurs free in the body of an attempted eta contraction."""


class FuelExhausted(Exception):
    """Normalization ran out of fuel; carries the partially reduced term."""

    def __init__(self, term: "Term", trace: tuple["RedStep", ...]):
        super().__init__(f"fuel exhausted after {len(trace)} steps")
        self.term = term
        self.trace = trace


@dataclass(frozen=True, slots=True)
class Var:
    index: int


@dataclass(frozen=True, slots=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Lam:
    body: "Term"


Term = Union[Var, App, Lam]


class StepKind(Enum):
    BETA = "beta"
    ETA = "eta"


class Dir(Enum):
    """Child selectors for redex paths."""

    FUN = "f"
    ARG = "a"
    BODY = "l"


Path = tuple[Dir, ...]


@dataclass(frozen=True, slots=True)
class RedStep:
    kind: StepKind
    path: Path = ()
    forward: bool = True
    # Expansion data for inverse beta steps: the full redex App(Lam(b), a).
    # Forward steps and eta steps carry None (eta expansion is canonical).
    redex: Optional[Term] = None


def term_size(t: Term) -> int:
    n = 0
    stack = [t]
    while stack:
        node = stack.pop()
        n += 1
        if isinstance(node, App):
            stack.append(node.fun)
            stack.append(node.arg)
        elif isinstance(node, Lam):
            stack.append(node.body)
    return n


def free_in(t: Term, index: int) -> bool:
    """True iff Var `index` (relative to the root of t) occurs free in t."""
    stack = [(t, index)]
    while stack:
        node, k = stack.pop()
        if isinstance(node, Var):
            if node.index == k:
                return True
        elif isinstance(node, App):
            stack.append((node.fun, k))
            stack.append((node.arg, k))
        else:
            stack.append((node.body, k + 1))
    return False


# The term transforms below are iterative: normalizing a non-terminating term
# can grow spines thousands of nodes deep while burning fuel, which would
# overflow the interpreter stack if written recursively.

_POP_APP = object()
_POP_LAM = object()


def shift(d: int, cutoff: int, t: Term) -> Term:
    """Add d to every free index >= cutoff."""
    work: list = [(t, cutoff)]
    out: list[Term] = []
    while work:
        item = work.pop()
        if item is _POP_APP:
            arg = out.pop()
            fun = out.pop()
            out.append(App(fun, arg))
        elif item is _POP_LAM:
            out.append(Lam(out.pop()))
        else:
            node, c = item
            if isinstance(node, Var):
                if node.index >= c:
                    if node.index + d < 0:
                        raise NegativeIndex(f"shift({d}) drops index {node.index} below zero")
                    out.append(Var(node.index + d))
                else:
                    out.append(node)
            elif isinstance(node, App):
                work.append(_POP_APP)
                work.append((node.arg, c))
                work.append((node.fun, c))
            else:
                work.append(_POP_LAM)
                work.append((node.body, c + 1))
    return out[0]


def subst(m: Term, n: Term) -> Term:
    """Capture-free M[N]: replace index 0 in M by N, decrementing higher frees."""
    work: list = [(m, 0)]
    out: list[Term] = []
    while work:
        item = work.pop()
        if item is _POP_APP:
            arg = out.pop()
            fun = out.pop()
            out.append(App(fun, arg))
        elif item is _POP_LAM:
            out.append(Lam(out.pop()))
        else:
            node, j = item
            if isinstance(node, Var):
                if node.index == j:
                    out.append(shift(j, 0, n))
                elif node.index > j:
                    out.append(Var(node.index - 1))
                else:
                    out.append(node)
            elif isinstance(node, App):
                work.append(_POP_APP)
                work.append((node.arg, j))
                work.append((node.fun, j))
            else:
                work.append(_POP_LAM)
                work.append((node.body, j + 1))
    return out[0]


def subterm(t: Term, path: Path) -> Term:
    node = t
    for d in path:
        if d is Dir.FUN and isinstance(node, App):
            node = node.fun
        elif d is Dir.ARG and isinstance(node, App):
            node = node.arg
        elif d is Dir.BODY and isinstance(node, Lam):
            node = node.body
        else:
            raise InvalidStep(f"path {render_path(path)} does not address a subterm")
    return node


def replace(t: Term, path: Path, new: Term) -> Term:
    spine: list[tuple[Term, Dir]] = []
    node = t
    for d in path:
        if d is Dir.FUN and isinstance(node, App):
            spine.append((node, d))
            node = node.fun
        elif d is Dir.ARG and isinstance(node, App):
            spine.append((node, d))
            node = node.arg
        elif d is Dir.BODY and isinstance(node, Lam):
            spine.append((node, d))
            node = node.body
        else:
            raise InvalidStep(f"path {render_path(path)} does not address a subterm")
    result = new
    for parent, d in reversed(spine):
        if d is Dir.FUN:
            result = App(result, parent.arg)
        elif d is Dir.ARG:
            result = App(parent.fun, result)
        else:
            result = Lam(result)
    return result


def render_path(path: Path) -> str:
    return "root" if not path else "".join(d.value for d in path)


def _beta_contract(node: Term) -> Term:
    if not (isinstance(node, App) and isinstance(node.fun, Lam)):
        raise InvalidStep("beta redex pattern (lam M) N does not match")
    return subst(node.fun.body, node.arg)


def _eta_contract(node: Term) -> Term:
    if not (isinstance(node, Lam) and isinstance(node.body, App)
            and node.body.arg == Var(0)):
        raise InvalidStep("eta redex pattern lam (M #0) does not match")
    if free_in(node.body.fun, 0):
        raise EtaFreeVarViolation("#0 occurs free in the eta body")
    return shift(-1, 0, node.body.fun)


def apply_step(t: Term, s: RedStep) -> Term:
    """Apply one oriented step to t, or raise InvalidStep."""
    node = subterm(t, s.path)
    if s.forward:
        if s.kind is StepKind.BETA:
            new = _beta_contract(node)
        else:
            new = _eta_contract(node)
    else:
        if s.kind is StepKind.BETA:
            if s.redex is None:
                raise InvalidStep("inverse beta step lacks its redex data")
            if _beta_contract(s.redex) != node:
                raise InvalidStep("inverse beta data does not contract to the subterm")
            new = s.redex
        else:
            # Eta expansion is canonical: node -> lam ((shift 1 node) #0).
            new = Lam(App(shift(1, 0, node), Var(0)))
    return replace(t, s.path, new)


def invert_step(s: RedStep, source: Term) -> RedStep:
    """The step undoing s, where s is valid on `source`."""
    if s.forward:
        if s.kind is StepKind.BETA:
            return RedStep(StepKind.BETA, s.path, False, subterm(source, s.path))
        return RedStep(StepKind.ETA, s.path, False)
    return RedStep(s.kind, s.path, True)


def _redex_at(node: Term, path: Path) -> Optional[RedStep]:
    if isinstance(node, App) and isinstance(node.fun, Lam):
        return RedStep(StepKind.BETA, path)
    if (isinstance(node, Lam) and isinstance(node.body, App)
            and node.body.arg == Var(0) and not free_in(node.body.fun, 0)):
        return RedStep(StepKind.ETA, path)
    return None


def _preorder(t: Term) -> Iterator[tuple[Term, Path]]:
    stack: list[tuple[Term, Path]] = [(t, ())]
    while stack:
        node, path = stack.pop()
        yield node, path
        if isinstance(node, App):
            stack.append((node.arg, path + (Dir.ARG,)))
            stack.append((node.fun, path + (Dir.FUN,)))
        elif isinstance(node, Lam):
            stack.append((node.body, path + (Dir.BODY,)))


def find_redexes(t: Term) -> list[RedStep]:
    """All forward steps on t in leftmost-outermost path order."""
    return [s for node, path in _preorder(t)
            if (s := _redex_at(node, path)) is not None]


def first_redex(t: Term) -> Optional[RedStep]:
    for node, path in _preorder(t):
        s = _redex_at(node, path)
        if s is not None:
            return s
    return None


def normalize(t: Term, fuel: int) -> tuple[Term, tuple[RedStep, ...]]:
    """Leftmost-outermost reduction to beta/eta normal form.

    Returns the normal form and the replayable trace, or raises FuelExhausted
    (carrying the partially reduced term) when fuel runs out first.
    """
    trace: list[RedStep] = []
    current = t
    while True:
        s = first_redex(current)
        if s is None:
            return current, tuple(trace)
        if fuel <= 0:
            raise FuelExhausted(current, tuple(trace))
        fuel -= 1
        current = apply_step(current, s)
        trace.append(s)


def to_text(t: Term) -> str:
    """Raw de Bruijn syntax: #n, juxtaposition, and `\\ . e` binders."""
    if isinstance(t, Var):
        return f"#{t.index}"
    if isinstance(t, Lam):
        return f"\\ . {to_text(t.body)}"
    fun, arg = t.fun, t.arg
    fs = to_text(fun)
    if isinstance(fun, Lam):
        fs = f"({fs})"
    as_ = to_text(arg)
    if isinstance(arg, (Lam, App)):
        as_ = f"({as_})"
    return f"{fs} {as_}"
