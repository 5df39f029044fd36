"""The explicit low-dimensional conversion tower.

1-cells are reduction sequences with cached intermediate terms, 2-cells and
3-cells are inductive trees of structural constructors.  Boundaries are
computed structurally per constructor; since step lists concatenate strictly,
associator and unitor cells have definitionally equal endpoints but are kept
as distinct proof-relevant cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .terms import (Dir, RedStep, Term, App, Lam, apply_step, invert_step)


class IllFormed(ValueError):
    """A cell constructor's side conditions fail."""


class EndpointMismatch(IllFormed):
    """Cells or sequences do not share the endpoints composition requires."""


@dataclass(frozen=True, slots=True)
class RedSeq:
    """A zigzag of oriented steps with every intermediate term cached."""

    terms: tuple[Term, ...]
    steps: tuple[RedStep, ...]

    def __post_init__(self):
        if len(self.terms) != len(self.steps) + 1:
            raise IllFormed("cached terms must be one longer than the step list")

    @property
    def source(self) -> Term:
        return self.terms[0]

    @property
    def target(self) -> Term:
        return self.terms[-1]

    def __len__(self) -> int:
        return len(self.steps)


def empty_seq(t: Term) -> RedSeq:
    return RedSeq((t,), ())


def seq_from_steps(source: Term, steps) -> RedSeq:
    """Replay steps from source, caching intermediates; raises InvalidStep."""
    terms = [source]
    for s in steps:
        terms.append(apply_step(terms[-1], s))
    return RedSeq(tuple(terms), tuple(steps))


def validate_seq(p: RedSeq) -> bool:
    """Replaying the steps reproduces exactly the cached intermediates."""
    try:
        return seq_from_steps(p.source, p.steps) == p
    except ValueError:
        return False


def seq_compose(p: RedSeq, q: RedSeq) -> RedSeq:
    if p.target != q.source:
        raise EndpointMismatch("cannot compose: target of first != source of second")
    return RedSeq(p.terms + q.terms[1:], p.steps + q.steps)


def seq_invert(p: RedSeq) -> RedSeq:
    steps = tuple(invert_step(s, t)
                  for s, t in zip(reversed(p.steps), reversed(p.terms[:-1])))
    return RedSeq(tuple(reversed(p.terms)), steps)


# ---------------------------------------------------------------------------
# One-hole term contexts, for congruence 2-cells.

@dataclass(frozen=True, slots=True)
class Hole:
    pass


@dataclass(frozen=True, slots=True)
class CAppFun:
    ctx: "Context"
    arg: Term


@dataclass(frozen=True, slots=True)
class CAppArg:
    fun: Term
    ctx: "Context"


@dataclass(frozen=True, slots=True)
class CLam:
    ctx: "Context"


Context = Union[Hole, CAppFun, CAppArg, CLam]


def plug(ctx: Context, t: Term) -> Term:
    if isinstance(ctx, Hole):
        return t
    if isinstance(ctx, CAppFun):
        return App(plug(ctx.ctx, t), ctx.arg)
    if isinstance(ctx, CAppArg):
        return App(ctx.fun, plug(ctx.ctx, t))
    return Lam(plug(ctx.ctx, t))


def hole_path(ctx: Context) -> tuple[Dir, ...]:
    if isinstance(ctx, Hole):
        return ()
    if isinstance(ctx, CAppFun):
        return (Dir.FUN,) + hole_path(ctx.ctx)
    if isinstance(ctx, CAppArg):
        return (Dir.ARG,) + hole_path(ctx.ctx)
    return (Dir.BODY,) + hole_path(ctx.ctx)


def map_seq(ctx: Context, p: RedSeq) -> RedSeq:
    """Run a reduction sequence inside a one-hole context."""
    prefix = hole_path(ctx)
    steps = tuple(RedStep(s.kind, prefix + s.path, s.forward, s.redex)
                  for s in p.steps)
    return RedSeq(tuple(plug(ctx, t) for t in p.terms), steps)


# ---------------------------------------------------------------------------
# 2-cells.

@dataclass(frozen=True, slots=True)
class Refl:
    seq: RedSeq


@dataclass(frozen=True, slots=True)
class Symm:
    cell: "Homotopy2"


@dataclass(frozen=True, slots=True)
class Trans:
    left: "Homotopy2"
    right: "Homotopy2"


@dataclass(frozen=True, slots=True)
class WhiskerL:
    prefix: RedSeq
    cell: "Homotopy2"


@dataclass(frozen=True, slots=True)
class WhiskerR:
    cell: "Homotopy2"
    suffix: RedSeq


@dataclass(frozen=True, slots=True)
class HComp:
    left: "Homotopy2"
    right: "Homotopy2"


@dataclass(frozen=True, slots=True)
class Assoc:
    p: RedSeq
    q: RedSeq
    r: RedSeq


@dataclass(frozen=True, slots=True)
class UnitL:
    seq: RedSeq


@dataclass(frozen=True, slots=True)
class UnitR:
    seq: RedSeq


@dataclass(frozen=True, slots=True)
class StepCong:
    ctx: Context
    cell: "Homotopy2"


Homotopy2 = Union[Refl, Symm, Trans, WhiskerL, WhiskerR, HComp, Assoc,
                  UnitL, UnitR, StepCong]


def boundary2(cell: Homotopy2) -> tuple[RedSeq, RedSeq]:
    """Source and target reduction sequences of a 2-cell."""
    if isinstance(cell, Refl):
        return cell.seq, cell.seq
    if isinstance(cell, Symm):
        s, t = boundary2(cell.cell)
        return t, s
    if isinstance(cell, Trans):
        s1, t1 = boundary2(cell.left)
        s2, t2 = boundary2(cell.right)
        if t1 != s2:
            raise EndpointMismatch("Trans: middle sequences differ")
        return s1, t2
    if isinstance(cell, WhiskerL):
        s, t = boundary2(cell.cell)
        return seq_compose(cell.prefix, s), seq_compose(cell.prefix, t)
    if isinstance(cell, WhiskerR):
        s, t = boundary2(cell.cell)
        return seq_compose(s, cell.suffix), seq_compose(t, cell.suffix)
    if isinstance(cell, HComp):
        s1, t1 = boundary2(cell.left)
        s2, t2 = boundary2(cell.right)
        return seq_compose(s1, s2), seq_compose(t1, t2)
    if isinstance(cell, Assoc):
        left = seq_compose(seq_compose(cell.p, cell.q), cell.r)
        right = seq_compose(cell.p, seq_compose(cell.q, cell.r))
        return left, right
    if isinstance(cell, UnitL):
        return seq_compose(empty_seq(cell.seq.source), cell.seq), cell.seq
    if isinstance(cell, UnitR):
        return seq_compose(cell.seq, empty_seq(cell.seq.target)), cell.seq
    if isinstance(cell, StepCong):
        s, t = boundary2(cell.cell)
        return map_seq(cell.ctx, s), map_seq(cell.ctx, t)
    raise IllFormed(f"not a 2-cell: {cell!r}")


# ---------------------------------------------------------------------------
# 3-cells.

@dataclass(frozen=True, slots=True)
class Refl3:
    cell: Homotopy2


@dataclass(frozen=True, slots=True)
class Symm3:
    cell: "Homotopy3"


@dataclass(frozen=True, slots=True)
class Trans3:
    left: "Homotopy3"
    right: "Homotopy3"


@dataclass(frozen=True, slots=True)
class WhiskerL3:
    prefix: RedSeq
    cell: "Homotopy3"


@dataclass(frozen=True, slots=True)
class WhiskerR3:
    cell: "Homotopy3"
    suffix: RedSeq


@dataclass(frozen=True, slots=True)
class HComp3:
    left: "Homotopy3"
    right: "Homotopy3"


@dataclass(frozen=True, slots=True)
class Interchange:
    """Both parenthesizations of horizontally composing two vertical pairs."""

    a: Homotopy2
    b: Homotopy2
    c: Homotopy2
    d: Homotopy2


@dataclass(frozen=True, slots=True)
class Pentagon:
    p: RedSeq
    q: RedSeq
    r: RedSeq
    s: RedSeq


@dataclass(frozen=True, slots=True)
class Triangle:
    p: RedSeq
    q: RedSeq


Homotopy3 = Union[Refl3, Symm3, Trans3, WhiskerL3, WhiskerR3, HComp3,
                  Interchange, Pentagon, Triangle]

H2_CLASSES = (Refl, Symm, Trans, WhiskerL, WhiskerR, HComp, Assoc,
              UnitL, UnitR, StepCong)
H3_CLASSES = (Refl3, Symm3, Trans3, WhiskerL3, WhiskerR3, HComp3,
              Interchange, Pentagon, Triangle)


def pentagon_sides(p: RedSeq, q: RedSeq, r: RedSeq, s: RedSeq) -> tuple[Homotopy2, Homotopy2]:
    """The two composite 2-cells around the pentagon, both P0 => P4."""
    left = Trans(Assoc(seq_compose(p, q), r, s), Assoc(p, q, seq_compose(r, s)))
    right = Trans(Trans(WhiskerR(Assoc(p, q, r), s),
                        Assoc(p, seq_compose(q, r), s)),
                  WhiskerL(p, Assoc(q, r, s)))
    return left, right


def boundary3(cell: Homotopy3) -> tuple[Homotopy2, Homotopy2]:
    """Source and target 2-cells of a 3-cell (parallel by construction)."""
    if isinstance(cell, Refl3):
        boundary2(cell.cell)
        return cell.cell, cell.cell
    if isinstance(cell, Symm3):
        s, t = boundary3(cell.cell)
        return t, s
    if isinstance(cell, Trans3):
        s1, t1 = boundary3(cell.left)
        s2, t2 = boundary3(cell.right)
        if t1 != s2:
            raise EndpointMismatch("Trans3: middle 2-cells differ")
        return s1, t2
    if isinstance(cell, WhiskerL3):
        s, t = boundary3(cell.cell)
        return WhiskerL(cell.prefix, s), WhiskerL(cell.prefix, t)
    if isinstance(cell, WhiskerR3):
        s, t = boundary3(cell.cell)
        return WhiskerR(s, cell.suffix), WhiskerR(t, cell.suffix)
    if isinstance(cell, HComp3):
        s1, t1 = boundary3(cell.left)
        s2, t2 = boundary3(cell.right)
        return HComp(s1, s2), HComp(t1, t2)
    if isinstance(cell, Interchange):
        one = HComp(Trans(cell.a, cell.b), Trans(cell.c, cell.d))
        other = Trans(HComp(cell.a, cell.c), HComp(cell.b, cell.d))
        boundary2(one), boundary2(other)
        return one, other
    if isinstance(cell, Pentagon):
        left, right = pentagon_sides(cell.p, cell.q, cell.r, cell.s)
        boundary2(left), boundary2(right)
        return left, right
    if isinstance(cell, Triangle):
        mid = empty_seq(cell.p.target)
        left = Trans(Assoc(cell.p, mid, cell.q), WhiskerL(cell.p, UnitL(cell.q)))
        right = WhiskerR(UnitR(cell.p), cell.q)
        boundary2(left), boundary2(right)
        return left, right
    raise IllFormed(f"not a 3-cell: {cell!r}")


def boundary(cell):
    """Dispatching boundary: 2-cells land on sequences, 3-cells on 2-cells."""
    if isinstance(cell, H3_CLASSES):
        return boundary3(cell)
    return boundary2(cell)


_STRUCTURAL = {
    "Refl": Refl, "Symm": Symm, "Trans": Trans, "WhiskerL": WhiskerL,
    "WhiskerR": WhiskerR, "HComp": HComp, "Assoc": Assoc, "UnitL": UnitL,
    "UnitR": UnitR, "StepCong": StepCong,
    "Refl3": Refl3, "Symm3": Symm3, "Trans3": Trans3, "WhiskerL3": WhiskerL3,
    "WhiskerR3": WhiskerR3, "HComp3": HComp3, "Interchange": Interchange,
    "Pentagon": Pentagon, "Triangle": Triangle,
}


def mk_structural(name: str, *args):
    """Build a structural cell and eagerly validate its boundary."""
    if name not in _STRUCTURAL:
        raise IllFormed(f"unknown structural constructor {name!r}")
    cell = _STRUCTURAL[name](*args)
    boundary(cell)
    return cell


def globular_check(cell: Homotopy3) -> bool:
    """s(s(c)) = s(t(c)) and t(s(c)) = t(t(c)), as reduction sequences."""
    s, t = boundary3(cell)
    ss, st = boundary2(s)
    ts, tt = boundary2(t)
    return ss == ts and st == tt
