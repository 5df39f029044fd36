"""Equality-generated higher derivations and the recursive tower above the
explicit 3-cell core: functorial transport, the dimension 4-6 packaging maps,
the realization map into the explicit tower, and the 0-truncation bridge back
to plain beta/eta convertibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import cells
from .cells import (EndpointMismatch, IllFormed, RedSeq, boundary2,
                    boundary3, seq_compose, seq_from_steps, seq_invert)
from .terms import App, Lam, Term, Var, normalize


class ParallelismViolation(IllFormed):
    """The two endpoint cells of a higher triple are not parallel."""


# ---------------------------------------------------------------------------
# Higher derivations: the refl/symm/trans closure of equality on a carrier.
# A derivation between x and y can only exist when x equals y, but distinct
# derivation trees between the same endpoints stay distinct.

@dataclass(frozen=True, slots=True)
class HDRefl:
    point: object

    @property
    def src(self):
        return self.point

    @property
    def tgt(self):
        return self.point


@dataclass(frozen=True, slots=True)
class HDSymm:
    inner: "HigherDeriv"

    @property
    def src(self):
        return self.inner.tgt

    @property
    def tgt(self):
        return self.inner.src


@dataclass(frozen=True, slots=True)
class HDTrans:
    left: "HigherDeriv"
    right: "HigherDeriv"

    def __post_init__(self):
        if self.left.tgt != self.right.src:
            raise EndpointMismatch("HDTrans: middle endpoints differ")

    @property
    def src(self):
        return self.left.src

    @property
    def tgt(self):
        return self.right.tgt


HigherDeriv = Union[HDRefl, HDSymm, HDTrans]


def endpoints(h: HigherDeriv) -> tuple[object, object]:
    return h.src, h.tgt


def hd_map(f: Callable[[object], object], h: HigherDeriv) -> HigherDeriv:
    """Transport a derivation along an endpoint map, constructor by constructor."""
    if isinstance(h, HDRefl):
        return HDRefl(f(h.point))
    if isinstance(h, HDSymm):
        return HDSymm(hd_map(f, h.inner))
    return HDTrans(hd_map(f, h.left), hd_map(f, h.right))


# ---------------------------------------------------------------------------
# Cells of the recursive completion and of the explicit tower.
#
# Dimensions 0-3 carry the explicit payloads (Term, RedSeq, Homotopy2,
# Homotopy3).  From dimension 4 up, an RTowerCell is a triple (x, y, h) of
# parallel lower cells plus a derivation between them, while a SigmaCell is
# the derivation alone, indexed by its endpoints.

@dataclass(frozen=True, slots=True)
class RTowerCell:
    dim: int
    payload: object


@dataclass(frozen=True, slots=True)
class SigmaCell:
    dim: int
    payload: object


def _check_explicit(dim: int, payload) -> None:
    ok = ((dim == 0 and isinstance(payload, (Var, App, Lam)))
          or (dim == 1 and isinstance(payload, RedSeq))
          or (dim == 2 and isinstance(payload, cells.H2_CLASSES))
          or (dim == 3 and isinstance(payload, cells.H3_CLASSES)))
    if not ok:
        raise IllFormed(f"dimension {dim} does not accept {type(payload).__name__}")


def explicit_cell(dim: int, payload) -> RTowerCell:
    _check_explicit(dim, payload)
    return RTowerCell(dim, payload)


def cell_source(c: RTowerCell) -> RTowerCell:
    if c.dim == 0:
        raise IllFormed("0-cells have no boundary")
    if c.dim == 1:
        return RTowerCell(0, c.payload.source)
    if c.dim == 2:
        return RTowerCell(1, boundary2(c.payload)[0])
    if c.dim == 3:
        return RTowerCell(2, boundary3(c.payload)[0])
    return c.payload[0]


def cell_target(c: RTowerCell) -> RTowerCell:
    if c.dim == 0:
        raise IllFormed("0-cells have no boundary")
    if c.dim == 1:
        return RTowerCell(0, c.payload.target)
    if c.dim == 2:
        return RTowerCell(1, boundary2(c.payload)[1])
    if c.dim == 3:
        return RTowerCell(2, boundary3(c.payload)[1])
    return c.payload[1]


def parallel(x: RTowerCell, y: RTowerCell) -> bool:
    """Equal boundaries, recomputed structurally (never trusted from caches)."""
    if x.dim != y.dim:
        return False
    if x.dim == 0:
        return True
    return (cell_source(x) == cell_source(y)
            and cell_target(x) == cell_target(y))


def triple_cell(x: RTowerCell, y: RTowerCell, h: HigherDeriv) -> RTowerCell:
    """Validated (n+1)-cell of the recursive completion, n+1 >= 4."""
    if x.dim != y.dim or x.dim < 3:
        raise IllFormed("triple endpoints must be cells of equal dimension >= 3")
    if not parallel(x, y):
        raise ParallelismViolation("triple endpoints are not parallel")
    if endpoints(h) != (x, y):
        raise EndpointMismatch("derivation endpoints do not match the triple")
    return RTowerCell(x.dim + 1, (x, y, h))


def sigma_source(c: SigmaCell) -> SigmaCell:
    if c.dim <= 3:
        rt = cell_source(RTowerCell(c.dim, c.payload))
        return SigmaCell(rt.dim, rt.payload)
    return c.payload.src


def sigma_target(c: SigmaCell) -> SigmaCell:
    if c.dim <= 3:
        rt = cell_target(RTowerCell(c.dim, c.payload))
        return SigmaCell(rt.dim, rt.payload)
    return c.payload.tgt


def _to_sigma_explicit(c: RTowerCell) -> SigmaCell:
    return SigmaCell(c.dim, c.payload)


def pack(d: int, cell: RTowerCell) -> SigmaCell:
    """Package a dimension-4..6 triple as an explicit indexed derivation.

    pack(4) re-indexes verbatim; pack(5) and pack(6) transport the derivation
    datum along the previous packaging map.
    """
    if d not in (4, 5, 6):
        raise IllFormed(f"pack is defined for dimensions 4..6, not {d}")
    if cell.dim != d or not isinstance(cell.payload, tuple):
        raise IllFormed(f"expected a dimension-{d} triple")
    x, y, h = cell.payload
    if not parallel(x, y):
        raise ParallelismViolation("triple endpoints are not parallel")
    if d == 4:
        embed = _to_sigma_explicit
    elif d == 5:
        embed = lambda c: pack(4, c)
    else:
        embed = lambda c: pack(5, c)
    return SigmaCell(d, hd_map(embed, h))


def realize(n: int, cell: RTowerCell) -> SigmaCell:
    """The realization map: identity through dimension 3, packaging through 6,
    and the uniform derivation recursion above."""
    if cell.dim != n:
        raise IllFormed(f"cell has dimension {cell.dim}, not {n}")
    if n <= 3:
        return _to_sigma_explicit(cell)
    if n <= 6:
        return pack(n, cell)
    x, y, h = cell.payload
    return SigmaCell(n, hd_map(lambda c: realize(n - 1, c), h))


def realize_boundary_check(n: int, cell: RTowerCell) -> bool:
    """Does realization commute strictly with source and target?"""
    if n < 1:
        raise IllFormed("boundary checks need dimension >= 1")
    image = realize(n, cell)
    return (sigma_source(image) == realize(n - 1, cell_source(cell))
            and sigma_target(image) == realize(n - 1, cell_target(cell)))


# ---------------------------------------------------------------------------
# 0-truncation: recover plain convertibility from the witnessed tower.

def pi0_equiv(m: Term, n: Term, fuel: int) -> Optional[RedSeq]:
    """A replayable zigzag m -> nf -> n when both normalize to the same normal
    form; None when the normal forms differ; FuelExhausted propagates.

    Soundness only: a None answer is a verdict about the oracle's normal
    forms, not a proof of inconvertibility beyond confluence.
    """
    nf_m, trace_m = normalize(m, fuel)
    nf_n, trace_n = normalize(n, fuel)
    if nf_m != nf_n:
        return None
    down = seq_from_steps(m, trace_m)
    up = seq_invert(seq_from_steps(n, trace_n))
    return seq_compose(down, up)
