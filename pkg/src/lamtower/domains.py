"""Finite poset stages for the function-space tower over a flat base.

Stage 0 is a flat poset with labeled poles; stage n+1 consists of monotone
self-maps of stage n under the pointwise order.  Stages 0 and 1 are fully
enumerated; stage 2 elements are explicit tables over the stage-1 enumeration;
stage 3 elements are evaluation-backed maps (no global enumeration exists at
that size).  Projection pairs are the constant/evaluate-at-bottom seeds lifted
functorially.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

DEFAULT_POLES = ("sR1", "sL1")
BOTTOM_LABEL = "bot"


class CapExceeded(ValueError):
    """Requested enumeration above the enumeration cap."""


@dataclass(frozen=True)
class FinPoset:
    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    bottom: int = 0

    def __post_init__(self):
        n = len(self.labels)
        for i in range(n):
            if not self.leq[i][i]:
                raise ValueError("order must be reflexive")
            if not self.leq[self.bottom][i]:
                raise ValueError("bottom must be below every element")
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise ValueError("order must be antisymmetric")
                for k in range(n):
                    if self.leq[i][j] and self.leq[j][k] and not self.leq[i][k]:
                        raise ValueError("order must be transitive")

    def __len__(self) -> int:
        return len(self.labels)


def flat_base(poles: tuple[str, ...] = DEFAULT_POLES) -> FinPoset:
    """The flat poset: bottom below each pole, poles pairwise incomparable."""
    if "sR1" not in poles or "sL1" not in poles:
        raise ValueError("the pole labels must include sR1 and sL1")
    if len(set(poles)) != len(poles):
        raise ValueError("pole labels must be distinct")
    labels = (BOTTOM_LABEL,) + tuple(poles)
    n = len(labels)
    leq = tuple(tuple(i == 0 or i == j for j in range(n)) for i in range(n))
    return FinPoset(labels, leq, 0)


@dataclass(frozen=True)
class Stage:
    level: int
    elements: tuple
    poset: FinPoset


@dataclass(frozen=True)
class MonoMap:
    """A monotone self-map of an enumerated stage, as an explicit table.

    Build through Tower.make_mono, which rejects non-monotone tables.
    """

    level: int  # domain stage
    table: tuple


class Tower:
    """The stage tower over one flat base, with projection pairs.

    Element representations: stage 0 is an index into the base; stage 1 is a
    table over base indices; stage 2 is a table over the canonical stage-1
    enumeration whose entries are stage-1 tables; stage 3 is a LazyMono
    evaluated at stage-2 tables on demand.
    """

    MAX_LEVEL = 3

    def __init__(self, base: FinPoset, cap: int = 1):
        self.base = base
        self.cap = cap
        self.stage1 = self._enumerate_stage1()
        self.stage1_index = {t: i for i, t in enumerate(self.stage1)}

    def _enumerate_stage1(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.base)
        maps = []
        for table in itertools.product(range(n), repeat=n):
            if self._monotone_table(0, table):
                maps.append(table)
        return tuple(sorted(maps))

    def _monotone_table(self, level: int, table) -> bool:
        dom = self.domain(level)
        for i, x in enumerate(dom):
            for j, y in enumerate(dom):
                if self.leq(level, x, y) and not self.leq(level, table[i], table[j]):
                    return False
        return True

    def domain(self, level: int):
        if level == 0:
            return tuple(range(len(self.base)))
        if level == 1:
            return self.stage1
        raise CapExceeded(f"stage {level} has no global enumeration")

    # -- order -----------------------------------------------------------

    def leq(self, level: int, a, b) -> bool:
        if level == 0:
            return self.base.leq[a][b]
        if level == 1:
            return all(self.base.leq[x][y] for x, y in zip(a, b))
        if level == 2:
            return all(self.leq(1, x, y) for x, y in zip(a, b))
        raise CapExceeded("no order comparison above stage 2")

    def bottom(self, level: int):
        if level == 0:
            return self.base.bottom
        if level == 1:
            return (self.base.bottom,) * len(self.base)
        if level == 2:
            return (self.bottom(1),) * len(self.stage1)
        raise CapExceeded("no bottom representation above stage 2")

    # -- evaluation ------------------------------------------------------

    def apply(self, level: int, f, x):
        """Apply a stage-`level` element (level >= 1) to a stage-(level-1) one."""
        if level == 1:
            return f[x]
        if level == 2:
            return f[self.stage1_index[x]]
        if level == 3:
            return f.eval(x)
        raise CapExceeded(f"cannot apply a stage-{level} element")

    # -- projection pairs --------------------------------------------------

    def emb(self, n: int, x):
        """f_n^+ : stage n -> stage n+1."""
        if n == 0:
            return (x,) * len(self.base)
        if n == 1:
            return tuple(self.emb(0, x[u[self.base.bottom]]) for u in self.stage1)
        if n == 2:
            return LazyMono(lambda w: self.emb(1, self.apply(2, x, self.proj(1, w))),
                            key=("emb2", x))
        raise CapExceeded(f"no embedding representation from stage {n}")

    def proj(self, n: int, u):
        """f_n^- : stage n+1 -> stage n."""
        if n == 0:
            return u[self.base.bottom]
        if n == 1:
            return tuple(self.proj(0, self.apply(2, u, self.emb(0, x)))
                         for x in range(len(self.base)))
        if n == 2:
            return tuple(self.proj(1, self.apply(3, u, self.emb(1, g)))
                         for g in self.stage1)
        raise CapExceeded(f"no projection representation to stage {n}")

    def emb_proj(self, n: int) -> tuple[Callable, Callable]:
        return (lambda x: self.emb(n, x)), (lambda u: self.proj(n, u))

    def make_mono(self, level: int, table) -> MonoMap:
        """A validated monotone self-map table over stage `level`."""
        table = tuple(table)
        if len(table) != len(self.domain(level)):
            raise ValueError("table length must match the stage enumeration")
        if not self._monotone_table(level, table):
            raise ValueError("table is not monotone")
        return MonoMap(level, table)

    # -- probes for the lazy top stage ------------------------------------

    def stage2_probes(self) -> tuple:
        """Canonical finite probe family for comparing stage-3 elements."""
        probes = [self.bottom(2)]
        probes.extend(self.emb(1, g) for g in self.stage1)
        return tuple(probes)


class LazyMono:
    """A stage-3 element backed by evaluation, memoized; carries an optional
    construction key so embedded elements compare exactly."""

    def __init__(self, fn: Callable, key=None):
        self.fn = fn
        self.key = key
        self.memo: dict = {}

    def eval(self, w):
        if w not in self.memo:
            self.memo[w] = self.fn(w)
        return self.memo[w]


def enumerate_stage(tower: Tower, n: int) -> Stage:
    """Fully enumerate stage n (subject to the enumeration cap)."""
    if n > tower.cap:
        raise CapExceeded(f"stage {n} exceeds the enumeration cap {tower.cap}")
    if n == 0:
        return Stage(0, tuple(range(len(tower.base))), tower.base)
    if n == 1:
        elems = tower.stage1
        leq = tuple(tuple(tower.leq(1, a, b) for b in elems) for a in elems)
        labels = tuple("map" + "".join(str(i) for i in t) for t in elems)
        poset = FinPoset(labels, leq, elems.index(tower.bottom(1)))
        return Stage(1, elems, poset)
    raise CapExceeded(f"no enumeration implemented for stage {n}")


def step_map(tower: Tower, level: int, a, b):
    """The compact step map at `level`: x maps to b when a <= x, else bottom."""
    dom = tower.domain(level)
    bot = tower.bottom(level)
    return tuple(b if tower.leq(level, a, x) else bot for x in dom)


def lub(tower: Tower, level: int, xs) -> Optional[object]:
    """Least upper bound of finitely many stage elements, or None when the
    set has no upper bound.  Pointwise above stage 0."""
    xs = list(xs)
    if not xs:
        return tower.bottom(level)
    if level == 0:
        out = tower.base.bottom
        for x in xs:
            if out == tower.base.bottom:
                out = x
            elif x != tower.base.bottom and x != out:
                return None
        return out
    slots = []
    for i in range(len(xs[0])):
        s = lub(tower, level - 1, [x[i] for x in xs])
        if s is None:
            return None
        slots.append(s)
    return tuple(slots)


def check_projection_pair(tower: Tower, n: int, sample=()) -> dict:
    """Retract law on all of stage n; section inequality on stage n+1
    (enumerated when possible, otherwise on the sample)."""
    emb, proj = tower.emb_proj(n)
    retract_failures = [x for x in tower.domain(n) if proj(emb(x)) != x]
    if n == 0:
        uppers = tower.stage1
    else:
        uppers = tuple(sample)
    section_failures = [u for u in uppers if not tower.leq(n + 1, emb(proj(u)), u)]
    return {
        "stage": n,
        "retract_checked": len(tower.domain(n)),
        "retract_failures": retract_failures,
        "section_checked": len(uppers),
        "section_failures": section_failures,
        "ok": not retract_failures and not section_failures,
    }
