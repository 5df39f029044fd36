"""Depth-truncated inverse-limit threads and the exact reify/reflect/
application laws.

A thread holds one coordinate per stage up to the truncation depth, coherent
under the stage projections.  Application is the top shadow of the monotone
shadow chain; reify tabulates stage restrictions of an endomap.  The top
coordinate at depth 3 is evaluation-backed, so equality there is checked on
the canonical embedded-stage probe family (construction-tagged embeddings
compare exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .domains import LazyMono, Tower


class DepthTooSmall(ValueError):
    """The thread depth does not cover the requested stage."""


MAX_DEPTH = 3


class Thread:
    """A coherent coordinate vector across stages 0..depth."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower: Tower, coords: tuple, check: bool = True):
        if len(coords) - 1 > MAX_DEPTH:
            raise DepthTooSmall(f"depths above {MAX_DEPTH} are not representable")
        self.tower = tower
        self.coords = tuple(coords)
        if check and not coherent(self):
            raise ValueError("incoherent thread: projections disagree with coordinates")

    @property
    def depth(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other):
        return isinstance(other, Thread) and thread_eq(self, other)

    def __hash__(self):  # pragma: no cover - threads are not dict keys
        return hash((id(self.tower), self.coords[: min(self.depth, 2) + 1]))

    def __repr__(self):
        return f"Thread(depth={self.depth}, base={self.tower.base.labels[self.coords[0]]})"


def coherent(t: Thread) -> bool:
    """proj_n(coords[n+1]) == coords[n] for every covered n."""
    tw = t.tower
    for n in range(t.depth):
        if tw.proj(n, t.coords[n + 1]) != t.coords[n]:
            return False
    return True


def _top_eq(tw: Tower, a, b) -> bool:
    if isinstance(a, LazyMono) and isinstance(b, LazyMono):
        if a.key is not None and a.key == b.key:
            return True
        return all(a.eval(w) == b.eval(w) for w in tw.stage2_probes())
    return a == b


def _top_le(tw: Tower, a, b) -> bool:
    if isinstance(a, LazyMono) and isinstance(b, LazyMono):
        return all(tw.leq(2, a.eval(w), b.eval(w)) for w in tw.stage2_probes())
    return tw.leq(3, a, b)


def thread_eq(x: Thread, y: Thread) -> bool:
    if x.depth != y.depth:
        return False
    for n in range(min(x.depth, 2) + 1):
        if x.coords[n] != y.coords[n]:
            return False
    if x.depth >= 3:
        return _top_eq(x.tower, x.coords[3], y.coords[3])
    return True


def thread_le(x: Thread, y: Thread) -> bool:
    if x.depth != y.depth:
        raise DepthTooSmall("cannot compare threads of different depths")
    tw = x.tower
    for n in range(min(x.depth, 2) + 1):
        if not tw.leq(n, x.coords[n], y.coords[n]):
            return False
    if x.depth >= 3:
        return _top_le(tw, x.coords[3], y.coords[3])
    return True


def stage_embed(tower: Tower, n: int, u, depth: int) -> Thread:
    """The canonical embedding of a stage-n element: project below, embed above."""
    if n > depth:
        raise DepthTooSmall(f"cannot embed stage {n} at depth {depth}")
    coords: list = [None] * (depth + 1)
    coords[n] = u
    down = u
    for m in range(n - 1, -1, -1):
        down = tower.proj(m, down)
        coords[m] = down
    up = u
    for m in range(n + 1, depth + 1):
        up = tower.emb(m - 1, up)
        coords[m] = up
    return Thread(tower, tuple(coords), check=False)


def bottom_thread(tower: Tower, depth: int) -> Thread:
    return stage_embed(tower, 0, tower.base.bottom, depth)


def app_shadow(n: int, x: Thread, y: Thread) -> Thread:
    """The stage-n application shadow: embed pi_{n+1}(x) applied to pi_n(y)."""
    if n + 1 > x.depth or n > y.depth:
        raise DepthTooSmall(f"shadow {n} needs deeper threads")
    value = x.tower.apply(n + 1, x.coords[n + 1], y.coords[n])
    return stage_embed(x.tower, n, value, x.depth)


def app(x: Thread, y: Thread) -> Thread:
    """Application: the top element of the monotone shadow chain."""
    if x.depth != y.depth:
        raise DepthTooSmall("application needs equal depths")
    if x.depth < 1:
        raise DepthTooSmall("application needs depth >= 1")
    return app_shadow(x.depth - 1, x, y)


# ---------------------------------------------------------------------------
# Endomaps: a closed datatype, so the section law is checkable by enumeration.

@dataclass(frozen=True)
class Identity:
    def apply(self, y: Thread) -> Thread:
        return y


@dataclass(frozen=True)
class Constant:
    value: Thread

    def apply(self, y: Thread) -> Thread:
        return self.value


@dataclass(frozen=True)
class FromThread:
    point: Thread

    def apply(self, y: Thread) -> Thread:
        return app(self.point, y)


class Tabulated:
    """A finite sample table on embedded finite-stage elements."""

    def __init__(self, pairs):
        self.pairs = tuple(pairs)

    def apply(self, y: Thread) -> Thread:
        for k, v in self.pairs:
            if thread_eq(k, y):
                return v
        raise ValueError("argument outside the tabulated domain")


EndoMap = Identity | Constant | FromThread | Tabulated


def restrict(g: EndoMap, n: int, depth: int, tower: Tower):
    """The stage-n restriction of an endomap: project, apply, embed."""
    if n > depth - 1:
        raise DepthTooSmall(f"restriction to stage {n} needs depth > {n}")
    if n <= 1:
        return tuple(g.apply(stage_embed(tower, n, u, depth)).coords[n]
                     for u in tower.domain(n))
    if n == 2:
        return LazyMono(
            lambda w: g.apply(stage_embed(tower, 2, w, depth)).coords[2],
            key=None)
    raise DepthTooSmall(f"no restriction representation at stage {n}")


def reify(g: EndoMap, depth: int, tower: Tower) -> Thread:
    """The thread of stage restrictions: coords[0] from the bottom of r_0,
    coords[n+1] = r_n."""
    if depth < 1:
        raise DepthTooSmall("reify needs depth >= 1")
    r0 = restrict(g, 0, depth, tower)
    coords: list = [r0[tower.base.bottom], r0]
    for n in range(1, depth):
        coords.append(restrict(g, n, depth, tower))
    return Thread(tower, tuple(coords))


# ---------------------------------------------------------------------------
# Law reports.

def _check(name: str, failures: list, checked: int) -> dict:
    return {"name": name, "pass": not failures, "checked": checked,
            "detail": failures[:3]}


def verify_laws(tower: Tower, depth: int = 3, seed: int = 0,
                sample_threads: Optional[list] = None) -> dict:
    """Run the exact application/retract/section/density checks at this depth."""
    if depth < 2:
        raise DepthTooSmall("the law suite needs depth >= 2")
    checks = []
    embeds1 = [stage_embed(tower, 1, u, depth) for u in tower.stage1]

    failures = []
    count = 0
    for n in range(min(2, depth - 1)):
        for x in embeds1:
            for y in tower.domain(n):
                count += 1
                lhs = app(x, stage_embed(tower, n, y, depth)).coords[n]
                rhs = tower.apply(n + 1, x.coords[n + 1], y)
                if lhs != rhs:
                    failures.append({"law": "stagewise-app", "n": n, "y": str(y)})
    checks.append(_check("stagewise_application", failures, count))

    failures = []
    for x in embeds1 + [bottom_thread(tower, depth)]:
        if not thread_eq(reify(FromThread(x), depth, tower), x):
            failures.append({"law": "retract", "x": repr(x)})
    checks.append(_check("retract_reify_app", failures, len(embeds1) + 1))

    gs: list[EndoMap] = [Identity(), Constant(bottom_thread(tower, depth))]
    gs += [FromThread(x) for x in (sample_threads or embeds1[:3])]
    failures = []
    count = 0
    for g in gs:
        rg = reify(g, depth, tower)
        for n in range(min(2, depth - 1)):
            for y in tower.domain(n):
                count += 1
                emb_y = stage_embed(tower, n, y, depth)
                lhs = app(rg, emb_y).coords[n]
                rhs = g.apply(emb_y).coords[n]
                if lhs != rhs:
                    failures.append({"law": "section", "g": type(g).__name__, "n": n})
    checks.append(_check("section_on_embedded_stages", failures, count))

    failures = []
    xs = list(embeds1)
    if sample_threads:
        xs += list(sample_threads)
    for x in xs:
        if not coherent(x):
            failures.append({"law": "density", "reason": "incoherent input"})
            continue
        approx = [stage_embed(tower, n, x.coords[n], depth) for n in range(depth + 1)]
        for n in range(depth):
            if not thread_le(approx[n], approx[n + 1]):
                failures.append({"law": "density-chain", "n": n})
        if not thread_le(approx[depth - 1], x):
            failures.append({"law": "density-below", "x": repr(x)})
        if not thread_eq(approx[depth], x):
            failures.append({"law": "density-truncation", "x": repr(x)})
    checks.append(_check("density_chain", failures, len(xs)))

    return {"depth": depth, "checks": checks,
            "ok": all(c["pass"] for c in checks)}
