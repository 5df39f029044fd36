"""Command line interface: term parsing, subcommand dispatch, JSON reports.

Machine output (one JSON report, stable key order) goes to stdout; a short
human summary goes to stderr.  Exit status is zero iff every check passed.
All randomized commands take an explicit seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import frontseed as F
from . import gen, kinfinity, serialize, witness
from .cells import Pentagon, RedSeq, globular_check
from .completion import (hd_map, pi0_equiv, realize_boundary_check)
from .domains import Tower, check_projection_pair, flat_base, step_map
from .gen import gen_hd_tree, gen_rtower_cell
from .terms import (App, FuelExhausted, Lam, Term, Var, apply_step, normalize,
                    to_text)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "\\.()":
            tokens.append((ch, i))
            i += 1
        elif ch == "#":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("expected digits after #", i)
            tokens.append(("#" + text[i + 1:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append((text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    """Named form (\\x. e, juxtaposition, parens) and raw de Bruijn form
    (#n and anonymous \\ . e).  Free names get indices by first occurrence."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.free: list[str] = []
        self.text = text

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> Term:
        t = self._term([])
        tok, at = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok!r}", at)
        return t

    def _term(self, binders: list[str | None]) -> Term:
        tok, at = self._peek()
        if tok == "\\":
            self._next()
            names: list[str | None] = []
            while True:
                tok, at = self._peek()
                if tok == ".":
                    self._next()
                    break
                if tok is not None and (tok[0].isalpha() or tok[0] == "_"):
                    names.append(self._next()[0])
                else:
                    raise ParseError("expected binder name or '.'", at)
            if not names:
                names = [None]  # anonymous de Bruijn binder: \ . e
            body = self._term(list(reversed(names)) + binders)
            for _ in names:
                body = Lam(body)
            return body
        return self._app(binders)

    def _app(self, binders) -> Term:
        t = self._atom(binders)
        while True:
            tok, _ = self._peek()
            if tok is None or tok in (")", "."):
                return t
            if tok == "\\":
                t = App(t, self._term(binders))
                return t
            t = App(t, self._atom(binders))

    def _atom(self, binders) -> Term:
        tok, at = self._next()
        if tok is None:
            raise ParseError("unexpected end of input", at)
        if tok == "(":
            t = self._term(binders)
            tok2, at2 = self._next()
            if tok2 != ")":
                raise ParseError("expected ')'", at2)
            return t
        if tok.startswith("#"):
            return Var(int(tok[1:]))
        if tok[0].isalpha() or tok[0] == "_":
            if tok in binders:
                return Var(binders.index(tok))
            if tok not in self.free:
                self.free.append(tok)
            return Var(len(binders) + self.free.index(tok))
        raise ParseError(f"unexpected {tok!r}", at)


def parse_term(text: str) -> Term:
    return _Parser(text).parse()


def parse_term_pair(text1: str, text2: str) -> tuple[Term, Term]:
    """Parse two terms sharing one free-name table, so the same name denotes
    the same index in both."""
    first = _Parser(text1)
    t1 = first.parse()
    second = _Parser(text2)
    second.free = list(first.free)
    return t1, second.parse()


def parse_witness(expr: str) -> witness.Witness:
    """Dot-composed witness expressions: beta, eta, reflM, reflN."""
    atoms = {"beta": witness.TBeta, "eta": witness.TEta,
             "reflM": witness.ReflM, "reflN": witness.ReflN}
    parts = [p.strip() for p in expr.split(".")]
    built = []
    for p in parts:
        if p not in atoms:
            raise ParseError(f"unknown witness atom {p!r}", expr.find(p))
        built.append(atoms[p]())
    out = built[-1]
    for w in reversed(built[:-1]):
        out = witness.Comp(w, out)
    return out


# ---------------------------------------------------------------------------
# Report plumbing.

def _report(command: dict, result, checks: list[dict]) -> dict:
    return {"command": command, "result": result, "checks": checks,
            "ok": all(c["pass"] for c in checks)}


def _emit(report: dict) -> int:
    print(json.dumps(report, sort_keys=True, indent=2))
    status = "ok" if report["ok"] else "FAILED"
    names = ", ".join(c["name"] for c in report["checks"]) or "none"
    print(f"[lamtower] {status}; checks: {names}", file=sys.stderr)
    return 0 if report["ok"] else 1


def _render_seq(p: RedSeq) -> str:
    return f"{to_text(p.source)} ~({len(p)})~ {to_text(p.target)}"


def _render_word(w: F.Word) -> str:
    if not w.letters:
        return f"refl[{_render_seq(w.src)}]"
    return " . ".join(_render_letter(l) for l in w.letters)


def _render_letter(l: F.Letter) -> str:
    inv = "^-1" if getattr(l, "inv", False) else ""
    eq = "=" if getattr(l, "eq", False) else ""
    if isinstance(l, F.AssL):
        return f"{eq}ass({len(l.a)},{len(l.b)},{len(l.c)}){inv}"
    if isinstance(l, F.WlL):
        return f"{eq}wl({len(l.edge)},{_render_word(l.inner)}){inv}"
    if isinstance(l, F.WrL):
        return f"{eq}wr({_render_word(l.inner)},{len(l.edge)}){inv}"
    if isinstance(l, F.ReflL):
        return "refl"
    return f"{eq}{l.name}{inv}"


# ---------------------------------------------------------------------------
# Subcommands.

def cmd_reduce(args) -> int:
    t = parse_term(args.term)
    checks = []
    try:
        nf, trace = normalize(t, args.fuel)
        result = {"input": to_text(t), "normal_form": to_text(nf),
                  "steps": len(trace)}
        checks.append({"name": "normalized", "pass": True,
                       "detail": f"{len(trace)} steps"})
    except FuelExhausted as e:
        result = {"input": to_text(t), "partial": to_text(e.term),
                  "steps": len(e.trace)}
        checks.append({"name": "normalized", "pass": False,
                       "detail": "fuel exhausted"})
    return _emit(_report({"cmd": "reduce", "term": args.term, "fuel": args.fuel},
                         result, checks))


def cmd_pi0(args) -> int:
    t1, t2 = parse_term_pair(args.term1, args.term2)
    checks = []
    try:
        zigzag = pi0_equiv(t1, t2, args.fuel)
    except FuelExhausted:
        result = {"verdict": "fuel-exhausted"}
        checks.append({"name": "decided", "pass": False, "detail": "fuel exhausted"})
        return _emit(_report({"cmd": "pi0", "fuel": args.fuel}, result, checks))
    if zigzag is None:
        result = {"verdict": "not-convertible", "detail": "distinct normal forms"}
        checks.append({"name": "decided", "pass": True, "detail": "NotFound"})
    else:
        replay = t1
        for s in zigzag.steps:
            replay = apply_step(replay, s)
        result = {"verdict": "convertible", "zigzag_length": len(zigzag),
                  "via": to_text(zigzag.terms[len(zigzag.terms) // 2])}
        checks.append({"name": "decided", "pass": True, "detail": "zigzag found"})
        checks.append({"name": "replay_valid", "pass": replay == t2,
                       "detail": f"{len(zigzag)} steps"})
    return _emit(_report({"cmd": "pi0", "term1": args.term1, "term2": args.term2,
                          "fuel": args.fuel}, result, checks))


def cmd_classify(args) -> int:
    w = parse_witness(args.expr)
    tag = witness.tag_classify(w)
    return _emit(_report({"cmd": "classify", "expr": args.expr},
                         {"tag": tag.value}, [{"name": "classified", "pass": True,
                                               "detail": tag.value}]))


def cmd_witness(args) -> int:
    w = parse_witness(args.expr)
    poles = tuple(args.poles.split(",")) if args.poles else ("sR1", "sL1")
    tower = witness.default_tower(poles)
    interp = witness.interpret(w, args.depth, tower)
    vs_beta = witness.separation_report(w, witness.TBeta(), args.depth, tower)
    vs_eta = witness.separation_report(w, witness.TEta(), args.depth, tower)
    result = {
        "tag": interp.tag.value,
        "epsilon": interp.epsilon,
        "coordinate0": tower.base.labels[interp.point.coords[0]],
        "separation_vs_beta": vs_beta,
        "separation_vs_eta": vs_eta,
    }
    checks = [
        {"name": "epsilon_valid", "pass": interp.epsilon["normal_form_equal"],
         "detail": "normal forms agree"},
        {"name": "separates_from_other_class", "pass":
         vs_beta["points_distinct"] != vs_eta["points_distinct"],
         "detail": "exactly one same-tag comparison"},
    ]
    return _emit(_report({"cmd": "witness", "expr": args.expr,
                          "depth": args.depth}, result, checks))


def cmd_tower_check(args) -> int:
    rng = random.Random(args.seed)
    checks = []

    bad = sum(not globular_check(gen.gen_h3(rng, depth=2))
              for _ in range(args.samples))
    checks.append({"name": "globularity", "pass": bad == 0,
                   "detail": f"{args.samples} generated 3-cells"})

    hd_bad = 0
    for _ in range(args.samples):
        cell = gen.gen_h2(rng, depth=1)
        h = gen_hd_tree(rng, cell, 5)
        if hd_map(lambda x: x, h) != h:
            hd_bad += 1
        f = lambda c: ("f", c)
        g = lambda c: ("g", c)
        if hd_map(lambda c: g(f(c)), h) != hd_map(g, hd_map(f, h)):
            hd_bad += 1
    checks.append({"name": "hd_functor_laws", "pass": hd_bad == 0,
                   "detail": f"{args.samples} derivation trees"})

    per_dim = max(1, args.samples // 5)
    rb_bad = 0
    for dim in range(4, args.maxdim + 1):
        for _ in range(per_dim):
            cell = gen_rtower_cell(rng, dim)
            if not realize_boundary_check(dim, cell):
                rb_bad += 1
    checks.append({"name": "realize_boundary", "pass": rb_bad == 0,
                   "detail": f"dims 4..{args.maxdim}, {per_dim} cells each"})

    return _emit(_report({"cmd": "tower-check", "maxdim": args.maxdim,
                          "samples": args.samples, "seed": args.seed},
                         {"dimensions": list(range(4, args.maxdim + 1))}, checks))


def _configured_tower(args) -> Tower:
    poles = None
    if getattr(args, "config", None):
        with open(args.config) as fh:
            poles = tuple(json.load(fh)["poles"])
    if getattr(args, "poles", None):
        poles = tuple(args.poles.split(","))
    if poles is None:
        n_extra = max(0, args.base_size - 3)
        poles = ("sR1", "sL1") + tuple(f"s{i + 2}" for i in range(n_extra))
    return Tower(flat_base(poles))


def cmd_kinfty(args) -> int:
    tower = _configured_tower(args)
    rng = random.Random(args.seed)
    report = kinfinity.verify_laws(tower, depth=args.depth, seed=args.seed)
    checks = list(report["checks"])

    sample = _step_join_sample(tower, rng, args.samples)
    for n in (0, 1):
        pp = check_projection_pair(tower, n, sample if n == 1 else ())
        checks.append({"name": f"projection_pair_stage{n}", "pass": pp["ok"],
                       "detail": {"retract": pp["retract_checked"],
                                  "section": pp["section_checked"]}})
    result = {"depth": args.depth, "base": tower.base.labels,
              "stage1_size": len(tower.stage1)}
    return _emit(_report({"cmd": "kinfty-check", "depth": args.depth,
                          "basesize": len(tower.base.labels),
                          "samples": args.samples, "seed": args.seed},
                         result, checks))


def _step_join_sample(tower: Tower, rng: random.Random, n: int) -> list:
    from .domains import lub
    out = []
    elems = tower.stage1
    seen = set()
    attempts = 0
    while len(out) < n and attempts < 40 * n:
        attempts += 1
        a, b = rng.choice(elems), rng.choice(elems)
        c, d = rng.choice(elems), rng.choice(elems)
        j = lub(tower, 2, [step_map(tower, 1, a, b), step_map(tower, 1, c, d)])
        if j is not None and j not in seen:
            seen.add(j)
            out.append(j)
    return out


def cmd_coherence(args) -> int:
    if args.sequences:
        with open(args.sequences) as fh:
            seqs = [serialize.decode(x) for x in json.load(fh)]
        if len(seqs) != 4:
            raise ParseError("expected exactly four serialized sequences", 0)
        p, q, r, s = seqs
    elif args.span:
        t_beta = witness.span_beta_seq()
        from .cells import seq_invert
        p, q, r, s = t_beta, seq_invert(t_beta), t_beta, seq_invert(t_beta)
    else:
        rng = random.Random(args.seed)
        p, q, r, s = gen.gen_composable_seqs(rng, 4, max_steps=2)

    checks = []
    if args.which == "assoc":
        cell = F.fs_assoc_compare(p, q, r)
        src, tgt = F.boundary3_words(cell)
        shell = F.word_reduce(F.shell_word(p, q, r))
        checks.append({"name": "assoc_boundary", "pass":
                       F.words_equal(src, shell) and not tgt.letters,
                       "detail": "source is the shell, target is trivial"})
        result = {"source_word": _render_word(src), "target_word": _render_word(tgt)}
    elif args.which == "pentagon":
        filler = F.fs_pentagon(p, q, r, s)
        left, right = F.pentagon_words(p, q, r, s)
        src, tgt = F.boundary3_words(filler)
        ok = (F.words_equal(src, left) and F.words_equal(tgt, right))
        checks.append({"name": "pentagon_missing_face", "pass": ok,
                       "detail": "boundary equals reduce(L), reduce(R)"})
        result = {"source_word": _render_word(src), "target_word": _render_word(tgt),
                  "faces": len(filler.faces)}
    else:
        bridges = F.fs_bridges(p, q, r, s, Pentagon(p, q, r, s))
        left, _ = F.pentagon_words(p, q, r, s)
        mixed = F.mixed_target_word(p, q, r, s)
        names = ["source_bridge", "target_bridge", "shell_bridge"]
        expect = [(left, None), (mixed, None), (left, mixed)]
        result = {}
        for cell, name, (esrc, etgt) in zip(bridges, names, expect):
            src, tgt = F.boundary3_words(cell)
            ok = F.words_equal(src, esrc) if esrc is not None else not src.letters
            ok = ok and (F.words_equal(tgt, etgt) if etgt is not None
                         else not tgt.letters)
            checks.append({"name": name, "pass": ok, "detail": "boundary words"})
            result[name] = {"source": _render_word(src), "target": _render_word(tgt)}
    return _emit(_report({"cmd": "coherence", "which": args.which,
                          "seed": args.seed, "span": bool(args.span)},
                         result, checks))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lamtower")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="normalize a term with bounded fuel")
    p.add_argument("term")
    p.add_argument("--fuel", type=int, default=2000)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("pi0", help="decide convertibility via the oracle")
    p.add_argument("term1")
    p.add_argument("term2")
    p.add_argument("--fuel", type=int, default=2000)
    p.set_defaults(fn=cmd_pi0)

    p = sub.add_parser("classify", help="tag a fixed-span witness expression")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("witness", help="interpret a fixed-span witness")
    p.add_argument("expr")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--poles", default=None)
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("tower-check", help="globularity, functor, realization checks")
    p.add_argument("--maxdim", type=int, default=9)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_tower_check)

    p = sub.add_parser("kinfty", help="inverse-limit model checks")
    ksub = p.add_subparsers(dest="kcommand", required=True)
    k = ksub.add_parser("check")
    k.add_argument("--depth", type=int, default=3)
    k.add_argument("--base-size", type=int, default=3, dest="base_size")
    k.add_argument("--samples", type=int, default=200)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--poles", default=None)
    k.add_argument("--config", default=None)
    k.set_defaults(fn=cmd_kinfty)

    p = sub.add_parser("coherence", help="front-seed boundary checks")
    p.add_argument("which", choices=["assoc", "pentagon", "bridges"])
    p.add_argument("--sequences", default=None,
                   help="JSON file with four serialized sequences")
    p.add_argument("--span", action="store_true",
                   help="use the span-derived quadruple")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_coherence)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, FuelExhausted) as e:
        print(json.dumps({"error": str(e)}, sort_keys=True))
        print(f"[lamtower] error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
