import random

import pytest

from lamtower.cells import Pentagon, empty_seq, seq_compose, seq_invert
from lamtower.frontseed import (AssL, FS1Seed, FS2Seed, HornGlueFailure,
                                NonComposable, Refl3W, ReflL, SeedL, WlL,
                                WrL, assemble_pentagon_filler, boundary3_words,
                                empty_word, fs_assoc_compare, fs_bridges,
                                fs_pentagon, inv_word, letter_inv,
                                mixed_target_word, pentagon_words, seed_cell,
                                shell_word, word_of, word_reduce, words_equal)
from lamtower.gen import (gen_composable_seqs, gen_term, gen_word, gen_zigzag,
                          insert_cancelling_pairs)
from lamtower.witness import span_beta_seq


def _span_quad():
    t_beta = span_beta_seq()
    back = seq_invert(t_beta)
    return t_beta, back, t_beta, back


# --- word engine ------------------------------------------------------------

def test_reduce_drops_refl(rng):
    e = gen_zigzag(rng, gen_term(rng, 6), 1)
    w = word_of([ReflL(e)])
    assert word_reduce(w).letters == ()


def test_reduce_cancels_adjacent_inverses(rng):
    p, q, r = gen_composable_seqs(rng, 3, allow_empty=False)
    a = AssL(p, q, r)
    w = word_of([a, letter_inv(a)])
    assert word_reduce(w).letters == ()


def test_reduce_idempotent_and_insertion_invariant():
    rng = random.Random(11)
    for _ in range(150):
        w = gen_word(rng, rng.randint(0, 5))
        red = word_reduce(w)
        assert word_reduce(red) == red
        padded = insert_cancelling_pairs(rng, w, rng.randint(1, 3))
        assert word_reduce(padded).letters == red.letters


def test_degenerate_letters_unwrap(rng):
    p, q = gen_composable_seqs(rng, 2, allow_empty=False)
    # associator on a degenerate argument drops
    assert word_reduce(word_of([AssL(empty_seq(p.source), p, q)])).letters == ()
    # whiskering by an empty edge splices the inner word
    inner = word_of([SeedL("g", p, p)])
    w = word_of([WlL(empty_seq(p.source), inner)])
    assert word_reduce(w).letters == inner.letters
    # whisker letters with trivial inner content drop
    w2 = word_of([WlL(p, empty_word(q))])
    assert word_reduce(w2).letters == ()


def test_inv_word_involution(rng):
    w = gen_word(random.Random(5), 4)
    assert inv_word(inv_word(w)) == w


# --- seeds ------------------------------------------------------------------

def test_fs1_display(rng):
    alpha, beta, delta = gen_composable_seqs(rng, 3, allow_empty=False)
    gamma = beta  # a parallel edge
    eta = word_of([SeedL("eta", beta, gamma)])
    cell = seed_cell("FS1", alpha, eta, delta)
    src, tgt = boundary3_words(cell)
    assert len(src.letters) == 1
    assert isinstance(src.letters[0], WrL)
    assert len(tgt.letters) == 3
    first, mid, last = tgt.letters
    assert first == AssL(alpha, beta, delta)
    assert isinstance(mid, WlL) and mid.edge == alpha
    assert last == AssL(alpha, gamma, delta, inv=True)


def test_fs1_noncomposable(rng):
    alpha, beta, delta = gen_composable_seqs(rng, 3, allow_empty=False)
    eta = word_of([SeedL("eta", delta, delta)])  # starts at the wrong place
    with pytest.raises(NonComposable):
        FS1Seed(alpha, eta, delta)


def test_fs2_display(rng):
    p, q, r, s = gen_composable_seqs(rng, 4, allow_empty=False)
    cell = seed_cell("FS2", p, q, r, s)
    src, tgt = boundary3_words(cell)
    assert tgt.letters == ()
    assert len(src.letters) == 1
    (wl,) = src.letters
    assert isinstance(wl, WlL) and wl.edge == p
    assert wl.inner.letters == (AssL(q, r, s),)


# --- associator comparison --------------------------------------------------

def test_assoc_compare_empty_first(rng):
    q, r = gen_composable_seqs(rng, 2)
    p = empty_seq(q.source)
    cell = fs_assoc_compare(p, q, r)
    assert isinstance(cell, Refl3W)
    src, tgt = boundary3_words(cell)
    assert src.letters == () and tgt.letters == ()


@pytest.mark.parametrize("steps", [1, 3])
def test_assoc_compare_boundary(steps):
    rng = random.Random(steps)
    t = gen_term(rng, 7)
    p = gen_zigzag(rng, t, steps)
    q = gen_zigzag(rng, p.target, 1)
    r = gen_zigzag(rng, q.target, 1)
    cell = fs_assoc_compare(p, q, r)
    src, tgt = boundary3_words(cell)
    assert words_equal(src, shell_word(p, q, r))
    assert tgt.letters == ()
    # one head-step layer per step of p
    layers = 0
    probe = cell
    while hasattr(probe, "left"):
        layers += 1
        probe = probe.right.inner
    assert layers == steps


def test_assoc_compare_random(rng):
    for _ in range(30):
        p, q, r = gen_composable_seqs(rng, 3)
        src, tgt = boundary3_words(fs_assoc_compare(p, q, r))
        assert words_equal(src, shell_word(p, q, r))
        assert tgt.letters == ()


# --- pentagon ---------------------------------------------------------------

def test_pentagon_all_empty():
    t = gen_term(random.Random(2), 6)
    e = empty_seq(t)
    filler = fs_pentagon(e, e, e, e)
    src, tgt = boundary3_words(filler)
    assert src.letters == () and tgt.letters == ()


def test_pentagon_span_quadruple():
    p, q, r, s = _span_quad()
    filler = fs_pentagon(p, q, r, s)
    left, right = pentagon_words(p, q, r, s)
    src, tgt = boundary3_words(filler)
    assert words_equal(src, left) and words_equal(tgt, right)
    assert len(filler.faces) == 5


def test_pentagon_random_quadruples():
    rng = random.Random(23)
    for _ in range(40):
        p, q, r, s = gen_composable_seqs(rng, 4)
        filler = fs_pentagon(p, q, r, s)
        left, right = pentagon_words(p, q, r, s)
        src, tgt = boundary3_words(filler)
        assert words_equal(src, left) and words_equal(tgt, right)


def test_pentagon_corrupted_face():
    p, q, r, s = _span_quad()
    good_back = [fs_assoc_compare(seq_compose(p, q), r, s),
                 fs_assoc_compare(p, q, seq_compose(r, s))]
    wrong = Refl3W(empty_word(seq_compose(seq_compose(seq_compose(p, q), r), s)))
    with pytest.raises(HornGlueFailure):
        assemble_pentagon_filler(p, q, r, s, FS2Seed(p, q, r, s), wrong,
                                 fs_assoc_compare(p, seq_compose(q, r), s),
                                 good_back)


# --- bridges ----------------------------------------------------------------

def test_bridges_all_empty():
    t = gen_term(random.Random(4), 6)
    e = empty_seq(t)
    for cell in fs_bridges(e, e, e, e, Pentagon(e, e, e, e)):
        src, tgt = boundary3_words(cell)
        assert src.letters == () and tgt.letters == ()


def test_bridges_span_quadruple():
    p, q, r, s = _span_quad()
    source_b, target_b, shell_b = fs_bridges(p, q, r, s, Pentagon(p, q, r, s))
    left, _ = pentagon_words(p, q, r, s)
    mixed = mixed_target_word(p, q, r, s)
    assert words_equal(boundary3_words(source_b)[0], left)
    assert boundary3_words(source_b)[1].letters == ()
    assert words_equal(boundary3_words(target_b)[0], mixed)
    assert boundary3_words(target_b)[1].letters == ()
    assert words_equal(boundary3_words(shell_b)[0], left)
    assert words_equal(boundary3_words(shell_b)[1], mixed)
    # the mixed shell really is mixed: its whisker-by-s factor is tagged
    assert mixed.letters[0].eq and not mixed.letters[1].eq


def test_bridges_mismatched_pentagon():
    p, q, r, s = _span_quad()
    with pytest.raises(NonComposable):
        fs_bridges(p, q, r, s, Pentagon(q, p, r, s))


def test_bridges_random():
    rng = random.Random(31)
    for _ in range(25):
        p, q, r, s = gen_composable_seqs(rng, 4)
        source_b, target_b, shell_b = fs_bridges(p, q, r, s, Pentagon(p, q, r, s))
        left, _ = pentagon_words(p, q, r, s)
        mixed = mixed_target_word(p, q, r, s)
        assert words_equal(boundary3_words(shell_b)[0], left)
        assert words_equal(boundary3_words(shell_b)[1], mixed)
