import random

import pytest

from lamtower.cells import Pentagon, validate_seq
from lamtower.completion import (HDRefl, HDSymm, HDTrans, ParallelismViolation,
                                 RTowerCell, SigmaCell, cell_source,
                                 cell_target, endpoints, explicit_cell, hd_map,
                                 pack, parallel, pi0_equiv, realize,
                                 realize_boundary_check, sigma_source,
                                 sigma_target, triple_cell)
from lamtower.gen import (gen_composable_seqs, gen_convertible_pair, gen_h3,
                          gen_hd_tree, gen_rtower_cell, gen_separated_pair,
                          gen_term)
from lamtower.terms import App, FuelExhausted, Lam, Var, apply_step
from lamtower.witness import SPAN_SOURCE, SPAN_TARGET

SPAN_NF = App(Var(0), Var(1))


# --- higher derivations -----------------------------------------------------

def test_hd_endpoints():
    h = HDRefl("x")
    assert endpoints(h) == ("x", "x")
    assert endpoints(HDSymm(h)) == ("x", "x")
    t = HDTrans(h, HDSymm(h))
    assert endpoints(t) == ("x", "x")
    with pytest.raises(Exception):
        HDTrans(HDRefl("x"), HDRefl("y"))


def test_hd_map_base_clause():
    assert hd_map(lambda v: ("f", v), HDRefl("x")) == HDRefl(("f", "x"))


def test_hd_map_identity_and_composition(rng):
    for _ in range(100):
        h = gen_hd_tree(rng, ("pt", rng.randrange(5)), 6)
        assert hd_map(lambda x: x, h) == h
        f = lambda v: ("f", v)
        g = lambda v: ("g", v)
        assert hd_map(lambda v: g(f(v)), h) == hd_map(g, hd_map(f, h))


# --- packaging --------------------------------------------------------------

def _cell3(rng):
    return explicit_cell(3, gen_h3(rng, depth=1))


def test_pack4_reflexive_triple(rng):
    eta = _cell3(rng)
    c4 = triple_cell(eta, eta, HDRefl(eta))
    packed = pack(4, c4)
    assert packed.dim == 4
    assert sigma_source(packed) == SigmaCell(3, eta.payload)
    assert sigma_target(packed) == SigmaCell(3, eta.payload)


def test_pack_boundary_commutes_up_to_6(rng):
    eta = _cell3(rng)
    c4 = triple_cell(eta, eta, HDRefl(eta))
    c5 = triple_cell(c4, c4, HDTrans(HDRefl(c4), HDSymm(HDRefl(c4))))
    c6 = triple_cell(c5, c5, HDRefl(c5))
    for d, c in ((4, c4), (5, c5), (6, c6)):
        packed = pack(d, c)
        assert sigma_source(packed) == realize(d - 1, cell_source(c))
        assert sigma_target(packed) == realize(d - 1, cell_target(c))


def test_pack_rejects_nonparallel(rng):
    eta = _cell3(rng)
    other = _cell3(rng)
    assert not parallel(eta, other)  # distinct random roots
    bad = RTowerCell(4, (eta, other, HDRefl(eta)))
    with pytest.raises(ParallelismViolation):
        pack(4, bad)


def test_triple_cell_validates(rng):
    eta = _cell3(rng)
    with pytest.raises(Exception):
        triple_cell(eta, eta, HDRefl(_cell3(rng)))


# --- realization ------------------------------------------------------------

def test_realize_identity_low_dims(rng):
    t = gen_term(rng, 6)
    c0 = explicit_cell(0, t)
    assert realize(0, c0) == SigmaCell(0, t)
    c3 = _cell3(rng)
    assert realize(3, c3) == SigmaCell(3, c3.payload)


def test_realize_unfolds_one_layer(rng):
    base = _cell3(rng)
    u = base
    for _ in range(3):  # lift to dimension 6
        u = triple_cell(u, u, HDRefl(u))
    h = gen_hd_tree(rng, u, 3)
    c7 = triple_cell(u, u, HDTrans(HDRefl(u), h))
    image = realize(7, c7)
    expected = SigmaCell(7, HDTrans(HDRefl(realize(6, u)),
                                    hd_map(lambda c: realize(6, c), h)))
    assert image == expected


def test_realize_boundary_random_cells():
    rng = random.Random(3)
    for dim in range(4, 10):
        for _ in range(30):
            cell = gen_rtower_cell(rng, dim)
            assert realize_boundary_check(dim, cell)


def test_realize_boundary_reflexive_to_dim_10(rng):
    cell = _cell3(rng)
    for dim in range(4, 11):
        cell = triple_cell(cell, cell, HDRefl(cell))
        assert realize_boundary_check(dim, cell)


def test_realize_dim9_pentagon_tower(rng):
    # nested reflexive triples over a pentagon 3-cell, realized at dimension 9
    p, q, r, s = gen_composable_seqs(rng, 4, allow_empty=False)
    cell = explicit_cell(3, Pentagon(p, q, r, s))
    for dim in range(4, 10):
        cell = triple_cell(cell, cell, HDRefl(cell))
    assert realize_boundary_check(9, cell)
    image = realize(9, cell)
    assert image.dim == 9 and sigma_source(image) == sigma_target(image)


def test_realize_boundary_detects_corruption(rng):
    eta = _cell3(rng)
    c4 = triple_cell(eta, eta, HDRefl(eta))
    other = triple_cell(eta, eta, HDSymm(HDRefl(eta)))
    # cached endpoint x disagrees with the derivation datum
    corrupted = RTowerCell(5, (c4, c4, HDRefl(other)))
    assert not realize_boundary_check(5, corrupted)


# --- 0-truncation -----------------------------------------------------------

def test_pi0_reflexive():
    seq = pi0_equiv(SPAN_SOURCE, SPAN_SOURCE, 10)
    assert seq is not None and seq.source == seq.target == SPAN_SOURCE


def test_pi0_span_zigzag():
    seq = pi0_equiv(SPAN_SOURCE, SPAN_TARGET, 100)
    assert seq is not None
    assert seq.source == SPAN_SOURCE and seq.target == SPAN_TARGET
    assert SPAN_NF in seq.terms  # the zigzag passes through the normal form
    assert validate_seq(seq)


def test_pi0_not_found():
    assert pi0_equiv(Var(0), Var(1), 10) is None


def test_pi0_fuel():
    omega = App(Lam(App(Var(0), Var(0))), Lam(App(Var(0), Var(0))))
    with pytest.raises(FuelExhausted):
        pi0_equiv(omega, Var(0), 20)


def test_pi0_generated_pairs(rng):
    for _ in range(20):
        m, n = gen_convertible_pair(rng)
        seq = pi0_equiv(m, n, 2000)
        assert seq is not None
        current = m
        for s in seq.steps:
            current = apply_step(current, s)
        assert current == n
    for _ in range(20):
        m, n = gen_separated_pair(rng)
        assert pi0_equiv(m, n, 2000) is None
