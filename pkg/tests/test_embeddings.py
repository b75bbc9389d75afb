from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

import precohom.embeddings as emb
from precohom.algebra import StructurePresentation, regular_bimodule, zero_bimodule
from precohom.complexes import DendSpace, DenseSpace
from precohom.complexes.cochains import Cochain
from precohom.embeddings import (EmbeddingContext, InsufficientTruncation, NotAlternating, UnsupportedDegree,
                                 chain_map_residual, dend_pattern, embedding_matrix, generator_tuples, psi_dend,
                                 psi_prelie, psi_prelie_form, psi_rank)
from precohom.freeperm import FreePermMonomial, free_perm_truncated
from precohom.linalg import rank
from precohom.rng import SplitMix64, random_cochain

seeds = st.integers(0, 2**32)


def pos(ctx, lead, tail, b):
    return ctx.free.index(FreePermMonomial(lead, tuple(sorted(tail)))) * ctx.right_factor.dim + b


def module_vec(ctx, terms):
    """Dense tensor-module vector from [(perm position, module index, coeff)]."""
    width = ctx.right_module.module_dim
    v = [Fraction(0)] * ctx.tensor_module.module_dim
    for x, k, c in terms:
        v[x * width + k] += c
    return tuple(v)


def test_dend_patterns():
    assert [dend_pattern(2, r) for r in (1, 2)] == [(0, 1), (1, 0)]
    assert [dend_pattern(3, r) for r in (1, 2, 3)] == [(0, 1, 2), (1, 0, 2), (2, 1, 0)]


def test_psi_dend_degree2_formula(dend2):
    ctx = EmbeddingContext.build(free_perm_truncated(2, 2), dend2)
    f = random_cochain(DendSpace(2, 2, 2), SplitMix64(9))
    F = psi_dend(f, ctx)
    x1x2 = ctx.free.index(FreePermMonomial(0, (1,)))
    x2x1 = ctx.free.index(FreePermMonomial(1, (0,)))
    for b1 in range(2):
        for b2 in range(2):
            want = [(x1x2, k, c) for k, c in enumerate(f.at(1, b1, b2))]
            want += [(x2x1, k, c) for k, c in enumerate(f.at(2, b1, b2))]
            assert F.at(pos(ctx, 0, (), b1), pos(ctx, 1, (), b2)) == module_vec(ctx, want)


def test_psi_dend_degree3_patterns(dend2):
    ctx = EmbeddingContext.build(free_perm_truncated(3, 3), dend2)
    f = random_cochain(DendSpace(3, 2, 2), SplitMix64(4))
    F = psi_dend(f, ctx)
    monos = {1: FreePermMonomial(0, (1, 2)), 2: FreePermMonomial(1, (0, 2)), 3: FreePermMonomial(2, (0, 1))}
    bs = (1, 0, 1)
    want = [(ctx.free.index(monos[r]), k, c) for r in (1, 2, 3) for k, c in enumerate(f.at(r, *bs))]
    args = [pos(ctx, i, (), b) for i, b in enumerate(bs)]
    assert F.at(*args) == module_vec(ctx, want)


def test_psi_of_zero_is_zero(dend2, prelie_p):
    ctx = EmbeddingContext.build(free_perm_truncated(2, 3), dend2)
    assert psi_dend(DendSpace(2, 2, 2).zero(), ctx).materialize().is_zero()
    ctx = EmbeddingContext.build(free_perm_truncated(2, 3), prelie_p)
    assert psi_prelie(DenseSpace(2, 2, 2).zero(), ctx).materialize().is_zero()


def test_psi_prelie_degree2_example(prelie_p):
    ctx = EmbeddingContext.build(free_perm_truncated(2, 2), prelie_p)
    a, c = 3, 5
    f = Cochain.build(2, 2, 2, lambda t: {(0, 1): [a, 0], (1, 0): [c, 0]}.get(t, [0, 0]))
    xy = ctx.free.index(FreePermMonomial(0, (1,)))
    yx = ctx.free.index(FreePermMonomial(1, (0,)))
    got = psi_prelie(f, ctx).at(pos(ctx, 0, (), 0), pos(ctx, 1, (), 1))
    # a xy (x) e1 - c yx (x) e1: the transposed term enters with a minus sign
    assert got == module_vec(ctx, [(xy, 0, a), (yx, 0, -c)])
    # a plus sign would make the value symmetric under swapping the arguments
    assert psi_prelie(f, ctx).at(pos(ctx, 1, (), 1), pos(ctx, 0, (), 0)) == tuple(-x for x in got)


def test_psi_prelie_degree1_identity(prelie_p):
    ctx = EmbeddingContext.build(free_perm_truncated(1, 1), prelie_p)
    f = Cochain.build(1, 2, 2, lambda t: [int(t[0] == 0), int(t[0] == 1)])
    F = psi_prelie(f, ctx)
    for b in range(2):
        assert F.at(pos(ctx, 0, (), b)) == module_vec(ctx, [(0, b, 1)])


def tail_antisymmetric(n, rng, dim=2):
    """Random degree-n cochain; for n = 3 antisymmetrised in the last two arguments."""
    h = random_cochain(DenseSpace(n, dim, dim), rng)
    if n < 3:
        return h
    return Cochain.build(3, dim, dim, lambda t: [x - y for x, y in zip(h.at(*t), h.at(t[0], t[2], t[1]))])


@pytest.mark.parametrize("n", [2, 3])
def test_psi_prelie_is_alternating(prelie_p, n):
    ctx = EmbeddingContext.build(free_perm_truncated(3, 3), prelie_p)
    f = tail_antisymmetric(n, SplitMix64(n))
    F = psi_prelie(f, ctx)
    args = [pos(ctx, i, (), i % 2) for i in range(n)]
    base = F.at(*args)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        assert F.at(*[args[p] for p in perm]) == tuple(sign * x for x in base)


def test_reversed_term_needs_minus_sign(prelie_p, monkeypatch):
    ctx = EmbeddingContext.build(free_perm_truncated(3, 3), prelie_p)
    rng = SplitMix64(21)
    f3 = tail_antisymmetric(3, rng)
    args = (pos(ctx, 0, (), 0), pos(ctx, 1, (), 1), pos(ctx, 2, (), 0))
    swapped = (args[2], args[1], args[0])
    plus = psi_prelie_form(f3.form, ctx, 3, last_sign=1)
    assert forms_neg(plus(args)) != plus(swapped)
    minus = psi_prelie_form(f3.form, ctx, 3, last_sign=-1)
    assert forms_neg(minus(args)) == minus(swapped)
    # and the degree-2 chain-map identity, which uses the degree-3 map, breaks with +1
    f2 = random_cochain(DenseSpace(2, 2, 2), rng)
    assert chain_map_residual(f2, ctx).is_zero()
    monkeypatch.setattr(emb, "PRELIE_LAST_SIGN", 1)
    assert not chain_map_residual(f2, ctx).is_zero()


def forms_neg(form):
    return {k: -v for k, v in form.items()}


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(1, 3))
def test_psi_dend_is_linear(dend2, seed, n):
    ctx = EmbeddingContext.build(free_perm_truncated(2, n), dend2)
    rng = SplitMix64(seed)
    sp = DendSpace(n, 2, 2)
    f, g = random_cochain(sp, rng), random_cochain(sp, rng)
    s = rng.coefficient()
    lhs, pf, pg = psi_dend(f + g.scaled(s), ctx), psi_dend(f, ctx), psi_dend(g, ctx)
    for t in generator_tuples(ctx, n):
        assert lhs.at(*t) == tuple(a + s * b for a, b in zip(pf.at(*t), pg.at(*t)))


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(1, 2))
def test_psi_prelie_is_linear(prelie_p, seed, n):
    ctx = EmbeddingContext.build(free_perm_truncated(2, n), prelie_p)
    rng = SplitMix64(seed)
    sp = DenseSpace(n, 2, 2)
    f, g = random_cochain(sp, rng), random_cochain(sp, rng)
    lhs = psi_prelie(f - g, ctx).materialize()
    assert lhs == psi_prelie(f, ctx).materialize() - psi_prelie(g, ctx).materialize()


def test_chain_map_examples(dend2, prelie_p):
    rng = SplitMix64(2024)
    ctx = EmbeddingContext.build(free_perm_truncated(3, 3), dend2)
    assert chain_map_residual(random_cochain(DendSpace(2, 2, 2), rng), ctx).is_zero()
    ctx = EmbeddingContext.build(free_perm_truncated(3, 3), prelie_p)
    assert chain_map_residual(random_cochain(DenseSpace(2, 2, 2), rng), ctx).is_zero()
    assert chain_map_residual(DenseSpace(2, 2, 2).zero(), ctx).is_zero()


def test_chain_map_detects_a_broken_psi(dend2, monkeypatch):
    ctx = EmbeddingContext.build(free_perm_truncated(2, 3), dend2)
    f = random_cochain(DendSpace(2, 2, 2), SplitMix64(8))
    monkeypatch.setattr(emb, "dend_pattern", lambda n, r: tuple(range(n)))
    assert not chain_map_residual(f, ctx).is_zero()


def test_psi_rank_examples(dend2):
    ctx = EmbeddingContext.build(free_perm_truncated(2, 2), dend2)
    assert psi_rank(ctx, n=2) == (16, True)
    zero = StructurePresentation.build("perm", 1, {}).mark_validated()
    r, inj = psi_rank(EmbeddingContext.build(zero, dend2), n=2)
    assert (r, inj) == (0, False)
    ctx0 = EmbeddingContext.build(free_perm_truncated(2, 2), dend2, zero_bimodule(dend2, 0))
    assert psi_rank(ctx0, n=2)[0] == 0


def test_psi_rank_matches_embedding_matrix(dend2, prelie_p):
    for B in (dend2, prelie_p):
        ctx = EmbeddingContext.build(free_perm_truncated(2, 2), B)
        for n in (1, 2):
            assert psi_rank(ctx, n=n)[0] == rank(embedding_matrix(ctx, n))


def test_unsupported_and_insufficient(prelie_p, dend2):
    ctx = EmbeddingContext.build(free_perm_truncated(2, 4), prelie_p)
    with pytest.raises(UnsupportedDegree):
        chain_map_residual(random_cochain(DenseSpace(3, 2, 2), SplitMix64(1)), ctx)
    with pytest.raises(UnsupportedDegree):
        psi_prelie(DenseSpace(4, 2, 2).zero(), ctx)
    with pytest.raises(UnsupportedDegree):
        psi_rank(ctx, n=4)
    with pytest.raises(NotAlternating):
        psi_prelie(random_cochain(DenseSpace(3, 2, 2), SplitMix64(3)), ctx)
    small = EmbeddingContext.build(free_perm_truncated(1, 2), dend2)
    with pytest.raises(InsufficientTruncation):
        chain_map_residual(DendSpace(2, 2, 2).zero(), small)
