"""Generators and recognizers for the guaranteed-YES construction classes.

The reconstruction test is the important one: any small graft the rake
recognizer accepts must be expressible as a replayable recipe, so the
recognizer and the generator define the same class.
"""

import random

import pytest

from connjoin.constructive import (PRIMAL, RAKE, ConstructionRecipe,
                                   PrimalWitness, attach_tail, gen_primal,
                                   gen_rake, gen_tailed, gluing_sum, is_primal,
                                   is_rake, replay, replay_witness)
from connjoin.connected_join import decide
from connjoin.decomposition import distance_decomposition, is_strong_comb
from connjoin.distances import f_distance_between, f_distances
from connjoin.errors import StructuralInputError
from connjoin.graph_core import Graph
from connjoin.oracle import oracle_report
from connjoin.tjoin import (Graft, contract_graft, minimum_join, nu,
                            validate_graft)


def edge_multiset(graft):
    return sorted(tuple(sorted(graft.graph.endpoints(e)))
                  for e in range(graft.graph.m))


def same_graft(a, b):
    return (a.graph.n == b.graph.n and a.terminals == b.terminals
            and edge_multiset(a) == edge_multiset(b))


def rake_recipe_steps(graft, r, teeth):
    """Express a recognized rake as construction steps, label-for-label."""
    g = graft.graph
    teeth = sorted(teeth)
    tooth_set = set(teeth)
    steps = [{"op": "star", "root": r, "teeth": teeth}]
    for x in sorted(set(range(g.n)) - tooth_set - {r}):
        targets = sorted(u for u, _ in g.incident(x) if u in tooth_set)
        steps.append({"op": "add_vertex", "vertex": x, "teeth": targets})
    side = [[u, v] for u, v in (g.endpoints(e) for e in range(g.m))
            if u not in tooth_set and v not in tooth_set]
    if side:
        steps.append({"op": "add_edges", "edges": side})
    return steps


def test_is_rake_spec_examples():
    star = validate_graft(Graph(4, [(0, 1), (0, 2), (0, 3)]), {0, 1, 2, 3})
    assert is_rake(star, 0, {1, 2, 3})
    p3 = validate_graft(Graph(3, [(0, 1), (1, 2)]), {0, 2})
    assert is_rake(p3, 1, {0, 2})
    p4 = validate_graft(Graph(4, [(0, 1), (1, 2), (2, 3)]), {0, 3})
    assert not is_rake(p4, 1, {0, 3})  # head does not see tooth 3


def test_is_rake_multiplicity_rules():
    # a doubled head-tooth edge kills the head star as a join
    bad = Graft(Graph(3, [(0, 1), (0, 1), (0, 2), (2, 1)]), {1})
    assert not is_rake(bad, 0, {1})
    # parallel tooth edges elsewhere are fine
    ok = Graft(Graph(3, [(0, 1), (2, 1), (2, 1)]), {0, 1})
    assert is_rake(ok, 0, {1})
    assert same_graft(replay(ConstructionRecipe(
        RAKE, 0, tuple(rake_recipe_steps(ok, 0, {1})))), ok)


def test_is_rake_rejects_wrong_terminals():
    # odd tooth count forces the head into T; {1, 3} leaves it out
    star = validate_graft(Graph(4, [(0, 1), (0, 2), (0, 3)]), {1, 3})
    assert not is_rake(star, 0, {1, 2, 3})
    # even tooth count forbids the head in T
    path = validate_graft(Graph(3, [(1, 0), (1, 2)]), {0, 1})
    assert not is_rake(path, 1, {0, 2})


def test_gen_rake_roundtrip_and_invariants():
    rng = random.Random(7)
    for seed in range(60):
        k = rng.randint(1, 4)
        extra_v = rng.randint(0, 3)
        extra_e = rng.randint(0, 2) if extra_v else 0
        teeth = frozenset(range(1, k + 1))
        graft, recipe = gen_rake(0, teeth, extra_v, extra_e, seed=seed)
        assert is_rake(graft, 0, teeth)
        replayed = replay(recipe)
        assert replayed.graph.edges == graft.graph.edges  # bit-identical
        assert replayed.terminals == graft.terminals
        assert nu(graft) == k
        star = frozenset(e for e in range(graft.graph.m)
                         if 0 in graft.graph.endpoints(e)
                         and (set(graft.graph.endpoints(e)) & teeth))
        assert len(star) == k and len(minimum_join(graft)) == len(star)
        assert is_strong_comb(graft, 0, teeth)
        recipe2 = ConstructionRecipe.from_json(recipe.to_json())
        assert replay(recipe2).graph.edges == graft.graph.edges


def test_gen_rake_validates_input():
    with pytest.raises(StructuralInputError):
        gen_rake(0, [], 0, 0)
    with pytest.raises(StructuralInputError):
        gen_rake(0, [1], -1, 0)
    with pytest.raises(StructuralInputError):
        gen_rake(0, [1], 0, 2)  # side edges need a second non-tooth vertex


def test_recognized_rakes_are_reconstructible():
    # scrambled generated rakes + random small grafts; every recognizer hit
    # must round-trip through a recipe with the original labels
    rng = random.Random(3)
    hits = 0
    candidates = []
    for seed in range(40):
        k = rng.randint(1, 4)
        extra_v = rng.randint(0, 2)
        g, _ = gen_rake(0, range(1, k + 1), extra_v,
                        rng.randint(0, 1) if extra_v else 0, seed=seed)
        perm = list(range(g.graph.n))
        rng.shuffle(perm)
        edges = [(perm[u], perm[v]) for u, v in g.graph.edges]
        candidates.append(Graft(Graph(g.graph.n, edges),
                                {perm[t] for t in g.terminals}))
    for seed in range(200):
        n = rng.randint(2, 6)
        edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(2 * n)]
        t = rng.sample(range(n), rng.randint(0, n))
        candidates.append(Graft(Graph(n, [e for e in edges if e[0] != e[1]]), t))
    for graft in candidates:
        for r in range(graft.graph.n):
            teeth = (graft.terminals - {r} if r in graft.terminals
                     else graft.terminals)
            if not is_rake(graft, r, teeth):
                continue
            hits += 1
            steps = rake_recipe_steps(graft, r, teeth)
            assert same_graft(
                replay(ConstructionRecipe(RAKE, 0, tuple(steps))), graft)
    assert hits >= 45


def test_gluing_sum_golden():
    base = validate_graft(Graph(2, [(0, 1)]), {0, 1})
    part = validate_graft(Graph(3, [(0, 1), (1, 2)]), {0, 2})
    glued, maps = gluing_sum(base, [1], {1: 0}, {1: (part, {1}, 1)},
                             {1: {0: 1}})
    assert glued.graph.n == 4
    assert edge_multiset(glued) == [(0, 2), (1, 2), (2, 3)]
    assert glued.terminals == frozenset({0, 1, 2, 3})  # part root toggled in
    assert maps.base[0] == 0 and maps.parts[1][1] == 2
    assert is_rake(glued, 2, {0, 1, 3})


def test_gluing_sum_single_vertex_part():
    base = validate_graft(Graph(2, [(0, 1)]), {0, 1})
    point = validate_graft(Graph(1, []), set())
    glued, _ = gluing_sum(base, [1], {1: 0}, {1: (point, {0}, 0)},
                          {1: {0: 0}})
    # relabels the site and toggles the part root into T
    assert glued.graph.n == 2
    assert edge_multiset(glued) == [(0, 1)]
    assert glued.terminals == frozenset({0, 1})


def test_gluing_sum_validation():
    base = validate_graft(Graph(3, [(0, 1), (1, 2), (0, 2)]), {0, 1})
    part = validate_graft(Graph(1, []), set())
    rec = {0: (part, {0}, 0)}
    with pytest.raises(StructuralInputError):
        gluing_sum(base, [], {}, {}, {})  # no sites
    with pytest.raises(StructuralInputError):
        gluing_sum(base, [2], {2: 1}, {2: (part, {0}, 0)},
                   {2: {1: 0, 2: 0}})  # site 2 is not a terminal
    with pytest.raises(StructuralInputError):
        gluing_sum(base, [0, 1], {0: 0, 1: 0},
                   {0: rec[0], 1: (part, {0}, 0)},
                   {0: {0: 0, 1: 0}, 1: {0: 0, 2: 0}})  # sites adjacent


def test_gen_primal_witnesses():
    for seed in range(30):
        depth = seed % 3
        witness, recipe = gen_primal(depth, seed=seed)
        graft = witness.graft
        assert replay(recipe).graph.edges == graft.graph.edges
        w2 = replay_witness(recipe)
        assert w2.root == witness.root and w2.a_set == witness.a_set
        assert is_primal(graft, witness.root)
        join = minimum_join(graft)
        dm = f_distances(graft, join, witness.root)
        assert witness.a_set == frozenset(
            v for v in range(graft.graph.n) if dm[v] == 0)
        decision = decide(graft, root=min(graft.terminals))
        assert decision.answer
        if graft.graph.m <= 20:
            assert oracle_report(graft).has_connected


def test_gen_primal_a_pairs_nonnegative():
    # no top-level pair may see a negative path between them
    for seed in range(12):
        witness, _ = gen_primal(1 + seed % 2, seed=seed)
        join = minimum_join(witness.graft)
        tops = sorted(witness.a_set)
        for i, x in enumerate(tops):
            for y in tops[i:]:
                assert f_distance_between(witness.graft, join, x, y) >= 0


def test_gen_primal_decomposition_echo():
    # the initial component has a single top piece, and contracting each
    # depth child collapses the witness back to a rake around the root
    for seed in range(12):
        witness, _ = gen_primal(1 + seed % 3, seed=seed)
        graft = witness.graft
        join = minimum_join(graft)
        dd = distance_decomposition(graft, join, witness.root)
        initial = dd.initial
        assert initial.vertices == frozenset(range(graft.graph.n))
        assert len(initial.q_children) == 1
        if not initial.d_children:
            continue
        blobs = [dd.component(c).vertices for c in initial.d_children]
        contracted, cmap = contract_graft(graft, blobs)
        head = cmap.vertex_map[witness.root]
        teeth = {cmap.vertex_map[min(b)] for b in blobs}
        assert is_rake(contracted, head, teeth)


def test_gen_primal_bounds():
    with pytest.raises(StructuralInputError):
        gen_primal(5)
    with pytest.raises(StructuralInputError):
        gen_primal(1, width=0)


def test_attach_tail_cases():
    witness, _ = gen_primal(1, seed=4)
    base = witness.graft
    # empty tail: graft unchanged
    empty = attach_tail(witness, Graph(0, []), [])
    assert same_graft(empty, base)
    # one extra vertex bridged to the root: still YES
    one = attach_tail(witness, Graph(1, []), [(witness.root, 0)])
    assert one.graph.n == base.graph.n + 1
    assert decide(one).answer
    # a triangle hung by two bridges
    tri = attach_tail(witness, Graph(3, [(0, 1), (1, 2), (0, 2)]),
                      [(witness.root, 0), (witness.root, 2)])
    assert decide(tri).answer
    assert tri.terminals == base.terminals
    with pytest.raises(StructuralInputError):
        bad_end = max(base.graph.n - 1, 0)
        while bad_end in witness.a_set:
            bad_end -= 1
        attach_tail(witness, Graph(1, []), [(bad_end, 0)])
    with pytest.raises(StructuralInputError):
        attach_tail(witness, Graph(1, []), [(witness.root, 3)])


def test_gen_tailed_roundtrip():
    for seed in range(20):
        graft, root, recipe = gen_tailed(seed % 3, seed=seed)
        assert replay(recipe).graph.edges == graft.graph.edges
        assert replay(recipe).terminals == graft.terminals
        assert decide(graft).answer
        assert 0 <= root < graft.graph.n


def test_strong_comb_needs_rake_for_covered_root():
    # a strong comb whose root misses two teeth: no connected minimum join
    # can cover the root, exactly because it is not a rake
    c6 = validate_graft(Graph(6, [(v, (v + 1) % 6) for v in range(6)]),
                        {0, 1, 3, 5})
    assert is_strong_comb(c6, 0, {1, 3, 5})
    assert not is_rake(c6, 0, {1, 3, 5})
    assert 0 not in oracle_report(c6).coverable
    # while every generated rake covers its head
    for seed in range(10):
        graft, _ = gen_rake(0, range(1, 2 + seed % 3), seed % 3, 0, seed=seed)
        assert 0 in oracle_report(graft).coverable
        if 0 in graft.terminals:
            assert 0 in decide(graft, root=0).coverable


def test_replay_kind_guards():
    _, recipe = gen_rake(0, [1], 0, 0)
    with pytest.raises(StructuralInputError):
        replay_witness(recipe)
    with pytest.raises(StructuralInputError):
        ConstructionRecipe("SPANNER", 0, ())


def test_primal_witness_guard():
    g = validate_graft(Graph(2, [(0, 1)]), {0, 1})
    with pytest.raises(StructuralInputError):
        PrimalWitness(g, 0, frozenset({1}))
