"""Shared corpus: seeded random connected grafts with cached oracle reports.

Several suites (and the acceptance gate) compare the pipeline against the
brute-force oracle on the same instances, so the expensive artifacts are
computed once per session.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import pytest

from connjoin import Decision, Graft, OracleReport, decide, oracle_report
from connjoin.graph_core import Graph
from connjoin.tjoin import validate_graft

CORPUS_SIZE = 500


def random_connected_graft(seed: int) -> Graft:
    """Connected multigraph, n <= 8, m <= 14, terminal count even (rarely 0)."""
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    edges = [(rng.randrange(v), v) for v in range(1, n)]  # spanning tree
    for _ in range(rng.randint(0, 14 - (n - 1))):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((min(u, v), max(u, v)))
    k = 0 if seed % 17 == 0 else 2 * rng.randint(1, n // 2)
    return validate_graft(Graph(n, edges), rng.sample(range(n), k))


@dataclass(frozen=True)
class Case:
    seed: int
    graft: Graft
    oracle: OracleReport
    decision: Decision


@pytest.fixture(scope="session")
def corpus() -> list[Case]:
    cases = []
    for seed in range(CORPUS_SIZE):
        graft = random_connected_graft(seed)
        cases.append(Case(seed, graft, oracle_report(graft), decide(graft)))
    return cases
