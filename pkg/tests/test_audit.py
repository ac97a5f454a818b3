from hyperlap.audit import run_checks
from hyperlap.generate import generate, plant_duplicate, plant_twin, random_hypergraph

from conftest import random_instance, triangle_motif


def failures(results):
    return [(r.name, r.detail) for r in results if not r.passed]


def test_random_instances_pass(rng):
    for _ in range(60):
        assert failures(run_checks(random_instance(rng, 8, 8))) == []


def test_planted_structures_pass(rng):
    for planted in ("twins", "duplicates", "involution", "bipartition"):
        for seed in range(8):
            H, tau = generate(seed, 7, 6, planted=planted)
            assert failures(run_checks(H, tau)) == [], (planted, seed)


def test_twins_and_duplicates_pass(rng):
    for _ in range(20):
        base = random_hypergraph(rng, 4, 3, connected=True)
        assert failures(run_checks(plant_twin(rng, base))) == []
        assert failures(run_checks(plant_duplicate(rng, base))) == []


def test_check_names():
    names = [r.name for r in run_checks(triangle_motif())]
    assert len(names) == len(set(names))
    assert {"trace", "adjointness", "interlacing", "cardinality-bounds"} <= set(names)
