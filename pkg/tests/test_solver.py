import math

import numpy as np
import pytest

from burnlab.engine import INCOMPLETE, simulate
from burnlab.generators import gen_gnp, gen_structured
from burnlab.graph import build_graph
from burnlab.solver import (
    BoundCertificate,
    UnsolvedError,
    b2_certificate,
    burning_number_bruteforce,
    burning_number_exact,
    greedy_schedule,
    is_b_two,
    lower_bound_ballsum,
    upper_bound_center,
)


def path(n):
    return gen_structured("path", 1, n)


def k_n(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def check_witness(g, res):
    tr = simulate(g, res.witness)
    assert tr.completion_round is not INCOMPLETE
    assert tr.completion_round <= res.b


def test_bruteforce_known_values():
    assert burning_number_bruteforce(build_graph(1, [])).b == 1
    for n in (2, 3, 5, 8):
        assert burning_number_bruteforce(k_n(n)).b == 2
    assert burning_number_bruteforce(path(9)).b == 3
    assert burning_number_bruteforce(cycle(5)).b == 3
    assert burning_number_bruteforce(cycle(4)).b == 2  # = P2 x P2


def test_bruteforce_cap():
    with pytest.raises(ValueError):
        burning_number_bruteforce(path(11))
    burning_number_bruteforce(path(11), cap=11)


def test_bruteforce_witness_is_strict_and_fast_enough():
    res = burning_number_bruteforce(path(9))
    assert res.witness.strictness == "strict"
    check_witness(path(9), res)
    assert res.nodes_explored > 0 and res.elapsed >= 0


def test_exact_paths_are_ceil_sqrt():
    for n in (1, 2, 3, 4, 9, 10, 16, 17, 25, 50, 81, 82, 100):
        assert burning_number_exact(path(n)).b == math.ceil(math.sqrt(n)), n


def test_exact_matches_bruteforce_random():
    for seed in range(30):
        n = 2 + seed % 8
        p = (0.1, 0.25, 0.5)[seed % 3]
        g = gen_gnp(n, p, seed).graph  # disconnected cases included
        ex = burning_number_exact(g)
        bf = burning_number_bruteforce(g)
        assert ex.b == bf.b, (seed, n, p)
        check_witness(g, ex)
        check_witness(g, bf)


def test_exact_beats_greedy_when_it_overshoots():
    g = gen_gnp(12, 0.18, 51).graph
    _, cert = greedy_schedule(g)
    ex = burning_number_exact(g)
    assert (ex.b, cert.value) == (3, 4)
    assert ex.nodes_explored > 0
    check_witness(g, ex)


def test_exact_disconnected():
    # radii 2,1,0 reach at most 2+2+1 = 5 of the 6 vertices, so b = 4
    g = build_graph(6, [(0, 1), (2, 3), (4, 5)])
    ex = burning_number_exact(g)
    assert ex.b == burning_number_bruteforce(g).b == 4
    check_witness(g, ex)


def test_exact_grid_five_by_five():
    g = gen_structured("grid", 5, 5)
    assert burning_number_exact(g).b == 4


def test_node_budget_aborts():
    g = gen_gnp(12, 0.18, 51).graph
    with pytest.raises(UnsolvedError) as info:
        burning_number_exact(g, node_budget=1)
    assert info.value.nodes_explored > 1


def test_torus_burns_no_later_than_grid():
    for m, n in ((3, 3), (3, 4), (4, 4), (3, 5)):
        bt = burning_number_exact(gen_structured("torus", m, n)).b
        bg = burning_number_exact(gen_structured("grid", m, n)).b
        assert bt <= bg, (m, n)


def test_ballsum_lower_bound_values():
    cert = lower_bound_ballsum(path(100))
    assert cert.kind == "ballsum_lower" and cert.value == 10
    maxima = cert.evidence["radius_maxima"]
    assert maxima[:3] == (1, 3, 5)
    assert sum(maxima[:-1]) < 100 <= sum(maxima)
    assert lower_bound_ballsum(k_n(7)).value == 2
    assert lower_bound_ballsum(gen_structured("grid", 10, 10)).value == 6
    assert lower_bound_ballsum(build_graph(1, [])).value == 1


def test_ballsum_is_a_true_lower_bound():
    for seed in range(12):
        g = gen_gnp(9, 0.3, seed).graph
        assert lower_bound_ballsum(g).value <= burning_number_bruteforce(g).b


def test_center_upper_bound_values():
    cert = upper_bound_center(path(9))
    assert cert.kind == "eccentricity_upper"
    assert cert.value == 5 and cert.evidence["vertex"] == 4
    assert upper_bound_center(cycle(6)).value == 4
    star = build_graph(6, [(0, i) for i in range(1, 6)])
    assert upper_bound_center(star).value == 2
    assert upper_bound_center(star).evidence["vertex"] == 0


def test_center_requires_connected():
    with pytest.raises(ValueError):
        upper_bound_center(build_graph(3, [(0, 1)]))


def test_sandwich_on_random_connected_graphs():
    done = 0
    seed = 0
    while done < 12:
        g = gen_gnp(11, 0.3, seed).graph
        seed += 1
        from burnlab.graph import bfs_distances

        if bfs_distances(g, 0).reachable() < g.n:
            continue
        done += 1
        b = burning_number_exact(g).b
        _, gcert = greedy_schedule(g)
        assert lower_bound_ballsum(g).value <= b
        assert b <= upper_bound_center(g).value
        assert b <= gcert.value


def test_greedy_known_schedules():
    sched, cert = greedy_schedule(path(9))
    assert cert.value == 3 and sched.sources == (2, 6, 8)
    assert cert.kind == "greedy_upper"
    sched, cert = greedy_schedule(k_n(6))
    assert cert.value == 2
    check = simulate(k_n(6), sched)
    assert check.completion_round <= 2


def test_greedy_gap_small_on_sparse_samples():
    gaps = []
    for seed in range(8):
        g = gen_gnp(50, 0.1, seed).graph
        _, cert = greedy_schedule(g)
        gaps.append(cert.value - burning_number_exact(g).b)
    assert all(0 <= gap <= 2 for gap in gaps)


def test_is_b_two():
    assert is_b_two(k_n(5))
    assert is_b_two(build_graph(5, [(0, i) for i in range(1, 5)]))
    assert is_b_two(build_graph(2, []))  # two rounds, one ignition each
    assert not is_b_two(cycle(5))
    assert burning_number_bruteforce(cycle(5)).b == 3
    with pytest.raises(ValueError):
        is_b_two(build_graph(1, []))


def test_b2_matches_exact_on_small_graphs():
    for seed in range(40):
        n = 2 + seed % 7
        g = gen_gnp(n, 0.4, seed).graph
        assert is_b_two(g) == (burning_number_exact(g).b == 2), seed


def test_b2_certificate_payload():
    star = build_graph(5, [(0, i) for i in range(1, 5)])
    cert = b2_certificate(star)
    assert cert.kind == "b2_characterization" and cert.value == 2
    assert cert.evidence == {"vertex": 0, "degree": 4}
    assert b2_certificate(cycle(5)) is None


def test_certificate_kind_is_checked():
    with pytest.raises(ValueError):
        BoundCertificate("vibes", 3, {})
