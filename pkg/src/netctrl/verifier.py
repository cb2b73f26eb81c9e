"""Exhaustive and sampled harnesses tying structural detectors to the controllability tests.

Each harness returns a :class:`VerificationRun`; a correct implementation
reports zero counterexamples. Sampled regimes draw from ``random.Random``
seeded with :data:`DEFAULT_SEED` unless told otherwise, so runs replay.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from netctrl.controllability import (
    kalman_controllable,
    leader_vanishing_eigenvectors,
    shared_eigenvalue_test,
)
from netctrl.destructive import (
    QcdCatalog,
    _outside_condition,
    all_dcd_pairs,
    all_tcd_triples,
    classify_tcd_triple,
    default_catalog,
    eigenvector_support_search,
    induced_topology,
    is_dcd_pair,
    qcd_quads_5,
)
from netctrl.graph import (
    Graph,
    canonical_form,
    enumerate_connected_graphs,
    follower_partition,
    graph_from_mask,
    is_connected,
)
from netctrl import serialize

DEFAULT_SEED = 20240601
SUITES = ("prop1", "t1", "t2", "fact1", "t4")


class UnknownSuite(ValueError):
    pass


@dataclass(frozen=True)
class Counterexample:
    graph: Graph
    subject: tuple
    details: str

    def to_dict(self):
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "subject": list(self.subject),
            "details": self.details,
        }


@dataclass
class VerificationRun:
    theorem: str
    instance_count: int = 0
    agreements: int = 0
    counterexamples: list = field(default_factory=list)
    elapsed: float = 0.0
    notes: dict = field(default_factory=dict)

    def record(self, ok: bool, g: Graph, subject, details=""):
        self.instance_count += 1
        if ok:
            self.agreements += 1
        else:
            self.counterexamples.append(Counterexample(g, tuple(subject), details))

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def finish(self, started):
        self.elapsed = time.perf_counter() - started
        self.counterexamples.sort(key=lambda c: (canonical_form(c.graph).hex(), c.subject))
        assert self.agreements + len(self.counterexamples) == self.instance_count
        return self

    def summary(self) -> str:
        return (
            f"{self.theorem}: {self.instance_count} instances, {self.agreements} agree, "
            f"{len(self.counterexamples)} counterexamples"
        )

    def to_dict(self) -> dict:
        # elapsed time is run metadata and stays out of the payload
        return serialize.document("verification", {
            "theorem": self.theorem,
            "instances": self.instance_count,
            "agreements": self.agreements,
            "notes": dict(self.notes),
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        })


def random_connected_graph(n: int, rng: random.Random, density: float = 0.5) -> Graph:
    m = n * (n - 1) // 2
    while True:
        mask = sum(1 << i for i in range(m) if rng.random() < density)
        g = graph_from_mask(n, mask)
        if is_connected(g):
            return g


def _leader_sets(n):
    verts = range(1, n + 1)
    for size in range(1, n):
        yield from combinations(verts, size)


def verify_prop1(n_max: int, samples: int = 300, seed: int = DEFAULT_SEED,
                 eigenvectors: bool = False) -> VerificationRun:
    """Kalman rank test versus the shared-eigenvalue (gcd) test.

    Exhaustive for n <= 5 over every nonempty proper leader set; for n = 6, 7
    ``samples`` random (graph, leader set) pairs per size. Every disagreement
    is a counterexample. The notes split them by leader count and record
    disagreements in the impossible direction (Kalman uncontrollable without
    a shared root). With ``eigenvectors`` the leader-vanishing eigenvector
    search is also compared with Kalman on every instance.
    """
    if not 2 <= n_max <= 7:
        raise ValueError("n_max must lie in 2..7")
    run = VerificationRun("prop1")
    started = time.perf_counter()
    notes = {"single_leader_disagreements": 0, "multi_leader_disagreements": 0,
             "uncontrollable_without_shared_root": 0}
    if eigenvectors:
        notes["eigenvector_disagreements"] = 0

    def check(g, leaders):
        kal = kalman_controllable(follower_partition(g, leaders))
        shared, common = shared_eigenvalue_test(g, leaders)
        agree = kal != shared
        if not agree:
            key = "single_leader_disagreements" if len(leaders) == 1 else "multi_leader_disagreements"
            notes[key] += 1
            if not kal:
                notes["uncontrollable_without_shared_root"] += 1
        if eigenvectors:
            certs = leader_vanishing_eigenvectors(g, leaders) if shared else []
            notes["eigenvector_disagreements"] += kal == bool(certs)
        run.record(agree, g, leaders, f"kalman={kal} shared_root={shared} gcd={common}")

    for n in range(2, min(n_max, 5) + 1):
        for g in enumerate_connected_graphs(n):
            for leaders in _leader_sets(n):
                check(g, leaders)
    rng = random.Random(seed)
    for n in range(6, n_max + 1):
        for _ in range(samples):
            g = random_connected_graph(n, rng)
            size = rng.randint(1, n - 1)
            check(g, tuple(sorted(rng.sample(range(1, n + 1), size))))
    run.notes.update(notes)
    return run.finish(started)


def _existence(g, pool):
    """(some nonempty subset of pool controls, some single vertex of pool controls)."""
    single = any(kalman_controllable(follower_partition(g, (v,))) for v in pool)
    if single:
        return True, True
    for size in range(2, len(pool) + 1):
        for leaders in combinations(pool, size):
            if kalman_controllable(follower_partition(g, leaders)):
                return True, False
    return False, False


def _theorem_pairs(n):
    if not 3 <= n <= 5:
        raise ValueError("exhaustive leader-existence checks run for 3 <= n <= 5")


def verify_theorem1(n: int) -> VerificationRun:
    """Leader existence from outside a pair versus the DCD test, any-subset reading."""
    _theorem_pairs(n)
    run = VerificationRun("t1")
    started = time.perf_counter()
    single_mismatch = 0
    for g in enumerate_connected_graphs(n):
        for p, q in combinations(range(1, n + 1), 2):
            pool = [v for v in range(1, n + 1) if v not in (p, q)]
            any_ok, single_ok = _existence(g, pool)
            structural = is_dcd_pair(g, p, q, check_connected=False) is None
            run.record(any_ok == structural, g, (p, q), f"leader_exists={any_ok} no_dcd={structural}")
            single_mismatch += single_ok != structural
    run.notes["single_leader_mismatches"] = single_mismatch
    return run.finish(started)


def verify_theorem2(n: int) -> VerificationRun:
    """Leader existence from outside a triple versus (no TCD and no DCD inside it)."""
    _theorem_pairs(n)
    if n < 4:
        raise ValueError("a triple needs at least one outside leader: n >= 4")
    run = VerificationRun("t2")
    started = time.perf_counter()
    single_mismatch = 0
    for g in enumerate_connected_graphs(n):
        for triple in combinations(range(1, n + 1), 3):
            pool = [v for v in range(1, n + 1) if v not in triple]
            any_ok, single_ok = _existence(g, pool)
            no_tcd = classify_tcd_triple(g, *triple, check_connected=False) is None
            no_dcd = all(is_dcd_pair(g, a, b, check_connected=False) is None for a, b in combinations(triple, 2))
            structural = no_tcd and no_dcd
            run.record(
                any_ok == structural, g, triple,
                f"leader_exists={any_ok} no_tcd={no_tcd} no_dcd={no_dcd}",
            )
            single_mismatch += single_ok != structural
    run.notes["single_leader_mismatches"] = single_mismatch
    return run.finish(started)


def _fact1_check(run, g, counts):
    for triple in combinations(range(1, g.n + 1), 3):
        wit = eigenvector_support_search(g, triple, check_connected=False)
        cert = classify_tcd_triple(g, *triple, check_connected=False)
        if wit is None:
            run.record(cert is None, g, triple, "classifier reports a TCD the oracle rejects")
            continue
        counts["witnesses"] += 1
        outside_ok = _outside_condition(g, triple)
        topo, _ = induced_topology(g, *triple)
        ok = outside_ok and cert is not None and cert.topology_class == topo
        run.record(
            ok, g, triple,
            f"support-3 eigenvector with outside_condition={outside_ok} "
            f"classified={cert.topology_class if cert else None} induced={topo}",
        )


def verify_fact1(n: int, samples: int = 10_000, seed: int = DEFAULT_SEED) -> VerificationRun:
    """Support-3 eigenvectors only arise on triples of classes I-IV.

    Exhaustive over every size 4..n when ``n <= 5`` (a triple needs an
    outside vertex); ``n = 6`` also runs the exhaustive sizes and then
    ``samples`` random 6-vertex graphs.
    """
    if not 4 <= n <= 6:
        raise ValueError("n must lie in 4..6")
    run = VerificationRun("fact1")
    started = time.perf_counter()
    counts = {"witnesses": 0, "sampled_graphs": 0}
    for size in range(4, min(n, 5) + 1):
        for g in enumerate_connected_graphs(size):
            _fact1_check(run, g, counts)
    if n == 6:
        rng = random.Random(seed)
        for _ in range(samples):
            _fact1_check(run, random_connected_graph(6, rng), counts)
            counts["sampled_graphs"] += 1
    run.notes.update(counts)
    return run.finish(started)


def verify_theorem4(catalog: QcdCatalog | None = None) -> VerificationRun:
    """All 728 connected 5-vertex graphs, each single leader: Kalman versus the structural verdict."""
    catalog = catalog if catalog is not None else default_catalog()
    run = VerificationRun("t4")
    started = time.perf_counter()
    graphs = 0
    for g in enumerate_connected_graphs(5):
        graphs += 1
        dcd = [(c.p, c.q) for c in all_dcd_pairs(g)]
        tcd = [c.nodes for c in all_tcd_triples(g)]
        qcd = {c.k for c in qcd_quads_5(g, catalog)}
        for leader in range(1, 6):
            kal = kalman_controllable(follower_partition(g, (leader,)))
            has_dcd = any(leader not in pair for pair in dcd)
            has_tcd = any(leader not in tri for tri in tcd)
            has_qcd = leader in qcd
            structural = not (has_dcd or has_tcd or has_qcd)
            run.record(
                kal == structural, g, (leader,),
                f"kalman={kal} dcd={has_dcd} tcd={has_tcd} qcd={has_qcd}",
            )
    run.notes["graphs"] = graphs
    run.notes["catalog_classes"] = catalog.class_count
    return run.finish(started)


def run_suite(name: str, n: int | None = None, seed: int = DEFAULT_SEED) -> list[VerificationRun]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, n, seed)]
    if name == "prop1":
        return [verify_prop1(n or 5, seed=seed)]
    if name == "t1":
        return [verify_theorem1(m) for m in ([n] if n else (3, 4, 5))]
    if name == "t2":
        return [verify_theorem2(m) for m in ([n] if n else (4, 5))]
    if name == "fact1":
        return [verify_fact1(n or 5, seed=seed)]
    if name == "t4":
        return [verify_theorem4()]
    raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
