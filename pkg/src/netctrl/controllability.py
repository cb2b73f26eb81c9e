"""Leader-follower controllability: Kalman rank, shared-eigenvalue test, certificates.

The verdict is the Kalman rank test. It is cross-checked against the
leader-vanishing eigenvector search (uncontrollable exactly when such an
eigenvector exists) and, for a single leader, against gcd(char F, char L).
With two or more leaders a shared root of char F and char L is necessary
for uncontrollability but not sufficient: the path 2-1-3 with leaders {1, 2}
has F = [1] sharing the root 1 with L yet is controllable.
Any disagreement among the exact checks raises :class:`InconsistentVerdict`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Union

from netctrl.exactalg import (
    GRAPH_FACTOR_DEGREE,
    DimensionMismatch,
    FieldElement,
    IntegerPolynomial,
    NumberField,
    char_poly,
    distinct_factors,
    null_space,
    poly_gcd,
    rational_rank,
    verify_eigenpair,
)
from netctrl.graph import (
    Graph,
    Partition,
    follower_partition,
    laplacian,
    normalize_leaders,
    require_connected,
)

Scalar = Union[Fraction, FieldElement]


class InconsistentVerdict(RuntimeError):
    """The two exact controllability tests disagree; always a bug."""


@dataclass(frozen=True)
class EigCertificate:
    """Laplacian eigenpair whose vector vanishes on every leader."""

    eigenvalue: Scalar
    vector: tuple
    support: tuple[int, ...]
    modulus: IntegerPolynomial

    def verify(self, g: Graph) -> bool:
        return verify_eigenpair(laplacian(g), self.eigenvalue, list(self.vector))


@dataclass(frozen=True)
class ControllabilityReport:
    graph: Graph
    leaders: tuple[int, ...]
    kalman_controllable: bool
    shared_eigenvalue_found: bool
    gcd_poly: IntegerPolynomial
    certificates: tuple[EigCertificate, ...] = field(default=())

    def __post_init__(self):
        if self.kalman_controllable == bool(self.certificates):
            raise InconsistentVerdict(
                f"Kalman rank says controllable={self.kalman_controllable} but "
                f"{len(self.certificates)} leader-vanishing eigenvectors were found "
                f"for {self.graph} with leaders {self.leaders}"
            )
        if self.certificates and not self.shared_eigenvalue_found:
            raise InconsistentVerdict("a leader-vanishing eigenvector forces a shared root of char F and char L")
        if len(self.leaders) == 1 and self.kalman_controllable == self.shared_eigenvalue_found:
            raise InconsistentVerdict(
                f"single leader {self.leaders[0]}: Kalman controllable={self.kalman_controllable} "
                f"but shared root found={self.shared_eigenvalue_found} for {self.graph}"
            )

    @property
    def controllable(self) -> bool:
        return self.kalman_controllable


def controllability_matrix(p: Partition) -> list[list[int]]:
    """[R | FR | ... | F^(nf-1) R] as integer rows."""
    nf = p.n_followers
    blocks = []
    cur = [list(r) for r in p.R]
    for _ in range(nf):
        blocks.append(cur)
        cur = [
            [sum(p.F[i][k] * cur[k][j] for k in range(nf)) for j in range(len(p.leaders))]
            for i in range(nf)
        ]
    return [sum((b[i] for b in blocks), []) for i in range(nf)]


def kalman_controllable(p: Partition) -> bool:
    return rational_rank(controllability_matrix(p)) == p.n_followers


def shared_eigenvalue_test(g: Graph, leaders: Iterable[int]) -> tuple[bool, IntegerPolynomial]:
    """(found, gcd) where found means char F and char L share a root.

    For one leader this is exactly uncontrollability; for more leaders it is a
    necessary condition only.
    """
    require_connected(g)
    p = follower_partition(g, leaders)
    common = poly_gcd(char_poly(p.F), char_poly(laplacian(g)))
    return common.degree >= 1, common


def _eigen_field(f: IntegerPolynomial):
    """(one, lambda) for the irreducible factor ``f``; rational when ``f`` is linear."""
    if f.degree == 1:
        return Fraction(1), Fraction(-f.coeffs[0], f.coeffs[1])
    K = NumberField(f)
    return K.one, K.generator


def normalize_vector(v):
    """Canonical scaling of an eigenvector.

    Rational vectors become primitive integer vectors whose first entry of
    smallest nonzero magnitude is positive; number-field vectors are scaled
    so the first nonzero coordinate is 1.
    """
    if all(isinstance(x, (int, Fraction)) for x in v):
        q = [Fraction(x) for x in v]
        den = reduce(lcm, (x.denominator for x in q), 1)
        ints = [int(x * den) for x in q]
        g = reduce(gcd, ints, 0)
        ints = [x // g for x in ints]
        smallest = min(abs(x) for x in ints if x)
        pivot = next(x for x in ints if abs(x) == smallest)
        return tuple(-x if pivot < 0 else x for x in ints)
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def restricted_eigenspace(lap, f: IntegerPolynomial, vanish: Iterable[int]):
    """Basis of {y : L y = lambda y, y_v = 0 for v in vanish} over Q(lambda), lambda a root of f.

    ``vanish`` holds 1-based vertices. Returns ``(lambda, basis)``.
    """
    n = len(lap)
    one, lam = _eigen_field(f)
    rows = [[(one * lap[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    zero = one - one
    for v in vanish:
        rows.append([one if j == v - 1 else zero for j in range(n)])
    return lam, null_space(rows, one=one)


def leader_vanishing_eigenvectors(g: Graph, leaders: Iterable[int]) -> list[EigCertificate]:
    """One certificate per irreducible factor of gcd(char F, char L) with a leader-vanishing eigenvector."""
    leaders = normalize_leaders(g, leaders)
    found, common = shared_eigenvalue_test(g, leaders)
    if not found:
        return []
    lap = laplacian(g)
    certs = []
    for f in distinct_factors(common, GRAPH_FACTOR_DEGREE):
        lam, basis = restricted_eigenspace(lap, f, leaders)
        if not basis:
            continue
        vec = normalize_vector(basis[0])
        support = tuple(i + 1 for i, x in enumerate(vec) if x)
        cert = EigCertificate(lam, vec, support, f)
        if not verify_eigenpair(lap, lam, list(vec)):
            raise InconsistentVerdict(f"certificate failed re-verification: {cert}")
        certs.append(cert)
    return certs


def eigencondition_residual(g: Graph, lam, y) -> list:
    """Per-vertex d_k y_k - sum_{i in N_k} y_i - lambda y_k; all zero iff (lambda, y) is an eigenpair."""
    if len(y) != g.n:
        raise DimensionMismatch(f"vector of length {len(y)} for a graph on {g.n} vertices")
    out = []
    for k in range(1, g.n + 1):
        acc = g.degree(k) * y[k - 1] - lam * y[k - 1]
        for i in g.neighbors(k):
            acc = acc - y[i - 1]
        out.append(acc)
    return out


def controllability_report(g: Graph, leaders: Iterable[int]) -> ControllabilityReport:
    leaders = normalize_leaders(g, leaders)
    require_connected(g)
    found, common = shared_eigenvalue_test(g, leaders)
    kalman = kalman_controllable(follower_partition(g, leaders))
    certs = tuple(leader_vanishing_eigenvectors(g, leaders)) if found else ()
    return ControllabilityReport(g, leaders, kalman, found, common, certs)


def is_controllable(g: Graph, leaders: Iterable[int]) -> bool:
    """Kalman verdict only; the cheap path for sweeps."""
    return kalman_controllable(follower_partition(g, leaders))
