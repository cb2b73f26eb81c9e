"""Controllability-destructive node sets and their eigenvector certificates.

* DCD pairs: every other vertex sees both or neither.
* TCD triples: every other vertex sees all three or none, and the triple
  induces a triangle (I), a path centred at p (II), one edge pq (III) or no
  edge (IV).
* QCD quadruples on five vertices: membership in a catalog derived with the
  exact eigenvector-support oracle.

Every certificate is an eigenpair of the Laplacian checked in exact arithmetic
before it is returned.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations
from math import isqrt
from typing import Iterable

from netctrl.controllability import InconsistentVerdict, normalize_vector
from netctrl.exactalg import (
    GRAPH_FACTOR_DEGREE,
    IntegerPolynomial,
    NumberField,
    char_poly,
    distinct_factors,
    null_space,
    poly_gcd,
    verify_eigenpair,
)
from netctrl.graph import (
    CanonicalCode,
    Graph,
    GraphError,
    canonical_form,
    enumerate_connected_graphs,
    laplacian,
    require_connected,
)

CATALOG_VERSION = 1
EXPECTED_QCD_CLASSES = 15  # 11 + 2 + 2 configurations listed for five vertices
CATALOG_RESOURCE = "qcd5_catalog.txt"


class SameVertex(GraphError):
    pass


class DuplicateVertex(GraphError):
    pass


class EmptySupport(GraphError):
    pass


class WrongSize(GraphError):
    pass


class WrongTopology(GraphError):
    pass


# ---- DCD ---------------------------------------------------------------

@dataclass(frozen=True)
class DcdCertificate:
    p: int
    q: int
    adjacent: bool
    eigenvalue: int
    vector: tuple[int, ...]

    @property
    def nodes(self):
        return (self.p, self.q)


def _check_vertex(g, v):
    if not isinstance(v, int) or not 1 <= v <= g.n:
        raise GraphError(f"vertex {v!r} outside 1..{g.n}")


def _outside_condition(g: Graph, nodes) -> bool:
    """Every vertex outside ``nodes`` is adjacent to all of them or to none."""
    mask = 0
    for v in nodes:
        mask |= 1 << (v - 1)
    for k in range(g.n):
        if (mask >> k) & 1:
            continue
        seen = g.rows[k] & mask
        if seen and seen != mask:
            return False
    return True


def is_dcd_pair(g: Graph, p: int, q: int, *, check_connected=True) -> DcdCertificate | None:
    _check_vertex(g, p)
    _check_vertex(g, q)
    if p == q:
        raise SameVertex(f"p and q are both {p}")
    if check_connected:
        require_connected(g)
    if not _outside_condition(g, (p, q)):
        return None
    dp, dq = g.degree(p), g.degree(q)
    if dp != dq:
        raise InconsistentVerdict(f"DCD pair ({p}, {q}) with unequal degrees {dp}, {dq}")
    adjacent = g.has_edge(p, q)
    lam = dp + 1 if adjacent else dp
    vec = [0] * g.n
    vec[p - 1], vec[q - 1] = 1, -1
    if not verify_eigenpair(laplacian(g), lam, vec):
        raise InconsistentVerdict(f"DCD certificate for ({p}, {q}) fails L y = {lam} y")
    return DcdCertificate(p, q, adjacent, lam, tuple(vec))


def all_dcd_pairs(g: Graph, among: Iterable[int] | None = None) -> list[DcdCertificate]:
    require_connected(g)
    verts = sorted(among) if among is not None else range(1, g.n + 1)
    out = []
    for p, q in combinations(verts, 2):
        cert = is_dcd_pair(g, p, q, check_connected=False)
        if cert is not None:
            out.append(cert)
    return out


# ---- TCD ---------------------------------------------------------------

@dataclass(frozen=True)
class TcdCertificate:
    """Roles follow the class conventions: II has centre p, III has its edge on pq."""

    p: int
    q: int
    r: int
    topology_class: str
    eigenvalue: int
    vector: tuple[int, ...]

    @property
    def nodes(self):
        return tuple(sorted((self.p, self.q, self.r)))


def induced_topology(g: Graph, a: int, b: int, c: int) -> tuple[str, tuple[int, int, int]]:
    """Topology label of the induced subgraph on a triple, with roles reordered.

    Returns one of ``I`` (triangle), ``II`` (path, centre first), ``III``
    (single edge, its endpoints first) or ``IV`` (no edge).
    """
    edges = [(x, y) for x, y in ((a, b), (a, c), (b, c)) if g.has_edge(x, y)]
    if len(edges) == 3:
        return "I", (a, b, c)
    if len(edges) == 0:
        return "IV", (a, b, c)
    if len(edges) == 2:
        centre = next(v for v in (a, b, c) if all(v in e for e in edges))
        rest = [v for v in (a, b, c) if v != centre]
        return "II", (centre, rest[0], rest[1])
    x, y = edges[0]
    other = next(v for v in (a, b, c) if v not in (x, y))
    return "III", (x, y, other)


_TCD_VECTORS = {"I": (1, 1, -2), "II": (-2, 1, 1), "III": (1, 1, -2), "IV": (1, 1, -2)}


def tcd_eigenvalue(topology, dp, dq, dr):
    """Eigenvalue for a TCD class, or ``None`` if its degree identities fail."""
    if topology == "I" and dp == dq == dr:
        return dp + 1
    if topology == "II" and dp == dq + 1 == dr + 1:
        return dp + 1
    if topology == "III" and dp == dq == dr + 1:
        return dr
    if topology == "IV" and dp == dq == dr:
        return dr
    return None


def classify_tcd_triple(g: Graph, p: int, q: int, r: int, *, check_connected=True) -> TcdCertificate | None:
    for v in (p, q, r):
        _check_vertex(g, v)
    if len({p, q, r}) != 3:
        raise DuplicateVertex(f"triple ({p}, {q}, {r}) repeats a vertex")
    if check_connected:
        require_connected(g)
    if not _outside_condition(g, (p, q, r)):
        return None
    topology, (a, b, c) = induced_topology(g, p, q, r)
    lam = tcd_eigenvalue(topology, g.degree(a), g.degree(b), g.degree(c))
    if lam is None:
        return None
    vec = [0] * g.n
    for v, y in zip((a, b, c), _TCD_VECTORS[topology]):
        vec[v - 1] = y
    if not verify_eigenpair(laplacian(g), lam, vec):
        return None
    return TcdCertificate(a, b, c, topology, lam, tuple(vec))


def all_tcd_triples(g: Graph, among: Iterable[int] | None = None) -> list[TcdCertificate]:
    require_connected(g)
    verts = sorted(among) if among is not None else range(1, g.n + 1)
    out = []
    for p, q, r in combinations(verts, 3):
        cert = classify_tcd_triple(g, p, q, r, check_connected=False)
        if cert is not None:
            out.append(cert)
    return out


# ---- exact support oracle ----------------------------------------------

@dataclass(frozen=True)
class SupportWitness:
    eigenvalue: object
    vector: tuple
    modulus: IntegerPolynomial


def eigenvector_support_search(g: Graph, support: Iterable[int], *, check_connected=True) -> SupportWitness | None:
    """Decide exactly whether L has an eigenvector nonzero exactly on ``support``.

    For each irreducible factor f of the characteristic polynomial of the
    principal block on ``support``, the space W of eigenvectors of L over
    Q[x]/(f) vanishing off ``support`` is computed. The answer is yes iff W
    is not contained in any coordinate hyperplane y_i = 0, i in support; the
    witness is a combination of the basis of W with all support entries
    nonzero.
    """
    sup = sorted(set(support))
    if not sup:
        raise EmptySupport("support must be nonempty")
    for v in sup:
        _check_vertex(g, v)
    if len(sup) == g.n:
        raise EmptySupport("support must be a proper subset of the vertices")
    if check_connected:
        require_connected(g)
    idx = [v - 1 for v in sup]
    smask = sum(1 << i for i in idx)
    outside = [k for k in range(g.n) if not (smask >> k) & 1]
    # an outside vertex seeing exactly one support vertex forces that entry to zero
    for k in outside:
        seen = g.rows[k] & smask
        if seen and not seen & (seen - 1):
            return None
    lap = laplacian(g)
    block = [[lap[i][j] for j in idx] for i in idx]
    coupling = [[lap[k][j] for j in idx] for k in outside]
    # rational prefilter: outside rows of L y = lambda y read L[outside, S] y_S = 0
    kernel = null_space(coupling) if coupling else _identity(len(idx))
    if not kernel or not all(any(v[a] for v in kernel) for a in range(len(idx))):
        return None
    common = poly_gcd(char_poly(block), _lap_charpoly(g))
    if common.degree < 1:
        return None
    # y_S = sum_j c_j kernel_j; remaining condition (block - lambda) y_S = 0
    image = [[sum(block[a][b] * v[b] for b in range(len(idx))) for v in kernel] for a in range(len(idx))]
    for f in distinct_factors(common, GRAPH_FACTOR_DEGREE):
        if f.degree == 1:
            one, lam = Fraction(1), Fraction(-f.coeffs[0], f.coeffs[1])
        else:
            K = NumberField(f)
            one, lam = K.one, K.generator
        rows = [
            [one * image[a][j] - lam * kernel[j][a] for j in range(len(kernel))]
            for a in range(len(idx))
        ]
        coeffs = null_space(rows, one=one)
        if not coeffs:
            continue
        basis = [
            [sum((c[j] * kernel[j][a] for j in range(len(kernel))), one - one) for a in range(len(idx))]
            for c in coeffs
        ]
        if not all(any(vec[a] for vec in basis) for a in range(len(idx))):
            continue
        local = _generic_combination(basis)
        full = [one - one] * g.n
        for a, i in enumerate(idx):
            full[i] = local[a]
        vec = normalize_vector(full)
        if not verify_eigenpair(lap, lam, list(vec)):
            raise InconsistentVerdict(f"support witness on {sup} fails re-verification")
        return SupportWitness(lam, vec, f)
    return None


def _identity(k):
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


@lru_cache(maxsize=4096)
def _lap_charpoly_rows(rows, n):
    return char_poly(laplacian(Graph(n, rows)))


def _lap_charpoly(g):
    return _lap_charpoly_rows(g.rows, g.n)


def _generic_combination(basis):
    """sum_j t^j b_j for the first t = 1, 2, ... with every coordinate nonzero.

    Each coordinate is a nonzero polynomial in t of degree < len(basis), so
    at most dim*(len(basis)-1) values of t fail.
    """
    dim = len(basis[0])
    for t in range(1, dim * len(basis) + 2):
        comb = list(basis[0])
        w = 1
        for b in basis[1:]:
            w *= t
            comb = [x + w * y for x, y in zip(comb, b)]
        if all(comb):
            return comb
    raise AssertionError("no generic combination found")


# ---- QCD on five vertices ----------------------------------------------

@dataclass(frozen=True)
class QcdCertificate:
    quad: tuple[int, int, int, int]
    k: int
    eigenvalue: object
    vector: tuple
    catalog_code: CanonicalCode


@dataclass(frozen=True)
class CatalogLogEntry:
    edges: tuple[tuple[int, int], ...]
    k: int
    code: CanonicalCode
    eigenvalue: str
    outside_adjacency: int
    outside_ok: bool
    star_screen: str


@dataclass(frozen=True)
class QcdCatalog:
    entries: frozenset
    derivation_log: tuple = ()

    @property
    def class_count(self):
        return len(self.entries)

    def __contains__(self, code):
        return code in self.entries

    def discrepancy(self) -> str | None:
        if self.class_count == EXPECTED_QCD_CLASSES:
            return None
        return (
            f"derived {self.class_count} (graph, distinguished vertex) classes with a "
            f"support-4 leader-vanishing eigenvector; the reference enumeration lists "
            f"{EXPECTED_QCD_CLASSES} configurations"
        )

    def to_text(self) -> str:
        lines = [
            "# netctrl QCD catalog: 5-vertex graphs with distinguished vertex k",
            f"# generator-version: {CATALOG_VERSION}",
            f"# classes: {self.class_count}",
        ]
        lines += sorted(c.hex() for c in self.entries)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QcdCatalog":
        codes = set()
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                codes.add(CanonicalCode.from_hex(line))
        return cls(frozenset(codes))


def _quad_mask(quad):
    return sum(1 << (v - 1) for v in quad)


def derive_qcd_catalog() -> QcdCatalog:
    """Run the support oracle on every connected 5-vertex graph and every choice of k."""
    entries = set()
    log = []
    for g in enumerate_connected_graphs(5):
        for k in range(1, 6):
            quad = tuple(v for v in range(1, 6) if v != k)
            wit = eigenvector_support_search(g, quad, check_connected=False)
            if wit is None:
                continue
            code = canonical_form(g, k)
            entries.add(code)
            outside = (g.rows[k - 1] & _quad_mask(quad)).bit_count()
            outside_ok = outside in (2, 3, 4)
            screen = star_quad_screen_auto(g, k)
            if screen is not None and screen.applicable and not screen.satisfied:
                raise InconsistentVerdict(f"3-star screen violated on a QCD instance: {g}, k={k}")
            if not outside_ok:
                raise InconsistentVerdict(f"outside vertex {k} sees {outside} quad members in {g}")
            log.append(
                CatalogLogEntry(
                    tuple(g.edges()), k, code, str(wit.eigenvalue), outside, outside_ok,
                    "n/a" if screen is None else screen.summary(),
                )
            )
    return QcdCatalog(frozenset(entries), tuple(log))


def load_qcd_catalog(path: str | os.PathLike | None = None) -> QcdCatalog:
    """Load the committed golden catalog (or a catalog file at ``path``)."""
    if path is None:
        text = resources.files("netctrl.data").joinpath(CATALOG_RESOURCE).read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return QcdCatalog.from_text(text)


_DEFAULT_CATALOG = None


def default_catalog() -> QcdCatalog:
    global _DEFAULT_CATALOG
    if _DEFAULT_CATALOG is None:
        _DEFAULT_CATALOG = load_qcd_catalog()
    return _DEFAULT_CATALOG


def qcd_quads_5(g: Graph, catalog: QcdCatalog | None = None) -> list[QcdCertificate]:
    """QCD quadruples of a 5-vertex graph; catalog membership and the oracle must agree."""
    if g.n != 5:
        raise WrongSize(f"QCD nodes are characterised for five vertices only, got n={g.n}")
    require_connected(g)
    catalog = catalog if catalog is not None else default_catalog()
    out = []
    for k in range(1, 6):
        quad = tuple(v for v in range(1, 6) if v != k)
        code = canonical_form(g, k)
        hit = code in catalog
        wit = eigenvector_support_search(g, quad, check_connected=False)
        if hit != (wit is not None):
            raise InconsistentVerdict(
                f"catalog says {hit} but the support oracle says {wit is not None} for {g}, k={k}"
            )
        if hit:
            out.append(QcdCertificate(quad, k, wit.eigenvalue, wit.vector, code))
    return out


# ---- screening on the 3-star quad ------------------------------------

@dataclass(frozen=True)
class Surd:
    """r + c * sqrt(f) with f squarefree (f == 1 folded into r)."""

    r: Fraction
    c: Fraction
    f: int

    @classmethod
    def make(cls, rational, coeff, radicand):
        rational, coeff = Fraction(rational), Fraction(coeff)
        if radicand < 0:
            raise ValueError("real surds only")
        square, free = _square_part(radicand)
        coeff *= square
        if free == 1 or coeff == 0:
            return cls(rational + (coeff if free == 1 else 0), Fraction(0), 1)
        return cls(rational, coeff, free)

    def __str__(self):
        if not self.c:
            return str(self.r)
        return f"{self.r} {'+' if self.c > 0 else '-'} {abs(self.c)}*sqrt({self.f})"


def _square_part(n):
    """(s, f) with n = s^2 f and f squarefree."""
    if n == 0:
        return 0, 1
    s, f, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            f *= p
        p += 1
    return s, f * n


@dataclass(frozen=True)
class StarQuadScreen:
    situation: str | None
    applicable: bool
    satisfied: bool | None
    detail: str

    def summary(self):
        if not self.applicable:
            return f"not applicable ({self.detail})"
        return f"situation {self.situation}: {'satisfied' if self.satisfied else 'VIOLATED'} ({self.detail})"


def _recip(den):
    return None if den == 0 else Fraction(1, den)


def star_quad_screen(g: Graph, roles: dict, situation: str | None = None) -> StarQuadScreen:
    """Necessary conditions for a support-4 eigenvector when the quad is a 3-star centred at s1.

    ``roles`` maps ``s1, s2, t1, t2, k`` to vertices. The applicable
    situation is read off the outside vertex's adjacency (all four: a;
    exactly s1, s2, t1: b; exactly s1, s2: c). Passing ``situation`` probes
    one situation explicitly. A zero denominator counts as a violation.
    """
    if g.n != 5:
        raise WrongSize("the screen is defined for five vertices")
    s1, s2, t1, t2, k = (roles[x] for x in ("s1", "s2", "t1", "t2", "k"))
    if len({s1, s2, t1, t2, k}) != 5:
        raise DuplicateVertex("roles must be five distinct vertices")
    leaves = (s2, t1, t2)
    star = all(g.has_edge(s1, v) for v in leaves) and not any(
        g.has_edge(a, b) for a, b in combinations(leaves, 2)
    )
    if not star:
        raise WrongTopology("the quad must induce a 3-star centred at s1")
    d = {v: g.degree(v) for v in (s1, s2, t1, t2)}
    seen = {v for v in (s1, s2, t1, t2) if g.has_edge(k, v)}
    actual = {4: "a"}.get(len(seen))
    if seen == {s1, s2, t1}:
        actual = "b"
    elif seen == {s1, s2}:
        actual = "c"
    want = situation or actual
    if want is None or want != actual:
        return StarQuadScreen(want, False, None, f"outside vertex {k} adjacent to {sorted(seen)}")
    if want == "a":
        terms = [_recip(d[v] - d[s1] - 1) for v in (t2, t1, s2)]
        if None in terms:
            return StarQuadScreen("a", True, False, "zero denominator")
        total = sum(terms)
        return StarQuadScreen("a", True, total == -1, f"harmonic sum = {total}")
    if want == "b":
        a1 = d[t1] + d[s2] + 2
        disc1 = (d[s2] - d[t1]) ** 2 + 4
        a2 = d[s1] + d[t2] + 1
        disc2 = (d[s1] - d[t2] + 1) ** 2 + 4
        lams = [Surd.make(Fraction(a1, 2), Fraction(sg, 2), disc1) for sg in (1, -1)]
        tilde = [Surd.make(Fraction(a2, 2), Fraction(sg, 2), disc2) for sg in (1, -1)]
        hits = [(i, j) for i in range(2) for j in range(2) if lams[i] == tilde[j]]
        return StarQuadScreen(
            "b", True, bool(hits),
            f"lambda = {', '.join(map(str, lams))}; lambda~ = {', '.join(map(str, tilde))}",
        )
    terms = [_recip(d[t1] - d[s2] - 1), _recip(d[t2] - d[s2] - 1)]
    if None in terms:
        return StarQuadScreen("c", True, False, "zero denominator")
    rhs = sum(terms)
    return StarQuadScreen("c", True, d[s1] - d[s2] == rhs, f"{d[s1] - d[s2]} vs {rhs}")


def star_quad_screen_auto(g: Graph, k: int) -> StarQuadScreen | None:
    """Screen with roles inferred from the graph when the quad induces a 3-star."""
    quad = [v for v in range(1, 6) if v != k]
    centre = next((v for v in quad if all(g.has_edge(v, w) for w in quad if w != v)), None)
    if centre is None:
        return None
    leaves = [v for v in quad if v != centre]
    if any(g.has_edge(a, b) for a, b in combinations(leaves, 2)):
        return None
    seen = [v for v in leaves if g.has_edge(k, v)]
    unseen = [v for v in leaves if v not in seen]
    if g.has_edge(k, centre) and len(seen) == 2:
        s2, t1, t2 = seen[0], seen[1], unseen[0]
    elif g.has_edge(k, centre) and len(seen) == 1:
        s2, t1, t2 = seen[0], unseen[0], unseen[1]
    else:
        s2, t1, t2 = leaves
    return star_quad_screen(g, {"s1": centre, "s2": s2, "t1": t1, "t2": t2, "k": k})
