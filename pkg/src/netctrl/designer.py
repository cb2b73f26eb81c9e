"""Constructive generator of four-node destructive (QCD) topologies.

A design fixes six distinct roles ``p, q, s1, s2, t1, t2`` and a set of
remaining vertices ``omega``. The quad ``{s1, s2, t1, t2}`` is wired so that
the vector with ``+1`` on ``s1, s2`` and ``-1`` on ``t1, t2`` is a Laplacian
eigenvector for eigenvalue ``sigma + 4``, where ``sigma`` counts the omega
vertices adjacent to all four quad members.

Rules enforced on the final graph (each violation names its rule):

* Step 1 (s-side) / Step 2 (t-side mirror): a quad node either
  OptI: sees both p and q and exactly one node of the opposite pair, or
  OptII: sees neither p nor q and both nodes of the opposite pair.
* Step 3: p and q each see exactly one of s1, s2 and one of t1, t2.
* Step 4 a): an omega vertex sees p iff it sees q.
* Step 4 b)/c): an omega vertex sees all four quad nodes or none.
* Case flags: the s1-s2 (t1-t2) edge is present iff ``case2_s`` (``case2_t``).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

import yaml

from netctrl.controllability import InconsistentVerdict
from netctrl.exactalg import verify_eigenpair
from netctrl.graph import Graph, GraphError, graph_from_edges, is_connected, laplacian

OPT_I = "OptI"
OPT_II = "OptII"
ROLES = ("p", "q", "s1", "s2", "t1", "t2")
QUAD_ROLES = ("s1", "s2", "t1", "t2")
SPEC_FORMAT = "netctrl-qcd-design"
SPEC_VERSION = 1
MAX_RETRIES = 20000


class InvalidSpec(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid design:\n  " + "\n  ".join(self.violations))


class DesignTooSmall(ValueError):
    pass


class ExhaustedRetries(RuntimeError):
    pass


@dataclass(frozen=True)
class QcdDesignSpec:
    """Inputs of one design; vertices are 1-based.

    ``step1`` maps each quad role to OptI/OptII, ``partner`` gives the single
    opposite-pair neighbor of each OptI node, ``step3`` maps ``"p"``/``"q"`` to
    the (s-node, t-node) it is wired to. ``omega_edges`` are free extra edges
    (rule d); they are validated like everything else.
    """

    n: int
    roles: dict
    step1: dict
    partner: dict
    step3: dict
    case2_s: bool = False
    case2_t: bool = False
    omega_quad: tuple = ()
    omega_pq: tuple = ()
    omega_edges: tuple = ()
    pq_edge: bool = False

    def role(self, name):
        return self.roles[name]

    @property
    def quad(self):
        return tuple(self.roles[r] for r in QUAD_ROLES)

    @property
    def omega(self):
        used = set(self.roles.values())
        return tuple(v for v in range(1, self.n + 1) if v not in used)


@dataclass(frozen=True)
class DesignOutput:
    graph: Graph
    eta: tuple
    eigenvalue: int
    sigma: int
    spec: QcdDesignSpec = field(repr=False, default=None)


def _opposite(name):
    return ("t1", "t2") if name.startswith("s") else ("s1", "s2")


def design_edges(spec: QcdDesignSpec) -> set:
    """Edge set implied by the spec's choices (no validation)."""
    r = spec.roles
    edges = set()

    def add(u, v):
        if u != v:
            edges.add((min(u, v), max(u, v)))

    for name in QUAD_ROLES:
        me = r[name]
        if spec.step1.get(name) == OPT_II:
            for other in _opposite(name):
                add(me, r[other])
        elif spec.step1.get(name) == OPT_I and name in spec.partner:
            add(me, spec.partner[name])
    for k in ("p", "q"):
        for v in spec.step3.get(k, ()):
            add(r[k], v)
    if spec.case2_s:
        add(r["s1"], r["s2"])
    if spec.case2_t:
        add(r["t1"], r["t2"])
    if spec.pq_edge:
        add(r["p"], r["q"])
    for w in spec.omega_quad:
        for v in spec.quad:
            add(w, v)
    for w in spec.omega_pq:
        add(w, r["p"])
        add(w, r["q"])
    for u, v in spec.omega_edges:
        add(u, v)
    return edges


def _structural_errors(spec):
    errs = []
    if spec.n < 7:
        errs.append(f"size: n={spec.n} is below 7 (six roles plus at least one omega vertex)")
    if set(spec.roles) != set(ROLES):
        errs.append(f"roles: expected exactly {', '.join(ROLES)}")
        return errs
    vals = [spec.roles[k] for k in ROLES]
    if len(set(vals)) != 6:
        errs.append(f"roles: vertices {vals} are not distinct")
    for k in ROLES:
        if not 1 <= spec.roles[k] <= spec.n:
            errs.append(f"roles: {k}={spec.roles[k]} outside 1..{spec.n}")
    for name in QUAD_ROLES:
        if spec.step1.get(name) not in (OPT_I, OPT_II):
            errs.append(f"Step 1: {name} needs a choice of {OPT_I} or {OPT_II}")
    for k in ("p", "q"):
        pick = spec.step3.get(k)
        if pick is None or len(pick) != 2:
            errs.append(f"Step 3: {k} needs one s-node and one t-node")
    omega = set(spec.omega)
    for w in set(spec.omega_quad) | set(spec.omega_pq):
        if w not in omega:
            errs.append(f"Step 4: vertex {w} is not an omega vertex")
    for e in spec.omega_edges:
        u, v = e
        if u == v or not (1 <= u <= spec.n and 1 <= v <= spec.n):
            errs.append(f"Step 4 d): edge {u}-{v} is invalid")
    return errs


def validate_design(spec: QcdDesignSpec) -> list[str]:
    """All rule violations of ``spec``, checked on the graph it induces; empty when valid."""
    errs = _structural_errors(spec)
    if errs:
        return errs
    edges = design_edges(spec)
    adj = {v: set() for v in range(1, spec.n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    r = spec.roles
    p, q = r["p"], r["q"]
    for name in QUAD_ROLES:
        me = r[name]
        step = "Step 1" if name.startswith("s") else "Step 2"
        opp = {r[o] for o in _opposite(name)}
        sees_pq = {p, q} & adj[me]
        sees_opp = opp & adj[me]
        if spec.step1[name] == OPT_I:
            if sees_pq != {p, q}:
                errs.append(f"{step} i): {name}={me} must see both p={p} and q={q}, sees {sorted(sees_pq)}")
            if len(sees_opp) != 1:
                errs.append(f"{step} i): {name}={me} must see exactly one of {sorted(opp)}, sees {sorted(sees_opp)}")
        else:
            if sees_pq:
                errs.append(f"{step} ii): {name}={me} must see neither p nor q, sees {sorted(sees_pq)}")
            if sees_opp != opp:
                errs.append(f"{step} ii): {name}={me} must see both of {sorted(opp)}, sees {sorted(sees_opp)}")
    s_pair = {r["s1"], r["s2"]}
    t_pair = {r["t1"], r["t2"]}
    for k in ("p", "q"):
        v = r[k]
        for label, pair in (("s", s_pair), ("t", t_pair)):
            seen = pair & adj[v]
            if len(seen) != 1:
                errs.append(f"Step 3: {k}={v} must see exactly one {label}-node, sees {sorted(seen)}")
    for flag, a, b in (("case2_s", "s1", "s2"), ("case2_t", "t1", "t2")):
        present = r[b] in adj[r[a]]
        if present != getattr(spec, flag):
            errs.append(f"Case flags: {flag}={getattr(spec, flag)} but edge {r[a]}-{r[b]} present={present}")
    quad = set(spec.quad)
    for w in spec.omega:
        if (p in adj[w]) != (q in adj[w]):
            errs.append(f"Step 4 a): omega vertex {w} must see both p={p} and q={q} or neither")
        seen = quad & adj[w]
        if seen and seen != quad:
            missing = sorted(quad - seen)
            errs.append(f"Step 4 b): omega vertex {w} sees {sorted(seen)} but not {missing}")
    if not is_connected(graph_from_edges(spec.n, edges)):
        errs.append("connectivity: the designed graph is disconnected")
    return errs


def design_sigma(spec: QcdDesignSpec) -> int:
    quad = set(spec.quad)
    edges = design_edges(spec)
    return sum(1 for w in spec.omega if all((min(w, v), max(w, v)) in edges for v in quad))


def build_design(spec: QcdDesignSpec) -> DesignOutput:
    """Graph, eigenvector and eigenvalue of a valid spec, verified exactly."""
    errs = validate_design(spec)
    if errs:
        raise InvalidSpec(errs)
    g = graph_from_edges(spec.n, design_edges(spec))
    sigma = design_sigma(spec)
    r = spec.roles
    eta = [0] * spec.n
    for name in QUAD_ROLES:
        eta[r[name] - 1] = 1 if name.startswith("s") else -1
    lam = sigma + 4
    for name in QUAD_ROLES:
        paired = spec.case2_s if name.startswith("s") else spec.case2_t
        want = sigma + (3 if spec.step1[name] == OPT_I else 2) + int(paired)
        if g.degree(r[name]) != want:
            raise InconsistentVerdict(f"degree of {name}={r[name]} is {g.degree(r[name])}, expected {want}")
    if not verify_eigenpair(laplacian(g), Fraction(lam), eta):
        raise InconsistentVerdict(f"designed vector fails L.eta = {lam} eta on {g}")
    return DesignOutput(g, tuple(eta), lam, sigma, spec)


def connect_omega(spec: QcdDesignSpec) -> QcdDesignSpec:
    """Add default edges so every omega component reaches the core.

    Components already touching the core are left alone. A detached component
    is joined by an omega-omega edge to an attached omega vertex when one
    exists, otherwise its smallest vertex is made adjacent to both p and q.
    """
    edges = design_edges(spec)
    adj = {v: set() for v in range(1, spec.n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    reached = {spec.roles["p"]}
    stack = [spec.roles["p"]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    extra_edges, extra_pq = list(spec.omega_edges), list(spec.omega_pq)
    for w in spec.omega:
        if w in reached:
            continue
        anchor = next((x for x in spec.omega if x in reached), None)
        if anchor is not None:
            extra_edges.append((min(w, anchor), max(w, anchor)))
        else:
            extra_pq.append(w)
        comp = {w}
        stack = [w]
        while stack:
            v = stack.pop()
            for x in adj[v]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        reached |= comp
    return replace(spec, omega_edges=tuple(extra_edges), omega_pq=tuple(sorted(extra_pq)))


def _core_plausible(roles, step1, partner, step3):
    """Cheap necessary test for Steps 1-3 so most rejected draws skip full validation.

    p and q each see exactly one node per pair, and OptI nodes see both of
    them, so each pair has exactly one OptI node; OptII nodes see the whole
    opposite pair, which pins each OptI partner to the opposite OptII node.
    """
    opt1 = {}
    for pair in (("s1", "s2"), ("t1", "t2")):
        firsts = [x for x in pair if step1[x] == OPT_I]
        if len(firsts) != 1:
            return False
        opt1[pair[0][0]] = firsts[0]
    for side, other in (("s", "t"), ("t", "s")):
        second = next(x for x in (other + "1", other + "2") if x != opt1[other])
        if partner[opt1[side]] != roles[second]:
            return False
    want = (roles[opt1["s"]], roles[opt1["t"]])
    return step3["p"] == want and step3["q"] == want


def random_design(n: int, seed: int, max_retries: int = MAX_RETRIES) -> QcdDesignSpec:
    """Deterministic pseudo-random valid spec by rejection sampling over the step choices."""
    if n < 7:
        raise DesignTooSmall(f"n={n}: a design needs six roles plus at least one omega vertex")
    rng = random.Random(seed)
    for _ in range(max_retries):
        verts = list(range(1, n + 1))
        rng.shuffle(verts)
        roles = dict(zip(ROLES, verts[:6]))
        omega = sorted(verts[6:])
        step1 = {name: rng.choice((OPT_I, OPT_II)) for name in QUAD_ROLES}
        partner = {
            name: roles[rng.choice(_opposite(name))] for name in QUAD_ROLES if step1[name] == OPT_I
        }
        step3 = {
            k: (roles[rng.choice(("s1", "s2"))], roles[rng.choice(("t1", "t2"))]) for k in ("p", "q")
        }
        if not _core_plausible(roles, step1, partner, step3):
            continue
        omega_quad = tuple(w for w in omega if rng.random() < 0.4)
        omega_pq = tuple(w for w in omega if rng.random() < 0.3)
        omega_edges = tuple(
            (u, v) for i, u in enumerate(omega) for v in omega[i + 1:] if rng.random() < 0.3
        )
        spec = QcdDesignSpec(
            n=n, roles=roles, step1=step1, partner=partner, step3=step3,
            case2_s=rng.random() < 0.3, case2_t=rng.random() < 0.3,
            omega_quad=omega_quad, omega_pq=omega_pq, omega_edges=omega_edges,
            pq_edge=rng.random() < 0.5,
        )
        spec = connect_omega(spec)
        if not validate_design(spec):
            return spec
    raise ExhaustedRetries(f"no valid design for n={n}, seed={seed} after {max_retries} draws")


def example_spec(sigma: int = 2) -> QcdDesignSpec:
    """Nine-vertex design with p=1, q=3, s1=2, s2=4, t1=5, t2=6 and ``sigma`` in 0..3."""
    if not 0 <= sigma <= 3:
        raise ValueError("sigma must lie in 0..3 for the nine-vertex layout")
    omega = (7, 8, 9)
    quad_side = omega[:sigma]
    rest = omega[sigma:]
    spec = QcdDesignSpec(
        n=9,
        roles={"p": 1, "q": 3, "s1": 2, "s2": 4, "t1": 5, "t2": 6},
        step1={"s1": OPT_I, "s2": OPT_II, "t1": OPT_I, "t2": OPT_II},
        partner={"s1": 6, "t1": 4},
        step3={"p": (2, 5), "q": (2, 5)},
        omega_quad=quad_side,
        omega_pq=tuple(rest[:1]),
        omega_edges=tuple((rest[0], w) for w in rest[1:]),
    )
    return connect_omega(spec)


# ---- serialization ------------------------------------------------------

def spec_to_dict(spec: QcdDesignSpec) -> dict:
    return {
        "format": SPEC_FORMAT,
        "version": SPEC_VERSION,
        "n": spec.n,
        "roles": {k: spec.roles[k] for k in ROLES if k in spec.roles},
        "case2_s": spec.case2_s,
        "case2_t": spec.case2_t,
        "step1": {k: spec.step1[k] for k in QUAD_ROLES if k in spec.step1},
        "partner": dict(sorted(spec.partner.items())),
        "step3": {k: list(v) for k, v in sorted(spec.step3.items())},
        "omega_quad": list(spec.omega_quad),
        "omega_pq": list(spec.omega_pq),
        "omega_edges": [list(e) for e in spec.omega_edges],
        "pq_edge": spec.pq_edge,
    }


def spec_from_dict(d: dict) -> QcdDesignSpec:
    if d.get("format", SPEC_FORMAT) != SPEC_FORMAT:
        raise GraphError(f"not a design spec: format={d.get('format')!r}")
    try:
        return QcdDesignSpec(
            n=int(d["n"]),
            roles={k: int(v) for k, v in d["roles"].items()},
            step1=dict(d.get("step1", {})),
            partner={k: int(v) for k, v in (d.get("partner") or {}).items()},
            step3={k: tuple(int(x) for x in v) for k, v in (d.get("step3") or {}).items()},
            case2_s=bool(d.get("case2_s", False)),
            case2_t=bool(d.get("case2_t", False)),
            omega_quad=tuple(int(x) for x in d.get("omega_quad") or ()),
            omega_pq=tuple(int(x) for x in d.get("omega_pq") or ()),
            omega_edges=tuple((int(u), int(v)) for u, v in d.get("omega_edges") or ()),
            pq_edge=bool(d.get("pq_edge", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed design spec: {exc}") from exc


def dump_spec(spec: QcdDesignSpec) -> str:
    return yaml.safe_dump(spec_to_dict(spec), sort_keys=False)


def load_spec(text: str) -> QcdDesignSpec:
    data = yaml.safe_load(text)
    if not isinstance(data, dict):
        raise GraphError("design spec must be a mapping")
    return spec_from_dict(data)
