"""Classical polynomial invariants of combinatorial maps.

Every invariant here is computed in exact rational arithmetic.  The two core
polynomials are the flow polynomial (rotation-blind) and its
rotation-sensitive refinement

    S(Q) = sum over edge subsets T of (-1)^|T| Q^(b1(G-T) - genus(G-T)),

together with the four-variable rank polynomial that specializes to S, and a
vertex-count-normalized chromatic polynomial for virtual graphs.  Each comes
with independent engines (state sum and memoized contraction-deletion) so the
test suite can cross-check them term by term.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .algebra import HalfLaurent, KrushkalPoly
from .maps import CombMap

_S_CACHE: dict = {}
_FLOW_CACHE: dict = {}
_CHROM_CACHE: dict = {}


def clear_caches() -> None:
    _S_CACHE.clear()
    _FLOW_CACHE.clear()
    _CHROM_CACHE.clear()


# ---------------------------------------------------------------------------
# Spanning-subgraph surface data (fast path used by the state sums).
# ---------------------------------------------------------------------------


def subgraph_euler(m: CombMap, removed_mask: int) -> tuple[int, int, int, int]:
    """(components, first betti, faces, genus) after deleting masked edges.

    Vertices are all kept.  The map must be twist-free.
    """
    v = m.vertex_count
    e_total = m.edge_count
    removed = removed_mask
    e = e_total - bin(removed).count("1")

    parent = list(range(v))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for index, (a, b) in enumerate(m.edges):
        if removed >> index & 1:
            continue
        ra, rb = find(m.vertex_of[a]), find(m.vertex_of[b])
        if ra != rb:
            parent[ra] = rb
    b0 = len({find(i) for i in range(v)})
    b1 = e - v + b0

    # reduced rotation: skip half-edges of removed edges
    reduced_next: dict[int, int] = {}
    empty_vertices = 0
    for cycle in m.vertices:
        surviving = [h for h in cycle if not removed >> m.edge_of[h] & 1]
        if not surviving:
            empty_vertices += 1
            continue
        size = len(surviving)
        for i, h in enumerate(surviving):
            reduced_next[h] = surviving[(i + 1) % size]
    faces = empty_vertices
    seen: set[int] = set()
    for start in reduced_next:
        if start in seen:
            continue
        faces += 1
        h = start
        while h not in seen:
            seen.add(h)
            h = reduced_next[m.alpha[h]]
    genus2 = 2 * b0 + e - v - faces
    assert genus2 % 2 == 0 and genus2 >= 0
    return b0, b1, faces, genus2 // 2


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("RIBBONPOLY_WORKERS", "1")))
    except ValueError:
        return 1


def _gray_masks(e: int) -> Iterable[int]:
    # Subsets in Gray-code order; every subset is recomputed from scratch.
    for i in range(1 << e):
        yield i ^ (i >> 1)


def _state_sum_range(m: CombMap, start: int, stop: int, with_genus: bool) -> dict[int, int]:
    exponents: dict[int, int] = {}
    for i in range(start, stop):
        mask = i ^ (i >> 1)
        b0, b1, _faces, genus = subgraph_euler(m, mask)
        exp = b1 - genus if with_genus else b1
        sign = -1 if bin(mask).count("1") % 2 else 1
        exponents[exp] = exponents.get(exp, 0) + sign
    return exponents


def _state_sum(m: CombMap, with_genus: bool, chunk_threshold: int = 16) -> HalfLaurent:
    e = m.edge_count
    total = 1 << e
    workers = _worker_count()
    if workers > 1 and e >= chunk_threshold:
        from concurrent.futures import ProcessPoolExecutor

        chunk = (total + workers - 1) // workers
        spans = [(k, min(k + chunk, total)) for k in range(0, total, chunk)]
        merged: dict[int, int] = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_state_sum_worker, [(m, a, b, with_genus) for a, b in spans]):
                for exp, coeff in part.items():
                    merged[exp] = merged.get(exp, 0) + coeff
        exponents = merged
    else:
        exponents = _state_sum_range(m, 0, total, with_genus)
    return HalfLaurent.from_dict("Q", {2 * exp: coeff for exp, coeff in exponents.items()})


def _state_sum_worker(args: tuple) -> dict[int, int]:
    m, start, stop, with_genus = args
    return _state_sum_range(m, start, stop, with_genus)


# ---------------------------------------------------------------------------
# Flow polynomial.
# ---------------------------------------------------------------------------


def flow_poly(m: CombMap, engine: str = "auto") -> HalfLaurent:
    """Flow polynomial; blind to rotations and twists."""
    if engine == "auto":
        engine = "state-sum" if m.edge_count <= 13 else "contraction-deletion"
    if engine == "state-sum":
        return _state_sum(m, with_genus=False)
    if engine == "contraction-deletion":
        return _flow_cd(m)
    raise ValueError(f"unknown flow engine {engine!r}")


def _flow_cd(m: CombMap) -> HalfLaurent:
    key = m.signature
    cached = _FLOW_CACHE.get(key)
    if cached is not None:
        return cached
    result = _flow_cd_compute(m)
    _FLOW_CACHE[key] = result
    return result


def _flow_cd_compute(m: CombMap) -> HalfLaurent:
    if any(len(cycle) == 1 for cycle in m.vertices):
        return HalfLaurent.zero("Q")
    if m.edge_count == 0:
        return HalfLaurent.one("Q")
    e = _preferred_edge(m)
    if m.is_loop(e):
        q_minus_1 = HalfLaurent.from_dict("Q", {2: 1, 0: -1})
        return q_minus_1 * _flow_cd(m.delete_edge(e))
    return _flow_cd(m.contract(e)) - _flow_cd(m.delete_edge(e))


def _preferred_edge(m: CombMap) -> int:
    # Non-loop edges first: their branches shrink the vertex set too.
    for e in range(m.edge_count):
        if not m.is_loop(e):
            return e
    return 0


# ---------------------------------------------------------------------------
# The rotation-sensitive flow polynomial S.
# ---------------------------------------------------------------------------


def s_poly(m: CombMap, engine: str = "auto") -> HalfLaurent:
    """The genus-corrected flow polynomial of a map in an oriented surface."""
    if m.edge_twists:
        raise ValueError(
            "S is defined for twist-free maps; twisted edges are consumed by the Penrose evaluations"
        )
    if engine == "auto":
        engine = "state-sum" if m.edge_count <= 13 else "contraction-deletion"
    if engine == "state-sum":
        return _state_sum(m, with_genus=True)
    if engine == "contraction-deletion":
        return _s_cd(m)
    if engine == "brauer":
        from .brauer import brauer_evaluate

        return brauer_evaluate(m)
    raise ValueError(f"unknown S engine {engine!r}")


def _s_cd(m: CombMap) -> HalfLaurent:
    key = m.signature
    cached = _S_CACHE.get(key)
    if cached is not None:
        return cached
    result = _s_cd_compute(m)
    _S_CACHE[key] = result
    return result


def _s_cd_compute(m: CombMap) -> HalfLaurent:
    if any(len(cycle) == 1 for cycle in m.vertices):
        return HalfLaurent.zero("Q")
    if m.edge_count == 0:
        return HalfLaurent.one("Q")
    e = _preferred_edge(m)
    contracted = _s_cd(m.contract(e))
    deleted = _s_cd(m.delete_edge(e))
    if m.is_loop(e):
        return contracted.shift(2) - deleted
    return contracted - deleted


def s_poly_at(m: CombMap, value: Fraction | int) -> Fraction:
    """Evaluate S at a rational point by a direct integer state sum."""
    if m.edge_twists:
        raise ValueError(
            "S is defined for twist-free maps; twisted edges are consumed by the Penrose evaluations"
        )
    point = Fraction(value)
    total = Fraction(0)
    for mask in _gray_masks(m.edge_count):
        b0, b1, _faces, genus = subgraph_euler(m, mask)
        sign = -1 if bin(mask).count("1") % 2 else 1
        exp = b1 - genus
        term = point**exp if point != 0 else Fraction(1 if exp == 0 else 0)
        total += sign * term
    return total


# ---------------------------------------------------------------------------
# Four-variable rank polynomial and its specialization to S.
# ---------------------------------------------------------------------------


def krushkal_poly(m: CombMap) -> KrushkalPoly:
    """The four-variable rank polynomial of a map in an oriented surface.

    Term for each spanning edge subset: ``X^(b0(G-T)-b0(G)) Y^(b1(G-T))
    A^(2 genus(G-T)) B^(2 dual-genus)``, where the dual genus is the genus of
    the geometric dual restricted to the edges dual to T.
    """
    if m.edge_twists:
        raise ValueError("the rank polynomial needs a twist-free map")
    dual = m.geometric_dual()
    base_b0 = m.component_count
    e = m.edge_count
    data: dict[tuple[int, int, int, int], Fraction] = {}
    for mask in range(1 << e):
        b0, b1, _faces, genus = subgraph_euler(m, mask)
        # keep exactly the dual edges of the removed set
        dual_mask = ((1 << e) - 1) ^ mask
        _db0, _db1, _dfaces, dual_genus = subgraph_euler(dual, dual_mask)
        key = (b0 - base_b0, b1, 2 * genus, 2 * dual_genus)
        data[key] = data.get(key, Fraction(0)) + Fraction(1)
    return KrushkalPoly.from_dict(data)


def specialize_krushkal_to_s(poly: KrushkalPoly, b1: int) -> HalfLaurent:
    """S(Q) = (-1)^b1 P(-1, -Q, Q^(-1/2), 1)."""
    data: dict[int, Fraction] = {}
    outer = -1 if b1 % 2 else 1
    for (x_exp, y_exp, a_exp, _b_exp), coeff in poly.terms:
        sign = (-1) ** (x_exp + y_exp)
        half_steps = 2 * y_exp - a_exp
        value = outer * sign * coeff
        data[half_steps] = data.get(half_steps, Fraction(0)) + value
    return HalfLaurent.from_dict("Q", data)


# ---------------------------------------------------------------------------
# Chromatic polynomial for virtual graphs.
# ---------------------------------------------------------------------------


def virtual_chromatic(m: CombMap) -> HalfLaurent:
    """Chromatic polynomial, computed through map contraction.

    Deletion-contraction with the loop correction ``t^(-1)``: a loop deletes
    to the plain term and contracts (splitting its vertex) with weight
    ``t^(-1)``; edgeless maps count ``t^(number of vertices)``.
    """
    if m.edge_twists:
        raise ValueError("the chromatic polynomial needs a twist-free map")
    key = m.signature
    cached = _CHROM_CACHE.get(key)
    if cached is not None:
        return cached
    if m.edge_count == 0:
        result = HalfLaurent.monomial("t", 2 * m.vertex_count)
    else:
        e = _preferred_edge(m)
        deleted = virtual_chromatic(m.delete_edge(e))
        contracted = virtual_chromatic(m.contract(e))
        if m.is_loop(e):
            result = deleted - contracted.shift(-2)
        else:
            result = deleted - contracted
    _CHROM_CACHE[key] = result
    return result


def chromatic_via_dual(m: CombMap) -> HalfLaurent:
    """The identity route: t^(b0 - genus) * S of the geometric dual."""
    ed = m.euler_data()
    s_dual = s_poly(m.geometric_dual())
    return s_dual.retag("t").shift(2 * (ed.components - ed.genus))


# ---------------------------------------------------------------------------
# Reports.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeReport:
    bound: int
    degree: object
    leading: Fraction
    attained: bool
    monic: bool
    has_coloop: bool
    i_poly: HalfLaurent


def degree_report(m: CombMap, engine: str = "auto") -> DegreeReport:
    """Degree data for S plus the reflected interlacement polynomial."""
    s = s_poly(m, engine=engine)
    ed = m.euler_data()
    bound = ed.first_betti - ed.genus
    degree, leading = s.degree_leading()
    has_coloop = any(m.is_coloop(e) for e in range(m.edge_count))
    i_poly = s.reflect(2 * bound).retag("t")
    return DegreeReport(
        bound=bound,
        degree=degree,
        leading=leading,
        attained=degree == Fraction(bound),
        monic=leading == 1,
        has_coloop=has_coloop,
        i_poly=i_poly,
    )


def g_min(m: CombMap) -> tuple[int, frozenset[int]]:
    """Minimal genus over all vertex flips, with a witness flip set."""
    best: Optional[tuple[int, frozenset[int]]] = None
    for subset, variant in m.rotation_variants():
        genus = variant.genus()
        if best is None or genus < best[0]:
            best = (genus, subset)
            if genus == 0:
                break
    assert best is not None
    return best


def wedge(m1: CombMap, v1: int, m2: CombMap, v2: int) -> CombMap:
    """One-point union: splice the rotation of v2 after the rotation of v1."""
    from .maps import _rebuild

    shift = m1.half_edge_count
    vertices = [list(c) for i, c in enumerate(m1.vertices) if i != v1]
    vertices += [[h + shift for h in c] for i, c in enumerate(m2.vertices) if i != v2]
    vertices.append(list(m1.vertices[v1]) + [h + shift for h in m2.vertices[v2]])
    edges = list(m1.edges) + [(a + shift, b + shift) for a, b in m2.edges]
    twisted = m1._twisted_pairs() | {
        frozenset(h + shift for h in pair) for pair in m2._twisted_pairs()
    }
    return _rebuild(vertices, edges, None, twisted)


def special_value_checks(m: CombMap, engine: str = "auto") -> dict:
    """The rational special values tying S to the flow polynomial."""
    s = s_poly(m, engine=engine)
    f = flow_poly(m)
    report: dict = {}
    report["s_at_1_is_zero"] = s.evaluate(1) == 0
    report["s_at_0_equals_flow_at_0"] = s.evaluate(0) == f.evaluate(0)
    has_bridge = any(m.is_bridge(e) for e in range(m.edge_count))
    report["bridge_iff_s_zero"] = has_bridge == s.is_zero()
    report["bridge_iff_s0_zero"] = has_bridge == (s.evaluate(0) == 0)
    flip_ok = True
    s4 = s.evaluate(4)
    for v in range(m.vertex_count):
        flipped = s_poly(m.vertex_flip(v), engine=engine)
        want = s4 if m.degree(v) % 2 == 0 else -s4
        if flipped.evaluate(4) != want:
            flip_ok = False
    report["flip_sign_law_at_4"] = flip_ok
    report["passed"] = all(v for k, v in report.items() if k != "passed")
    return report


def connect_sum_checks(
    m1: CombMap,
    e1: tuple[int, int],
    m2: CombMap,
    e2: tuple[int, int],
    v1: Optional[int] = None,
    h1: Optional[int] = None,
    v2: Optional[int] = None,
    h2: Optional[int] = None,
) -> dict:
    """Verify the multiplicative connect-sum identities for S."""
    from .maps import edge_connect_sum, vertex_connect_sum

    q = HalfLaurent.variable("Q")
    one = HalfLaurent.one("Q")
    q1 = q - one
    q2 = q - HalfLaurent.constant("Q", 2)
    s1 = s_poly(m1)
    s2 = s_poly(m2)
    report: dict = {}

    joined = edge_connect_sum(m1, e1, m2, e2)
    report["edge_rule"] = q1 * s_poly(joined) == s1 * s2

    if v1 is not None:
        assert h1 is not None and v2 is not None and h2 is not None
        plain = vertex_connect_sum(m1, v1, h1, m2, v2, h2)
        m2_flipped = m2.vertex_flip(v2)
        # the designated vertex may move under canonicalization; find it again
        fv2 = _find_vertex(m2_flipped, m2.vertices[v2])
        twisted = vertex_connect_sum(m1, v1, h1, m2_flipped, fv2, h2)
        s1f = s_poly(m1.vertex_flip(v1))
        s2f = s_poly(m2_flipped)
        lhs = q1 * q2 * s_poly(twisted) - q1.scale(2) * s_poly(plain)
        rhs = s1 * s2f + s1f * s2
        report["vertex_rule"] = lhs == rhs

    w = wedge(m1, 0, m2, 0)
    report["wedge_rule"] = s_poly(w) == s_poly(m1.disjoint_union(m2))
    report["passed"] = all(v for k, v in report.items() if k != "passed")
    return report


def _find_vertex(m: CombMap, original_cycle: tuple[int, ...]) -> int:
    want = set(original_cycle)
    for index, cycle in enumerate(m.vertices):
        if set(cycle) == want:
            return index
    raise KeyError("vertex not found after flip")
