"""Pseudomanifold structure, orientations, and mapping degrees.

A pure complex whose ridges each lie in exactly two facets, with connected
facet adjacency graph, is a pseudomanifold.  When orientable it carries a
fundamental class: a top-dimensional cycle with coefficients +-1 on every
facet, normalized here so the lexicographically smallest facet gets +1.  The
degree of a dimension-preserving simplicial map is the integer by which it
multiplies fundamental classes; it is computed both homologically (full chain
pushforward) and by signed preimage counting over a single target facet, and
the two must always agree.

Zero-dimensional pseudomanifolds (two points) are handled in the reduced
convention, where the augmentation makes the fundamental class a cycle.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import IntegrityError, NonOrientableError, ParameterError
from .simplicial import (IntegerChain, Simplex, SimplicialComplex,
                         chain_boundary, map_chain, sort_with_sign)
from .chessboard import PermutationAction, SimplicialMap

__all__ = [
    "PseudomanifoldReport", "pseudomanifold_check",
    "FundamentalClass", "orient", "orientation_character",
    "DegreeReport", "degree_homological", "degree_by_preimage", "degree_report",
    "enumerate_equivariant_maps", "CongruenceReport", "congruence_audit",
]


@dataclass(frozen=True)
class PseudomanifoldReport:
    pure: bool
    ridge_regular: bool
    strongly_connected: bool
    orientable: bool
    witness: object = None

    @property
    def is_pseudomanifold(self) -> bool:
        return self.pure and self.ridge_regular and self.strongly_connected


def _ridge_incidences(facets):
    """Map each ridge to the [(facet index, omitted position), ...] hitting it."""
    ridges: dict[Simplex, list[tuple[int, int]]] = {}
    for fi, f in enumerate(facets):
        for p in range(len(f)):
            ridges.setdefault(f[:p] + f[p + 1:], []).append((fi, p))
    return ridges


def pseudomanifold_check(K: SimplicialComplex) -> PseudomanifoldReport:
    """All four pseudomanifold flags, with a witness for the first failure."""
    if not K.facets:
        raise ParameterError("empty complex")
    top = K.dim + 1
    witness = None
    pure = True
    for f in K.facets:
        if len(f) != top:
            pure = False
            witness = f
            break
    # ridge and connectivity structure is judged on the top-dimensional facets
    facets = [f for f in K.facets if len(f) == top]
    ridges = _ridge_incidences(facets)
    ridge_regular = True
    for ridge in sorted(ridges):
        inc = ridges[ridge]
        if len(inc) != 2:
            ridge_regular = False
            if witness is None:
                witness = (ridge, len(inc))
            break

    adjacency: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(len(facets))}
    if ridge_regular:
        for ridge, ((fa, pa), (fb, pb)) in ridges.items():
            adjacency[fa].append((fb, pa, pb))
            adjacency[fb].append((fa, pb, pa))
    else:
        for ridge, inc in ridges.items():
            for (fa, pa), (fb, pb) in itertools.combinations(inc, 2):
                adjacency[fa].append((fb, pa, pb))
                adjacency[fb].append((fa, pb, pa))
    seen = {0}
    queue = deque([0])
    while queue:
        cur = queue.popleft()
        for nb, _, _ in adjacency[cur]:
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    strongly_connected = len(seen) == len(facets)
    if not strongly_connected and witness is None:
        outside = min(i for i in range(len(facets)) if i not in seen)
        witness = (facets[0], facets[outside])

    orientable = False
    if ridge_regular and strongly_connected:
        signs, conflict = _propagate_orientation(facets, adjacency)
        orientable = conflict is None
        if not orientable and witness is None:
            witness = conflict
    return PseudomanifoldReport(pure, ridge_regular, strongly_connected,
                                orientable, witness)


def _propagate_orientation(facets, adjacency):
    """Breadth-first sign propagation across ridges from the lex-smallest facet.

    Facing a shared ridge, coherent facets carry opposite incidence signs:
    sign_a * c_a + sign_b * c_b = 0.  Returns (signs, None) on success or
    (None, facet cycle witness) when a sign conflict closes an odd cycle.
    """
    if not facets:
        return {}, None
    signs = {0: 1}
    parent = {0: None}
    queue = deque([0])
    while queue:
        cur = queue.popleft()
        for nb, p_cur, p_nb in adjacency[cur]:
            required = -signs[cur] * (-1) ** p_cur * (-1) ** p_nb
            if nb not in signs:
                signs[nb] = required
                parent[nb] = cur
                queue.append(nb)
            elif signs[nb] != required:
                cycle = _conflict_cycle(parent, cur, nb, facets)
                return None, cycle
    return signs, None


def _conflict_cycle(parent, a, b, facets):
    """Facet cycle joining the two endpoints of a conflicting adjacency."""

    def path_to_root(x):
        path = []
        while x is not None:
            path.append(x)
            x = parent[x]
        return path

    pa, pb = path_to_root(a), path_to_root(b)
    common = set(pa) & set(pb)
    cut_a = next(i for i, x in enumerate(pa) if x in common)
    cut_b = next(i for i, x in enumerate(pb) if x in common)
    cycle = pa[:cut_a + 1] + pb[:cut_b][::-1]
    return tuple(facets[i] for i in cycle)


@dataclass(frozen=True)
class FundamentalClass:
    """Top-dimensional cycle with +-1 coefficients on all facets, +1 on the
    lexicographically smallest one."""

    complex: SimplicialComplex
    chain: IntegerChain

    def coefficient(self, facet) -> int:
        return self.chain.coefficients.get(tuple(facet), 0)


def orient(K: SimplicialComplex) -> FundamentalClass:
    """Fundamental class by sign propagation across ridges.

    Requires a pure, ridge-regular, strongly connected complex; raises
    NonOrientableError (with an orientation-reversing facet cycle) when no
    coherent choice of signs exists.  The boundary of the result is verified
    to vanish exactly, using the reduced convention so that two points form a
    valid 0-dimensional sphere.
    """
    report = pseudomanifold_check(K)
    if not report.is_pseudomanifold:
        raise ParameterError(
            f"not a pseudomanifold (pure={report.pure}, "
            f"ridge_regular={report.ridge_regular}, "
            f"strongly_connected={report.strongly_connected}); "
            f"witness: {report.witness}")
    facets = list(K.facets)
    ridges = _ridge_incidences(facets)
    adjacency = {i: [] for i in range(len(facets))}
    for ridge, ((fa, pa), (fb, pb)) in ridges.items():
        adjacency[fa].append((fb, pa, pb))
        adjacency[fb].append((fa, pb, pa))
    signs, conflict = _propagate_orientation(facets, adjacency)
    if conflict is not None:
        raise NonOrientableError("no coherent orientation exists", witness=conflict)
    chain = IntegerChain(K.dim, {facets[i]: s for i, s in signs.items()})
    if not chain_boundary(chain).is_zero():
        raise IntegrityError("propagated orientation is not a cycle")
    return FundamentalClass(K, chain)


def orientation_character(fc: FundamentalClass, automorphism) -> int:
    """Sign by which an automorphism rescales the fundamental class.

    Accepts either a PermutationAction (its generator is used) or a raw
    vertex map.  Raises IntegrityError when the pushforward is not +-1 times
    the class, which would mean the input is not an automorphism of the
    oriented pseudomanifold.
    """
    vm = automorphism.generator if isinstance(automorphism, PermutationAction) else tuple(automorphism)
    if sorted(vm) != list(range(fc.complex.vertex_count)):
        raise ParameterError("automorphism is not a permutation of the vertex set")
    pushed = map_chain(vm, fc.chain)
    for candidate in (1, -1):
        if pushed.coefficients == fc.chain.scaled(candidate).coefficients:
            return candidate
    raise IntegrityError("pushforward of the fundamental class is not +-1 times itself")


@dataclass(frozen=True)
class DegreeReport:
    value: int
    method: str
    residue_mod: tuple[int, int] | None = None


def _with_residue(value: int, method: str, modulus: int | None) -> DegreeReport:
    residue = (modulus, value % modulus) if modulus else None
    return DegreeReport(value, method, residue)


def degree_homological(f: SimplicialMap, fc_dom: FundamentalClass,
                       fc_cod: FundamentalClass, modulus: int | None = None) -> DegreeReport:
    """Degree as the multiplier of the full chain pushforward.

    Degenerate simplex images contribute zero; the pushforward must be an
    exact integer multiple of the codomain class.
    """
    if fc_dom.complex.dim != fc_cod.complex.dim:
        raise ParameterError("domain and codomain dimensions differ")
    pushed = map_chain(f.vertex_map, fc_dom.chain)
    probe = min(fc_cod.chain.coefficients)
    value = pushed.coefficients.get(probe, 0) * fc_cod.chain.coefficients[probe]
    if pushed.coefficients != fc_cod.chain.scaled(value).coefficients:
        raise IntegrityError("pushforward is not an integer multiple of the "
                             "codomain fundamental class")
    return _with_residue(value, "homological", modulus)


def degree_by_preimage(f: SimplicialMap, fc_dom: FundamentalClass,
                       fc_cod: FundamentalClass, target: Simplex | None = None,
                       modulus: int | None = None) -> DegreeReport:
    """Degree as a signed count of facets mapping bijectively onto one target
    facet of the codomain."""
    if fc_dom.complex.dim != fc_cod.complex.dim:
        raise ParameterError("domain and codomain dimensions differ")
    if target is None:
        target = min(fc_cod.chain.coefficients)
    target = tuple(target)
    if target not in fc_cod.chain.coefficients:
        raise ParameterError(f"{target} is not a facet of the codomain")
    vm = f.vertex_map
    total = 0
    for facet, coeff in fc_dom.chain.coefficients.items():
        image, sign = sort_with_sign(vm[v] for v in facet)
        if sign and image == target:
            total += coeff * sign
    value = total * fc_cod.chain.coefficients[target]
    return _with_residue(value, "preimage", modulus)


def degree_report(f: SimplicialMap, fc_dom: FundamentalClass,
                  fc_cod: FundamentalClass, method: str = "both",
                  modulus: int | None = None) -> DegreeReport:
    """Run the requested degree algorithm(s); with ``both`` the homological
    and preimage counts must agree exactly."""
    if method == "homological":
        return degree_homological(f, fc_dom, fc_cod, modulus)
    if method == "preimage":
        return degree_by_preimage(f, fc_dom, fc_cod, modulus=modulus)
    if method != "both":
        raise ParameterError(f"unknown degree method {method!r}")
    hom = degree_homological(f, fc_dom, fc_cod, modulus)
    pre = degree_by_preimage(f, fc_dom, fc_cod, modulus=modulus)
    if hom.value != pre.value:
        raise IntegrityError(
            f"degree algorithms disagree: homological {hom.value}, preimage {pre.value}")
    return DegreeReport(hom.value, "both", hom.residue_mod)


# -- equivariant map enumeration ---------------------------------------------


def enumerate_equivariant_maps(K: SimplicialComplex, L: SimplicialComplex,
                               action_K: PermutationAction,
                               action_L: PermutationAction,
                               orbit_cap: int = 4) -> list[SimplicialMap]:
    """All simplicial maps K -> L intertwining the two cyclic actions.

    A map is determined by the images of the vertex-orbit representatives of
    K; each representative with orbit size s may only go to a vertex fixed by
    the s-th power of the codomain generator.  The enumeration is exhaustive
    but refuses to run when K has more than ``orbit_cap`` vertex orbits.
    """
    if not (action_K.complex.same_structure(K) and action_L.complex.same_structure(L)):
        raise ParameterError("actions do not match the given complexes")
    if action_K.order != action_L.order:
        raise ParameterError(
            f"action orders differ: {action_K.order} vs {action_L.order}")
    orbits = action_K.vertex_orbits()
    if len(orbits) > orbit_cap:
        estimate = L.vertex_count ** len(orbits)
        raise ParameterError(
            f"{len(orbits)} vertex orbits exceed the cap {orbit_cap} "
            f"({estimate} candidate maps); raise orbit_cap to force the search")

    candidate_images = []
    for orbit in orbits:
        s = len(orbit)
        power = action_L.power(s)
        candidate_images.append([w for w in range(L.vertex_count) if power[w] == w])

    maps = []
    for images in itertools.product(*candidate_images):
        vm = [None] * K.vertex_count
        for orbit, w in zip(orbits, images):
            target = w
            for v in orbit:
                vm[v] = target
                target = action_L.generator[target]
        try:
            maps.append(SimplicialMap(K, L, tuple(vm)))
        except ParameterError:
            continue  # candidate is equivariant but not simplicial
    return maps


@dataclass(frozen=True)
class CongruenceReport:
    """Outcome of a degree congruence audit over a family of maps."""

    degrees: tuple[int, ...]
    modulus: int
    residue: int | None
    expected_residue: int
    matched_sign: int | None
    ok: bool
    violations: tuple[int, ...]
    warnings: tuple[str, ...]


def congruence_audit(maps, fc_dom: FundamentalClass, fc_cod: FundamentalClass,
                     r: int, expected_residue: int) -> CongruenceReport:
    """Check that all degrees are congruent mod r and hit the expected residue.

    The residue is accepted up to one global sign (the same for the whole
    family), which absorbs the orientation normalization of the two
    fundamental classes.  For composite r nothing is asserted; a warning is
    recorded instead.
    """
    degrees = tuple(degree_report(m, fc_dom, fc_cod, method="both").value for m in maps)
    warnings = []
    if not _is_prime(r):
        warnings.append(f"modulus {r} is not prime; congruence not asserted")
        return CongruenceReport(degrees, r, None, expected_residue, None, True,
                                (), tuple(warnings))
    if not degrees:
        return CongruenceReport(degrees, r, None, expected_residue, None, True,
                                (), tuple(warnings))
    violations = []
    base = degrees[0] % r
    for idx, value in enumerate(degrees):
        if value % r != base:
            violations.append(idx)
    matched_sign = None
    if not violations:
        if base == expected_residue % r:
            matched_sign = 1
        elif base == (-expected_residue) % r:
            matched_sign = -1
        else:
            violations = list(range(len(degrees)))
    ok = not violations
    return CongruenceReport(degrees, r, base, expected_residue, matched_sign,
                            ok, tuple(violations), tuple(warnings))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True
