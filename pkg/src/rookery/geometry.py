"""Exact-rational colored point configurations and common-point certificates.

A rainbow partition groups some of the points into r disjoint blocks, no two
points of one block sharing a color.  A partition succeeds when the convex
hulls of its blocks share a point; feasibility is decided by an exact
phase-1 simplex over the rationals, and every success is backed by an
IntersectionCertificate whose convex weights re-verify by plain arithmetic,
independent of the solver.

Scenario specs bundle the color class plans of the supported statements
(colored Radon, the k=1 family, the two mixed families, and the classic
bipartite/tripartite/quadripartite instances) together with exhaustive or
stochastic search drivers.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IntegrityError, MalformedInputError, ParameterError
from .lp import solve_equality_feasibility

__all__ = [
    "ColoredPoint", "ColoredConfig", "parse_rational", "format_rational",
    "parse_config", "random_config", "RainbowPartition",
    "check_rainbow_partition", "enumerate_rainbow_partitions",
    "IntersectionCertificate", "common_point_lp", "verify_certificate",
    "scenario_inequality", "ScenarioSpec", "make_scenario", "SCENARIO_NAMES",
    "ScenarioReport", "run_scenario", "run_trials",
]

RainbowPartition = tuple[tuple[int, ...], ...]


def parse_rational(value) -> Fraction:
    """Exact rational from an int or a string ("7", "-3/4", "0.25")."""
    if isinstance(value, bool):
        raise MalformedInputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise MalformedInputError(
            f"refusing float {value!r}; pass decimals as strings for exactness")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational: {value!r}") from exc
    raise MalformedInputError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    """Render as "p" or "p/q" (no floating point anywhere)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ColoredPoint:
    coords: tuple[Fraction, ...]
    color: int


class ColoredConfig:
    """Finite colored point set in d dimensions with a strict coloring:
    colors are 0..k and every color is used."""

    def __init__(self, dim: int, points):
        self.dim = int(dim)
        if self.dim < 1:
            raise MalformedInputError(f"dimension must be positive, got {dim}")
        self.points: tuple[ColoredPoint, ...] = tuple(points)
        if not self.points:
            raise MalformedInputError("a configuration needs at least one point")
        for p in self.points:
            if len(p.coords) != self.dim:
                raise MalformedInputError(
                    f"point {p} has {len(p.coords)} coordinates, expected {self.dim}")
            if p.color < 0:
                raise MalformedInputError(f"negative color {p.color}")
        colors = {p.color for p in self.points}
        if colors != set(range(max(colors) + 1)):
            missing = sorted(set(range(max(colors) + 1)) - colors)
            raise MalformedInputError(
                f"coloring is not strict: colors {missing} are declared but unused")
        sizes = [0] * (max(colors) + 1)
        for p in self.points:
            sizes[p.color] += 1
        self.class_sizes: tuple[int, ...] = tuple(sizes)

    def __len__(self):
        return len(self.points)

    def color_of(self, index: int) -> int:
        return self.points[index].color

    def to_dict(self) -> dict:
        return {"dim": self.dim,
                "points": [{"x": [format_rational(c) for c in p.coords],
                            "color": p.color} for p in self.points]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def parse_config(doc) -> ColoredConfig:
    """Parse the JSON configuration document {"dim": d, "points": [...]}. """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise MalformedInputError(f"bad JSON: {exc}") from exc
    try:
        dim = doc["dim"]
        raw_points = doc["points"]
    except (KeyError, TypeError) as exc:
        raise MalformedInputError(f"config document lacks {exc}") from exc
    points = []
    for raw in raw_points:
        try:
            coords = tuple(parse_rational(c) for c in raw["x"])
            color = raw["color"]
        except (KeyError, TypeError) as exc:
            raise MalformedInputError(f"bad point entry {raw!r}: {exc}") from exc
        if not isinstance(color, int) or isinstance(color, bool):
            raise MalformedInputError(f"color must be an integer, got {color!r}")
        points.append(ColoredPoint(coords, color))
    return ColoredConfig(dim, points)


def random_config(dim: int, class_sizes, seed: int,
                  coord_bound: int = 1000) -> ColoredConfig:
    """Seeded configuration with integer coordinates uniform in [-M, M]^d.

    Points are listed color class by color class, so the result is
    reproducible byte-for-byte from (dim, class_sizes, seed, coord_bound).
    """
    if any(s < 1 for s in class_sizes):
        raise ParameterError(f"class sizes must be >= 1, got {tuple(class_sizes)}")
    rng = random.Random(seed)
    points = []
    for color, size in enumerate(class_sizes):
        for _ in range(size):
            coords = tuple(Fraction(rng.randint(-coord_bound, coord_bound))
                           for _ in range(dim))
            points.append(ColoredPoint(coords, color))
    return ColoredConfig(dim, points)


# -- rainbow partitions -------------------------------------------------------


def check_rainbow_partition(config: ColoredConfig, blocks, r: int | None = None):
    """Validate blocks: disjoint, nonempty, one color at most once per block."""
    blocks = tuple(tuple(sorted(b)) for b in blocks)
    if r is not None and len(blocks) != r:
        raise ParameterError(f"expected {r} blocks, got {len(blocks)}")
    seen: set[int] = set()
    for block in blocks:
        if not block:
            raise ParameterError("empty block")
        colors = set()
        for idx in block:
            if not 0 <= idx < len(config):
                raise ParameterError(f"point index {idx} out of range")
            if idx in seen:
                raise ParameterError(f"point {idx} appears in two blocks")
            seen.add(idx)
            color = config.color_of(idx)
            if color in colors:
                raise ParameterError(
                    f"block {block} has two points of color {color}")
            colors.add(color)
    return blocks


def enumerate_rainbow_partitions(config: ColoredConfig, r: int,
                                 require_full: bool = False):
    """Lazily yield every canonical rainbow partition into r blocks.

    Canonical form: blocks are ordered by their smallest member, which the
    enumeration enforces by only ever opening the next empty block.  Points
    may stay unused unless ``require_full``.  Backtracking prunes on repeated
    colors inside a block and on running out of points to open new blocks.
    """
    if r < 2:
        raise ParameterError(f"need at least 2 blocks, got r={r}")
    n = len(config)
    colors = [config.color_of(i) for i in range(n)]
    blocks: list[list[int]] = []
    block_colors: list[set[int]] = []

    def extend(p: int):
        if n - p < r - len(blocks):
            return  # not enough points left to open the remaining blocks
        if p == n:
            if len(blocks) == r:
                yield tuple(tuple(b) for b in blocks)
            return
        color = colors[p]
        for bi in range(len(blocks)):
            if color not in block_colors[bi]:
                blocks[bi].append(p)
                block_colors[bi].add(color)
                yield from extend(p + 1)
                blocks[bi].pop()
                block_colors[bi].remove(color)
        if len(blocks) < r:
            blocks.append([p])
            block_colors.append({color})
            yield from extend(p + 1)
            blocks.pop()
            block_colors.pop()
        if not require_full:
            yield from extend(p + 1)

    yield from extend(0)


# -- common point feasibility -------------------------------------------------


@dataclass(frozen=True)
class IntersectionCertificate:
    """Convex weights per block plus the common point they all realize."""

    point: tuple[Fraction, ...]
    weights: tuple[tuple[Fraction, ...], ...]

    def to_dict(self) -> dict:
        return {"point": [format_rational(c) for c in self.point],
                "weights": [[format_rational(w) for w in block]
                            for block in self.weights]}

    @classmethod
    def from_dict(cls, doc: dict) -> "IntersectionCertificate":
        try:
            point = tuple(parse_rational(c) for c in doc["point"])
            weights = tuple(tuple(parse_rational(w) for w in block)
                            for block in doc["weights"])
        except (KeyError, TypeError) as exc:
            raise MalformedInputError(f"bad certificate document: {exc}") from exc
        return cls(point, weights)


def _blocks_bounding_boxes_meet(config: ColoredConfig, blocks) -> bool:
    # a common point lies in every block's bounding box; exact and cheap
    for axis in range(config.dim):
        lo = None
        hi = None
        for block in blocks:
            values = [config.points[i].coords[axis] for i in block]
            bmin, bmax = min(values), max(values)
            lo = bmin if lo is None or bmin > lo else lo
            hi = bmax if hi is None or bmax < hi else hi
        if lo > hi:
            return False
    return True


def _intersection_system(config: ColoredConfig, blocks):
    """Equality system for convex weights with equal block barycenters.

    Variables are the weights of block 0, block 1, ... in member order; rows
    are one unit-sum row per block and d coordinate-matching rows per block
    beyond the first.
    """
    d = config.dim
    r = len(blocks)
    offsets = []
    total = 0
    for block in blocks:
        offsets.append(total)
        total += len(block)
    rows = []
    rhs = []
    for bi, block in enumerate(blocks):
        row = [Fraction(0)] * total
        for k in range(len(block)):
            row[offsets[bi] + k] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    for bi in range(1, r):
        for axis in range(d):
            row = [Fraction(0)] * total
            for k, idx in enumerate(blocks[bi]):
                row[offsets[bi] + k] = config.points[idx].coords[axis]
            for k, idx in enumerate(blocks[0]):
                row[offsets[0] + k] -= config.points[idx].coords[axis]
            rows.append(row)
            rhs.append(Fraction(0))
    return rows, rhs, offsets


def intersection_infeasibility(config: ColoredConfig, blocks) -> Fraction:
    """Exact phase-1 mass of the common-point system (zero iff feasible).

    Used as the descent objective of the stochastic search.  The unit-sum
    rows are scaled up so that the optimum always satisfies them exactly and
    the mass reduces to the total barycenter mismatch between the blocks, a
    piecewise-linear quantity that tells nearby partitions apart (an
    unweighted phase-1 mass is minimized by shrinking all weights, which is
    flat across most single-point moves).
    """
    blocks = check_rainbow_partition(config, blocks)
    rows, rhs, _ = _intersection_system(config, blocks)
    bound = max((max(abs(c) for c in p.coords) for p in config.points),
                default=Fraction(1))
    heavy = 8 * len(blocks) * config.dim * (int(bound) + 1)
    for bi in range(len(blocks)):
        rows[bi] = [heavy * v for v in rows[bi]]
        rhs[bi] = heavy * rhs[bi]
    optimum, _ = solve_equality_feasibility(rows, rhs)
    return optimum


def common_point_lp(config: ColoredConfig, blocks) -> IntersectionCertificate | None:
    """Exact feasibility of a common point of all block hulls.

    Returns a verified certificate on success, None when the hulls provably
    do not intersect.  No tolerances anywhere: the verdict is a theorem about
    the input rationals.
    """
    blocks = check_rainbow_partition(config, blocks)
    if not _blocks_bounding_boxes_meet(config, blocks):
        return None
    rows, rhs, offsets = _intersection_system(config, blocks)
    optimum, solution = solve_equality_feasibility(rows, rhs)
    if optimum != 0:
        return None
    weights = tuple(
        tuple(solution[offsets[bi] + k] for k in range(len(block)))
        for bi, block in enumerate(blocks))
    point = tuple(
        sum((weights[0][k] * config.points[idx].coords[axis]
             for k, idx in enumerate(blocks[0])), Fraction(0))
        for axis in range(config.dim))
    cert = IntersectionCertificate(point, weights)
    if not verify_certificate(config, blocks, cert):
        raise IntegrityError("solver produced a certificate that fails verification")
    return cert


def verify_certificate(config: ColoredConfig, blocks, cert: IntersectionCertificate) -> bool:
    """Re-derive every certificate condition with plain exact arithmetic.

    This is the soundness anchor: it shares no code with the simplex solver
    and returns False on any violation, including shape mismatches.
    """
    try:
        blocks = tuple(tuple(b) for b in blocks)
        if len(cert.point) != config.dim:
            return False
        if len(cert.weights) != len(blocks):
            return False
        for block, weights in zip(blocks, cert.weights):
            if not block or len(weights) != len(block):
                return False
            total = Fraction(0)
            combo = [Fraction(0)] * config.dim
            for idx, w in zip(block, weights):
                if w < 0:
                    return False
                total += w
                coords = config.points[idx].coords
                for axis in range(config.dim):
                    combo[axis] += w * coords[axis]
            if total != 1:
                return False
            if tuple(combo) != cert.point:
                return False
        return True
    except (TypeError, IndexError):
        return False


# -- scenario statements ------------------------------------------------------


def scenario_inequality(variant: str, *, r: int, k: int, l: int, d: int,
                        p: int | None = None) -> bool:
    """Exact evaluation of the parameter inequality gating the two mixed
    families: (r-1)(d-l+1)+1 <= r k (variant A) or <= p k (variant B, which
    additionally requires r = 2p-1)."""
    variant = variant.upper()
    if min(r, k, d) < 1 or l < 0:
        raise ParameterError("parameters must be positive (l may be zero)")
    lhs = (r - 1) * (d - l + 1) + 1
    if variant == "A":
        return lhs <= r * k
    if variant == "B":
        if p is None or r != 2 * p - 1:
            raise ParameterError(f"variant B needs r = 2p-1, got r={r}, p={p}")
        return lhs <= p * k
    raise ParameterError(f"unknown inequality variant {variant!r}")


@dataclass(frozen=True)
class ScenarioSpec:
    """A named search problem: color class plan, block count, and search mode."""

    name: str
    r: int
    d: int
    class_sizes: tuple[int, ...]
    k: int | None = None
    l: int | None = None
    p: int | None = None
    mode: str = "exhaustive"
    budget: int | None = None

    def params(self) -> dict:
        out = {"r": self.r, "d": self.d, "class_sizes": list(self.class_sizes)}
        for key in ("k", "l", "p"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


def _plan_colored_radon(d=None, **_):
    if d is None or d < 1:
        raise ParameterError("colored_radon needs d >= 1")
    return dict(r=2, d=d, class_sizes=(1,) * d + (3,))


def _plan_k1(r=None, d=None, **_):
    if r is None or d is None or d < 1:
        raise ParameterError("k1 needs r and d")
    if not _is_prime(r):
        raise ParameterError(f"k1 needs prime r, got {r}")
    return dict(r=r, d=d, k=1, l=d, class_sizes=(r - 1,) * d + (2 * r - 1,))


def _plan_mixed_a(r=None, d=None, l=None, k=None, **_):
    if None in (r, d, l, k):
        raise ParameterError("mixed_A needs r, d, l, k")
    if not _is_prime(r):
        raise ParameterError(f"mixed_A needs prime r, got {r}")
    if not scenario_inequality("A", r=r, k=k, l=l, d=d):
        raise ParameterError(
            f"inequality (r-1)(d-l+1)+1 <= rk fails for r={r} d={d} l={l} k={k}")
    return dict(r=r, d=d, l=l, k=k,
                class_sizes=(r - 1,) * l + (2 * r - 1,) * k)


def _plan_mixed_b(p=None, d=None, l=None, k=None, **_):
    if None in (p, d, l, k):
        raise ParameterError("mixed_B needs p, d, l, k")
    r = 2 * p - 1
    if not _is_prime(r):
        raise ParameterError(f"mixed_B needs 2p-1 prime, got p={p} (r={r})")
    if not scenario_inequality("B", r=r, k=k, l=l, d=d, p=p):
        raise ParameterError(
            f"inequality (r-1)(d-l+1)+1 <= pk fails for p={p} d={d} l={l} k={k}")
    return dict(r=r, d=d, l=l, k=k, p=p,
                class_sizes=(r - 1,) * l + (p,) * k)


def _plan_classic(r=None, d=None, **_):
    if None in (r, d) or r < 2 or d < 1:
        raise ParameterError("classic_tverberg needs r >= 2 and d >= 1")
    n = (r - 1) * (d + 1) + 1
    return dict(r=r, d=d, class_sizes=(1,) * n)


_FIXED_SCENARIOS = {
    "K33": dict(r=2, d=2, class_sizes=(3, 3)),
    "K333": dict(r=3, d=2, class_sizes=(3, 3, 3)),
    "K555": dict(r=3, d=3, class_sizes=(5, 5, 5)),
    "K4444": dict(r=4, d=3, class_sizes=(4, 4, 4, 4)),
}

_SCENARIO_BUILDERS = {
    "colored_radon": _plan_colored_radon,
    "k1": _plan_k1,
    "mixed_A": _plan_mixed_a,
    "mixed_B": _plan_mixed_b,
    "classic_tverberg": _plan_classic,
}

SCENARIO_NAMES = tuple(sorted(_FIXED_SCENARIOS) + sorted(_SCENARIO_BUILDERS))


def make_scenario(name: str, mode: str = "exhaustive", budget: int | None = None,
                  **params) -> ScenarioSpec:
    """Resolve a scenario name plus parameters into a validated spec.

    Fixed-instance names (K33, K333, K555, K4444) reject conflicting
    parameters; family names validate their parameter inequality up front so
    misconfigured class plans fail fast instead of producing vacuous reports.
    """
    if mode not in ("exhaustive", "stochastic"):
        raise ParameterError(f"unknown search mode {mode!r}")
    if name in _FIXED_SCENARIOS:
        fixed = _FIXED_SCENARIOS[name]
        for key, value in params.items():
            if value is not None and fixed.get(key, value) != value:
                raise ParameterError(
                    f"scenario {name} fixes {key}={fixed[key]}, got {value}")
        return ScenarioSpec(name=name, mode=mode, budget=budget, **fixed)
    if name in _SCENARIO_BUILDERS:
        plan = _SCENARIO_BUILDERS[name](**params)
        return ScenarioSpec(name=name, mode=mode, budget=budget, **plan)
    raise ParameterError(f"unknown scenario {name!r}; known: {', '.join(SCENARIO_NAMES)}")


# -- search drivers -----------------------------------------------------------


@dataclass
class ScenarioReport:
    """Outcome of one scenario run on one configuration.

    ``found`` is True (certificate in hand), False (exhaustively refuted,
    which would falsify the statement rather than the search), or None
    (stochastic budget exhausted, inconclusive)."""

    scenario: str
    params: dict
    mode: str
    seed: int | None
    found: bool | None
    partition: RainbowPartition | None = None
    certificate: IntersectionCertificate | None = None
    lp_calls: int = 0
    partitions_tried: int = 0
    elapsed_ms: int = 0

    def to_dict(self) -> dict:
        doc = {
            "scenario": self.scenario,
            "params": self.params,
            "mode": self.mode,
            "seed": self.seed,
            "found": self.found,
            "partition": [list(b) for b in self.partition] if self.partition else None,
            "point": None,
            "weights": None,
            "lp_calls": self.lp_calls,
            "partitions_tried": self.partitions_tried,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.certificate is not None:
            cert = self.certificate.to_dict()
            doc["point"] = cert["point"]
            doc["weights"] = cert["weights"]
        return doc


def _check_plan(spec: ScenarioSpec, config: ColoredConfig):
    if config.dim != spec.d:
        raise ParameterError(
            f"config dimension {config.dim} does not match scenario d={spec.d}")
    # colors are interchangeable, so the plan constrains the size multiset only
    if sorted(config.class_sizes) != sorted(spec.class_sizes):
        raise ParameterError(
            f"config class sizes {config.class_sizes} do not match the "
            f"scenario plan {spec.class_sizes}")


def run_scenario(spec: ScenarioSpec, config: ColoredConfig | None = None,
                 seed: int | None = None) -> ScenarioReport:
    """Search one configuration for an intersecting rainbow partition.

    Without an explicit config, a seeded random one is drawn from the
    scenario's class plan.  Exhaustive mode walks the canonical partition
    stream and returns the first certified hit (or an exhaustive refutation);
    stochastic mode hill-climbs on the exact infeasibility mass under an LP
    call budget and reports inconclusive when the budget runs out.
    """
    if config is None:
        if seed is None:
            raise ParameterError("need a config or a seed to draw one")
        config = random_config(spec.d, spec.class_sizes, seed)
    _check_plan(spec, config)
    start = time.monotonic()
    if spec.mode == "exhaustive":
        report = _search_exhaustive(spec, config, seed)
    else:
        if spec.budget is None or spec.budget <= 0:
            raise ParameterError("stochastic mode needs a positive LP budget")
        report = _search_stochastic(spec, config, seed)
    report.elapsed_ms = int((time.monotonic() - start) * 1000)
    if report.found:
        if not verify_certificate(config, report.partition, report.certificate):
            raise IntegrityError("scenario produced an unverifiable certificate")
    return report


def _search_exhaustive(spec: ScenarioSpec, config: ColoredConfig,
                       seed: int | None) -> ScenarioReport:
    lp_calls = 0
    tried = 0
    for blocks in enumerate_rainbow_partitions(config, spec.r):
        tried += 1
        lp_calls += 1
        cert = common_point_lp(config, blocks)
        if cert is not None:
            return ScenarioReport(spec.name, spec.params(), spec.mode, seed,
                                  True, blocks, cert, lp_calls, tried)
    return ScenarioReport(spec.name, spec.params(), spec.mode, seed,
                          False, None, None, lp_calls, tried)


def _search_stochastic(spec: ScenarioSpec, config: ColoredConfig,
                       seed: int | None) -> ScenarioReport:
    """Greedy descent on the exact infeasibility mass, with restarts.

    Each proposal costs one LP call; moves reassign a single point (block to
    block, block to unused, unused to block) or swap two same-color points
    between blocks.  A restart redraws a random rainbow assignment after a
    stall.  Budget exhaustion is reported as inconclusive, never as refuted.
    """
    rng = random.Random(seed if seed is not None else 0)
    r = spec.r
    budget = spec.budget
    stall_limit = 400
    lp_calls = 0
    tried = 0

    def energy(blocks):
        nonlocal lp_calls
        lp_calls += 1
        return intersection_infeasibility(config, blocks)

    def finish(blocks):
        canonical = tuple(sorted((tuple(sorted(b)) for b in blocks),
                                 key=lambda b: b[0]))
        cert = common_point_lp(config, canonical)
        return ScenarioReport(spec.name, spec.params(), spec.mode, seed,
                              True, canonical, cert, lp_calls, tried)

    while lp_calls < budget:
        assignment = _random_rainbow_assignment(config, r, rng)
        tried += 1
        current = energy(assignment)
        if current == 0:
            return finish(assignment)
        stall = 0
        while stall < stall_limit and lp_calls < budget:
            proposal = _propose_move(config, assignment, r, rng)
            if proposal is None:
                break
            tried += 1
            value = energy(proposal)
            if value <= current:
                if value < current:
                    stall = 0
                else:
                    stall += 1
                assignment = proposal
                current = value
                if current == 0:
                    return finish(assignment)
            else:
                stall += 1
    return ScenarioReport(spec.name, spec.params(), spec.mode, seed,
                          None, None, None, lp_calls, tried)


def _random_rainbow_assignment(config: ColoredConfig, r: int, rng: random.Random):
    """Random full-as-possible rainbow assignment with all blocks nonempty.

    Per color class, min(size, r) of its points land in distinct random
    blocks; leftovers stay unused.  Redraws until no block is empty.
    """
    by_color: dict[int, list[int]] = {}
    for idx in range(len(config)):
        by_color.setdefault(config.color_of(idx), []).append(idx)
    for _ in range(1000):
        blocks: list[list[int]] = [[] for _ in range(r)]
        for members in by_color.values():
            chosen = members if len(members) <= r else rng.sample(members, r)
            targets = rng.sample(range(r), len(chosen))
            for idx, bi in zip(chosen, targets):
                blocks[bi].append(idx)
        if all(blocks):
            return tuple(tuple(sorted(b)) for b in blocks)
    raise ParameterError(
        f"cannot fill {r} nonempty rainbow blocks from classes {config.class_sizes}")


def _propose_move(config: ColoredConfig, blocks, r: int, rng: random.Random):
    """One random local move; None when the chosen point admits no move."""
    placed = {idx: bi for bi, block in enumerate(blocks) for idx in block}
    unused = [idx for idx in range(len(config)) if idx not in placed]
    idx = rng.randrange(len(config))
    color = config.color_of(idx)
    block_colors = [{config.color_of(i) for i in block} for block in blocks]
    moves = []
    if idx in placed:
        source = placed[idx]
        for bi in range(r):
            if bi != source and color not in block_colors[bi]:
                moves.append(("move", idx, source, bi))
        if len(blocks[source]) > 1:
            moves.append(("drop", idx, source, None))
        for other, obi in placed.items():
            if (obi != source and config.color_of(other) == color
                    and other != idx):
                moves.append(("swap", idx, source, (other, obi)))
    else:
        for bi in range(r):
            if color not in block_colors[bi]:
                moves.append(("enter", idx, None, bi))
    if not moves:
        return None
    kind, point, source, extra = moves[rng.randrange(len(moves))]
    out = [list(b) for b in blocks]
    if kind == "move":
        out[source].remove(point)
        out[extra].append(point)
    elif kind == "drop":
        out[source].remove(point)
    elif kind == "enter":
        out[extra].append(point)
    else:  # swap
        other, obi = extra
        out[source].remove(point)
        out[obi].remove(other)
        out[source].append(other)
        out[obi].append(point)
    if not all(out):
        return None
    return tuple(tuple(sorted(b)) for b in out)


def run_trials(spec: ScenarioSpec, base_seed: int, trials: int,
               pmap=map) -> list[ScenarioReport]:
    """Run the scenario on configs seeded base_seed, base_seed+1, ...

    ``pmap`` is an abstract parallel map; results keep trial order regardless
    of the scheduler.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    seeds = [base_seed + i for i in range(trials)]
    return list(pmap(lambda s: run_scenario(spec, seed=s), seeds))
