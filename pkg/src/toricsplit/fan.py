"""Smooth complete simplicial fans and their combinatorics.

A fan is stored as primitive ray generators plus maximal cones given by ray
index sets.  Builders cover the varieties needed here: projective spaces,
del Pezzo surfaces dP(1..3) (dP3 is the hexagon, dP1/dP2 its sub-fans),
Hirzebruch surfaces, products, and the odd-dimensional toric Fano varieties
with maximal Picard number (del Pezzo-6 towers over P^1).
"""

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .lattice import as_matrix, determinant, unimodular_inverse

# int64 fast paths are only taken when every value is comfortably below this
_INT64_SAFE = 2 ** 31


class InvalidSpec(ValueError):
    """Unparseable or out-of-range variety descriptor."""


class ConstructionFailed(RuntimeError):
    """A builder produced data that fails validation."""


class NotComplete(RuntimeError):
    """A wall candidate is not shared by exactly two maximal cones."""


def _gcd_all(xs):
    g = 0
    for x in xs:
        x = abs(int(x))
        while x:
            g, x = x, g % x
    return g


class Fan:
    """Immutable simplicial fan: ray generators plus maximal cone index sets.

    Rays keep the builder's order (divisors are addressed by ray index);
    maximal cones are normalised to sorted tuples and sorted overall, so cone
    indices are canonical for a given ray order.
    """

    def __init__(self, dim, rays, max_cones):
        if dim < 1:
            raise ValueError("fan dimension must be positive")
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        if not rays:
            raise ValueError("a fan needs at least one ray")
        for r in rays:
            if len(r) != dim:
                raise ValueError(f"ray {r} does not have dimension {dim}")
            if _gcd_all(r) != 1:
                raise ValueError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise ValueError("ray generators must be pairwise distinct")
        cones = []
        for cone in max_cones:
            c = tuple(sorted(int(i) for i in cone))
            if len(c) != dim or len(set(c)) != dim:
                raise ValueError(f"maximal cone {c} must consist of {dim} distinct rays")
            if c and (c[0] < 0 or c[-1] >= len(rays)):
                raise ValueError(f"cone {c} references a ray out of range")
            cones.append(c)
        cones.sort()
        for a, b in zip(cones, cones[1:]):
            if a == b:
                raise ValueError(f"duplicate maximal cone {a}")
        self.dim = dim
        self.rays = rays
        self.max_cones = tuple(cones)
        self._cache = {}

    def __repr__(self):
        return (f"Fan(dim={self.dim}, rays={len(self.rays)}, "
                f"max_cones={len(self.max_cones)})")

    @cached_property
    def ray_matrix(self):
        """Rays as rows, an object-dtype (#rays x dim) matrix."""
        return as_matrix(self.rays)

    @cached_property
    def cone_matrices(self):
        """Per maximal cone: the dim x dim matrix with the cone's rays as rows."""
        return tuple(as_matrix([self.rays[j] for j in cone])
                     for cone in self.max_cones)

    @cached_property
    def cone_inverses(self):
        """Inverse of each cone matrix; only exists when the fan is smooth."""
        return tuple(unimodular_inverse(m) for m in self.cone_matrices)

    @cached_property
    def face_complex(self):
        return FaceComplex.from_facets(len(self.rays), self.max_cones)

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, data):
        return cls(data["dim"], data["rays"], data["max_cones"])

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class Wall:
    """Codimension-1 cone with its two adjacent maximal cones.

    `rays` are the wall's ray indices; u_plus/u_minus are the ray indices that
    complete the adjacent cones, with u_plus the smaller index.
    """
    rays: tuple
    plus_cone: int
    minus_cone: int
    u_plus: int
    u_minus: int


@dataclass(frozen=True)
class PrimitiveCollection:
    """Minimal non-face with its primitive relation.

    The relation states sum(rays) == sum(coeff * relation ray) exactly, with
    positive integer coefficients; both sides are empty when the rays sum to
    zero.
    """
    rays: tuple
    relation_cone: tuple
    relation_coeffs: tuple


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    complete: bool
    simplicial: bool
    messages: tuple = ()

    @property
    def ok(self):
        return self.smooth and self.complete and self.simplicial


class FaceComplex:
    """Abstract simplicial complex of a fan's cones, on ray indices.

    Faces are stored as frozensets (the empty face included) and are closed
    under subsets by construction.
    """

    def __init__(self, vertex_count, faces, facets):
        self.vertex_count = vertex_count
        self.faces = frozenset(faces)
        self.facets = tuple(sorted(tuple(sorted(f)) for f in facets))
        self._cohomology_cache = {}

    @classmethod
    def from_facets(cls, vertex_count, facets):
        faces = {frozenset()}
        for facet in facets:
            facet = tuple(facet)
            for k in range(len(facet) + 1):
                faces.update(frozenset(c) for c in itertools.combinations(facet, k))
        return cls(vertex_count, faces, facets)

    def is_face(self, vertices):
        return frozenset(vertices) in self.faces

    @cached_property
    def faces_by_size(self):
        """faces_by_size[k] = sorted tuple of the size-k faces (as sorted tuples)."""
        top = max((len(f) for f in self.faces), default=0)
        buckets = [[] for _ in range(top + 1)]
        for f in self.faces:
            buckets[len(f)].append(tuple(sorted(f)))
        return tuple(tuple(sorted(b)) for b in buckets)

    def restrict(self, vertices):
        """Full subcomplex on the given vertex subset."""
        keep = frozenset(vertices)
        faces = [f for f in self.faces if f <= keep]
        facets = [f for f in faces
                  if not any(f < g for g in faces)]
        return FaceComplex(self.vertex_count, faces, facets)

    def face_counts(self):
        """Number of faces of each size, index = cardinality."""
        return tuple(len(b) for b in self.faces_by_size)


# ---------------------------------------------------------------------------
# builders


def _validated(fan, what):
    report = validate(fan)
    if not report.ok:
        raise ConstructionFailed(f"{what}: {'; '.join(report.messages)}")
    return fan


def projective_space(n):
    """P^n: rays e_0..e_{n-1} and -(e_0+...+e_{n-1}), all n-subsets as cones."""
    if n < 1:
        raise InvalidSpec(f"projective space needs n >= 1, got {n}")
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = itertools.combinations(range(n + 1), n)
    return _validated(Fan(n, rays, cones), f"P^{n}")


_HEXAGON = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def del_pezzo(r):
    """Blow-up of P^2 in r torus-fixed points, r in 1..3, as hexagon sub-fans.

    dP3 is the full hexagon fan on +-e0, +-e1, +-(e0-e1); dP2 and dP1 drop
    one and two rays of it.
    """
    if r not in (1, 2, 3):
        raise InvalidSpec(f"del Pezzo surfaces are built for r in 1..3, got {r}")
    drop = {3: (), 2: ((1, -1),), 1: ((1, -1), (-1, 0))}[r]
    rays = [v for v in _HEXAGON if v not in drop]
    m = len(rays)
    cones = [(i, (i + 1) % m) for i in range(m)]
    return _validated(Fan(2, rays, cones), f"dP({r})")


def hirzebruch(a):
    """Hirzebruch surface F_a: rays e0, e1, -e0 + a*e1, -e1."""
    if a < 0:
        raise InvalidSpec(f"Hirzebruch surface needs a >= 0, got {a}")
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    cones = [(0, 1), (1, 2), (2, 3), (3, 0)]
    return _validated(Fan(2, rays, cones), f"F{a}")


def tower_rays(d):
    """Ray generators of the d-dimensional del Pezzo-6 tower over P^1.

    Order: v_0 = e_0, then v_{2k-1} = e_k and v_{2k} = -e_k for k = 1..d-1,
    then w_0 = e_1 - e_0 followed by w_{2j-1} = e_{2j-1} - e_{2j} and
    w_{2j} = -w_{2j-1} for j = 1..(d-1)/2.
    """
    def e(i, sign=1):
        return tuple(sign if j == i else 0 for j in range(d))

    def diff(i, k):
        return tuple((1 if j == i else 0) - (1 if j == k else 0) for j in range(d))

    rays = [e(0)]
    for k in range(1, d):
        rays.append(e(k))
        rays.append(e(k, -1))
    rays.append(diff(1, 0))
    for j in range(1, (d - 1) // 2 + 1):
        rays.append(diff(2 * j - 1, 2 * j))
        rays.append(diff(2 * j, 2 * j - 1))
    return tuple(rays)


def tower_primitive_pairs(d):
    """Primitive pairs of the d-dimensional tower, as ray index pairs.

    With v/w indexed as in tower_rays: v_i is ray i, w_i is ray 2d-1+i.
    Per hexagon block j these are the nine non-edges of the hexagon on
    {+-e_{2j-1}, +-e_{2j}, +-(e_{2j-1}-e_{2j})}, plus the pair {w_0, v_0}
    for the twisted P^1 direction.
    """
    def v(i):
        return i

    def w(i):
        return 2 * d - 1 + i

    l = (d - 1) // 2
    pairs = [(w(0), v(0))]
    for k in range(1, 2 * l + 1):
        pairs.append((v(2 * k - 1), v(2 * k)))
    for j in range(1, l + 1):
        pairs.append((w(2 * j - 1), w(2 * j)))
        pairs.append((w(2 * j - 1), v(4 * j - 2)))
        pairs.append((w(2 * j - 1), v(4 * j - 1)))
        pairs.append((w(2 * j), v(4 * j - 3)))
        pairs.append((w(2 * j), v(4 * j)))
        pairs.append((v(4 * j - 3), v(4 * j)))
        pairs.append((v(4 * j - 2), v(4 * j - 1)))
    return tuple(tuple(sorted(p)) for p in pairs)


def del_pezzo_bundle(d):
    """The d-dimensional (dP3)^((d-1)/2)-fiber bundle over P^1, d odd >= 3.

    This is the unique smooth toric Fano d-fold with Picard number 2d-1 that
    is not a product; maximal cones are derived from the primitive pair list
    and the result is validated before being returned.
    """
    if d < 3 or d % 2 == 0:
        raise InvalidSpec(f"the tower is defined for odd d >= 3, got {d}")
    rays = tower_rays(d)
    cones = maximal_cones_from_primitive_pairs(rays, tower_primitive_pairs(d))
    return _validated(Fan(d, rays, cones), f"tower d={d}")


def maximal_cones_from_primitive_pairs(rays, forbidden_pairs):
    """All unimodular size-n independent sets of the non-face pair graph.

    For a fan whose primitive collections are all pairs, the faces are the
    index sets containing no forbidden pair, and the maximal cones are the
    size-n ones.  Raises ConstructionFailed when an independent set is not
    unimodular: that means the pair list does not describe a smooth fan.
    """
    rays = [tuple(r) for r in rays]
    n = len(rays[0])
    masks = []
    for p in forbidden_pairs:
        p = tuple(p)
        if len(p) != 2:
            raise ValueError(f"forbidden set {p} must be a pair")
        masks.append((1 << p[0]) | (1 << p[1]))
    cones = []
    for combo in itertools.combinations(range(len(rays)), n):
        cmask = 0
        for i in combo:
            cmask |= 1 << i
        if any(m & cmask == m for m in masks):
            continue
        det = determinant([rays[i] for i in combo])
        if det not in (1, -1):
            raise ConstructionFailed(
                f"independent set {combo} has determinant {det}; "
                "the primitive pair list does not define a smooth fan")
        cones.append(combo)
    return tuple(cones)


def fan_product(f1, f2):
    """Product fan: embedded rays of f1 then f2, all unions of maximal cones."""
    n1, n2 = f1.dim, f2.dim
    rays = [r + (0,) * n2 for r in f1.rays]
    rays += [(0,) * n1 + r for r in f2.rays]
    off = len(f1.rays)
    cones = [c1 + tuple(off + i for i in c2)
             for c1 in f1.max_cones for c2 in f2.max_cones]
    return Fan(n1 + n2, rays, cones)


_DESCRIPTOR = re.compile(r"^([A-Za-z]+):?(\d+)$")


def build_named(spec):
    """Build a variety from a descriptor: P:n, dP:r, Xd:d, F:a, or products A*B.

    The colon is optional (P2 == P:2); products multiply left to right.
    """
    spec = spec.strip()
    if "*" in spec:
        factors = [build_named(part) for part in spec.split("*")]
        if any(f is None for f in factors):
            raise InvalidSpec(f"bad product descriptor {spec!r}")
        fan = factors[0]
        for f in factors[1:]:
            fan = fan_product(fan, f)
        return fan
    m = _DESCRIPTOR.match(spec)
    if not m:
        raise InvalidSpec(f"cannot parse variety descriptor {spec!r}")
    kind, num = m.group(1), int(m.group(2))
    if kind == "P":
        return projective_space(num)
    if kind == "dP":
        return del_pezzo(num)
    if kind == "Xd":
        return del_pezzo_bundle(num)
    if kind == "F":
        return hirzebruch(num)
    raise InvalidSpec(f"unknown variety family {kind!r} in {spec!r}")


# ---------------------------------------------------------------------------
# validation


def _facet_incidence(fan):
    """Map facet (sorted (n-1)-subset of a maximal cone) -> adjacent cone indices."""
    inc = {}
    for ci, cone in enumerate(fan.max_cones):
        for facet in itertools.combinations(cone, fan.dim - 1):
            inc.setdefault(facet, []).append(ci)
    return inc


def _battery_points(fan):
    """Deterministic completeness battery: +-rays and pairwise midpoints.

    Scaled by 2 so everything stays integral; cone membership is invariant
    under positive scaling.
    """
    pm = []
    for r in fan.rays:
        pm.append(tuple(2 * x for x in r))
        pm.append(tuple(-2 * x for x in r))
    points = set(pm)
    for a, b in itertools.combinations(pm, 2):
        points.add(tuple((x + y) // 2 for x, y in zip(a, b)))
    points.discard(tuple(0 for _ in range(fan.dim)))
    return sorted(points)


def _covers_points_smooth(fan, points):
    """Vectorised membership check using the exact integer cone inverses."""
    bs = [np.array(b.tolist(), dtype=np.int64) for b in fan.cone_inverses]
    for b in bs:
        assert np.abs(b).max(initial=0) < _INT64_SAFE
    pts = np.array(points, dtype=np.int64)
    assert np.abs(pts).max(initial=0) < _INT64_SAFE
    missing = np.ones(len(points), dtype=bool)
    for b in bs:
        lam = pts @ b  # row i: coefficients of point i on the cone's rays
        missing &= ~(lam >= 0).all(axis=1)
        if not missing.any():
            return []
    return [points[i] for i in np.nonzero(missing)[0]]


def _covers_points_general(fan, points):
    """Fraction-based membership for fans that are not smooth."""
    missing = []
    mats = [[[Fraction(x) for x in fan.rays[j]] for j in cone]
            for cone in fan.max_cones]
    for pt in points:
        found = False
        for cols in mats:
            lam = _solve_fractions(cols, pt)
            if lam is not None and all(x >= 0 for x in lam):
                found = True
                break
        if not found:
            missing.append(pt)
    return missing


def _solve_fractions(columns, rhs):
    """Solve the square system (columns as a matrix's columns) = rhs over Q."""
    n = len(columns)
    a = [[columns[j][i] for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def validate(fan):
    """Check smoothness and completeness; simpliciality holds by representation.

    Completeness combines the pseudomanifold criterion (every wall candidate
    in exactly two maximal cones) with an exact sample-point coverage battery.
    """
    key = "validation"
    if key in fan._cache:
        return fan._cache[key]
    messages = []
    dets = [determinant(m) for m in fan.cone_matrices]
    bad = [(fan.max_cones[i], d) for i, d in enumerate(dets) if d not in (1, -1)]
    smooth = not bad
    for cone, d in bad[:5]:
        messages.append(f"cone {cone} has determinant {d}")

    complete = True
    for facet, adj in _facet_incidence(fan).items():
        if len(adj) != 2:
            complete = False
            messages.append(f"wall candidate {facet} lies in {len(adj)} maximal cones")
    if complete:
        points = _battery_points(fan)
        if smooth:
            missing = _covers_points_smooth(fan, points)
        else:
            missing = _covers_points_general(fan, points)
        if missing:
            complete = False
            messages.append(f"sample point {missing[0]} not covered by any maximal cone")
    report = ValidationReport(smooth, complete, True, tuple(messages))
    fan._cache[key] = report
    return report


# ---------------------------------------------------------------------------
# walls, primitive collections, Poincare polynomial


def walls(fan):
    """All codimension-1 cones with their two adjacent maximal cones.

    Sorted by ray index set; u_plus is the completing ray of smaller index.
    """
    key = "walls"
    if key in fan._cache:
        return fan._cache[key]
    result = []
    for facet, adj in sorted(_facet_incidence(fan).items()):
        if len(adj) != 2:
            raise NotComplete(
                f"wall candidate {facet} lies in {len(adj)} maximal cones")
        extras = []
        for ci in adj:
            (extra,) = set(fan.max_cones[ci]) - set(facet)
            extras.append((extra, ci))
        extras.sort()
        (u_plus, plus_cone), (u_minus, minus_cone) = extras
        result.append(Wall(facet, plus_cone, minus_cone, u_plus, u_minus))
    result = tuple(result)
    fan._cache[key] = result
    return result


def primitive_collections(fan):
    """All minimal non-faces, each with its primitive relation.

    Enumerates candidate sets by increasing cardinality up to dim + 1; for a
    complete simplicial fan every non-face contains a minimal one of size at
    most dim + 1.
    """
    key = "primitive_collections"
    if key in fan._cache:
        return fan._cache[key]
    complex_ = fan.face_complex
    found = []
    nrays = len(fan.rays)
    for k in range(1, fan.dim + 2):
        for combo in itertools.combinations(range(nrays), k):
            if complex_.is_face(combo):
                continue
            if all(complex_.is_face(combo[:i] + combo[i + 1:]) for i in range(k)):
                found.append(combo)
    result = tuple(_relation_for(fan, combo) for combo in found)
    fan._cache[key] = result
    return result


def _relation_for(fan, combo):
    s = np.zeros(fan.dim, dtype=object)
    for i in combo:
        s = s + np.array(fan.rays[i], dtype=object)
    if not s.any():
        return PrimitiveCollection(combo, (), ())
    for ci, cone in enumerate(fan.max_cones):
        lam = fan.cone_inverses[ci].T @ s
        if all(x >= 0 for x in lam):
            support = [(cone[t], int(lam[t])) for t in range(fan.dim) if lam[t] > 0]
            support.sort()
            return PrimitiveCollection(
                combo,
                tuple(j for j, _ in support),
                tuple(c for _, c in support),
            )
    raise ConstructionFailed(
        f"sum of primitive collection {combo} lies in no maximal cone; fan not complete")


@dataclass(frozen=True)
class PoincarePolynomial:
    """Integer polynomial in t, coeffs[k] = coefficient of t^k."""
    coeffs: tuple

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def euler_characteristic(self):
        return self(-1)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poincare_polynomial(fan):
    """P(t) = sum_k d_k (t^2-1)^(n-k) where d_k counts k-dimensional cones.

    P(-1) is the Euler characteristic, which equals the number of maximal
    cones for a smooth complete fan.
    """
    n = fan.dim
    counts = fan.face_complex.face_counts()
    total = [0] * (2 * n + 1)
    base = [-1, 0, 1]  # t^2 - 1
    for k in range(n + 1):
        d_k = counts[k] if k < len(counts) else 0
        power = [1]
        for _ in range(n - k):
            power = _poly_mul(power, base)
        for i, c in enumerate(power):
            total[i] += d_k * c
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return PoincarePolynomial(tuple(total))
