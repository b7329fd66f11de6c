"""Morphisms between delta sequences, and the three concrete families.

A morphism maps positions of one delta sequence to positions of another,
sending positive positions to positive ones and negative to negative.  The
classes checked here, ordered by how much structure they preserve:

    isomorphism   order-preserving value-preserving bijection
    right-veering bijection, order-preserving on each sign separately,
                  never moves a positive past a negative it preceded
    embedding     mixed pairs keep their order both ways + target values
                  have capacity for their fibers
    immersion     mixed pairs keep their order forward + capacity
    semi-immersion mixed pairs keep their order forward only

Embeddings can be upgraded to an isomorphism onto a delta subsequence, and
a well-behaved one-to-one semi-immersion (one admitting a control function
pairing each positive-defect point with a compensating negative-defect
point) can be upgraded to a one-to-one immersion; both upgrades go through
refinements that do not change ranks.

The three concrete families: the degree-n covering maps z -> n z + k P/p_l,
the normal-form comparison map between componentwise-comparable tuples, and
the pinch map driven by the order bijection of a two-generator numerical
semigroup.
"""

from dataclasses import dataclass

from . import seifert
from .arith import gcd, mod_inverse, pairwise_coprime
from .deltaseq import DeltaSequence, from_seifert, position_to_json
from .errors import (
    DegenerateTupleError,
    FirstElementNegativeError,
    NotBadError,
    NotComparableError,
    NotControlledError,
    NotCoprimeError,
    NotEmbeddingError,
    NotMemberError,
    NotRigidError,
    NotSemiImmersionError,
)


class DeltaMorphism:
    """A total position map between two delta sequences.

    Only positions are stored; every validator recomputes value and order
    data from the two sequences.
    """

    def __init__(self, source: DeltaSequence, target: DeltaSequence, mapping: dict):
        missing = set(source.positions) - set(mapping)
        if missing:
            raise ValueError(f"mapping not total; missing {sorted(missing)[:5]}")
        extra = set(mapping) - set(source.positions)
        if extra:
            raise ValueError(f"mapping has unknown source positions {sorted(extra)[:5]}")
        bad_targets = {v for v in mapping.values()} - set(target.positions)
        if bad_targets:
            raise ValueError(f"mapping leaves target positions {sorted(bad_targets)[:5]}")
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        self._defect_table = None

    def image(self, position):
        return self.mapping[position]

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def is_morphism(self) -> bool:
        """Positive positions land on positive values, negative on negative."""
        src, tgt = self.source, self.target
        return all((src.value_at(z) > 0) == (tgt.value_at(self.mapping[z]) > 0)
                   for z in src.positions)

    def _mixed_order_forward(self) -> bool:
        # for x positive, y negative, x < y: image(x) < image(y)
        src = self.source
        running_max = None
        for z in src.positions:
            if src.value_at(z) > 0:
                img = self.mapping[z]
                if running_max is None or img > running_max:
                    running_max = img
            elif running_max is not None and not running_max < self.mapping[z]:
                return False
        return True

    def _mixed_order_backward(self) -> bool:
        # for x positive, y negative, y < x: image(y) < image(x)
        src = self.source
        running_min = None
        for z in reversed(src.positions):
            if src.value_at(z) > 0:
                img = self.mapping[z]
                if running_min is None or img < running_min:
                    running_min = img
            elif running_min is not None and not self.mapping[z] < running_min:
                return False
        return True

    def _capacity_ok(self) -> bool:
        # |target value| covers the total |source value| of its fiber
        load = {}
        for z in self.source.positions:
            img = self.mapping[z]
            load[img] = load.get(img, 0) + abs(self.source.value_at(z))
        return all(abs(self.target.value_at(img)) >= total
                   for img, total in load.items())

    def is_semi_immersion(self) -> bool:
        return self.is_morphism() and self._mixed_order_forward()

    def is_immersion(self) -> bool:
        return self.is_semi_immersion() and self._capacity_ok()

    def is_embedding(self) -> bool:
        return (self.is_morphism()
                and self._mixed_order_forward()
                and self._mixed_order_backward()
                and self._capacity_ok())

    def is_isomorphism(self) -> bool:
        if not self.is_morphism():
            return False
        if len(self.mapping) != len(self.target.positions) or not self.is_injective():
            return False
        images = [self.mapping[z] for z in self.source.positions]
        if any(images[i] >= images[i + 1] for i in range(len(images) - 1)):
            return False
        return all(self.source.value_at(z) == self.target.value_at(self.mapping[z])
                   for z in self.source.positions)

    def is_isomorphism_onto_image(self) -> bool:
        """Order-preserving value-preserving injection (image may be proper)."""
        try:
            sub = self.target.subsequence(set(self.mapping.values()))
        except FirstElementNegativeError:
            return False
        return DeltaMorphism(self.source, sub, self.mapping).is_isomorphism()

    def is_right_veering(self) -> bool:
        src, tgt = self.source, self.target
        if not self.is_morphism():
            return False
        if len(self.mapping) != len(tgt.positions) or not self.is_injective():
            return False
        for sign_positions in (src.positive_positions, src.negative_positions):
            images = [self.mapping[z] for z in sign_positions]
            if any(images[i] >= images[i + 1] for i in range(len(images) - 1)):
                return False
        if not self._mixed_order_forward():
            return False
        return all(src.value_at(z) == tgt.value_at(self.mapping[z])
                   for z in src.positions)

    def defect_table(self) -> "DefectTable":
        if self._defect_table is not None:
            return self._defect_table
        if not (self.is_injective() and self.is_semi_immersion()):
            raise NotSemiImmersionError("defects need a one-to-one semi-immersion")
        defects = {}
        for z in self.source.positions:
            defects[z] = (abs(self.source.value_at(z))
                          - abs(self.target.value_at(self.mapping[z])))
        self._defect_table = DefectTable(
            defects=defects,
            bad=tuple(z for z in self.source.positions if defects[z] > 0),
            good=tuple(z for z in self.source.positions if defects[z] < 0),
            neutral=tuple(z for z in self.source.positions if defects[z] == 0),
        )
        return self._defect_table

    def to_json(self) -> dict:
        return {"map": [[position_to_json(z), position_to_json(self.mapping[z])]
                        for z in self.source.positions]}


@dataclass(frozen=True)
class DefectTable:
    """Per-position capacity excess of a one-to-one semi-immersion."""

    defects: dict
    bad: tuple      # positive defect
    good: tuple     # negative defect
    neutral: tuple


def is_control_function(m: DeltaMorphism, theta: dict) -> bool:
    """Check an injection of the bad set into the good set.

    It must preserve the sign class, point strictly left of its argument on
    the positive side and strictly right on the negative side, and every
    good image must absorb at least the defect of its bad point.
    """
    table = m.defect_table()
    bad, good = set(table.bad), set(table.good)
    if set(theta.keys()) != bad:
        return False
    if len(set(theta.values())) != len(theta):
        return False
    if not set(theta.values()) <= good:
        return False
    positive = set(m.source.positive_positions)
    for b, g in theta.items():
        if (b in positive) != (g in positive):
            return False
        if b in positive:
            if not g < b:
                return False
        elif not g > b:
            return False
        if abs(table.defects[b]) > abs(table.defects[g]):
            return False
    return True


def embed_to_subsequence(m: DeltaMorphism):
    """Turn an embedding into an isomorphism onto a delta subsequence.

    Target fibers are refined so the map becomes injective with matching
    values, then order inside each sign class is repaired by swapping
    adjacent inverted pairs (a merge followed by the transposed refinement).
    Returns (refined source, refined target, morphism between them); the
    morphism is an isomorphism onto its image and ranks are unchanged.
    """
    if not m.is_embedding():
        raise NotEmbeddingError("map is not an embedding")
    source, target, mapping = m.source, m.target, dict(m.mapping)

    fibers = {}
    for z in source.positions:
        fibers.setdefault(mapping[z], []).append(z)
    splits = {}
    for img, fiber in fibers.items():
        parts = [source.value_at(w) for w in fiber]
        remainder = target.value_at(img) - sum(parts)
        if len(fiber) == 1 and remainder == 0:
            continue
        splits[img] = parts + ([remainder] if remainder else [])
    target = target.refine_many(splits)
    tgt_index = {p: i for i, p in enumerate(target.positions)}
    for img in splits:
        start = tgt_index[img]
        for w, spot in zip(fibers[img], target.positions[start:start + len(fibers[img])]):
            mapping[w] = spot

    # bubble out inversions within a sign class; each swap carries values
    values = list(source.values)
    positions = list(source.positions)
    images = [mapping[z] for z in positions]
    changed = True
    while changed:
        changed = False
        for i in range(len(positions) - 1):
            same_sign = (values[i] > 0) == (values[i + 1] > 0)
            if same_sign and images[i] > images[i + 1]:
                values[i], values[i + 1] = values[i + 1], values[i]
                images[i], images[i + 1] = images[i + 1], images[i]
                changed = True
    refined_source = DeltaSequence(positions, values)
    result = DeltaMorphism(refined_source, target, dict(zip(positions, images)))
    assert result.is_isomorphism_onto_image()
    return refined_source, target, result


def fix_defects(m: DeltaMorphism, theta: dict):
    """Upgrade a controlled one-to-one semi-immersion to an immersion.

    Each bad point b splits into (b1, b2) with b1 carrying exactly the value
    of its image; each matched good image g splits into (g1, g2) with g1
    carrying exactly the value of theta(b).  The map keeps b1 -> image(b)
    and theta(b) -> g1 and sends the excess b2 to the slack g2.
    Returns (refined source, refined target, one-to-one immersion).
    """
    if not is_control_function(m, theta):
        raise NotControlledError("theta is not a control function for the map")
    source, target, mapping = m.source, m.target, dict(m.mapping)
    table = m.defect_table()

    source_splits, target_splits = {}, {}
    for b in table.bad:
        g = mapping[theta[b]]
        matched = target.value_at(mapping[b])
        source_splits[b] = [matched, source.value_at(b) - matched]
        matched_good = source.value_at(theta[b])
        target_splits[g] = [matched_good, target.value_at(g) - matched_good]
    new_source = source.refine_many(source_splits)
    new_target = target.refine_many(target_splits)

    src_index = {p: i for i, p in enumerate(new_source.positions)}
    tgt_index = {p: i for i, p in enumerate(new_target.positions)}
    for b in table.bad:
        b2 = new_source.positions[src_index[b] + 1]
        g2 = new_target.positions[tgt_index[mapping[theta[b]]] + 1]
        mapping[b2] = g2

    result = DeltaMorphism(new_source, new_target, mapping)
    assert result.is_injective() and result.is_immersion()
    return new_source, new_target, result


# -- branched covers along a singular fiber ---------------------------------


def branched_cover_embeddings(t: seifert.SeifertTuple, n: int,
                              fiber: int = None) -> list:
    """The n disjoint value-preserving embeddings into the n-fold cover.

    The cover multiplies the designated multiplicity (the largest one by
    default) by n; the k-th map is z -> n z + k (P / fiber) for k = 0..n-1.
    The degree must be coprime to every other multiplicity.
    """
    if n < 1:
        raise ValueError(f"covering degree must be >= 1, got {n}")
    if t.is_degenerate:
        raise DegenerateTupleError(f"{t} has no delta sequence")
    if fiber is None:
        fiber = t.multiplicities[-1]
    if fiber not in t.multiplicities:
        raise ValueError(f"{fiber} is not a multiplicity of {t}")
    others = tuple(p for p in t.multiplicities if p != fiber)
    if any(gcd(n, p) != 1 for p in others):
        raise NotCoprimeError(f"degree {n} shares a factor with {others}")
    cover = seifert.make_tuple(others + (n * fiber,))
    source = from_seifert(t)
    target = from_seifert(cover)
    shift = t.product // fiber
    maps = []
    for k in range(n):
        mapping = {z: n * z + k * shift for z in source.positions}
        maps.append(DeltaMorphism(source, target, mapping))
    return maps


# -- the normal-form comparison map ------------------------------------------


def partial_order_immersion(t: seifert.SeifertTuple, t2: seifert.SeifertTuple) -> DeltaMorphism:
    """Immersion between comparable tuples of the same length.

    A member with normal form P (k + sum x_i/p_i) maps to the member of the
    larger tuple with the same coordinates, P' (k + sum x_i/q_i); negative
    positions follow by reflection.
    """
    ps, qs = t.multiplicities, t2.multiplicities
    if len(ps) != len(qs) or any(p > q for p, q in zip(ps, qs)):
        raise NotComparableError(f"{t} is not componentwise <= {t2}")
    if t.is_degenerate or t2.is_degenerate:
        raise DegenerateTupleError("both tuples must have delta sequences")
    source = from_seifert(t)
    target = from_seifert(t2)
    n1, n2 = seifert.n_cutoff(t), seifert.n_cutoff(t2)
    p2 = t2.product
    mapping = {}
    for x in source.positive_positions:
        nf = seifert.membership(t, x)
        image = p2 * nf.k + sum(xi * (p2 // q) for xi, q in zip(nf.x, qs))
        mapping[x] = image
        mapping[n1 - x] = n2 - image
    return DeltaMorphism(source, target, mapping)


# -- two-generator numerical semigroups (the pinch engine) -------------------


class TwoGenSemigroup:
    """The numerical semigroup {aq + br : a, b >= 0} for coprime q, r >= 2.

    Carries the two delta functions 1 + floor(x/qr) on the natural numbers
    and 1 + floor(a/r) + floor(b/q) on members, and the order bijection psi
    between them.  Everything below the Frobenius regime is a small lookup
    table; above it psi is a constant shift by half the gap count.
    """

    def __init__(self, q: int, r: int):
        if q < 2 or r < 2:
            raise ValueError(f"generators must be >= 2, got ({q}, {r})")
        if gcd(q, r) != 1:
            raise NotCoprimeError(f"({q}, {r}) are not coprime")
        self.q, self.r = q, r
        self.frobenius = q * r - q - r
        self.shift = (q - 1) * (r - 1) // 2
        self._q_inv_mod_r = mod_inverse(q % r, r)
        self._small = [s for s in range(self.frobenius + 1) if self._is_member(s)]
        assert len(self._small) == self.shift

    def _is_member(self, s: int) -> bool:
        if s < 0:
            return False
        a = (s * self._q_inv_mod_r) % self.r
        return a * self.q <= s

    def __contains__(self, s) -> bool:
        return self._is_member(int(s))

    def gaps(self) -> list:
        """The finitely many naturals outside the semigroup."""
        return [x for x in range(self.frobenius + 1) if not self._is_member(x)]

    def members_upto(self, bound: int) -> list:
        return [s for s in range(bound + 1) if self._is_member(s)]

    def psi(self, x: int) -> int:
        """The order-preserving bijection from the naturals onto the members."""
        if x < 0:
            raise ValueError("psi is defined on nonnegative integers")
        if x < self.shift:
            return self._small[x]
        return x + self.shift

    def delta_upper(self, x: int) -> int:
        """1 + floor(x / qr), the delta value on the natural numbers."""
        if x < 0:
            raise ValueError("needs x >= 0")
        return 1 + x // (self.q * self.r)

    def delta_lower(self, s: int) -> int:
        """1 + floor(a/r) + floor(b/q) for the canonical s = aq + br."""
        if not self._is_member(s):
            raise NotMemberError(f"{s} is not in S({self.q},{self.r})")
        a = (s * self._q_inv_mod_r) % self.r
        b = (s - a * self.q) // self.r
        return 1 + a // self.r + b // self.q

    def defect(self, x: int) -> int:
        """Defect of x under psi: delta_upper(x) - delta_lower(psi(x))."""
        return self.delta_upper(x) - self.delta_lower(self.psi(x))

    def bad_points_upto(self, bound: int) -> list:
        return [x for x in range(bound + 1) if self.defect(x) > 0]

    def theta(self, b: int) -> int:
        """Control partner 2kqr - b - 1 of a bad point in [kqr, (k+1)qr)."""
        if self.defect(b) <= 0:
            raise NotBadError(f"{b} has no positive defect under psi")
        k = b // (self.q * self.r)
        return 2 * k * self.q * self.r - b - 1


# -- rigid maps and the pinch morphism ---------------------------------------


def rigid_extend(source: DeltaSequence, target: DeltaSequence, partial: dict,
                 n_source: int, n_target: int) -> DeltaMorphism:
    """Extend an injection on the positive positions by reflection.

    The partial map must be injective, never move a point left, and move no
    point by more than half the cutoff difference; the reflected extension
    is then a one-to-one semi-immersion.
    """
    pos = source.positive_positions
    if set(partial.keys()) != set(pos):
        raise NotRigidError("partial map must be defined exactly on the positive positions")
    if len(set(partial.values())) != len(partial):
        raise NotRigidError("partial map is not injective")
    for x, y in partial.items():
        if y < x:
            raise NotRigidError(f"image decreases at {x} -> {y}")
        if 2 * (y - x) > n_target - n_source:
            raise NotRigidError(f"shift at {x} -> {y} exceeds half the cutoff difference")
    mapping = dict(partial)
    for x, y in partial.items():
        mapping[n_source - x] = n_target - y
    return DeltaMorphism(source, target, mapping)


def _fiber_projection_data(base, full_product: int):
    """(p, P/p, inverse of P/p mod p) per base fiber, computed once."""
    return [(p, full_product // p, mod_inverse((full_product // p) % p, p))
            for p in base]


def _fiber_projection(x: int, proj_data, base_product: int) -> int:
    """Coordinate z of x = P_t [z + qr sum x_i/p_i] in the source semigroup."""
    acc = x
    for p, gen, inv in proj_data:
        acc -= ((x * inv) % p) * gen
    z, rem = divmod(acc, base_product)
    assert rem == 0
    return z


def pinch_semi_immersion(base, q: int, r: int):
    """The pinch map from Sigma(base, qr) into Sigma(base, q, r).

    On positive positions the qr-fiber coordinate z is replaced by psi(z),
    the order bijection of the two-generator semigroup; the rest extends by
    reflection.  Returns (morphism, theta) where theta pairs every
    positive-defect position with a compensating one.
    """
    base = tuple(seifert.make_tuple(base).multiplicities)
    if q < 2 or r < 2:
        raise ValueError(f"pinch factors must be >= 2, got ({q}, {r})")
    if not pairwise_coprime(base + (q, r)):
        raise NotCoprimeError(f"{base} with ({q}, {r}) is not jointly coprime")
    t_source = seifert.make_tuple(base + (q * r,))
    t_target = seifert.make_tuple(base + (q, r))
    if t_source.is_degenerate or t_target.is_degenerate:
        raise DegenerateTupleError("pinch needs non-degenerate source and target")

    source = from_seifert(t_source)
    target = from_seifert(t_target)
    n1, n2 = seifert.n_cutoff(t_source), seifert.n_cutoff(t_target)
    base_product = 1
    for p in base:
        base_product *= p
    semi = TwoGenSemigroup(q, r)

    proj_data = _fiber_projection_data(base, t_source.product)
    partial = {}
    projections = {}
    for x in source.positive_positions:
        z = _fiber_projection(x, proj_data, base_product)
        projections[x] = z
        partial[x] = x + base_product * (semi.psi(z) - z)
    morphism = rigid_extend(source, target, partial, n1, n2)

    theta = {}
    table = morphism.defect_table()
    for b in table.bad:
        if b in projections:  # positive side
            z = projections[b]
            theta[b] = b + base_product * (semi.theta(z) - z)
        else:                 # reflected side
            x = n1 - b
            z = projections[x]
            theta[b] = n1 - (x + base_product * (semi.theta(z) - z))
    return morphism, theta
