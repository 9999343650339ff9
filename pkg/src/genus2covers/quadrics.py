"""Quadratic forms on P^15 and the 72-dimensional space cutting out the
Jacobian.

The generators come in five families, kept in this fixed order:

1. 20 rank conditions k_{ij} k_{rs} = k_{ir} k_{js} (the Veronese image of
   P^3 inside the even coordinates);
2. one extra even quadric obtained from the Kummer quartic;
3. 15 odd quadrics k_j * Q_i, where Q_1..Q_4 are the entries of an explicit
   antisymmetric 4x4 matrix of odd linear forms applied to (k_1..k_4) and
   one product relation k_1 Q_1 + ... + k_4 Q_4 = 0 is discarded;
4. 15 more from the same construction with every b_i replaced by b_{i-1},
   where f_0 b_0 = -(f_1 b_1 + ... + f_6 b_6), cleared of denominators;
5. 21 forms expressing each product b_i b_j as a quadratic in the k_{uv}:
   seven are hard-coded, the remaining fourteen are reconstructed by exact
   interpolation at sampled points.

Monomials are ordered (i, j), i <= j, over the 16 coordinates; a form maps
to its length-136 coefficient vector in that order for all linear algebra.
"""

from __future__ import annotations

import random

import numpy as np

from .curve import COORD_NAMES, CurveData, even_slot, random_point
from .errors import Genus2Error, InterpolationFailed, NotGeneric
from .fields import Field
from .linalg import Mat, _red_tables, kernel_rows, rank_rows, solve_rows, to_np

MONOMIALS = [(i, j) for i in range(16) for j in range(i, 16)]
MONO_INDEX = {m: n for n, m in enumerate(MONOMIALS)}
EVEN_MONOMIALS = [n for n, (i, j) in enumerate(MONOMIALS) if j < 10]   # 55
MIXED_MONOMIALS = [n for n, (i, j) in enumerate(MONOMIALS) if i < 10 <= j]  # 60
ODD_MONOMIALS = [n for n, (i, j) in enumerate(MONOMIALS) if i >= 10]   # 21


def mono_index(i: int, j: int) -> int:
    return MONO_INDEX[(i, j) if i <= j else (j, i)]


class QuadricForm:
    """Sparse symmetric quadratic form in the 16 projective coordinates.

    Stored as {(i, j): coeff} with i <= j; the value at a point v is
    sum coeff * v_i * v_j (so a symmetric-matrix off-diagonal entry a
    contributes 2a here).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=None):
        self.field = field
        self.coeffs = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                self.add_term(i, j, v)

    def add_term(self, i: int, j: int, v):
        if i > j:
            i, j = j, i
        F = self.field
        cur = self.coeffs.get((i, j), F.zero())
        new = F.add(cur, F.coerce(v))
        if F.is_zero(new):
            self.coeffs.pop((i, j), None)
        else:
            self.coeffs[(i, j)] = new

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, vec):
        F = self.field
        acc = F.zero()
        for (i, j), c in self.coeffs.items():
            acc = F.add(acc, F.mul(c, F.mul(vec[i], vec[j])))
        return acc

    def vector(self):
        """Length-136 coefficient vector in the fixed monomial order."""
        F = self.field
        out = [F.zero()] * len(MONOMIALS)
        for m, c in self.coeffs.items():
            out[MONO_INDEX[m]] = c
        return out

    @staticmethod
    def from_vector(field: Field, vec) -> "QuadricForm":
        q = QuadricForm(field)
        for n, c in enumerate(vec):
            if not field.is_zero(c):
                q.coeffs[MONOMIALS[n]] = c
        return q

    def scaled(self, s) -> "QuadricForm":
        F = self.field
        s = F.coerce(s)
        q = QuadricForm(F)
        for m, c in self.coeffs.items():
            v = F.mul(c, s)
            if not F.is_zero(v):
                q.coeffs[m] = v
        return q

    def monomial_support(self):
        return set(self.coeffs)

    def is_even_only(self) -> bool:
        return all(j < 10 for (_, j) in self.coeffs)

    def to_matrix(self) -> Mat:
        """Symmetric 16x16 matrix A with value v^t A v."""
        F = self.field
        half = F.inv(F.from_int(2))
        A = Mat.zeros(F, 16, 16)
        for (i, j), c in self.coeffs.items():
            if i == j:
                A.rows[i][i] = c
            else:
                A.rows[i][j] = F.mul(c, half)
                A.rows[j][i] = A.rows[i][j]
        return A

    @staticmethod
    def from_matrix(A: Mat) -> "QuadricForm":
        F = A.field
        q = QuadricForm(F)
        for i in range(16):
            for j in range(i, 16):
                c = A.rows[i][j] if i == j else F.mul(F.from_int(2), A.rows[i][j])
                if not F.is_zero(c):
                    q.coeffs[(i, j)] = c
        return q

    def compose(self, M: Mat) -> "QuadricForm":
        """The form v -> Q(M v)."""
        A = self.to_matrix()
        return QuadricForm.from_matrix(M.transpose() * A * M)

    def map_field(self, G: Field) -> "QuadricForm":
        from .poly import _lift
        q = QuadricForm(G)
        for m, c in self.coeffs.items():
            q.coeffs[m] = _lift(self.field, G, c)
        return q

    def frobenius_fixed(self) -> bool:
        F = self.field
        return all(F.eq(F.frobenius(c), c) for c in self.coeffs.values())

    def to_json(self):
        entries = [[i, j, self.field.fmt(c)]
                   for (i, j), c in sorted(self.coeffs.items())]
        return {"vars": list(COORD_NAMES), "entries": entries}

    @staticmethod
    def from_json(field: Field, data) -> "QuadricForm":
        q = QuadricForm(field)
        for i, j, c in data["entries"]:
            q.add_term(int(i), int(j), field.parse(c))
        return q


# ---------------------------------------------------------------------------
# numpy-assisted evaluation helpers


def monomial_values(field: Field, vec):
    return [field.mul(vec[i], vec[j]) for (i, j) in MONOMIALS]


def forms_vanish_at(forms, points_fields) -> bool:
    """Exact check that every form kills every point.

    ``forms`` share one coefficient field; ``points_fields`` is a list of
    (vec16, field) with a common point field that contains the coefficient
    field's image (F_p inside F_p^d, or equal fields).
    """
    if not forms or not points_fields:
        return True
    Fc = forms[0].field
    K = points_fields[0][1]
    rows = [monomial_values(K, vec) for vec, _ in points_fields]
    if K.is_finite() and K.p < (1 << 25) and Fc.kind in ("prime", "ext"):
        P = to_np(K, rows)
        if Fc.kind == "prime":
            C = to_np(Fc, [f.vector() for f in forms])
            if K.kind == "prime":
                return not np.any(C @ P.T % K.p)
            vals = np.tensordot(C, P, axes=([1], [1])) % K.p
            return not np.any(vals)
        if Fc == K:
            C = to_np(K, [f.vector() for f in forms])
            _, redfold = _red_tables(K)
            full = np.einsum("mja,njb->mnab", C % K.p, P % K.p)
            m, n = full.shape[0], full.shape[1]
            d = K.deg
            vals = full.reshape(m, n, d * d) % K.p @ redfold % K.p
            return not np.any(vals)
    # pure python fallback
    for f in forms:
        fk = f if f.field == K else f.map_field(K)
        for vec, _ in points_fields:
            if not K.is_zero(fk.evaluate(vec)):
                return False
    return True


def select_independent(field: Field, forms, target: int):
    """First `target` forms, in order, whose vectors are independent."""
    kept = []
    rows = []
    for f in forms:
        cand = rows + [f.vector()]
        if rank_rows(field, cand) == len(cand):
            rows = cand
            kept.append(f)
            if len(kept) == target:
                return kept
    raise Genus2Error(f"only {len(kept)} independent forms, wanted {target}")


# ---------------------------------------------------------------------------
# the seven hardcoded products b_i b_j in terms of the k_{uv}
# each entry: (b-pair, lhs multiplier, [(k-pair, scale, f-indices), ...])
# where the coefficient is scale * f_{i1} * f_{i2} * ...

_LISTED_BB = [
    ((1, 1), 1, [((1, 1), 1, (2,)), ((1, 2), 1, (3,)), ((1, 4), 1, ()),
                 ((1, 33), 1, (6,)), ((2, 2), 1, (4,)), ((2, 3), -1, (5,)),
                 ((2, 22), 1, (5,)), ((3, 22), -2, (6,)), ((22, 22), 1, (6,))]),
    ((1, 2), 2, [((1, 1), -1, (1,)), ((1, 3), 1, (3,)), ((1, 23), 2, (4,)),
                 ((1, 24), 1, ()), ((1, 33), -1, (5,)), ((2, 33), -2, (6,)),
                 ((3, 22), 2, (5,)), ((22, 23), 2, (6,))]),
    ((2, 2), 1, [((1, 1), 1, (0,)), ((3, 3), 1, (4,)), ((3, 4), 1, ()),
                 ((3, 23), 1, (5,)), ((22, 33), 1, (6,))]),
    ((2, 3), 2, [((1, 2), 2, (0,)), ((1, 3), 1, (1,)), ((3, 3), -1, (3,)),
                 ((3, 24), 1, ()), ((3, 33), 1, (5,)), ((23, 33), 2, (6,))]),
    ((3, 3), 1, [((1, 22), 1, (0,)), ((1, 23), 1, (1,)), ((1, 33), 1, (2,)),
                 ((4, 33), 1, ()), ((33, 33), 1, (6,))]),
    ((3, 4), 2, [((1, 33), -1, (1,)), ((2, 3), -2, (0,)), ((2, 22), 2, (0,)),
                 ((2, 33), 2, (2,)), ((3, 22), 2, (1,)), ((3, 33), 1, (3,)),
                 ((24, 33), 1, ()), ((33, 33), -1, (5,))]),
    ((4, 4), 1, [((1, 33), 1, (0,)), ((3, 22), -2, (0,)), ((3, 23), -1, (1,)),
                 ((22, 22), 1, (0,)), ((22, 23), 1, (1,)), ((23, 23), 1, (2,)),
                 ((23, 33), 1, (3,)), ((33, 33), 1, (4,)), ((33, 34), 1, ())]),
]
# compact even-coordinate codes used in the tables: a single digit d means
# k_{1d} (so 1 is k_11, 4 is k_14), two digits ij mean k_{ij}


def _bb_rhs_form(curve: CurveData, entry) -> QuadricForm:
    """Build c * b_i b_j - (k-expression) for one hardcoded row."""
    F = curve.field
    (bi, bj), mult, terms = entry
    q = QuadricForm(F)
    q.add_term(9 + bi, 9 + bj, mult)
    for (ca, cb), scale, fidx in terms:
        coeff = F.from_int(scale)
        for t in fidx:
            coeff = F.mul(coeff, curve.coeffs[t])
        slot_a = _kk_slot(ca)
        slot_b = _kk_slot(cb)
        q.add_term(slot_a, slot_b, F.neg(coeff))
    return q


def _kk_slot(code: int) -> int:
    if code < 10:
        return even_slot(1, code)
    return even_slot(code // 10, code % 10)


LISTED_BB_PAIRS = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4)]
ALL_BB_PAIRS = [(i, j) for i in range(1, 7) for j in range(i, 7)]
UNLISTED_BB_PAIRS = [p for p in ALL_BB_PAIRS if p not in LISTED_BB_PAIRS]


class JacobianModel:
    """The 72 quadrics through the Jacobian in P^15, over the ground field.

    Construction samples points over a small extension to interpolate the
    fourteen unlisted products b_i b_j, then certifies the rank.  Immutable
    afterwards.
    """

    def __init__(self, curve: CurveData, seed: int = 0, certify: bool = True):
        if not curve.field.is_finite():
            raise Genus2Error("quadric interpolation needs a finite ground field")
        self.curve = curve
        self.field = curve.field
        self.seed = seed
        self.veronese = veronese_quadrics(curve.field)
        self.kummer_even = kummer_image_quadric(curve)
        self.odd = odd_quadrics(curve)
        self.odd_shifted = odd_quadrics(curve, shifted=True)
        self.listed_bb = [_bb_rhs_form(curve, e) for e in _LISTED_BB]
        self.interpolated_bb = interpolate_bb_quadrics(curve, seed=seed)
        self.forms = (self.veronese + [self.kummer_even] + self.odd
                      + self.odd_shifted + self.listed_bb + self.interpolated_bb)
        if len(self.forms) != 72:
            raise Genus2Error(f"expected 72 generators, built {len(self.forms)}")
        if certify and rank_rows(self.field, [f.vector() for f in self.forms]) != 72:
            raise Genus2Error("the 72 generators are not independent")
        self._bb_kk = None

    # -- public surface ---------------------------------------------------------

    def all_quadrics(self):
        return list(self.forms)

    def vanish_at(self, divisors) -> bool:
        pts = [(D.coords().v, D.field) for D in divisors]
        return forms_vanish_at(self.forms, pts)

    def bb_in_kk(self):
        """b_i b_j = quadratic(k_{uv}) for all 21 pairs, as even-monomial
        coefficient dicts (one valid representative each)."""
        if self._bb_kk is None:
            F = self.field
            table = {}
            for form in self.listed_bb + self.interpolated_bb:
                bpart = [(m, c) for m, c in form.coeffs.items() if m[0] >= 10]
                if len(bpart) != 1:
                    raise Genus2Error("bb form should carry a single odd monomial")
                (bi, bj), mult = bpart[0]
                inv = F.inv(mult)
                expr = {m: F.neg(F.mul(c, inv)) for m, c in form.coeffs.items()
                        if m[1] < 10}
                table[(bi - 9, bj - 9)] = expr
            self._bb_kk = table
        return self._bb_kk

    def bb_value(self, i: int, j: int, kvec4, K: Field = None):
        """b_i b_j evaluated at a P^3 point through the k-expressions.

        kvec4 holds raw values of (k_1..k_4) over K (default: ground field).
        """
        from .curve import EVEN_PAIRS
        from .poly import _lift
        if K is None:
            K = self.field
        expr = self.bb_in_kk()[(i, j) if i <= j else (j, i)]
        even_vals = [K.mul(kvec4[a - 1], kvec4[b - 1]) for (a, b) in EVEN_PAIRS]
        acc = K.zero()
        for (u, v), c in expr.items():
            term = K.mul(even_vals[u], even_vals[v])
            acc = K.add(acc, K.mul(_lift(self.field, K, c), term))
        return acc


def veronese_quadrics(field: Field):
    """Deterministic basis of the 20 rank conditions among the k_{ij}."""
    cands = []
    for i in range(1, 5):
        for j in range(1, 5):
            for r in range(1, 5):
                for s in range(1, 5):
                    q = QuadricForm(field)
                    q.add_term(even_slot(i, j), even_slot(r, s), 1)
                    q.add_term(even_slot(i, r), even_slot(j, s), -1)
                    if not q.is_zero():
                        cands.append(q)
    return select_independent(field, cands, 20)


def kummer_image_quadric(curve: CurveData) -> QuadricForm:
    """The even quadric induced by the Kummer quartic."""
    F = curve.field
    f = curve.coeffs
    q = QuadricForm(F)
    for (a, b), scale, fidx in _KUMMER_EVEN_TERMS:
        c = F.from_int(scale)
        for t in fidx:
            c = F.mul(c, f[t])
        q.add_term(_kk_slot(a), _kk_slot(b), c)
    return q


# terms of the extra even quadric: (k-code pair, integer scale, f indices)
_KUMMER_EVEN_TERMS = [
    ((11, 11), -4, (0, 2)), ((11, 11), 1, (1, 1)),
    ((11, 12), -4, (0, 3)),
    ((11, 13), -2, (1, 3)),
    ((11, 14), -4, (0,)),
    ((12, 12), -4, (0, 4)),
    ((12, 13), 4, (0, 5)), ((12, 13), -4, (1, 4)),
    ((11, 24), -2, (1,)),
    ((13, 13), -4, (0, 6)), ((13, 13), 2, (1, 5)), ((13, 13), -4, (2, 4)), ((13, 13), 1, (3, 3)),
    ((11, 34), -4, (2,)),
    ((12, 22), -4, (0, 5)),
    ((13, 22), 8, (0, 6)), ((13, 22), -4, (1, 5)),
    ((13, 23), 4, (1, 6)), ((13, 23), -4, (2, 5)),
    ((13, 24), -2, (3,)),
    ((13, 33), -2, (3, 5)),
    ((13, 34), -4, (4,)),
    ((14, 34), -4, ()),
    ((22, 22), -4, (0, 6)),
    ((22, 23), -4, (1, 6)),
    ((23, 23), -4, (2, 6)),
    ((24, 24), 1, ()),
    ((23, 33), -4, (3, 6)),
    ((23, 34), -2, (5,)),
    ((33, 33), -4, (4, 6)), ((33, 33), 1, (5, 5)),
    ((33, 34), -4, (6,)),
]


def odd_quadrics(curve: CurveData, shifted: bool = False):
    """The 15 independent products k_j * Q_i (or the shifted variant)."""
    F = curve.field
    f = curve.coeffs
    two = F.from_int(2)

    def bl(*pairs):
        """b-linear form as {index: coeff}, 1-based indices, 0 = b_0."""
        d = {}
        for idx, c in pairs:
            d[idx] = F.add(d.get(idx, F.zero()), c)
        return d

    if not shifted:
        e1 = bl((1, F.mul(two, f[0])), (2, f[1]))
        e2 = bl((3, f[3]), (4, F.mul(two, f[4])), (5, F.mul(two, f[5])),
                (6, F.mul(two, f[6])))
        e3 = bl((4, f[5]), (5, F.mul(two, f[6])))
        b2, b3, b4 = bl((2, F.one())), bl((3, F.one())), bl((4, F.one()))
    else:
        e1 = bl((0, F.mul(two, f[0])), (1, f[1]))
        e2 = bl((2, f[3]), (3, F.mul(two, f[4])), (4, F.mul(two, f[5])),
                (5, F.mul(two, f[6])))
        e3 = bl((3, f[5]), (4, F.mul(two, f[6])))
        b2, b3, b4 = bl((1, F.one())), bl((2, F.one())), bl((3, F.one()))

    def neg(d):
        return {i: F.neg(c) for i, c in d.items()}

    # rows of the antisymmetric matrix applied to (k_1..k_4)
    q_rows = [
        {2: e1, 3: neg(e2), 4: neg(b4)},
        {1: neg(e1), 3: neg(e3), 4: b3},
        {1: e2, 2: e3, 4: neg(b2)},
        {1: b4, 2: neg(b3), 3: b2},
    ]
    if shifted:
        # substitute f0 b0 = -(f1 b1 + ... + f6 b6) and clear the denominator
        # by scaling every form by f0
        inv0 = F.inv(f[0])
        for row in q_rows:
            for kidx, blin in row.items():
                c0 = blin.pop(0, None)
                if c0 is not None:
                    fac = F.neg(F.mul(c0, inv0))
                    for i in range(1, 7):
                        blin[i] = F.add(blin.get(i, F.zero()), F.mul(fac, f[i]))

    cands = []
    for j in range(1, 5):
        for i in range(4):
            q = QuadricForm(F)
            for kidx, blin in q_rows[i].items():
                slot = even_slot(j, kidx)
                for bidx, c in blin.items():
                    if not F.is_zero(c):
                        q.add_term(slot, 9 + bidx, c)
            if shifted:
                q = q.scaled(f[0])
            if not q.is_zero():
                cands.append(q)
    return select_independent(F, cands, 15)


# ---------------------------------------------------------------------------
# interpolation of the fourteen unlisted b_i b_j products


def sampling_field(field: Field, minimum: int = 10_000) -> Field:
    """Smallest extension of the prime field with at least `minimum` elements."""
    e = 1
    while field.p ** e < minimum:
        e += 1
    return Field.extension(field.p, e) if e > 1 else field


def sample_divisors(curve: CurveData, K: Field, count: int, rng: random.Random):
    out = []
    while len(out) < count:
        try:
            out.append(random_point(curve, K, rng))
        except NotGeneric:
            continue
    return out


def split_equations(K: Field, rows, rhs_cols):
    """Expand K-linear equations in F_p unknowns into F_p equations."""
    if K.kind == "prime":
        return rows, rhs_cols
    d = K.deg
    new_rows = []
    new_rhs = [[] for _ in rhs_cols]
    for r, row in enumerate(rows):
        for t in range(d):
            new_rows.append([v[t] for v in row])
            for c, col in enumerate(rhs_cols):
                new_rhs[c].append(col[r][t])
    return new_rows, new_rhs


def interpolate_bb_quadrics(curve: CurveData, seed: int = 0, n_samples: int = 88,
                            n_verify: int = 50, targets=None):
    """Reconstruct products b_i b_j as k-quadratics by exact interpolation.

    Solves, over the prime field, the linear system demanding that the
    k-expression matches the product at >= 88 sampled generic classes, then
    verifies each output at fresh points.  The solution space per product is
    an affine space over the 21-dimensional even vanishing subspace; any
    representative is valid.  By default the fourteen products without a
    hardcoded expression are reconstructed.
    """
    F = curve.field
    K = sampling_field(F)
    rng = random.Random(seed * 7919 + 17)
    pairs = list(targets) if targets is not None else list(UNLISTED_BB_PAIRS)
    divisors = sample_divisors(curve, K, n_samples, rng)
    rows = []
    rhs = [[] for _ in pairs]
    for D in divisors:
        v = D.coords().v
        rows.append([K.mul(v[MONOMIALS[n][0]], v[MONOMIALS[n][1]])
                     for n in EVEN_MONOMIALS])
        for c, (bi, bj) in enumerate(pairs):
            rhs[c].append(K.mul(v[9 + bi], v[9 + bj]))
    rows_p, rhs_p = split_equations(K, rows, rhs)
    try:
        sols, kernel = solve_rows(F, rows_p, rhs_p)
    except Genus2Error as exc:
        raise InterpolationFailed(str(exc)) from exc
    if len(kernel) != 21:
        raise InterpolationFailed(
            f"even vanishing space has dimension {len(kernel)}, expected 21")
    forms = []
    for (bi, bj), sol in zip(pairs, sols):
        q = QuadricForm(F)
        q.add_term(9 + bi, 9 + bj, 1)
        for n, c in zip(EVEN_MONOMIALS, sol):
            if not F.is_zero(c):
                q.add_term(*MONOMIALS[n], F.neg(c))
        forms.append(q)
    fresh = sample_divisors(curve, K, n_verify, rng)
    if not forms_vanish_at(forms, [(D.coords().v, K) for D in fresh]):
        raise InterpolationFailed("interpolated form fails at fresh points")
    return forms


# ---------------------------------------------------------------------------
# certificates


def vanishing_kernel_dimensions(curve: CurveData, seed: int = 0,
                                n_points: int = 150):
    """(full, even-only) dimensions of the spaces of quadrics vanishing at
    one batch of sampled points.

    With enough generic points these are the degree-2 part of the ideal and
    its even-coordinate slice: 72 and 21.
    """
    F = curve.field
    K = sampling_field(F)
    rng = random.Random(seed * 104729 + 3)
    rows = []
    for D in sample_divisors(curve, K, n_points, rng):
        v = D.coords().v
        rows.append([K.mul(v[MONOMIALS[n][0]], v[MONOMIALS[n][1]])
                     for n in range(len(MONOMIALS))])
    rows_p, _ = split_equations(K, rows, [])
    full = len(kernel_rows(F, rows_p))
    even_rows = [[row[n] for n in EVEN_MONOMIALS] for row in rows_p]
    even = len(kernel_rows(F, even_rows))
    return full, even


def vanishing_kernel_dimension(curve: CurveData, seed: int = 0,
                               n_points: int = 150, even_only: bool = False) -> int:
    full, even = vanishing_kernel_dimensions(curve, seed=seed, n_points=n_points)
    return even if even_only else full
