"""Two-coverings of the Jacobian from twist data (delta, n) with
N(delta) = n^2: square-root data, twisted quadrics, Galois descent to the
ground field, the covering map, and point searches.

Pipeline: choose epsilon_w with epsilon_w^2 = delta(w_w) and prod = n (over
the splitting field, or its quadratic extension when some delta_w is a
non-square, in which case the whole root/torsion context is rebuilt there).
The twisted ideal needs only delta_w and n: it is the weighted variant of
the 72 diagonal-basis generators, with weights

    odd piece at the pair (w1, w2):  delta_t + n / (delta_{w1} delta_{w2})
    even piece:  delta_{t1} delta_{t2} + delta_{p1} delta_{p2}
                 + n (1/delta_{w1} + 1/delta_{w2})
    identity piece:  delta_w on c_w^2 and t_I^2 on c_I^2,
                     t_I^2 = prod_{w in I} delta_w + prod_{w not in I} delta_w + 2n

so its coefficients always lie in the splitting field's image.  The scale
factors t_I themselves (needing epsilon) enter only the covering map
g = (G^-1 T1 G) on the even block and (S T2 S^-1) on the odd block.

Descent to the ground field takes Galois traces of the twisted generators
against a power basis (the coefficient-wise Frobenius permutes the
generators by relabelling the pair, so traces stay inside the span); a
second, independently assembled strategy sums the pair generators against
equivariant weight functions h_r.
"""

from __future__ import annotations

import random

import numpy as np

from .curve import CurveData, DivisorClass
from .errors import (GammaViolation, Genus2Error, NonUnitDelta, RankLoss,
                     TIVanishes)
from .etale import EtaleAlgebra, LVec, character_chi, mask_bits, popcount
from .fields import Field
from .kummer import VDeltaModel
from .linalg import Mat, block_diag, kernel_rows, rank_rows, rref_rows
from .poly import _lift
from .quadrics import MONOMIALS, ODD_MONOMIALS, QuadricForm, forms_vanish_at
from .torsion import TorsionActionCtx


class TwistDatum:
    """(delta, n) with N(delta) = n^2 and delta a unit, over the ground field."""

    def __init__(self, algebra: EtaleAlgebra, delta_coeffs, n):
        self.algebra = algebra
        F = algebra.field
        self.delta = algebra.elem([F.coerce(c) for c in delta_coeffs], F)
        self.n = F.coerce(n)
        norm = self.delta.norm()
        if F.is_zero(norm):
            raise NonUnitDelta("N(delta) = 0")
        if not F.eq(norm, F.mul(self.n, self.n)):
            raise GammaViolation(
                f"N(delta) = {F.fmt(norm)} != n^2 = {F.fmt(F.mul(self.n, self.n))}")

    @staticmethod
    def from_cassels(algebra: EtaleAlgebra, D: DivisorClass) -> "TwistDatum":
        from .curve import cassels_image
        if D.field != algebra.field:
            raise Genus2Error("divisor must live over the ground field")
        delta, n = cassels_image(D)
        return TwistDatum(algebra, delta, n)

    @staticmethod
    def trivial(algebra: EtaleAlgebra) -> "TwistDatum":
        return TwistDatum(algebra, [1, 0, 0, 0, 0, 0], 1)

    def rescale(self, xi: LVec) -> "TwistDatum":
        """The equivalent datum (delta xi^2, n N(xi)) for xi in L*."""
        F = self.algebra.field
        nxi = xi.norm()
        if F.is_zero(nxi):
            raise NonUnitDelta("xi is not a unit")
        d2 = self.delta * xi * xi
        return TwistDatum(self.algebra, d2.c, F.mul(self.n, nxi))


class EpsilonChoice:
    """epsilon_w per root with prod epsilon_w = n, plus the t_I scale data.

    Owns the working torsion context: the base one when every delta_w is a
    square in the splitting field, otherwise a rebuilt context over the
    quadratic extension.
    """

    def __init__(self, base_ctx: TorsionActionCtx, datum: TwistDatum, seed: int = 0,
                 require_nonzero_t: bool = True):
        self.datum = datum
        alg = base_ctx.algebra
        K = alg.splitting
        deltas = [datum.delta.phi(i) for i in range(6)]
        if all(K.sqrt(dw) is not None for dw in deltas):
            self.ctx = base_ctx
        else:
            W = Field.extension(K.p, 2 * K.deg)
            alg2 = EtaleAlgebra(datum.algebra.curve, splitting=W, seed=seed)
            self.ctx = TorsionActionCtx(alg2)
        W = self.ctx.K
        alg = self.ctx.algebra
        delta_w = LVec(alg, W, [_lift(datum.algebra.field, W, c)
                                for c in datum.delta.c])
        self.deltas = [delta_w.phi(i) for i in range(6)]
        eps = []
        for dw in self.deltas:
            r = W.sqrt(dw)
            if r is None:
                raise Genus2Error("delta_w not a square in the working field")
            eps.append(r)
        n_w = _lift(datum.algebra.field, W, datum.n)
        prod = W.one()
        for e in eps:
            prod = W.mul(prod, e)
        if W.eq(prod, n_w):
            pass
        elif W.eq(prod, W.neg(n_w)):
            eps[0] = W.neg(eps[0])
        else:
            raise Genus2Error("product of square roots is not +-n")
        self.eps = eps
        self.n = n_w
        # scale factors for every subset of size 3 (and singletons = eps)
        self.t3 = {}
        vanish = []
        for m in range(64):
            if popcount(m) != 3:
                continue
            inside = W.one()
            outside = W.one()
            for i in range(6):
                if m >> i & 1:
                    inside = W.mul(inside, eps[i])
                else:
                    outside = W.mul(outside, eps[i])
            self.t3[m] = W.add(inside, outside)
            if W.is_zero(self.t3[m]) and m in self.ctx.reps:
                vanish.append(sorted(i + 1 for i in mask_bits(m)))
        if vanish and require_nonzero_t:
            raise TIVanishes(vanish)
        self.vanishing_partitions = vanish

    @property
    def field(self) -> Field:
        return self.ctx.K

    def t_single(self, i: int):
        return self.eps[i]

    def t_triple(self, mask3: int):
        return self.t3[mask3]

    def t_squared_triple(self, mask3: int):
        """t_I^2 from ground data only: prod_in + prod_out + 2n."""
        W = self.ctx.K
        inside = W.one()
        outside = W.one()
        for i in range(6):
            if mask3 >> i & 1:
                inside = W.mul(inside, self.deltas[i])
            else:
                outside = W.mul(outside, self.deltas[i])
        return W.add(W.add(inside, outside), W.mul(W.from_int(2), self.n))

    def cocycle_mask(self) -> int:
        """Root mask of sigma(epsilon)/epsilon for the Frobenius generator."""
        W = self.ctx.K
        perm = self.ctx.algebra.frob_perm
        mask = 0
        for j in range(6):
            i = perm[j]
            val = W.frobenius(self.eps[j])
            if W.eq(val, W.neg(self.eps[i])):
                mask |= 1 << i
            elif not W.eq(val, self.eps[i]):
                raise Genus2Error("epsilon is not Galois-coherent")
        return mask

    def galois_t_equivariance(self) -> bool:
        """sigma-compatibility of every t_I against the cocycle character."""
        W = self.ctx.K
        m = self.cocycle_mask()
        alg = self.ctx.algebra
        for i in range(6):
            sI = alg.frobenius_mask(1 << i)
            chi = character_chi(sI, m)
            lhs = self.eps[sI.bit_length() - 1]
            rhs = W.frobenius(self.eps[i])
            if chi < 0:
                rhs = W.neg(rhs)
            if not W.eq(lhs, rhs):
                return False
        for mask in self.t3:
            sI = alg.frobenius_mask(mask)
            chi = character_chi(sI, m)
            rhs = W.frobenius(self.t3[mask])
            if chi < 0:
                rhs = W.neg(rhs)
            if not W.eq(self.t3[sI], rhs):
                return False
        return True


class TwistModel:
    """The two-covering attached to (delta, n): 72 twisted quadrics in the
    16 coordinates over the working field, the block-linear map down to the
    Jacobian, and descent data."""

    def __init__(self, base_ctx: TorsionActionCtx, datum: TwistDatum, seed: int = 0):
        self.datum = datum
        self.eps = EpsilonChoice(base_ctx, datum, seed=seed)
        self.ctx = self.eps.ctx
        W = self.ctx.K
        deltas = self.eps.deltas
        inv_d = [W.inv(d) for d in deltas]
        n_w = self.eps.n

        def odd_weight(pair, theta):
            i, j = pair
            return W.add(deltas[theta], W.mul(n_w, W.mul(inv_d[i], inv_d[j])))

        def even_weight(pair, part):
            i, j = pair
            (t1, t2), (p1, p2) = part
            prods = W.add(W.mul(deltas[t1], deltas[t2]),
                          W.mul(deltas[p1], deltas[p2]))
            return W.add(prods, W.mul(n_w, W.add(inv_d[i], inv_d[j])))

        self.labelled = self.ctx.invariant_generators(
            odd_weight=odd_weight,
            even_weight=even_weight,
            sq_root_weight=lambda i: deltas[i],
            sq_part_weight=lambda rep: self.eps.t_squared_triple(rep))
        self.forms = [q for _, q in self.labelled]
        if rank_rows(W, [q.vector() for q in self.forms]) != 72:
            raise Genus2Error("twisted model is rank-deficient")
        # every coefficient lies in the splitting field of f, even when the
        # working field is the quadratic extension
        base_deg = base_ctx.K.deg
        if W.deg != base_deg:
            for q in self.forms:
                for c in q.coeffs.values():
                    if not W.eq(W.pw(c, W.p ** base_deg), c):
                        raise Genus2Error("twisted coefficient outside k(Omega)")
        self._gmat = None

    @property
    def field(self) -> Field:
        return self.ctx.K

    # -- covering map -----------------------------------------------------------

    def covering_matrix(self) -> Mat:
        """16x16 block matrix of g: twist coordinates -> Jacobian coordinates."""
        if self._gmat is None:
            W = self.ctx.K
            T1 = Mat.diagonal(W, [self.eps.t_triple(rep) for rep in self.ctx.reps])
            even = self.ctx.G_inv_kappa * T1 * self.ctx.G
            T2 = Mat.diagonal(W, self.eps.eps)
            from .torsion import _map_mat
            S = _map_mat(self.ctx.algebra.S, W)
            S_inv = _map_mat(self.ctx.algebra.S_inv, W)
            odd = S * T2 * S_inv
            self._gmat = block_diag(W, [even, odd])
        return self._gmat

    def covering_blocks(self):
        g = self.covering_matrix()
        even = Mat(g.field, [row[:10] for row in g.rows[:10]])
        odd = Mat(g.field, [row[10:] for row in g.rows[10:]])
        return even, odd

    def pull_back(self, coords):
        """g^{-1} of a point of the Jacobian, as a 16-vector over the field."""
        W = self.ctx.K
        vec = [_lift(coords.field, W, v) if coords.field != W else v
               for v in coords.v]
        return self.covering_matrix().inv().matvec(vec)

    def vanish_at_pullbacks(self, divisors) -> bool:
        W = self.ctx.K
        pts = [(self.pull_back(D.coords()), W) for D in divisors]
        return forms_vanish_at(self.forms, pts)

    def cocycle_matches_action(self) -> bool:
        """sigma(g) g^{-1} is projectively the mask action of sigma(eps)/eps."""
        W = self.ctx.K
        g = self.covering_matrix()
        sg = g.map_entries(W.frobenius)
        A = sg * g.inv()
        R = self.ctx.rho_matrix(self.eps.cocycle_mask())
        scale = None
        for i in range(16):
            for j in range(16):
                a, r = A.rows[i][j], R.rows[i][j]
                if W.is_zero(r):
                    if not W.is_zero(a):
                        return False
                    continue
                s = W.div(a, r)
                if scale is None:
                    scale = s
                elif not W.eq(scale, s):
                    return False
        return scale is not None

    # -- descent ------------------------------------------------------------------

    def descend_to_ground(self, strategy: str = "trace"):
        """72 forms with ground-field coefficients spanning the twisted ideal."""
        if strategy == "trace":
            forms = self._descend_trace()
        elif strategy == "assembled":
            forms = self._descend_assembled()
        else:
            raise Genus2Error(f"unknown descent strategy {strategy!r}")
        self._check_descent(forms)
        return forms

    def _descend_trace(self):
        W = self.ctx.K
        k = self.datum.algebra.field
        p, e = W.p, W.deg
        if e == 1:
            return [QuadricForm.from_vector(k, q.vector()) for q in self.forms]
        from .linalg import ext_mul_arrays
        frob = _frobenius_matrix(W)
        vecs = np.array([[list(c) for c in q.vector()] for q in self.forms],
                        dtype=np.int64)  # (72, 136, e)
        collected = []
        power = W.one()  # gamma^i for the power basis gamma = t
        for _ in range(e):
            parr = np.array(power, dtype=np.int64)
            term = ext_mul_arrays(W, vecs, parr[None, None, :])
            trace = np.zeros_like(term)
            for _ in range(e):
                trace = (trace + term) % p
                term = term @ frob.T % p
            if np.any(trace[..., 1:]):
                raise RankLoss("trace landed outside the prime field")
            collected.append(trace[..., 0])
            power = W.mul(power, _gen_elem(W))
        stacked = np.concatenate(collected, axis=0) % p  # (72e, 136)
        R, piv = rref_rows(k, [[int(x) for x in row] for row in stacked])
        if len(piv) != 72:
            raise RankLoss(f"trace descent produced rank {len(piv)}")
        return [QuadricForm.from_vector(k, row) for row in R[:72]]

    def _descend_assembled(self):
        """Sum the pair generators against equivariant weights h_r."""
        W = self.ctx.K
        k = self.datum.algebra.field
        deltas = self.eps.deltas
        _, hfuncs = _equivariant_weights(self.ctx)
        by_label = dict(self.labelled)
        out = []
        for label, q in self.labelled:
            if label[0] == "O":
                out.append(q)
        pairs = [lbl[0] for lbl, _ in self.labelled if lbl[0] != "O" and lbl[1] == "odd"
                 and lbl[2] == 0]
        for kind in (("odd", 0), ("odd", 1), ("even", 1), ("even", 2)):
            for r in range(15):
                acc = QuadricForm(W)
                for pair in pairs:
                    i, j = pair
                    scale = W.mul(hfuncs[r](pair), W.mul(deltas[i], deltas[j]))
                    form = by_label[(pair, kind[0], kind[1])]
                    for mono, c in form.coeffs.items():
                        acc.add_term(*mono, W.mul(c, scale))
                out.append(acc)
        ground = []
        for q in out:
            for c in q.coeffs.values():
                if not W.eq(W.frobenius(c), c):
                    raise RankLoss("assembled form is not Galois invariant")
            vec = [(v[0] if W.kind == "ext" else v) for v in q.vector()]
            ground.append(QuadricForm.from_vector(k, vec))
        return ground

    def _check_descent(self, forms):
        W = self.ctx.K
        k = self.datum.algebra.field
        if any(not q.frobenius_fixed() for q in forms):
            raise RankLoss("descended coefficient outside the ground field")
        vecs = [q.vector() for q in forms]
        if rank_rows(k, vecs) != 72:
            raise RankLoss("descended span has rank < 72")
        lifted = [[_lift(k, W, v) for v in vec] for vec in vecs]
        joint = lifted + [q.vector() for q in self.forms]
        if rank_rows(W, joint) != 72:
            raise RankLoss("descended span differs from the twisted span")

    # -- the P^5 sub-block ---------------------------------------------------------

    def odd_block(self):
        """Basis of the forms in the twisted ideal supported on b-monomials."""
        return span_supported(self.field, [q.vector() for q in self.forms],
                              ODD_MONOMIALS)

    def matches_vdelta(self) -> bool:
        """The 3-dimensional odd block equals the span of the V_delta forms."""
        W = self.field
        blk = self.odd_block()
        if len(blk) != 3:
            return False
        alg = self.ctx.algebra
        delta_w = LVec(alg, W, [_lift(self.datum.algebra.field, W, c)
                                for c in self.datum.delta.c])
        vd = VDeltaModel(alg, delta_w)
        vrows = []
        for M in vd.matrices:
            q = QuadricForm(W)
            for i in range(6):
                for j in range(i, 6):
                    c = M.rows[i][j] if i == j else W.mul(W.from_int(2), M.rows[i][j])
                    q.add_term(10 + i, 10 + j, c)
            vrows.append(q.vector())
        return (rank_rows(W, vrows) == 3
                and rank_rows(W, vrows + blk) == 3)

    def to_json(self, descended=None):
        W = self.field
        data = {
            "field": W.spec_string(),
            "delta": self.datum.delta.to_strings(),
            "n": self.datum.algebra.field.fmt(self.datum.n),
            "quadrics_splitting": [q.to_json() for q in self.forms],
            "covering_map": {
                "even": [[W.fmt(v) for v in row]
                         for row in self.covering_blocks()[0].rows],
                "odd": [[W.fmt(v) for v in row]
                        for row in self.covering_blocks()[1].rows],
            },
            "t_squared": {
                "-".join(str(i + 1) for i in mask_bits(rep)):
                    W.fmt(self.eps.t_squared_triple(rep))
                for rep in self.ctx.reps
            },
        }
        if descended is not None:
            data["quadrics_ground"] = [q.to_json() for q in descended]
        return data


def span_supported(field: Field, vectors, keep_monomials):
    """Basis of (row span) intersect (coordinates in keep_monomials)."""
    keep = set(keep_monomials)
    order = [n for n in range(len(MONOMIALS)) if n not in keep] + list(keep_monomials)
    permuted = [[vec[n] for n in order] for vec in vectors]
    R, piv = rref_rows(field, permuted)
    ncut = len(MONOMIALS) - len(keep)
    out = []
    for r, row in enumerate(R):
        if r >= len(piv):
            break
        if all(field.is_zero(v) for v in row[:ncut]):
            back = [field.zero()] * len(MONOMIALS)
            for pos, n in enumerate(order):
                back[n] = row[pos]
            out.append(back)
    return out


def _gen_elem(W: Field):
    return (0, 1) + (0,) * (W.deg - 2) if W.deg > 1 else W.one()


def _frobenius_matrix(W: Field):
    """d x d matrix over F_p of x -> x^p on coefficient columns."""
    p, d = W.p, W.deg
    t = _gen_elem(W)
    tp = W.pw(t, p)
    cols = [W.one()]
    for _ in range(d - 1):
        cols.append(W.mul(cols[-1], tp))
    return np.array([[col[i] for col in cols] for i in range(d)], dtype=np.int64)


def _equivariant_weights(ctx: TorsionActionCtx):
    """15 Galois-equivariant functions on root pairs with invertible value
    matrix: symmetric monomials (w1 + w2)^a (w1 w2)^b, widened and then
    randomized if a special configuration makes the canonical grid singular."""
    W = ctx.K
    pairs = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    roots = ctx.algebra.roots

    def monomial(a, b):
        def h(pair):
            i, j = pair
            s = W.add(roots[i], roots[j])
            m = W.mul(roots[i], roots[j])
            return W.mul(W.pw(s, a), W.pw(m, b))
        return h

    grid = [monomial(a, b) for a in range(5) for b in range(3)]
    mat = Mat(W, [[h(p) for p in pairs] for h in grid])
    if not W.is_zero(mat.det()):
        return mat, grid
    wide = [monomial(a, b) for a in range(8) for b in range(6)]
    rng = random.Random(1729)
    for _ in range(64):
        combo = []
        for _ in range(15):
            coeffs = [W.from_int(rng.randrange(W.p)) for _ in wide]
            combo.append(lambda pair, cs=coeffs: _lin_comb(W, cs, wide, pair))
        mat = Mat(W, [[h(p) for p in pairs] for h in combo])
        if not W.is_zero(mat.det()):
            return mat, combo
    raise Genus2Error("no invertible equivariant weight matrix found")


def _lin_comb(W, coeffs, funcs, pair):
    acc = W.zero()
    for c, h in zip(coeffs, funcs):
        acc = W.add(acc, W.mul(c, h(pair)))
    return acc


# ---------------------------------------------------------------------------
# point search and counting


def count_jacobian_points(curve: CurveData) -> int:
    """#J(F_p) by enumerating rational effective divisors of degree two.

    Unordered pairs of curve points over F_p plus conjugate pairs over
    F_{p^2} give (N1^2 + N2)/2 rational effective divisors; the canonical
    pencil (one divisor per x in P^1) is the only linear system among them,
    so the class count is that total minus p.
    """
    F = curve.field
    if F.kind != "prime":
        raise Genus2Error("point counting is implemented over prime fields")
    p = F.p
    n1 = _curve_point_count(curve, F)
    n2 = _curve_point_count(curve, Field.extension(p, 2))
    return (n1 * n1 + n2) // 2 - p


def _curve_point_count(curve: CurveData, K: Field) -> int:
    fK = curve.f.map_field(K)
    count = 0
    for x in K.elements():
        fx = fK.evaluate(x)
        if K.is_zero(fx):
            count += 1
        elif K.is_square(fx):
            count += 2
    if K.is_square(_lift(curve.field, K, curve.coeffs[6])):
        count += 2
    return count


def projective_reps(F: Field, dim: int):
    """All points of P^{dim-1}(F) as normalized tuples (first nonzero entry
    equal to one), in a fixed deterministic order."""
    import itertools
    elems = list(F.elements())
    for lead in range(dim):
        prefix = tuple([F.zero()] * lead + [F.one()])
        for tail in itertools.product(elems, repeat=dim - lead - 1):
            yield prefix + tail


def search_vdelta_points(vd: VDeltaModel, limit: int = None, threads: int = 1):
    """All P^5(F_q) points on the three quadrics, exact enumeration.

    threads > 1 partitions the enumeration; the output order is identical
    either way.
    """
    W = vd.delta.field

    def scan(chunk):
        return [vec for vec in chunk if vd.is_solution(list(vec), W)]

    found = []
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        chunks = _chunked(projective_reps(W, 6), 4096)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for block in pool.map(scan, chunks):
                found.extend(block)
    else:
        found = scan(projective_reps(W, 6))
    if limit:
        found = found[:limit]
    return found


def _chunked(it, size):
    buf = []
    for item in it:
        buf.append(item)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def search_vdelta_rational(matrices, bound: int):
    """Primitive integer 6-tuples with |x_i| <= bound killing the three
    forms (denominators cleared)."""
    import math
    ints = []
    for M in matrices:
        den = 1
        for row in M.rows:
            for v in row:
                den = den * v.denominator // math.gcd(den, v.denominator)
        ints.append([[int(v * den) for v in row] for row in M.rows])
    found = []
    rng = range(-bound, bound + 1)

    def primitive(t):
        g = 0
        for v in t:
            g = math.gcd(g, v)
        if g != 1:
            return False
        for v in t:
            if v != 0:
                return v > 0
        return False

    import itertools
    for t in itertools.product(rng, repeat=6):
        if not primitive(t):
            continue
        ok = True
        for M in ints:
            acc = 0
            for i in range(6):
                for j in range(6):
                    acc += M[i][j] * t[i] * t[j]
            if acc != 0:
                ok = False
                break
        if ok:
            found.append(t)
    return found


def search_twist_points(model: TwistModel, descended=None, threads: int = 1):
    """All F_p points of the descended twist, exact.

    Strategy: enumerate the P^5 image (three odd-block quadrics), lift each
    survivor through the 30 odd bilinear forms (linear in the even block),
    resolve the relative scale from the remaining even forms, and add the
    sixteen points with vanishing odd part, which are the pullbacks of the
    Kummer nodes under the covering map.  threads > 1 partitions the P^5
    enumeration; the result is sorted either way.
    """
    k = model.datum.algebra.field
    if k.kind != "prime":
        raise Genus2Error("twist search is implemented over prime fields")
    forms = descended if descended is not None else model.descend_to_ground()
    vecs = [q.vector() for q in forms]
    odd_blk = span_supported(k, vecs, ODD_MONOMIALS)
    mixed_idx = [n for n, (i, j) in enumerate(MONOMIALS) if i < 10 <= j]
    mixed_blk = span_supported(k, vecs, mixed_idx)

    def scan(chunk):
        hits = []
        for b in chunk:
            ok = True
            for row in odd_blk:
                acc = k.zero()
                for n in ODD_MONOMIALS:
                    i, j = MONOMIALS[n]
                    acc = k.add(acc, k.mul(row[n], k.mul(b[i - 10], b[j - 10])))
                if not k.is_zero(acc):
                    ok = False
                    break
            if not ok:
                continue
            rows = []
            for row in mixed_blk:
                lin = [k.zero()] * 10
                for n in mixed_idx:
                    i, j = MONOMIALS[n]
                    if k.is_zero(row[n]):
                        continue
                    lin[i] = k.add(lin[i], k.mul(row[n], b[j - 10]))
                rows.append(lin)
            for u0 in _kernel_reps(k, rows):
                hits.extend(_resolve_scale(k, forms, u0, b))
        return hits

    found = set()
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for block in pool.map(scan, _chunked(projective_reps(k, 6), 2048)):
                found.update(block)
    else:
        found.update(scan(projective_reps(k, 6)))
    for cand in _node_pullbacks(model, forms):
        found.add(cand)
    return sorted(found)


def _kernel_reps(F: Field, rows):
    basis = kernel_rows(F, rows)
    if not basis:
        return []
    if len(basis) == 1:
        return [_normalize(F, basis[0])]
    reps = []
    for coeffs in projective_reps(F, len(basis)):
        vec = [F.zero()] * len(basis[0])
        for c, bvec in zip(coeffs, basis):
            for t, v in enumerate(bvec):
                vec[t] = F.add(vec[t], F.mul(c, v))
        if any(not F.is_zero(v) for v in vec):
            reps.append(_normalize(F, vec))
    return reps


def _normalize(F: Field, vec):
    lead = next((v for v in vec if not F.is_zero(v)), None)
    if lead is None:
        return tuple(vec)
    inv = F.inv(lead)
    return tuple(F.mul(v, inv) for v in vec)


def _resolve_scale(F: Field, forms, u0, b):
    """Candidate points (c u0 : b) satisfying every form, via the quadratic
    constraints c^2 A + c M + B = 0 they impose."""
    out = []
    candidates = None
    for q in forms:
        A = F.zero()
        M = F.zero()
        B = F.zero()
        for (i, j), cf in q.coeffs.items():
            if j < 10:
                A = F.add(A, F.mul(cf, F.mul(u0[i], u0[j])))
            elif i >= 10:
                B = F.add(B, F.mul(cf, F.mul(b[i - 10], b[j - 10])))
            else:
                M = F.add(M, F.mul(cf, F.mul(u0[i], b[j - 10])))
        if F.is_zero(A) and F.is_zero(M) and F.is_zero(B):
            continue
        roots = _quadratic_roots(F, A, M, B)
        roots = {r for r in roots if not F.is_zero(r)}
        candidates = roots if candidates is None else candidates & roots
        if not candidates:
            return []
    if candidates is None:
        return []
    for c in sorted(candidates, key=F.key):
        vec = [F.mul(c, v) for v in u0] + list(b)
        if all(F.is_zero(q.evaluate(vec)) for q in forms):
            out.append(_normalize(F, vec))
    return out


def _quadratic_roots(F: Field, a, m, b):
    if F.is_zero(a):
        if F.is_zero(m):
            return set()
        return {F.neg(F.div(b, m))}
    disc = F.sub(F.mul(m, m), F.mul(F.from_int(4), F.mul(a, b)))
    r = F.sqrt(disc)
    if r is None:
        return set()
    inv2a = F.inv(F.mul(F.from_int(2), a))
    return {F.mul(F.sub(r, m), inv2a), F.mul(F.sub(F.neg(r), m), inv2a)}


def _node_pullbacks(model: TwistModel, forms):
    """F_p-rational points of the twist with zero odd part."""
    W = model.field
    k = model.datum.algebra.field
    alg = model.ctx.algebra
    curve = alg.curve
    ginv = model.covering_matrix().inv()
    from .curve import EVEN_PAIRS
    f = [_lift(k, W, c) for c in curve.coeffs]
    kvectors = [[W.zero(), W.zero(), W.zero(), W.one()]]
    for i in range(6):
        for j in range(i + 1, 6):
            wi, wj = alg.roots[i], alg.roots[j]
            k2 = W.add(wi, wj)
            k3 = W.mul(wi, wj)
            num = _node_k4_numerator(W, f, k2, k3)
            dx = W.sub(wi, wj)
            k4 = W.div(num, W.mul(dx, dx))
            kvectors.append([W.one(), k2, k3, k4])
    out = []
    for kv in kvectors:
        even = [W.mul(kv[a - 1], kv[b - 1]) for (a, b) in EVEN_PAIRS]
        vec = even + [W.zero()] * 6
        pulled = ginv.matvec(vec)
        lead = next((v for v in pulled if not W.is_zero(v)), None)
        inv = W.inv(lead)
        norm = [W.mul(v, inv) for v in pulled]
        if all(W.eq(W.frobenius(v), v) for v in norm):
            down = [(v[0] if W.kind == "ext" else v) for v in norm]
            if all(k.is_zero(q.evaluate(down)) for q in forms):
                out.append(_normalize(k, down))
    return out


def _node_k4_numerator(W, f, k2, k3):
    two = W.from_int(2)
    acc = W.mul(two, f[0])
    acc = W.add(acc, W.mul(f[1], k2))
    acc = W.add(acc, W.mul(two, W.mul(f[2], k3)))
    acc = W.add(acc, W.mul(f[3], W.mul(k2, k3)))
    acc = W.add(acc, W.mul(two, W.mul(f[4], W.mul(k3, k3))))
    acc = W.add(acc, W.mul(f[5], W.mul(k2, W.mul(k3, k3))))
    acc = W.add(acc, W.mul(two, W.mul(f[6], W.mul(k3, W.mul(k3, k3)))))
    return acc
