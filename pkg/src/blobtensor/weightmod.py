"""Weight (permutation) modules, localization and the adjointness criteria.

M_n(lam) is the span of the words with a fixed number of 1s:
n1 = (lam + n)/2 ones and n2 = n - n1 twos.  The basis is ordered with the
2-initial words first (each block lexicographic), which is the order that
makes X visibly triangular.

The idempotent e = -U_{n-1}/[2] cuts out eM_n(lam) ~ M_{n-2}(lam); the
counit G F M -> M of the localization/globalization adjunction has image
the submodule generated by eM, and the module implements the four
equivalent tests for it to be an isomorphism:

* rank of the explicit spanning family I1 u I2 of the image,
* iterated closure of eM under the generator matrices,
* linear independence of the canonical family (the straightened
  Temperley-Lieb elements plus one decorated element),
* non-vanishing of the scalar -lam2 q^(2 n2 + n1 - 2) + lam1 q^(n1 - 2).

For parameters with q a primitive l-th root of unity (l odd) all four agree
with the residue test n2 != m (mod l); for generic q the same field-level
criterion degenerates to the integer test n2 != m.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .blob import BlobAction, blob_relation_checks_matrices
from .linalg import (SpanSolver, invariant_closure, mat_eq, mat_mul,
                     mat_scale, span_rank, vec_add_scaled, vec_eq, vec_scale,
                     vec_sub)
from .scalars import context, residues_equal
from .tensor import RelationCheck, all_words, weight_words


# ---------------------------------------------------------------------------
# labels and bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightLabel:
    """A weight lam in Lambda_n = {n, n-2, ..., -n}; n1/n2 count the letters."""

    n: int
    lam: int

    def __post_init__(self):
        if (self.lam + self.n) % 2 or abs(self.lam) > self.n:
            raise ValueError(
                f"lambda={self.lam} is not in Lambda_{self.n}")

    @property
    def a(self):
        return (self.lam + self.n) // 2

    @property
    def n1(self):
        return self.a

    @property
    def n2(self):
        return self.n - self.a

    @property
    def dim(self):
        return comb(self.n, self.a)


def lambda_range(n):
    """Lambda_n in ascending order."""
    return list(range(-n, n + 1, 2))


def weight_basis(n, lam):
    """Basis of M_n(lam): words with n1 ones, 2-initial block first, each
    block lexicographic."""
    label = WeightLabel(n, lam)
    words = weight_words(n, label.n1)
    return ([w for w in words if w[0] == "2"]
            + [w for w in words if w[0] == "1"])


class WeightModule:
    """M_n(lam) with its generator matrices U_0 .. U_{n-1}
    (columns are images, in the weight_basis order)."""

    def __init__(self, n, lam, ctx):
        self.n = n
        self.lam = lam
        self.label = WeightLabel(n, lam)
        self.ctx = ctx
        self.basis = weight_basis(n, lam)
        self.index = {w: i for i, w in enumerate(self.basis)}
        action = BlobAction(n, ctx)
        self.U = [action.generator(i).matrix(self.basis) for i in range(n)]

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, vect):
        """Word-keyed vector -> index-keyed coordinates."""
        out = {}
        for w, c in vect.items():
            i = self.index.get(w)
            if i is None:
                raise ValueError(f"word {w} not in M_{self.n}({self.lam})")
            out[i] = c
        return out

    def words(self, coords):
        return {self.basis[i]: c for i, c in coords.items()}


@lru_cache(maxsize=128)
def _weight_module(n, lam, ctx):
    return WeightModule(n, lam, ctx)


def weight_module(params, lam, n=None):
    n = params.n if n is None else n
    return _weight_module(n, lam, context(params))


# ---------------------------------------------------------------------------
# the idempotent and localization
# ---------------------------------------------------------------------------

def idempotent_e(n, params):
    """e = -U_{n-1}/[2] as a lazy operator on V^(x)n."""
    return _idempotent_op(n, context(params))


def _idempotent_op(n, ctx):
    two = ctx.q + ctx.qinv
    if two.is_zero():
        raise ZeroDivisionError("[2] = 0: the idempotent is undefined")
    action = BlobAction(n, ctx)
    op = (-two.inv()) * action.generator(n - 1)
    op.name = "e"
    return op


def _e_matrix(module):
    two = module.ctx.q + module.ctx.qinv
    return mat_scale(module.U[module.n - 1], -two.inv())


def underline_vect(w1, w2, ctx):
    """q^-1 w1 12 w2 - w1 21 w2, as a word-keyed vector."""
    return {w1 + "12" + w2: ctx.qinv, w1 + "21" + w2: -ctx.one}


@dataclass
class LocalizationResult:
    n: int
    lam: int
    dim_e: int
    basis_coords: list          # independent e-image vectors (M-coordinates)
    gens: list                  # U_0..U_{n-3} restricted to eM
    e_fixes_basis: bool

    @property
    def ok(self):
        return self.e_fixes_basis


def localize(module):
    """Column space of e on M_n(lam) with the b_{n-2} generator matrices
    restricted to it."""
    n = module.n
    emat = _e_matrix(module)
    solver = SpanSolver(track=True)
    chosen = []
    for j, col in enumerate(emat):
        if solver.insert(dict(col), tag=len(chosen)):
            chosen.append(dict(col))
    dim_e = len(chosen)
    # restrict U_0..U_{n-3}; they commute with U_{n-1} hence preserve eM
    gens = []
    for i in range(max(0, n - 2)):
        cols = []
        for b in chosen:
            img = {}
            for r, c in b.items():
                vec_add_scaled(img, module.U[i][r], c)
            expr = solver.express(img)
            if expr is None:
                raise ArithmeticError(
                    f"U_{i} does not preserve eM_{n}({module.lam})")
            cols.append(expr)
        gens.append(cols)
    e_fixes = all(
        vec_eq(_apply_cols(emat, b), b) for b in chosen)
    return LocalizationResult(n, module.lam, dim_e, chosen, gens, e_fixes)


def _apply_cols(cols, v):
    out = {}
    for r, c in v.items():
        vec_add_scaled(out, cols[r], c)
    return out


@dataclass
class UnderlineMapResult:
    n: int
    lam: int
    dim_small: int
    dim_e: int
    rank: int
    bijective: bool
    e_fixes_image: bool
    intertwines: dict           # generator index -> bool

    @property
    def ok(self):
        return (self.bijective and self.e_fixes_image
                and all(self.intertwines.values()))

    def to_record(self):
        return {"n": self.n, "lambda": self.lam, "dim_small": self.dim_small,
                "dim_e": self.dim_e, "rank": self.rank,
                "bijective": self.bijective,
                "e_fixes_image": self.e_fixes_image,
                "intertwines": {str(k): v
                                for k, v in sorted(self.intertwines.items())},
                "ok": self.ok}


def underline_map(n, lam, params):
    """The map w -> q^-1 w12 - w21 from M_{n-2}(lam) onto eM_n(lam), with the
    intertwining checks for every b_{n-2} generator."""
    return _underline_map(n, lam, context(params))


def _underline_map(n, lam, ctx):
    if n < 3:
        raise ValueError("localization comparison needs n >= 3")
    if abs(lam) == n:
        raise ValueError("lambda = +-n localizes to zero; the map is undefined")
    big = _weight_module(n, lam, ctx)
    small = _weight_module(n - 2, lam, ctx)
    fcols = [big.coords(underline_vect(w, "", ctx)) for w in small.basis]
    emat = _e_matrix(big)
    # image sits inside eM and spans it
    e_fixes = all(vec_eq(_apply_cols(emat, col), col) for col in fcols)
    rank = span_rank(fcols)
    dim_e = span_rank(emat)
    intertwines = {}
    for i in range(n - 2):
        lhs = mat_mul(fcols, small.U[i])
        rhs = mat_mul(big.U[i], fcols)
        intertwines[i] = mat_eq(lhs, rhs)
    return UnderlineMapResult(
        n, lam, small.dim, dim_e, rank,
        rank == small.dim == dim_e, e_fixes, intertwines)


# ---------------------------------------------------------------------------
# straightening and the quotient scalars
# ---------------------------------------------------------------------------

def straighten_word(w, ctx):
    """Rewrite the leftmost '12' to q * '21' until none remains; returns the
    accumulated scalar (the word always lands on 2^n2 1^n1).  Terminates
    because each step removes one inversion."""
    acc = ctx.one
    while True:
        i = w.find("12")
        if i < 0:
            return acc
        w = w[:i] + "21" + w[i + 2:]
        acc = acc * ctx.q


def straighten_vect(v, ctx):
    """Reduce a vector modulo the straightening span to a multiple of the
    class of 2^n2 1^n1; returns the coefficient."""
    acc = ctx.zero
    for w, c in v.items():
        acc = acc + c * straighten_word(w, ctx)
    return acc


@dataclass
class QuotientScalars:
    scalar_v: object            # closed form lam1 q^(-2 n2)
    scalar_w: object            # closed form lam2
    computed_v: object
    computed_w: object

    @property
    def ok(self):
        return self.scalar_v == self.computed_v and \
            self.scalar_w == self.computed_w


def quotient_Q_scalars(n, lam, params):
    """The scalar of X on the one-dimensional straightening quotient,
    computed from both canonical generators; returns the pair
    (lam1 q^(-2 n2), lam2) after checking the recomputation agrees."""
    rec = quotient_scalar_record(n, lam, context(params))
    if not rec.ok:
        raise ArithmeticError(
            f"straightening recomputation disagrees at n={n}, lambda={lam}")
    return rec.scalar_v, rec.scalar_w


def quotient_scalar_record(n, lam, ctx):
    from .tensor import op_X_ctx

    label = WeightLabel(n, lam)
    if abs(lam) == n:
        raise ValueError("lambda = +-n has no underline positions")
    n1, n2 = label.n1, label.n2
    X = op_X_ctx(n, ctx)
    v = "1" * n1 + "2" * n2
    w = "2" * n2 + "1" * n1
    red_v = straighten_vect(X.apply_word(v), ctx)
    computed_v = red_v / straighten_word(v, ctx)
    computed_w = straighten_vect(X.apply_word(w), ctx) / straighten_word(w, ctx)
    return QuotientScalars(ctx.lam1 * ctx.q_pow(-2 * n2), ctx.lam2,
                           computed_v, computed_w)


def special_element_scalar(n, lam, params):
    """-lam2 q^(2 n2 + n1 - 2) + lam1 q^(n1 - 2); vanishes exactly when the
    localization counit fails to be onto."""
    return _special_scalar(WeightLabel(n, lam), context(params))


def _special_scalar(label, ctx):
    n1, n2 = label.n1, label.n2
    return (-ctx.lam2) * ctx.q_pow(2 * n2 + n1 - 2) \
        + ctx.lam1 * ctx.q_pow(n1 - 2)


# ---------------------------------------------------------------------------
# the adjointness (counit) tests
# ---------------------------------------------------------------------------

def _image_family(n, label, ctx):
    """The spanning family I1 u I2 of the counit image, as word vectors."""
    from .tensor import op_X_ctx

    n1 = label.n1
    interior = weight_words(n - 2, n1 - 1)
    X = op_X_ctx(n, ctx)
    i1 = []
    for x in interior:
        base = underline_vect("", x, ctx)
        img = {}
        for w, c in base.items():
            vec_add_scaled(img, X.apply_word(w), c)
        vec_add_scaled(img, base, -ctx.lam1)
        i1.append(img)
    i2 = []
    for k in range(n - 1):
        for word in interior:
            w1, w2 = word[:k], word[k:]
            i2.append(underline_vect(w1, w2, ctx))
    return i1, i2


@dataclass
class SurjectivityResult:
    n: int
    lam: int
    dim: int
    rank_span: int
    closure_rank: int
    spans_agree: bool

    @property
    def surjective(self):
        return self.rank_span == self.dim

    @property
    def codim(self):
        return self.dim - self.rank_span


def adjointness_surjective(n, lam, params):
    """Is the counit G F M_n(lam) -> M_n(lam) onto?  Computed two ways: the
    rank of the explicit family I1 u I2, and the closure of eM under the
    generator matrices; both ranks and the spans themselves are compared."""
    return _adjointness_surjective(n, lam, context(params))


def _adjointness_surjective(n, lam, ctx):
    if n < 3:
        raise ValueError("adjointness tests need n >= 3")
    label = WeightLabel(n, lam)
    if abs(lam) == n:
        raise ValueError("lambda = +-n is outside the adjointness setting")
    module = _weight_module(n, lam, ctx)
    i1, i2 = _image_family(n, label, ctx)
    span = SpanSolver()
    family_coords = [module.coords(v) for v in i1 + i2]
    for v in family_coords:
        span.insert(v)
    # closure of eM = span{w 12-underline} under all generators
    seeds = [module.coords(underline_vect(w, "", ctx))
             for w in weight_words(n - 2, label.n1 - 1)]
    closure = invariant_closure(seeds, module.U)
    agree = span.rank == closure.rank and \
        all(closure.contains(v) for v in family_coords) and \
        all(span.contains(s) for s in seeds)
    return SurjectivityResult(n, lam, module.dim, span.rank,
                              closure.rank, agree)


def _canonical_family(n, label, ctx):
    """The straightened Temperley-Lieb elements (no '12' left of the
    underline) together with the decorated element; returns
    (tl_vectors, decorated_vector)."""
    n1, n2 = label.n1, label.n2
    tl = []
    for s in range(n - 1):
        for t in range(n - 1 - s):
            w1 = "2" * s + "1" * t
            rest = n - 2 - s - t
            ones = n1 - 1 - t
            if 0 <= ones <= rest:
                for w2 in weight_words(rest, ones):
                    tl.append(underline_vect(w1, w2, ctx))
    interior = "2" * (n2 - 1) + "1" * (n1 - 1)
    dec = {}
    vec_add_scaled(dec, {"1" + interior + "2": ctx.one},
                   (-ctx.lam2) * ctx.q_pow(n2 - 1))
    vec_add_scaled(dec, {"2" + interior + "1": ctx.one},
                   ctx.lam1 * ctx.q_pow(n1 - 2))
    return tl, dec


@dataclass
class InjectivityResult:
    n: int
    lam: int
    dim: int
    family_size: int
    rank: int
    decorated_residual_ok: bool

    @property
    def independent(self):
        return self.rank == self.family_size

    @property
    def injective(self):
        return self.independent


def adjointness_injective(n, lam, params):
    """Linear independence of the canonical generating family; by the
    straightening analysis this decides injectivity of the counit."""
    return _adjointness_injective(n, lam, context(params))


def _adjointness_injective(n, lam, ctx):
    if n < 3:
        raise ValueError("adjointness tests need n >= 3")
    label = WeightLabel(n, lam)
    if abs(lam) == n:
        raise ValueError("lambda = +-n is outside the adjointness setting")
    module = _weight_module(n, lam, ctx)
    tl, dec = _canonical_family(n, label, ctx)
    span = SpanSolver()
    for v in tl:
        span.insert(module.coords(v))
    tl_rank = span.rank
    # modulo the TL span the decorated element is the special scalar times
    # the class of 2^n2 1^n1
    unit = module.coords({"2" * label.n2 + "1" * label.n1: ctx.one})
    shifted = vec_sub(module.coords(dec),
                      vec_scale(unit, _special_scalar(label, ctx)))
    decorated_ok = span.contains(shifted)
    full = SpanSolver()
    for v in tl:
        full.insert(module.coords(v))
    full.insert(module.coords(dec))
    return InjectivityResult(n, lam, module.dim, len(tl) + 1, full.rank,
                             decorated_ok and tl_rank == len(tl))


def adjointness_record(n, lam, params):
    """One grid point of the adjointness sweep: the four equivalent booleans,
    the residue test, and the quotient scalars; serialized for reports."""
    ctx = context(params)
    label = WeightLabel(n, lam)
    surj = _adjointness_surjective(n, lam, ctx)
    inj = _adjointness_injective(n, lam, ctx)
    special = _special_scalar(label, ctx)
    qs = quotient_scalar_record(n, lam, ctx)
    expected = not residues_equal(label.n2, params.m, params.l)
    verdicts = [surj.surjective, surj.closure_rank == surj.dim,
                inj.injective, not special.is_zero()]
    four_way = len(set(verdicts)) == 1
    ser = ctx.field.serialize
    return {
        "n": n, "l": params.l, "m": params.m, "lambda": lam,
        "n1": label.n1, "n2": label.n2, "dim": label.dim,
        "rank_phi_image": surj.rank_span,
        "closure_rank": surj.closure_rank,
        "codim": surj.codim,
        "spans_agree": surj.spans_agree,
        "surjective": surj.surjective,
        "injective": inj.injective,
        "family_size": inj.family_size,
        "decorated_residual_ok": inj.decorated_residual_ok,
        "special_scalar": ser(special),
        "special_nonzero": not special.is_zero(),
        "scalar_v": ser(qs.computed_v),
        "scalar_w": ser(qs.computed_w),
        "quotient_scalars_match": qs.ok,
        "four_way_agree": four_way,
        "expected_residue_verdict": expected,
        "matches_expected": four_way and verdicts[0] == expected,
    }


# ---------------------------------------------------------------------------
# formal ("trivial") relations among the underline symbols
# ---------------------------------------------------------------------------

def verify_trivial_relations(n, lam, params):
    """The two systems of formal relations between shifted underline elements
    and the decorated elements, expanded to plain vectors in M_n(lam)."""
    ctx = context(params)
    label = WeightLabel(n, lam)
    n1, n2 = label.n1, label.n2
    checks = []

    bad1 = None
    if n1 >= 2 and n2 >= 2:
        for l1 in range(n - 3):
            for l2 in range(n - 3 - l1):
                l3 = n - 4 - l1 - l2
                for w1 in all_words(l1):
                    for w2 in all_words(l2):
                        for w3 in all_words(l3):
                            if (w1 + w2 + w3).count("1") != n1 - 2:
                                continue
                            lhs = vec_sub(
                                vec_scale(underline_vect(w1 + "12" + w2, w3,
                                                         ctx), ctx.qinv),
                                underline_vect(w1 + "21" + w2, w3, ctx))
                            rhs = vec_sub(
                                vec_scale(underline_vect(w1, w2 + "12" + w3,
                                                         ctx), ctx.qinv),
                                underline_vect(w1, w2 + "21" + w3, ctx))
                            if not vec_eq(lhs, rhs):
                                bad1 = w1 + "|" + w2 + "|" + w3
    checks.append(RelationCheck("shift_relation_tl", bad1 is None, bad1))

    def dec(x):
        out = {}
        vec_add_scaled(out, {"1" + x + "2": ctx.one},
                       (-ctx.lam2) * ctx.q_pow(n2 - 1))
        vec_add_scaled(out, {"2" + x + "1": ctx.one},
                       ctx.lam1 * ctx.q_pow(n1 - 2))
        return out

    bad2 = None
    if n1 >= 2 and n2 >= 2:
        for l1 in range(n - 3):
            l2 = n - 4 - l1
            for w1 in all_words(l1):
                for w2 in all_words(l2):
                    if (w1 + w2).count("1") != n1 - 2:
                        continue
                    lhs = vec_sub(vec_scale(dec(w1 + "12" + w2), ctx.qinv),
                                  dec(w1 + "21" + w2))
                    rhs = {}
                    vec_add_scaled(rhs, underline_vect("1" + w1, w2 + "2",
                                                       ctx),
                                   (-ctx.lam2) * ctx.q_pow(n2 - 1))
                    vec_add_scaled(rhs, underline_vect("2" + w1, w2 + "1",
                                                       ctx),
                                   ctx.lam1 * ctx.q_pow(n1 - 2))
                    if not vec_eq(lhs, rhs):
                        bad2 = w1 + "|" + w2
    checks.append(RelationCheck("shift_relation_decorated", bad2 is None,
                                bad2))
    return checks


def verify_module_blob_relations(n, lam, params):
    """Re-run the blob relations on the generator matrices of M_n(lam), and
    again on their transposes (the defining relations are *-symmetric)."""
    module = weight_module(params, lam, n)
    checks = [RelationCheck(f"module:{name}", ok)
              for name, ok in blob_relation_checks_matrices(module.U,
                                                            module.ctx)]
    from .linalg import mat_transpose

    transposed = [mat_transpose(u, module.dim) for u in module.U]
    checks += [RelationCheck(f"transposed:{name}", ok)
               for name, ok in
               blob_relation_checks_matrices(transposed, module.ctx)]
    return checks
