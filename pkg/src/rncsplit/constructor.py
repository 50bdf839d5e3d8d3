"""Generation of explicit hypersurfaces with prescribed restricted-tangent
splitting, and the inductive dimension-extension engine.

Seeds exist at n = e for each constructive degree (chains of curve quadrics
for d = 2, 3, 4; monomial psi-ladders for d >= 5 with e = n >= 2d-2).  For
d = 3, 4 the case n > e is reached one dimension at a time: a strategy matrix
J with K = N1·J and N2 = coker J stacks into an everywhere-injective N whose
cokernel extends delta by one entry g, and g lifts to the new coefficient
G_(n+1).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .binform import BinaryForm, DegreeError
from .fields import RATIONALS, FieldSpec
from .multipoly import (
    CurveContext,
    IdealCombination,
    MultiPoly,
    PolyError,
    lift_binary_form,
)
from .sheafmap import (
    CertificationError,
    GradedSheafMap,
    build_delta,
    build_psi,
    cokernel_matrix,
    compose,
    kernel_matrix,
    stack_rows,
    tangent_twists,
)
from .splitting import EXACT, SplittingType, predicted_splitting


class UnsupportedCaseError(ValueError):
    """Requested parameters lie outside the constructive range."""


class PsiLiftError(ValueError):
    """No ideal combination realizes the requested psi columns."""


@dataclass(frozen=True)
class ExtensionStep:
    input_F: IdealCombination
    strategy: str  # "J0" | "J1" | "J2"
    output_F: IdealCombination
    J: GradedSheafMap
    N1: GradedSheafMap
    N2: GradedSheafMap
    N: GradedSheafMap
    delta_out: GradedSheafMap
    target_splitting: SplittingType
    g: BinaryForm


# -- context embedding ---------------------------------------------------------


def _embed_poly(poly: MultiPoly, ctx: CurveContext) -> MultiPoly:
    pad = ctx.nvars - poly.context.nvars
    if pad < 0:
        raise ValueError("cannot shrink the ambient dimension")
    return MultiPoly(
        ctx, poly.total_degree, {exp + (0,) * pad: c for exp, c in poly.terms.items()}
    )


def embed_combination(F: IdealCombination, ctx: CurveContext) -> IdealCombination:
    return IdealCombination(
        ctx,
        {key: _embed_poly(p, ctx) for key, p in F.quadric_coeffs.items()},
        {k: _embed_poly(p, ctx) for k, p in F.linear_coeffs.items()},
    )


# -- psi-target lifting ----------------------------------------------------------


def lift_psi_targets(targets, context: CurveContext) -> IdealCombination:
    """Ideal combination whose psi quadric columns equal the given e-1 forms of
    degree e(d-1)-2 (linear part zero).

    Fast path: when column l is divisible by s^(e-l-1) t^(l-1) the single
    superdiagonal coefficient F_(l,l+1) does the job.  Otherwise the full
    linear system in the restrictions F_(i,j)|_C is solved exactly.
    """
    e, d = context.e, context.d
    K = context.field
    targets = list(targets)
    if len(targets) != e - 1:
        raise PsiLiftError(f"expected {e - 1} target columns, got {len(targets)}")
    want_deg = e * (d - 1) - 2
    for l, f in enumerate(targets, start=1):
        if not f.is_zero() and f.degree != want_deg:
            raise PsiLiftError(f"target column {l} has degree {f.degree}, expected {want_deg}")

    quadric: dict = {}
    try:
        for l, f in enumerate(targets, start=1):
            if f.is_zero():
                continue
            quotient = f.shift(-(e - l - 1), -(l - 1))
            quadric[(l, l + 1)] = lift_binary_form(quotient, context, d - 2)
        F = IdealCombination(context, quadric, {})
    except (DegreeError, PolyError):
        F = _lift_psi_general(targets, context)
    psi = build_psi(F)
    for l in range(e - 1):
        if not psi.entry(0, l).equals(targets[l]):
            raise CertificationError(f"lifted psi column {l + 1} disagrees with its target")
    return F


def _lift_psi_general(targets, context: CurveContext) -> IdealCombination:
    from . import linalg

    e, d = context.e, context.d
    K = context.field
    pairs = [(i, j) for i in range(1, e + 1) for j in range(i + 1, e + 1)]
    block = e * (d - 2) + 1  # coefficients per unknown restriction
    ncols = len(pairs) * block
    col_deg = e * (d - 1) - 2
    rows = []
    rhs = []
    for l in range(1, e):
        tgt = targets[l - 1]
        for row_t in range(col_deg + 1):
            row = [K.zero] * ncols
            for pidx, (i, j) in enumerate(pairs):
                if not i <= l < j:
                    continue
                shift_t = j + i - l - 2
                u = row_t - shift_t
                if 0 <= u <= block - 1:
                    row[pidx * block + u] = K.one
            rows.append(row)
            rhs.append(tgt.coeff(row_t))
    sol = linalg.solve(rows, rhs, K, ncols)
    if sol is None:
        raise PsiLiftError(
            "no ideal combination restricts to the requested psi columns "
            f"(d = {d}; the column space is a proper subspace for quadrics)"
        )
    quadric = {}
    for pidx, (i, j) in enumerate(pairs):
        coeffs = sol[pidx * block : (pidx + 1) * block]
        f = BinaryForm(K, block - 1, tuple(coeffs))
        if not f.is_zero():
            quadric[(i, j)] = lift_binary_form(f, context, d - 2)
    return IdealCombination(context, quadric, {})


def general_psi_targets(d: int, n: int, field: FieldSpec) -> list[BinaryForm]:
    """Monomial psi ladder for e = n >= 2d-2: starting at s^(dn-n-2), the
    t-power grows by d-1 for the first n-2d+2 entries and by d afterwards."""
    D = d * n - n - 2
    targets = []
    for l in range(1, n):
        if l <= n - 2 * d + 2:
            texp = (l - 1) * (d - 1)
        else:
            texp = D - (n - 1 - l) * d
        targets.append(BinaryForm.monomial(field, D, texp))
    return targets


# -- seeds at n = e ---------------------------------------------------------------


def _var_poly(ctx: CurveContext, index: int, power: int = 1) -> MultiPoly:
    exp = [0] * ctx.nvars
    exp[index] = power
    return MultiPoly.monomial(ctx, exp)


def _pair_poly(ctx: CurveContext, a: int, b: int) -> MultiPoly:
    exp = [0] * ctx.nvars
    exp[a] += 1
    exp[b] += 1
    return MultiPoly.monomial(ctx, exp)


def _seed_quadric_chain(e: int, n: int, field: FieldSpec) -> IdealCombination:
    ctx = CurveContext(2, e, n, field)
    one = MultiPoly.constant(ctx, field.one)
    return IdealCombination(ctx, {(i, i + 1): one for i in range(1, e)}, {})


def _seed_cubic(e: int, field: FieldSpec) -> IdealCombination:
    # x0 Q12 + ... + x_(e-4) Q_(e-3,e-2) + x_(e-2) Q_(e-2,e-1) + x_e Q_(e-1,e);
    # at e = 4 this instantiates to x0 Q12 + x2 Q23 + x4 Q34, the polynomial
    # inducing delta = (s^6 t, -s^7 + s^3 t^4, -s^4 t^3 + t^7, -s t^6).
    ctx = CurveContext(3, e, e, field)
    if e == 3:
        coeffs = {(1, 2): _var_poly(ctx, 0), (2, 3): _var_poly(ctx, 3)}
    else:
        coeffs = {(i, i + 1): _var_poly(ctx, i - 1) for i in range(1, e - 2)}
        coeffs[(e - 2, e - 1)] = _var_poly(ctx, e - 2)
        coeffs[(e - 1, e)] = _var_poly(ctx, e)
    return IdealCombination(ctx, coeffs, {})


#: Exponent ladder for the quartic fivefold seed, frozen after a deterministic
#: search over monomial psi columns (s^13, s^(13-x)t^x, s^(13-y)t^y, t^13).
_QUARTIC_E5_LADDER: tuple[int, int] | None = (4, 8)


def _seed_quartic(e: int, field: FieldSpec) -> IdealCombination:
    ctx = CurveContext(4, e, e, field)
    if e == 4:
        return IdealCombination(
            ctx,
            {
                (1, 2): _var_poly(ctx, 0, 2),
                (2, 3): _var_poly(ctx, 2, 2),
                (3, 4): _var_poly(ctx, 4, 2),
            },
            {},
        )
    if e == 5:
        return _seed_quartic_fivefold(field)
    if e == 6:
        return IdealCombination(
            ctx,
            {
                (1, 2): _var_poly(ctx, 0, 2),
                (2, 3): _pair_poly(ctx, 0, 3),
                (3, 4): _var_poly(ctx, 3, 2),
                (4, 5): _pair_poly(ctx, 3, 6),
                (5, 6): _var_poly(ctx, 6, 2),
                (3, 6): _var_poly(ctx, 3, 2),
            },
            {},
        )
    return _seed_quartic_family(e, field)


_quartic_family_choice: dict = {}


def _seed_quartic_family(e: int, field: FieldSpec) -> IdealCombination:
    """Quartic seed for e >= 7.  Two candidate coefficients of Q_(e-2,e-1) fit
    the family pattern; both are tried and the one whose computed splitting
    matches the catalog prediction wins (which one verifies depends on e)."""
    from .sheafmap import splitting_of_kernel

    ctx = CurveContext(4, e, e, field)
    base = {(i, i + 1): _var_poly(ctx, i - 1, 2) for i in range(1, e - 4)}
    base[(e - 4, e - 3)] = _pair_poly(ctx, e - 5, e - 4)
    base[(e - 3, e - 2)] = _var_poly(ctx, e - 3, 2)
    base[(e - 1, e)] = _var_poly(ctx, e, 2)
    candidates = {
        "square": _var_poly(ctx, e - 2, 2),
        "product": _pair_poly(ctx, e - 2, e - 1),
    }
    want = predicted_splitting(4, e, e).splitting
    cache_key = (e, field)
    if cache_key in _quartic_family_choice:
        name = _quartic_family_choice[cache_key]
        coeffs = dict(base)
        coeffs[(e - 2, e - 1)] = candidates[name]
        return IdealCombination(ctx, coeffs, {})
    for name in ("square", "product"):
        coeffs = dict(base)
        coeffs[(e - 2, e - 1)] = candidates[name]
        F = IdealCombination(ctx, coeffs, {})
        if splitting_of_kernel(build_delta(F)).parts == want.parts:
            _quartic_family_choice[cache_key] = name
            return F
    raise CertificationError(
        f"no reading of the quartic family coefficient verifies for e = {e}"
    )


def _seed_quartic_fivefold(field: FieldSpec) -> IdealCombination:
    """The quartic e = n = 5 seed; no closed-form polynomial covers this case,
    so a small family of monomial psi ladders is searched once and frozen."""
    from .sheafmap import splitting_of_kernel

    global _QUARTIC_E5_LADDER
    ctx = CurveContext(4, 5, 5, field)
    want = predicted_splitting(4, 5, 5).splitting

    def build(x: int, y: int) -> IdealCombination:
        targets = [
            BinaryForm.monomial(field, 13, 0),
            BinaryForm.monomial(field, 13, x),
            BinaryForm.monomial(field, 13, y),
            BinaryForm.monomial(field, 13, 13),
        ]
        return lift_psi_targets(targets, ctx)

    if _QUARTIC_E5_LADDER is not None:
        x, y = _QUARTIC_E5_LADDER
        return build(x, y)
    for x in range(1, 13):
        for y in range(x + 1, 13):
            try:
                F = build(x, y)
            except (PsiLiftError, CertificationError):
                continue
            if splitting_of_kernel(build_delta(F)).parts == want.parts:
                _QUARTIC_E5_LADDER = (x, y)
                return F
    raise CertificationError("no monomial psi ladder realizes the quartic e = n = 5 case")


def _seed_general(d: int, n: int, field: FieldSpec) -> IdealCombination:
    ctx = CurveContext(d, n, n, field)
    return lift_psi_targets(general_psi_targets(d, n, field), ctx)


# -- schedules and generation -------------------------------------------------------


def extension_schedule(d: int, e: int, n_target: int) -> list[SplittingType]:
    """Intermediate target splittings from n = e up to n_target, each the
    catalog prediction at its level."""
    _check_constructive(d, e, n_target)
    out = []
    for m in range(e, n_target + 1):
        pred = predicted_splitting(d, e, m)
        if pred.verdict != EXACT:
            raise UnsupportedCaseError(
                f"no exact predicted splitting at (d={d}, e={e}, n={m}); "
                f"the catalog gives {pred.verdict} [{pred.provenance}]"
            )
        out.append(pred.splitting)
    return out


def _check_constructive(d: int, e: int, n: int) -> None:
    if d == 2:
        if not 2 <= e <= n:
            raise UnsupportedCaseError(
                f"quadric chains need 2 <= e <= n, got (e={e}, n={n}); "
                "the quadrics theorem covers e = 1 without a generated example"
            )
    elif d == 3:
        if not 3 <= e <= n:
            raise UnsupportedCaseError(
                f"cubic examples need 3 <= e <= n, got (e={e}, n={n}); "
                "lines and conics are covered by the slope corollary only"
            )
    elif d == 4:
        if not 4 <= e <= n:
            raise UnsupportedCaseError(
                f"quartic examples need 4 <= e <= n, got (e={e}, n={n}); "
                "e <= 3 is covered by the slope corollary only"
            )
    elif d >= 5:
        if e != n:
            raise UnsupportedCaseError(
                f"degree {d} >= 5 examples are constructed only at e = n "
                f"(got e={e}, n={n}); no single extension strategy reaches the "
                "balanced target one dimension up"
            )
        if e < 2 * d - 2:
            raise UnsupportedCaseError(
                f"degree {d} needs e = n >= 2d-2 = {2 * d - 2} (got e={e}); "
                "between d+1 and 2d-3 existence routes through a cited result "
                "with no explicit polynomial"
            )
    else:
        raise UnsupportedCaseError(f"degree d = {d} out of range")


def seed_example(d: int, e: int, field: FieldSpec = RATIONALS) -> IdealCombination:
    """The explicit hypersurface at the base level of the induction (n = e for
    d >= 3; quadric chains are built directly at any n by the caller)."""
    if d == 2:
        return _seed_quadric_chain(e, e if e >= 3 else 3, field)
    if d == 3:
        return _seed_cubic(e, field)
    if d == 4:
        return _seed_quartic(e, field)
    return _seed_general(d, e, field)


def build_chain(
    d: int, e: int, n: int, field: FieldSpec = RATIONALS
) -> tuple[IdealCombination, list[ExtensionStep]]:
    """Seed plus certified extension steps carrying it from n = e up to n.

    Returns (final F, steps); for quadrics the chain polynomial works at every
    n directly and the step list is empty.
    """
    _check_constructive(d, e, n)
    if d == 2:
        return _seed_quadric_chain(e, n, field), []
    F = seed_example(d, e, field)
    schedule = extension_schedule(d, e, n)
    steps: list[ExtensionStep] = []
    kernel = None
    for target in schedule[1:]:
        step = extend_dimension(F, target, kernel=kernel)
        steps.append(step)
        F = step.output_F
        kernel = step.N
    return F, steps


def generate_example(d: int, e: int, n: int, field: FieldSpec = RATIONALS) -> IdealCombination:
    """Explicit hypersurface through the degree-e rational normal curve in P^n
    whose restricted tangent bundle realizes the catalog prediction."""
    return build_chain(d, e, n, field)[0]


# -- the extension engine --------------------------------------------------------


def _select_strategy(S: SplittingType, T: SplittingType, e: int) -> str:
    cS, cT = Counter(S.parts), Counter(T.parts)
    if cT == cS + Counter({e: 1}):
        return "J0"
    a = min(S.parts)
    if set(S.parts) <= {a, a + 1}:
        if cS[a] >= 1 and cT == cS - Counter({a: 1}) + Counter({a + 1: 2}):
            return "J1"
        if cS[a] >= 2 and cT == cS - Counter({a: 2}) + Counter({a + 1: 3}):
            return "J2"
    raise UnsupportedCaseError(
        f"target {list(T.parts)} unreachable from {list(S.parts)} by a single "
        "strategy (append O(e); or trade one/two minimal summands per the J1/J2 shapes)"
    )


def _split_off_t_power(f: BinaryForm):
    """f = s*p + c*t^deg; returns (p, c)."""
    K = f.field
    if f.is_zero():
        return BinaryForm.zero(K), K.zero
    c = f.coeffs[f.degree]
    rest = f if K.is_zero(c) else f.sub(BinaryForm.monomial(K, f.degree, f.degree, c))
    return rest.shift(-1, 0), c


def _split_off_s_power(f: BinaryForm):
    """f = t*q + c*s^deg; returns (q, c)."""
    K = f.field
    if f.is_zero():
        return BinaryForm.zero(K), K.zero
    c = f.coeffs[0]
    rest = f if K.is_zero(c) else f.sub(BinaryForm.monomial(K, f.degree, 0, c))
    return rest.shift(0, -1), c


def _build_J0(K_map: GradedSheafMap, e: int):
    field = K_map.field
    one = BinaryForm.constant(field, field.one)
    src = K_map.source
    E = src + (e,)
    J = GradedSheafMap(field, src, E, {(j, j): one for j in range(len(src))})
    N1 = GradedSheafMap(field, E, K_map.target, dict(K_map.entries))
    N2 = GradedSheafMap(field, E, (e,), {(0, len(E) - 1): one})
    return J, N1, N2


def _build_J1(K_perm: GradedSheafMap, a: int):
    field = K_perm.field
    r = sum(1 for b in K_perm.source if b == a)
    s_cnt = K_perm.ncols - r
    w = r + s_cnt + 1
    E = (a + 1,) + (a,) * (r - 1) + (a + 1,) * s_cnt + (a + 1,)
    one = BinaryForm.constant(field, field.one)
    s_form = BinaryForm.monomial(field, 1, 0)
    t_form = BinaryForm.monomial(field, 1, 1)
    J_entries = {(0, 0): s_form, (w - 1, 0): t_form}
    for j in range(1, r + s_cnt):
        J_entries[(j, j)] = one
    J = GradedSheafMap(field, K_perm.source, E, J_entries)
    N1_entries = {}
    for i in range(K_perm.nrows):
        p, c = _split_off_t_power(K_perm.entry(i, 0))
        if not p.is_zero():
            N1_entries[(i, 0)] = p
        if not field.is_zero(c):
            k = K_perm.entry(i, 0)
            N1_entries[(i, w - 1)] = BinaryForm.monomial(field, k.degree - 1, k.degree - 1, c)
    for (i, j), f in K_perm.entries.items():
        if j >= 1:
            N1_entries[(i, j)] = f
    N1 = GradedSheafMap(field, E, K_perm.target, N1_entries)
    N2 = GradedSheafMap(
        field,
        E,
        (a + 2,),
        {(0, 0): t_form, (0, w - 1): s_form.neg()},
    )
    return J, N1, N2


def _build_J2(K_perm: GradedSheafMap, a: int):
    field = K_perm.field
    r = sum(1 for b in K_perm.source if b == a)
    s_cnt = K_perm.ncols - r
    w = r + s_cnt + 1
    E = (a + 1,) * 2 + (a,) * (r - 2) + (a + 1,) * s_cnt + (a + 1,)
    one = BinaryForm.constant(field, field.one)
    s_form = BinaryForm.monomial(field, 1, 0)
    t_form = BinaryForm.monomial(field, 1, 1)
    J_entries = {
        (0, 0): s_form,
        (1, 1): t_form,
        (w - 1, 0): t_form,
        (w - 1, 1): s_form,
    }
    for j in range(2, r + s_cnt):
        J_entries[(j, j)] = one
    J = GradedSheafMap(field, K_perm.source, E, J_entries)
    N1_entries = {}
    for i in range(K_perm.nrows):
        k1 = K_perm.entry(i, 0)
        k2 = K_perm.entry(i, 1)
        deg = K_perm.target[i] - a
        p, c1 = _split_off_t_power(k1)
        q, c2 = _split_off_s_power(k2)
        if deg < 2 and not (field.is_zero(c1) and field.is_zero(c2)):
            raise CertificationError("J2 decomposition needs entry degree >= 2")
        col0 = p
        if not field.is_zero(c2):
            col0 = col0.sub(BinaryForm.monomial(field, deg - 1, 1, c2))
        col1 = q
        if not field.is_zero(c1):
            col1 = col1.sub(BinaryForm.monomial(field, deg - 1, deg - 2, c1))
        last = BinaryForm.zero(field)
        if not field.is_zero(c1):
            last = last.add(BinaryForm.monomial(field, deg - 1, deg - 1, c1))
        if not field.is_zero(c2):
            last = last.add(BinaryForm.monomial(field, deg - 1, 0, c2))
        if not col0.is_zero():
            N1_entries[(i, 0)] = col0
        if not col1.is_zero():
            N1_entries[(i, 1)] = col1
        if not last.is_zero():
            N1_entries[(i, w - 1)] = last
    for (i, j), f in K_perm.entries.items():
        if j >= 2:
            N1_entries[(i, j)] = f
    N1 = GradedSheafMap(field, E, K_perm.target, N1_entries)
    two_t = BinaryForm.monomial(field, 2, 2)
    two_s = BinaryForm.monomial(field, 2, 0)
    st = BinaryForm.monomial(field, 2, 1, field.neg(field.one))
    N2 = GradedSheafMap(field, E, (a + 3,), {(0, 0): two_t, (0, 1): two_s, (0, w - 1): st})
    return J, N1, N2


def extend_dimension(
    F: IdealCombination, target: SplittingType, kernel: GradedSheafMap | None = None
) -> ExtensionStep:
    """One inductive step n -> n+1: realize `target` as the splitting of the
    restricted tangent bundle of an extension F + G_(n+1) x_(n+1).

    The strategy is selected by shape; the certified output satisfies
    compose(delta_out, N) = 0, N of full rank everywhere, and the splitting of
    N's source equal to the target, which pins the kernel exactly.
    """
    ctx = F.context
    e, n, d = ctx.e, ctx.n, ctx.d
    field = ctx.field
    delta_in = build_delta(F)
    K_map = kernel if kernel is not None else kernel_matrix(delta_in)
    S = SplittingType(tuple(sorted(K_map.source)))
    if target.rank != S.rank + 1 or target.degree != S.degree + e:
        raise UnsupportedCaseError(
            f"target {list(target.parts)} does not extend {list(S.parts)} by rank 1 "
            f"and degree e = {e}"
        )
    strategy = _select_strategy(S, target, e)
    if strategy == "J0":
        J, N1, N2 = _build_J0(K_map, e)
        K_used = K_map
    else:
        a = min(K_map.source)
        perm = sorted(range(K_map.ncols), key=lambda j: (K_map.source[j], j))
        K_used = K_map.permute_columns(perm)
        J, N1, N2 = (_build_J1 if strategy == "J1" else _build_J2)(K_used, a)
    if not compose(N1, J).equals(K_used):
        raise CertificationError("N1 · J does not reproduce the kernel matrix")
    if not compose(N2, J).is_zero_map():
        raise CertificationError("N2 · J is nonzero")
    N = stack_rows(N1, N2)
    delta_raw = cokernel_matrix(N)

    # normalize the cokernel so its first n entries equal the incoming delta
    lam = None
    for j in range(n):
        f_in = delta_in.entry(0, j)
        f_raw = delta_raw.entry(0, j)
        if not f_in.is_zero():
            k = f_in.t_valuation()
            if f_raw.is_zero() or field.is_zero(f_raw.coeff(k)):
                raise CertificationError("cokernel does not extend the incoming delta")
            lam = field.div(f_in.coeffs[k], f_raw.coeff(k))
            break
    if lam is None:
        raise CertificationError("incoming delta is the zero map")
    delta_out = delta_raw.scale(lam)
    for j in range(n):
        if not delta_out.entry(0, j).equals(delta_in.entry(0, j)):
            raise CertificationError(
                "cokernel does not agree with the incoming delta after rescaling"
            )
    g = delta_out.entry(0, n)

    ctx_out = CurveContext(d, e, n + 1, field)
    quadric = {key: _embed_poly(p, ctx_out) for key, p in F.quadric_coeffs.items()}
    linear = {k: _embed_poly(p, ctx_out) for k, p in F.linear_coeffs.items()}
    if not g.is_zero():
        linear[n + 1] = lift_binary_form(g, ctx_out, d - 1)
    output_F = IdealCombination(ctx_out, quadric, linear)

    if not build_delta(output_F).equals(delta_out):
        raise CertificationError("extended hypersurface does not induce the cokernel map")
    if not compose(delta_out, N).is_zero_map():
        raise CertificationError("delta_out does not annihilate N")
    if tuple(sorted(N.source)) != target.parts:
        raise CertificationError(
            f"extension produced splitting {sorted(N.source)}, wanted {list(target.parts)}"
        )
    if N.target != tangent_twists(ctx_out):
        raise CertificationError("stacked map has unexpected target twists")
    return ExtensionStep(
        input_F=F,
        strategy=strategy,
        output_F=output_F,
        J=J,
        N1=N1,
        N2=N2,
        N=N,
        delta_out=delta_out,
        target_splitting=target,
        g=g,
    )
