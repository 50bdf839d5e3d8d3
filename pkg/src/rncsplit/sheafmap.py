"""Graded matrices between twist-sums of line bundles on the projective line.

A map ⊕_j O(b_j) -> ⊕_i O(c_i) is a matrix of binary forms whose (i, j) entry
is homogeneous of degree c_i - b_j (or strictly zero).  This module builds the
maps attached to a hypersurface through a rational normal curve (psi, beta,
delta = psi∘beta, df), recovers splitting types of kernels by an exact nullity
scan over twists, extracts minimal kernel/cokernel matrices, and certifies
full rank at every point of the line via maximal minors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import linalg
from .binform import BinaryForm, bf_gcd
from .fields import FieldSpec
from .multipoly import (
    CurveContext,
    IdealCombination,
    gradient_on_curve,
    restrict_to_curve,
)
from .splitting import SplittingType

TwistSum = tuple  # sequence of integers, order significant


class MapError(ValueError):
    pass


class CertificationError(RuntimeError):
    """An internal exactness certificate failed; signals a bug, not bad input."""


@dataclass(frozen=True)
class GradedSheafMap:
    field: FieldSpec
    source: TwistSum
    target: TwistSum
    entries: dict  # (row, col) -> nonzero BinaryForm; zero entries implicit

    def __post_init__(self):
        clean = {}
        for (i, j), f in self.entries.items():
            if not (0 <= i < len(self.target) and 0 <= j < len(self.source)):
                raise MapError(f"entry ({i},{j}) outside {len(self.target)}x{len(self.source)}")
            if f.is_zero():
                continue
            want = self.target[i] - self.source[j]
            if f.degree != want:
                raise MapError(
                    f"entry ({i},{j}) has degree {f.degree}, expected c_i - b_j = {want}"
                )
            clean[(i, j)] = f
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))

    @property
    def nrows(self) -> int:
        return len(self.target)

    @property
    def ncols(self) -> int:
        return len(self.source)

    def entry(self, i: int, j: int) -> BinaryForm:
        return self.entries.get((i, j), BinaryForm.zero(self.field))

    def is_zero_map(self) -> bool:
        return not self.entries

    def column(self, j: int) -> list[BinaryForm]:
        return [self.entry(i, j) for i in range(self.nrows)]

    def equals(self, other: "GradedSheafMap") -> bool:
        if self.source != other.source or self.target != other.target:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self.entry(i, j).equals(other.entry(i, j)) for (i, j) in keys)

    def scale(self, scalar) -> "GradedSheafMap":
        return GradedSheafMap(
            self.field,
            self.source,
            self.target,
            {k: f.scale(scalar) for k, f in self.entries.items()},
        )

    def permute_columns(self, perm: list[int]) -> "GradedSheafMap":
        """New map whose column k is the old column perm[k]."""
        inv = {old: new for new, old in enumerate(perm)}
        return GradedSheafMap(
            self.field,
            tuple(self.source[old] for old in perm),
            self.target,
            {(i, inv[j]): f for (i, j), f in self.entries.items()},
        )

    def __repr__(self) -> str:
        return f"GradedSheafMap({list(self.target)} <- {list(self.source)}, {len(self.entries)} entries)"


def identity_map(field: FieldSpec, twists: TwistSum) -> GradedSheafMap:
    one = BinaryForm.constant(field, field.one)
    return GradedSheafMap(field, tuple(twists), tuple(twists), {(i, i): one for i in range(len(twists))})


def compose(outer: GradedSheafMap, inner: GradedSheafMap) -> GradedSheafMap:
    """Matrix product outer ∘ inner."""
    if inner.target != outer.source:
        raise MapError(f"twist mismatch: inner target {inner.target} != outer source {outer.source}")
    entries: dict = {}
    by_col: dict = {}
    for (k, j), f in inner.entries.items():
        by_col.setdefault(j, []).append((k, f))
    for j, pairs in by_col.items():
        for k, f in pairs:
            for i in range(outer.nrows):
                g = outer.entries.get((i, k))
                if g is None:
                    continue
                prod = g.mul(f)
                if prod.is_zero():
                    continue
                cur = entries.get((i, j))
                entries[(i, j)] = prod if cur is None else cur.add(prod)
    entries = {k: f for k, f in entries.items() if not f.is_zero()}
    return GradedSheafMap(outer.field, inner.source, outer.target, entries)


def dual(M: GradedSheafMap) -> GradedSheafMap:
    """Transpose with negated twists: O(-c_i) -> O(-b_j)."""
    return GradedSheafMap(
        M.field,
        tuple(-c for c in M.target),
        tuple(-b for b in M.source),
        {(j, i): f for (i, j), f in M.entries.items()},
    )


def stack_rows(top: GradedSheafMap, bottom: GradedSheafMap) -> GradedSheafMap:
    if top.source != bottom.source:
        raise MapError("stacked maps need equal sources")
    entries = dict(top.entries)
    off = top.nrows
    for (i, j), f in bottom.entries.items():
        entries[(i + off, j)] = f
    return GradedSheafMap(top.field, top.source, top.target + bottom.target, entries)


# -- maps attached to a hypersurface through the curve -------------------------


def tangent_twists(ctx: CurveContext) -> TwistSum:
    """T_{P^n}|_C = O(e+1)^e ⊕ O(e)^(n-e)."""
    return (ctx.e + 1,) * ctx.e + (ctx.e,) * (ctx.n - ctx.e)


def normal_twists(ctx: CurveContext) -> TwistSum:
    """N_{C/P^n} = O(e+2)^(e-1) ⊕ O(e)^(n-e)."""
    return (ctx.e + 2,) * (ctx.e - 1) + (ctx.e,) * (ctx.n - ctx.e)


def build_beta(ctx: CurveContext) -> GradedSheafMap:
    """Comparison map T_{P^n}|_C -> N_{C/P^n}: bidiagonal (t, -s) block on the
    tangent part, identity on the O(e) part."""
    K = ctx.field
    e, n = ctx.e, ctx.n
    entries: dict = {}
    t = BinaryForm.monomial(K, 1, 1)
    minus_s = BinaryForm.monomial(K, 1, 0, K.neg(K.one))
    one = BinaryForm.constant(K, K.one)
    for i in range(e - 1):
        entries[(i, i)] = t
        entries[(i, i + 1)] = minus_s
    for k in range(n - e):
        entries[(e - 1 + k, e + k)] = one
    return GradedSheafMap(K, tangent_twists(ctx), normal_twists(ctx), entries)


def build_df(ctx: CurveContext) -> GradedSheafMap:
    """The tangent-line column (s^(e-1), ..., t^(e-1); 0, ..., 0): O(2) -> T_{P^n}|_C."""
    K = ctx.field
    entries = {
        (i, 0): BinaryForm.monomial(K, ctx.e - 1, i) for i in range(ctx.e)
    }
    return GradedSheafMap(K, (2,), tangent_twists(ctx), entries)


def build_psi(F: IdealCombination) -> GradedSheafMap:
    """Induced map N_{C/P^n} -> O(de) of a hypersurface F through the curve.

    Column l (1-based, l <= e-1) collects s^(e-j-i+l) t^(j+i-l-2) restrict(F_{i,j})
    over stored pairs with i <= l < j; trailing columns are the restrictions of
    the linear coefficients G_k.
    """
    ctx = F.context
    K = ctx.field
    e = ctx.e
    entries: dict = {}
    restr = {key: restrict_to_curve(poly) for key, poly in F.quadric_coeffs.items()}
    for l in range(1, e):
        acc = BinaryForm.zero(K)
        for (i, j), r in restr.items():
            if i <= l < j and not r.is_zero():
                acc = acc.add(r.mul(BinaryForm.monomial(K, e - 2, j + i - l - 2)))
        if not acc.is_zero():
            entries[(0, l - 1)] = acc
    for k, poly in F.linear_coeffs.items():
        r = restrict_to_curve(poly)
        if not r.is_zero():
            entries[(0, e - 1 + (k - e - 1))] = r
    return GradedSheafMap(K, normal_twists(ctx), (ctx.d * e,), entries)


def build_delta(F: IdealCombination) -> GradedSheafMap:
    """delta = psi ∘ beta in closed form:
    (tC_1, -sC_1 + tC_2, ..., -sC_(e-1); G_(e+1)|_C, ..., G_n|_C)."""
    ctx = F.context
    K = ctx.field
    e = ctx.e
    psi = build_psi(F)
    C = [psi.entry(0, l) for l in range(e - 1)]
    cols: list[BinaryForm] = []
    for j in range(e):
        acc = BinaryForm.zero(K)
        if j < e - 1 and not C[j].is_zero():
            acc = acc.add(C[j].shift(0, 1))  # t * C_(j+1)
        if j > 0 and not C[j - 1].is_zero():
            acc = acc.sub(C[j - 1].shift(1, 0))  # s * C_j
        cols.append(acc)
    for k in range(e - 1, psi.ncols):
        cols.append(psi.entry(0, k))
    entries = {(0, j): f for j, f in enumerate(cols) if not f.is_zero()}
    return GradedSheafMap(K, tangent_twists(ctx), (ctx.d * e,), entries)


def gradient_map(F: IdealCombination) -> GradedSheafMap:
    """The gradient route O(e)^(n+1) -> O(de) with entries (∂F/∂x_m)|_C."""
    ctx = F.context
    grads = gradient_on_curve(F.assemble())
    entries = {(0, m): g for m, g in enumerate(grads) if not g.is_zero()}
    return GradedSheafMap(ctx.field, (ctx.e,) * ctx.nvars, (ctx.d * ctx.e,), entries)


# -- sections and the nullity scan ---------------------------------------------


def _section_matrix(M: GradedSheafMap, m: int):
    """Matrix of the induced map ⊕Γ(O(b_j+m)) -> ⊕Γ(O(c_i+m)) in coefficient
    coordinates (returns (matrix, n_cols)); multiplication by a form is its
    coefficient convolution."""
    K = M.field
    src_dims = [max(0, b + m + 1) for b in M.source]
    tgt_dims = [max(0, c + m + 1) for c in M.target]
    col_off = [0]
    for d in src_dims:
        col_off.append(col_off[-1] + d)
    row_off = [0]
    for d in tgt_dims:
        row_off.append(row_off[-1] + d)
    R, C = row_off[-1], col_off[-1]
    if K.p is not None:
        A = np.zeros((R, C), dtype=np.int64)
        for (i, j), f in M.entries.items():
            ds, dt = src_dims[j], tgt_dims[i]
            if ds == 0 or dt == 0:
                continue
            for u, coeff in enumerate(f.coeffs):
                c = int(coeff) % K.p
                if c == 0:
                    continue
                width = min(ds, dt - u)
                if width > 0:
                    idx = np.arange(width)
                    A[row_off[i] + u + idx, col_off[j] + idx] = c
        return A, C
    A = [[K.zero] * C for _ in range(R)]
    for (i, j), f in M.entries.items():
        ds, dt = src_dims[j], tgt_dims[i]
        if ds == 0 or dt == 0:
            continue
        for u, coeff in enumerate(f.coeffs):
            if K.is_zero(coeff):
                continue
            for q in range(min(ds, dt - u)):
                A[row_off[i] + u + q][col_off[j] + q] = coeff
    return A, C


def section_kernel_dim(M: GradedSheafMap, m: int) -> int:
    """dim ker of the induced linear map on global sections twisted by m."""
    A, C = _section_matrix(M, m)
    if C == 0:
        return 0
    R = A.shape[0] if M.field.p is not None else len(A)
    if R == 0:
        return C
    return C - linalg.rank(A, M.field, C)


def _eval_matrix(M: GradedSheafMap, point) -> list[list]:
    K = M.field
    rows = [[K.zero] * M.ncols for _ in range(M.nrows)]
    for (i, j), f in M.entries.items():
        rows[i][j] = f.eval(point)
    return rows


def generic_rank(M: GradedSheafMap) -> int:
    """Exact rank at deterministic points plus pseudorandom ones until stable."""
    K = M.field
    if M.nrows == 0 or M.ncols == 0:
        return 0
    cap = min(M.nrows, M.ncols)
    pts = [(K.one, K.zero), (K.zero, K.one), (K.one, K.one)]
    rng = random.Random(0x5EED)
    best = 0
    stable = 0
    for trial in range(64):
        if trial < len(pts):
            P = pts[trial]
        elif K.p is not None:
            P = (K.one, K.from_int(rng.randrange(2, K.p)))
        else:
            P = (K.one, K.from_int(trial + rng.randrange(2, 10**6)))
        r = linalg.rank(_eval_matrix(M, P), K, M.ncols)
        if r > best:
            best = r
            stable = 0
        else:
            stable += 1
        if best == cap or (trial >= 3 and stable >= 3):
            break
    return best


def _scan_window(M: GradedSheafMap) -> tuple[int, int]:
    B = max(M.source)
    maxc = max(M.target) if M.target else 0
    a_spec = sum(M.source) - M.nrows * maxc - M.ncols * B
    a_safe = sum(M.source) - M.nrows * max(maxc, 0) - (M.ncols - 1) * max(B, 0)
    return -B - 1, -min(a_spec, a_safe)


def splitting_of_kernel(M: GradedSheafMap) -> SplittingType:
    """Splitting type of ker M, recovered from the counting identity
    N(m) - N(m-1) = #{i : a_i >= -m} over a certified twist window."""
    if M.ncols == 0:
        return SplittingType(())
    m_bottom, m_top = _scan_window(M)
    expected_rank = M.ncols - generic_rank(M)
    counts = {m_bottom: 0}
    for m in range(m_bottom + 1, m_top + 1):
        counts[m] = section_kernel_dim(M, m)
    parts: list[int] = []
    prev_inc = 0
    for m in range(m_bottom + 1, m_top + 1):
        inc = counts[m] - counts[m - 1]
        if inc < prev_inc:
            raise CertificationError(f"section counts not monotone at twist {m}")
        parts.extend([-m] * (inc - prev_inc))
        prev_inc = inc
    if prev_inc != expected_rank:
        raise CertificationError(
            f"scan stabilized at rank {prev_inc}, expected {expected_rank} "
            f"(cols {M.ncols} - generic rank {M.ncols - expected_rank})"
        )
    top_inc = counts[m_top] - counts[m_top - 1] if m_top > m_bottom else 0
    if expected_rank and top_inc != expected_rank:
        raise CertificationError("section counts did not stabilize inside the window")
    for m in (m_top - 1, m_top):
        want = sum(max(0, a + m + 1) for a in parts)
        if m in counts and counts[m] != want:
            raise CertificationError(
                f"recovered splitting {sorted(parts)} inconsistent with count at twist {m}"
            )
    return SplittingType(tuple(sorted(parts)))


def _vector_to_forms(M: GradedSheafMap, vec, twist: int) -> dict:
    """Cut a section-space kernel vector at m = -twist into per-column forms."""
    K = M.field
    forms = {}
    off = 0
    for j, b in enumerate(M.source):
        dim = max(0, b - twist + 1)
        if dim == 0:
            continue
        coeffs = [K.from_int(int(x)) if K.p is not None else x for x in vec[off : off + dim]]
        f = BinaryForm(K, b - twist, tuple(coeffs))
        if not f.is_zero():
            forms[j] = f
        off += dim
    return forms


def kernel_matrix(M: GradedSheafMap) -> GradedSheafMap:
    """A minimal generating matrix K of ker M: compose(M, K) = 0, source twists
    equal splitting_of_kernel(M) sorted descending, and K has full rank at
    every point of the line."""
    split = splitting_of_kernel(M)
    gens: list[tuple[int, dict]] = []  # (twist, column forms)
    if split.rank:
        K = M.field
        distinct = sorted(set(split.parts), reverse=True)
        want = {a: split.parts.count(a) for a in distinct}
        for a in distinct:
            A, C = _section_matrix(M, -a)
            basis = linalg.nullspace(A, K, C)
            span = linalg.RowSpace(K, C)
            for twist, forms in gens:
                for w in range(twist - a + 1):
                    shifted = {j: f.shift(twist - a - w, w) for j, f in forms.items()}
                    vec = _forms_to_vector(M, shifted, a, C)
                    span.insert(vec)
            found = 0
            for v in basis:
                res = span.insert(v)
                if res is not None:
                    gens.append((a, _vector_to_forms(M, list(res), a)))
                    found += 1
                    if found == want[a]:
                        break
            if found != want[a]:
                raise CertificationError(
                    f"expected {want[a]} new kernel generators at twist {a}, found {found}"
                )
    source = tuple(a for a, _ in gens)
    entries = {}
    for col, (a, forms) in enumerate(gens):
        for j, f in forms.items():
            entries[(j, col)] = f
    K_map = GradedSheafMap(M.field, source, M.source, entries)
    if not compose(M, K_map).is_zero_map():
        raise CertificationError("kernel matrix does not annihilate the map")
    if not full_rank_everywhere(K_map):
        raise CertificationError("kernel matrix drops rank at a point of the line")
    return K_map


def _forms_to_vector(M: GradedSheafMap, forms: dict, twist: int, width: int) -> list:
    K = M.field
    vec = [K.zero] * width
    off = 0
    for j, b in enumerate(M.source):
        dim = max(0, b - twist + 1)
        if dim == 0:
            continue
        f = forms.get(j)
        if f is not None and not f.is_zero():
            for u, c in enumerate(f.coeffs):
                vec[off + u] = c
        off += dim
    return vec


def cokernel_matrix(N: GradedSheafMap) -> GradedSheafMap:
    """Cokernel presentation of an everywhere-injective N, computed as the
    dual of the kernel matrix of the dual."""
    if not full_rank_everywhere(N):
        raise MapError("cokernel requires a map of full rank at every point")
    return dual(kernel_matrix(dual(N)))


# -- full-rank certificate -------------------------------------------------------


def _interpolate_form(field: FieldSpec, degree: int, values: list) -> BinaryForm:
    """Homogeneous form of the given degree from degree+1 values at (1, k)."""
    K = field
    npts = degree + 1
    rows = []
    for k in range(npts):
        tau = K.from_int(k)
        row = [K.one]
        for _ in range(degree):
            row.append(K.mul(row[-1], tau))
        rows.append(row)
    coeffs = linalg.solve(rows, values, K, npts)
    if coeffs is None:
        raise CertificationError("interpolation failed")
    return BinaryForm(K, degree, tuple(coeffs))


def minor_form(M: GradedSheafMap, rows: tuple, cols: tuple) -> BinaryForm:
    """The minor det M[rows, cols] as a binary form (exact, by interpolation
    at degree+1 points; the minor is homogeneous of degree sum c_i - sum b_j)."""
    K = M.field
    D = sum(M.target[i] for i in rows) - sum(M.source[j] for j in cols)
    if D < 0:
        return BinaryForm.zero(K)
    if K.p is not None and D + 1 > K.p:
        raise CertificationError(f"minor degree {D} too large for GF({K.p}) interpolation")
    values = []
    for k in range(D + 1):
        P = (K.one, K.from_int(k))
        sub = [[M.entry(i, j).eval(P) for j in cols] for i in rows]
        values.append(linalg.det(sub, K))
    f = _interpolate_form(K, D, values)
    return f if not f.is_zero() else BinaryForm.zero(K)


def full_rank_everywhere(M: GradedSheafMap) -> bool:
    """True iff the maximal minors have no common projective zero (their gcd is
    a nonzero constant) and the generic rank is min(#rows, #cols)."""
    r = min(M.nrows, M.ncols)
    if r == 0:
        return True
    if M.nrows >= M.ncols:
        subsets = ((rows, tuple(range(M.ncols))) for rows in itertools.combinations(range(M.nrows), r))
    else:
        subsets = ((tuple(range(M.nrows)), cols) for cols in itertools.combinations(range(M.ncols), r))
    g: BinaryForm | None = None
    for rows, cols in subsets:
        minor = minor_form(M, rows, cols)
        if minor.is_zero():
            continue
        g = minor if g is None else bf_gcd([g, minor])
        if g.degree == 0:
            return True
    return g is not None and g.degree == 0


# -- hypersurface-level checks -----------------------------------------------------


def check_smooth_along_curve(F: IdealCombination) -> bool:
    """True iff the restricted gradient entries have no common projective zero."""
    grads = [g for g in gradient_on_curve(F.assemble()) if not g.is_zero()]
    if not grads:
        return False
    return bf_gcd(grads).degree == 0


def h0_euler_crosscheck(F: IdealCombination, m: int) -> bool:
    """Compare section-kernel dimensions of the psi∘beta route and the gradient
    route; valid for m >= -1 where the twisted Euler sequence has no H^1."""
    if m < -1:
        raise ValueError(f"twist m = {m} < -1 outside the valid comparison range")
    if not check_smooth_along_curve(F):
        raise ValueError("hypersurface is singular along the curve")
    left = section_kernel_dim(build_delta(F), m)
    right = section_kernel_dim(gradient_map(F), m) - max(0, m + 1)
    return left == right


# -- serialization -----------------------------------------------------------------


def format_map(M: GradedSheafMap) -> str:
    from .binform import format_binary_form

    head = (
        f"map {M.nrows} x {M.ncols} : "
        f"[{','.join(str(c) for c in M.target)}] <- [{','.join(str(b) for b in M.source)}]"
    )
    lines = [head]
    for (i, j) in sorted(M.entries):
        lines.append(f"({i + 1},{j + 1}) : {format_binary_form(M.entries[(i, j)])}")
    return "\n".join(lines) + "\n"


def parse_map(text: str, field: FieldSpec) -> GradedSheafMap:
    import re

    from .binform import parse_binary_form

    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MapError("empty map serialization")
    m = re.match(r"^map\s+(\d+)\s*x\s*(\d+)\s*:\s*\[([^\]]*)\]\s*<-\s*\[([^\]]*)\]$", lines[0])
    if not m:
        raise MapError(f"bad map header: {lines[0]!r}")
    nrows, ncols = int(m.group(1)), int(m.group(2))
    target = tuple(int(x) for x in m.group(3).split(",") if x.strip() != "")
    source = tuple(int(x) for x in m.group(4).split(",") if x.strip() != "")
    if len(target) != nrows or len(source) != ncols:
        raise MapError("map header dimensions disagree with twist lists")
    entries = {}
    for ln in lines[1:]:
        em = re.match(r"^\((\d+)\s*,\s*(\d+)\)\s*:\s*(.+)$", ln)
        if not em:
            raise MapError(f"bad entry line: {ln!r}")
        i, j = int(em.group(1)) - 1, int(em.group(2)) - 1
        entries[(i, j)] = parse_binary_form(em.group(3), field, degree=target[i] - source[j])
    return GradedSheafMap(field, source, target, entries)


def map_to_json(M: GradedSheafMap) -> dict:
    from .binform import format_binary_form

    return {
        "rows": M.nrows,
        "cols": M.ncols,
        "target": list(M.target),
        "source": list(M.source),
        "entries": [
            [i + 1, j + 1, format_binary_form(f)] for (i, j), f in sorted(M.entries.items())
        ],
    }


def map_from_json(obj: dict, field: FieldSpec) -> GradedSheafMap:
    from .binform import parse_binary_form

    target = tuple(int(x) for x in obj["target"])
    source = tuple(int(x) for x in obj["source"])
    entries = {}
    for i, j, text in obj["entries"]:
        entries[(int(i) - 1, int(j) - 1)] = parse_binary_form(
            text, field, degree=target[int(i) - 1] - source[int(j) - 1]
        )
    return GradedSheafMap(field, source, target, entries)
