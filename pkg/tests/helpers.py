"""Shared generators for the test suite."""

from rncsplit.binform import BinaryForm, parse_binary_form
from rncsplit.fields import FieldSpec, RATIONALS
from rncsplit.multipoly import IdealCombination, MultiPoly
from rncsplit.sheafmap import GradedSheafMap, full_rank_everywhere

GF = FieldSpec(32003)


def from_rows(rows, source, target, field=RATIONALS):
    """Build a graded map from a list-of-lists of binary-form strings."""
    entries = {}
    for i, row in enumerate(rows):
        for j, text in enumerate(row):
            if text in ("0", "", None):
                continue
            entries[(i, j)] = parse_binary_form(text, field, degree=target[i] - source[j])
    return GradedSheafMap(field, tuple(source), tuple(target), entries)


def random_poly(rnd, context, degree):
    terms = {}
    for _ in range(rnd.randrange(1, 5)):
        exp = [0] * context.nvars
        for _ in range(degree):
            exp[rnd.randrange(0, context.nvars)] += 1
        terms[tuple(exp)] = context.field.from_int(rnd.randrange(-9, 10))
    return MultiPoly(context, degree, terms)


def random_combination(rnd, context, linear_prob=0.6):
    quadric = {
        (i, i + 1): random_poly(rnd, context, context.d - 2) for i in range(1, context.e)
    }
    linear = {}
    for k in range(context.e + 1, context.n + 1):
        if rnd.random() < linear_prob:
            linear[k] = random_poly(rnd, context, context.d - 1)
    return IdealCombination(context, quadric, linear)


def random_surjective_map(rnd, field=GF, max_rank=6, spread=8):
    """Random graded map of full rank at every point (surjective onto the
    target twist-sum), retrying the generic draw until the certificate holds."""
    while True:
        nrows = rnd.randrange(1, 3)
        ncols = rnd.randrange(nrows + 1, max_rank + 1)
        base = rnd.randrange(0, 3)
        source = tuple(
            sorted((base + rnd.randrange(0, spread + 1) for _ in range(ncols)), reverse=True)
        )
        shift = rnd.randrange(1, 4)
        target = tuple(max(source) + shift + rnd.randrange(0, 2) for _ in range(nrows))
        entries = {}
        for i in range(nrows):
            for j in range(ncols):
                deg = target[i] - source[j]
                coeffs = [field.from_int(rnd.randrange(0, field.p)) for _ in range(deg + 1)]
                f = BinaryForm(field, deg, tuple(coeffs))
                if not f.is_zero():
                    entries[(i, j)] = f
        M = GradedSheafMap(field, source, target, entries)
        if full_rank_everywhere(M):
            return M
