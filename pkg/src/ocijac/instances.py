"""Named and random configurations used by the test-suite and benchmarks."""

from __future__ import annotations

import random
from math import comb

from .graded import Configuration
from .linalg import DEFAULT_PRIME, QQ, FieldSpec
from .poly import parse_polynomial, random_homogeneous

FP = FieldSpec.prime_field(DEFAULT_PRIME)

# generic linear forms, kept fixed so the named examples are reproducible
LINES = ["X0 + 2*X1 + 3*X2", "5*X0 - X1 + 7*X2", "X0 - 4*X1 + X2"]
PLANES = ["X0 + 2*X1 + 3*X2 - X3", "5*X0 - X1 + 7*X2 + X3", "X0 - 4*X1 + X2 + 2*X3"]


def make(n: int, F, G=(), field: FieldSpec = QQ) -> Configuration:
    return Configuration(
        n,
        tuple(parse_polynomial(t, n + 1, field) for t in F),
        tuple(parse_polynomial(t, n + 1, field) for t in G),
        field,
    )


def fermat(n: int, d: int, field: FieldSpec = QQ) -> str:
    return " + ".join(f"X{i}^{d}" for i in range(n + 1))


def plane_curve(d: int, field: FieldSpec = QQ, lines: int = 0) -> Configuration:
    return make(2, [fermat(2, d)], LINES[:lines], field)


def k3(field: FieldSpec = QQ) -> Configuration:
    return make(3, [fermat(3, 4)], (), field)


def quintic(field: FieldSpec = FP) -> Configuration:
    return make(4, [fermat(4, 5)], (), field)


def elliptic(lines: int = 0, field: FieldSpec = QQ) -> Configuration:
    return make(2, [fermat(2, 3)], LINES[:lines], field)


def quartic_curve(lines: int = 0, field: FieldSpec = QQ) -> Configuration:
    return make(2, ["X0^4 + X1^4 + X2^4 + X0*X1*X2^2"], LINES[:lines], field)


def quartic_surface(planes: int = 0, field: FieldSpec = QQ) -> Configuration:
    return make(3, ["X0^4 + X1^4 + X2^4 + X3^4 + X0*X1*X2*X3"], PLANES[:planes], field)


def cubic_line(field: FieldSpec = QQ) -> Configuration:
    """Fermat cubic curve with the line X0 + X1 + X2."""
    return make(2, [fermat(2, 3)], ["X0 + X1 + X2"], field)


def singular_cubic(field: FieldSpec = QQ) -> Configuration:
    """Cuspidal cubic X1^2 X2 = X0^3."""
    return make(2, ["X1^2*X2 - X0^3"], (), field)


def random_config(
    rng: random.Random, n: int, d, e=(), field: FieldSpec = FP, coeff_range: int = 30
) -> Configuration:
    F = tuple(random_homogeneous(rng, n + 1, di, field, coeff_range) for di in d)
    G = tuple(random_homogeneous(rng, n + 1, ej, field, coeff_range) for ej in e)
    return Configuration(n, F, G, field)


def _ambient_dim(n: int, weights, q: int, ell: int) -> int:
    """dim A_q(l) from the shape alone (mirrors graded.dim_A)."""
    from .graded import _compositions

    total = 0
    for ab in _compositions(q, len(weights)):
        deg = sum(x * y for x, y in zip(ab, weights)) + ell
        if deg >= 0:
            total += comb(n + deg, n)
    return total


# (n, d, e) shapes with n <= 4, d_i <= 4, e_j <= 2
SHAPES = [
    (2, (3,), ()), (2, (4,), ()), (2, (3,), (1,)), (2, (3,), (2,)), (2, (4,), (1,)),
    (2, (2,), (1,)), (2, (2,), (2,)), (2, (3,), (1, 1)), (2, (4,), (1, 1)), (2, (3,), (1, 2)),
    (2, (2,), (1, 1, 1)), (2, (4,), (2,)), (2, (3,), (1, 1, 1)), (2, (4,), (1, 1, 1)),
    (3, (2,), ()), (3, (3,), ()), (3, (4,), ()), (3, (2,), (1,)), (3, (3,), (1,)),
    (3, (2,), (2,)), (3, (3,), (2,)), (3, (2,), (1, 1)), (3, (3,), (1, 1)), (3, (4,), (1,)),
    (3, (2, 2), ()), (3, (2, 3), ()), (3, (2, 2), (1,)), (3, (2,), (1, 1, 1)),
    (4, (2,), ()), (4, (3,), ()), (4, (2, 2), ()), (4, (2,), (1,)), (4, (2, 2), (1,)),
    (4, (2, 2, 2), ()), (4, (2,), (1, 1)),
]


def shape_trace_dim_A(shape) -> int:
    n, d, e = shape
    return _ambient_dim(n, d + e, n - len(d), 2 * (sum(d) - n - 1) + sum(e))


def desk_shapes(cap: int = 400):
    """Shapes whose socle piece fits in ``cap`` ambient columns."""
    return [s for s in SHAPES if shape_trace_dim_A(s) <= cap]


def random_smooth_family(count: int, seed: int = 0, cap: int = 400, field: FieldSpec = FP):
    """``count`` random configurations cycling through the desk shapes.
    Generic coefficients make them smooth and transversal with
    overwhelming probability; callers still check the diagnostic."""
    rng = random.Random(seed)
    shapes = desk_shapes(cap)
    out = []
    for i in range(count):
        n, d, e = shapes[i % len(shapes)]
        out.append(random_config(rng, n, d, e, field))
    return out
