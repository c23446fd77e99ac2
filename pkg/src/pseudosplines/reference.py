"""Published masks and support table, transcribed in print layout.

Rows run from the top (largest z2 exponent) down; columns from the smallest
z1 exponent to the largest.  Every matrix is centered on the exponent (0, 0).
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import Scalar, as_fraction
from .mask import MaskMatrix

__all__ = [
    "CUBIC_EXAMPLE_MASK",
    "PRINTED_MASKS",
    "SUPPORT_TABLE",
    "example_amu_mask",
]

CUBIC_EXAMPLE_MASK = MaskMatrix.centered(
    [
        [0, 0, -1, -2, -1, 0, 0],
        [0, -2, 0, 4, 0, -2, 0],
        [-1, 0, 10, 18, 10, 0, -1],
        [-2, 4, 18, 24, 18, 4, -2],
        [-1, 0, 10, 18, 10, 0, -1],
        [0, -2, 0, 4, 0, -2, 0],
        [0, 0, -1, -2, -1, 0, 0],
    ],
    32,
)


def example_amu_mask(mu: Scalar) -> dict:
    """Coefficient map of the printed one-parameter mask ``A_mu`` (entries over 32)."""
    mu = as_fraction(mu)
    rows = [
        [0, 0, -1, -2, -1, 0, 0],
        [0, mu, 0, -2 * mu, 0, mu, 0],
        [-1, 0, 10, 18, 10, 0, -1],
        [-2, -2 * mu, 18, 32 + 4 * mu, 18, -2 * mu, -2],
        [-1, 0, 10, 18, 10, 0, -1],
        [0, mu, 0, -2 * mu, 0, mu, 0],
        [0, 0, -1, -2, -1, 0, 0],
    ]
    return {
        (c - 3, 3 - r): Fraction(v) / 32
        for r, row in enumerate(rows)
        for c, v in enumerate(row)
        if v
    }


# (n, l) -> mask A_n^l
PRINTED_MASKS: dict[tuple[int, int], MaskMatrix] = {
    (1, 0): MaskMatrix.centered(
        [
            [1, 2, 1],
            [2, 4, 2],
            [1, 2, 1],
        ],
        4,
    ),
    (2, 0): MaskMatrix.centered(
        [
            [0, 1, 2, 1, 0],
            [1, 4, 6, 4, 1],
            [2, 6, 8, 6, 2],
            [1, 4, 6, 4, 1],
            [0, 1, 2, 1, 0],
        ],
        16,
    ),
    (2, 1): MaskMatrix.centered(
        [
            [0, 0, -1, -2, -1, 0, 0],
            [0, 0, 0, 0, 0, 0, 0],
            [-1, 0, 10, 18, 10, 0, -1],
            [-2, 0, 18, 32, 18, 0, -2],
            [-1, 0, 10, 18, 10, 0, -1],
            [0, 0, 0, 0, 0, 0, 0],
            [0, 0, -1, -2, -1, 0, 0],
        ],
        32,
    ),
    (3, 0): MaskMatrix.centered(
        [
            [0, 1, 4, 6, 4, 1, 0],
            [1, 8, 23, 32, 23, 8, 1],
            [4, 23, 56, 74, 56, 23, 4],
            [6, 32, 74, 96, 74, 32, 6],
            [4, 23, 56, 74, 56, 23, 4],
            [1, 8, 23, 32, 23, 8, 1],
            [0, 1, 4, 6, 4, 1, 0],
        ],
        256,
    ),
    (3, 1): MaskMatrix.centered(
        [
            [0, 0, 0, -3, -6, -3, 0, 0, 0],
            [0, 0, -2, -8, -12, -8, -2, 0, 0],
            [0, -2, -4, 14, 32, 14, -4, -2, 0],
            [-3, -8, 14, 80, 122, 80, 14, -8, -3],
            [-6, -12, 32, 122, 168, 122, 32, -12, -6],
            [-3, -8, 14, 80, 122, 80, 14, -8, -3],
            [0, -2, -4, 14, 32, 14, -4, -2, 0],
            [0, 0, -2, -8, -12, -8, -2, 0, 0],
            [0, 0, 0, -3, -6, -3, 0, 0, 0],
        ],
        256,
    ),
    (3, 2): MaskMatrix.centered(
        [
            [0, 0, 0, 0, 3, 6, 3, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 2, 0, -27, -50, -27, 0, 2, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [3, 0, -27, 0, 174, 300, 174, 0, -27, 0, 3],
            [6, 6, -50, 0, 300, 512, 300, 0, -50, 6, 6],
            [3, 0, -27, 0, 174, 300, 174, 0, -27, 0, 3],
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 2, 0, -27, -50, -27, 0, 2, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 3, 6, 3, 0, 0, 0, 0],
        ],
        512,
    ),
}

# (n, l) -> (full width, corner cut) of the support octagon, for n <= 5
SUPPORT_TABLE: dict[tuple[int, int], tuple[int, int]] = {
    (1, 0): (3, 0),
    (2, 0): (5, 1), (2, 1): (7, 2),
    (3, 0): (7, 1), (3, 1): (9, 3), (3, 2): (11, 4),
    (4, 0): (9, 2), (4, 1): (11, 3), (4, 2): (13, 5), (4, 3): (15, 6),
    (5, 0): (11, 2), (5, 1): (13, 4), (5, 2): (15, 5), (5, 3): (17, 7), (5, 4): (19, 8),
}
