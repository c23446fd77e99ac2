"""Consistency of the transcribed reference data with itself and with the constructors."""

from fractions import Fraction

import pytest

from pseudosplines.analysis import check_interpolatory, check_symmetry
from pseudosplines.reference import PRINTED_MASKS, SUPPORT_TABLE
from pseudosplines.symbols import make_fourdir_box, make_interpolatory, make_pseudospline

BUILDERS = {
    (1, 0): lambda: make_fourdir_box(1),
    (2, 0): lambda: make_fourdir_box(2),
    (2, 1): lambda: make_pseudospline(2, 1),
    (3, 0): lambda: make_fourdir_box(3),
    (3, 1): lambda: make_pseudospline(3, 1),
}


@pytest.mark.parametrize("key", sorted(BUILDERS))
def test_printed_masks_match(key):
    assert PRINTED_MASKS[key].to_symbol() == BUILDERS[key]().poly


@pytest.mark.parametrize("key", sorted(BUILDERS))
def test_printed_masks_are_symmetric(key):
    assert check_symmetry(PRINTED_MASKS[key].to_symbol())


def test_printed_a32_erratum():
    # the printed A_3^2 carries 6/512 at (+-4, 0) but 0 at (0, +-4)
    printed = PRINTED_MASKS[3, 2].to_symbol()
    built = make_interpolatory(3).poly
    diff = printed - built
    assert diff.terms == {(4, 0): Fraction(6, 512), (-4, 0): Fraction(6, 512)}
    assert printed.coefficient((0, 4)) == 0
    assert not check_symmetry(printed)
    # an even-even entry off the origin contradicts the interpolation it is drawn to illustrate
    assert not check_interpolatory(printed)
    assert check_symmetry(built) and check_interpolatory(built)
    assert built == make_pseudospline(3, 2).poly


def test_support_table_shape():
    assert sorted(SUPPORT_TABLE) == [(n, l) for n in range(1, 6) for l in range(n)]
