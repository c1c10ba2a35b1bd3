import pytest

from gsig.class_number import (ClassNumberError, h_minus, h_minus_bernoulli, h_minus_maillet,
                               primitive_root)

# relative class numbers of Q(zeta_p), as tabulated in the literature
KNOWN = {3: 1, 5: 1, 7: 1, 11: 1, 13: 1, 17: 1, 19: 1, 23: 3, 29: 8, 31: 9, 37: 37, 41: 121,
         43: 211, 47: 695, 53: 4889, 59: 41241, 61: 76301, 67: 853513, 71: 3882809,
         73: 11957417, 79: 100146415, 83: 838216959, 89: 13379363737, 97: 411322824001}


@pytest.mark.parametrize("p", sorted(KNOWN))
def test_both_formulas_match_table(p):
    assert h_minus_maillet(p) == KNOWN[p]
    assert h_minus_bernoulli(p) == KNOWN[p]


def test_combined_result():
    r = h_minus(23)
    assert r.h_minus == 3 and r.methods == ("maillet", "bernoulli")
    assert r.to_json() == {"p": 23, "h_minus": 3, "methods": ["maillet", "bernoulli"]}


def test_primitive_roots():
    assert [primitive_root(p) for p in (3, 5, 7, 11, 13, 23, 41)] == [2, 2, 3, 2, 2, 5, 6]


@pytest.mark.parametrize("bad", [2, 9, 15, 1, 211])
def test_rejects_bad_input(bad):
    with pytest.raises(ClassNumberError):
        h_minus(bad)
