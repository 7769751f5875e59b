import pytest

from itensor import make_interval, make_tensor


@pytest.fixture
def family_not_b():
    """Order-3 dim-2 interval that is not interval B: the lower-sum check at
    row 1, tail (2,2) comes out 4 against (n^(m-1)-1)*upper = 6."""
    lower = make_tensor(3, 2, [4, 0, 0, 1, 0, 1, 1, 4])
    upper = make_tensor(3, 2, [5, 1, 1, 2, 1, 2, 2, 5])
    return make_interval(lower, upper)


@pytest.fixture
def family_not_b_clamped(family_not_b):
    """Same family with the three offending upper entries clamped to 1,
    which makes every row condition pass (4 > 3 at the former witness)."""
    upper = make_tensor(3, 2, [5, 1, 1, 1, 1, 1, 1, 5])
    return make_interval(family_not_b.lower, upper)


@pytest.fixture
def family_double_b():
    """Order-3 dim-2 interval double B family: lower diag 6 / off-diag 0,
    upper diag 7 / off-diag 1."""
    lower = make_tensor(3, 2, [6, 0, 0, 0, 0, 0, 0, 6])
    upper = make_tensor(3, 2, [7, 1, 1, 1, 1, 1, 1, 7])
    return make_interval(lower, upper)
