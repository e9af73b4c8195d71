"""Tensors from the necessity constructions, built from their -1 entries."""

from coposit.tensor import SymTensor


def pm1_tensor(negative):
    """4th-order 3-dim tensor with -1 at the given keys and +1 everywhere else."""
    neg = {tuple(sorted(k)) for k in negative}
    return SymTensor.from_function(4, 3, lambda k: -1 if k in neg else 1)


ALL_IIIJ = [(1, 1, 1, 2), (1, 1, 1, 3), (1, 2, 2, 2), (2, 2, 2, 3), (1, 3, 3, 3), (2, 3, 3, 3)]
ALL_MIXED = [(1, 1, 2, 3), (1, 2, 2, 3), (1, 2, 3, 3)]
ALL_IIJJ = [(1, 1, 2, 2), (1, 1, 3, 3), (2, 2, 3, 3)]


def two_mixed_negative_tensor():
    """t1133 = t1233 = 1, t1122 = t2233 = t1223 = t1123 = -1, t_iiii = t_iiij = 1."""
    return pm1_tensor([(1, 1, 2, 2), (2, 2, 3, 3), (1, 2, 2, 3), (1, 1, 2, 3)])


def mixed_and_t2233_negative_tensor():
    """All mixed entries -1 and t2233 = -1: value -3 at (1,1,1)."""
    return pm1_tensor(ALL_MIXED + [(2, 2, 3, 3)])


def iijj_and_two_mixed_negative_tensor():
    """All t_iijj = -1 and two mixed entries -1: value -3 at (1,1,1)."""
    return pm1_tensor(ALL_IIJJ + [(1, 1, 2, 3), (1, 2, 2, 3)])


def iiij_and_t1123_negative_tensor():
    """All t_iiij = -1, t1123 = -1, other mixed 1: value -87 at (3,1,1)."""
    return pm1_tensor(ALL_IIIJ + [(1, 1, 2, 3)])


def six_negative_a_tensor():
    """t1113 = t1123 = t1233 = 1, the other six free entries -1: value -79 at (1,3,1)."""
    return pm1_tensor([(1, 2, 2, 3), (1, 2, 2, 2), (2, 2, 2, 3), (1, 3, 3, 3), (1, 1, 1, 2), (2, 3, 3, 3)])


def five_iiij_negative_tensor():
    """Five of the t_iiij are -1 (t1112 = 1), t1123 = t1223 = -1: value -7 at (1,1,1)."""
    return pm1_tensor(ALL_IIIJ[1:] + [(1, 1, 2, 3), (1, 2, 2, 3)])


def six_negative_b_tensor():
    """t1333 = t2333 = t1123 = 1, the other six free entries -1: value -127 at (1,3,1)."""
    return pm1_tensor([(1, 1, 1, 3), (1, 1, 1, 2), (2, 2, 2, 3), (1, 2, 2, 2), (1, 2, 3, 3), (1, 2, 2, 3)])


def t1112_and_mixed_negative_tensor():
    """t1112 = -1, other t_iiij = 1, all mixed -1: value -159 at (4,3,2)."""
    return pm1_tensor([(1, 1, 1, 2)] + ALL_MIXED)


def all_iiij_negative_tensor():
    """All t_iiij = -1, mixed entries 1, t_iijj = 1: minimum 0 on the simplex."""
    return pm1_tensor(ALL_IIIJ)
