"""Ortak tensör fixture'ları"""

from fractions import Fraction

import numpy as np
import pytest

from src.tensors import SymTensor3


def pm1(**entries) -> SymTensor3:
    """Köşegen 1, a122 = a133 = 1; diğer girdiler verilmezse 0"""
    mapping = {(1, 1, 1): 1, (2, 2, 2): 1, (3, 3, 3): 1, (1, 2, 2): 1, (1, 3, 3): 1}
    for name, value in entries.items():
        mapping[tuple(int(c) for c in name[1:])] = value
    return SymTensor3.from_mapping(mapping)


def random_tensor(rng: np.random.Generator, low: int = -4, high: int = 4) -> SymTensor3:
    """Girdiler k/6, k ∈ [6·low, 6·high]"""
    return SymTensor3.from_entries(Fraction(int(k), 6) for k in rng.integers(6 * low, 6 * high + 1, size=10))


def random_point(rng: np.random.Generator, dim: int = 3):
    return tuple(Fraction(int(p), int(q)) for p, q in zip(rng.integers(0, 20, size=dim), rng.integers(1, 9, size=dim)))


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240601))


@pytest.fixture
def minimum_tensor():
    """Minimumu (4/7, 1/7, 2/7) noktasında 1/49 olan tensör"""
    return pm1(a123=-1, a112=0, a113=-1, a223=1, a233=1)


@pytest.fixture
def two_one_one_tensor():
    """(2,1,1) noktasında -8"""
    return pm1(a123=-1, a112=-1, a113=-1, a223=1, a233=1)


@pytest.fixture
def ones_tensor():
    """(x1 + x2 + x3)³"""
    return SymTensor3.from_entries([1] * 10)


@pytest.fixture
def diagonal_tensor():
    return SymTensor3(a111=1, a222=1, a333=1)
