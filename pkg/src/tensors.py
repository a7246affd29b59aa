"""
Tensors - Küçük simetrik tensörler ve matrisler
Tüm girdiler ve değerlendirmeler tam rasyonel (Fraction) aritmetikle yapılır,
sadece normalize() küp kök için float kullanır.
"""

import logging
import numbers
from dataclasses import dataclass, fields
from fractions import Fraction
from itertools import permutations, product
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[int, str, Fraction]
Index = Tuple[int, ...]

# Unique entry order: (a111, a222, a333, a112, a122, a113, a133, a223, a233, a123)
TENSOR3_INDICES: Tuple[Index, ...] = (
    (1, 1, 1), (2, 2, 2), (3, 3, 3),
    (1, 1, 2), (1, 2, 2), (1, 1, 3), (1, 3, 3),
    (2, 2, 3), (2, 3, 3), (1, 2, 3),
)
TENSOR2_INDICES: Tuple[Index, ...] = ((1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2))
MATRIX3_INDICES: Tuple[Index, ...] = ((1, 1), (2, 2), (3, 3), (1, 2), (1, 3), (2, 3))


class CopositivityError(Exception):
    """Toolkit hatası"""
    def __init__(self, message: str, error_code: Optional[str] = None):
        self.message = message
        self.error_code = error_code
        super().__init__(message)


class ArityError(CopositivityError):
    """Yanlış koordinat sayısı"""
    def __init__(self, message: str):
        super().__init__(message, "arity")


class DomainError(CopositivityError):
    """Operasyonun tanım kümesi dışında girdi"""
    def __init__(self, message: str):
        super().__init__(message, "domain")


class SymmetryError(CopositivityError):
    """Tam dizi simetrik değil"""
    def __init__(self, message: str):
        super().__init__(message, "symmetry")


def to_rational(value: Any) -> Fraction:
    """
    int, Fraction veya "p/q" string'i Fraction'a çevir.
    Float kabul edilmez (ikili gösterim belirsizliği).
    """
    if isinstance(value, bool):
        raise TypeError("Boolean is not a rational value")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"Expected int, Fraction or 'p/q' string, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Fraction → "p/q" (tam sayılar için "p")"""
    return str(value)


def multiplicity(index: Index) -> int:
    """Sıralı indeksin tam dizide kaç kez geçtiği (1, 3 veya 6)"""
    return len(set(permutations(index)))


def exponent(index: Index, dim: int) -> Tuple[int, ...]:
    """(1, 1, 3) → (2, 0, 1)"""
    return tuple(index.count(i) for i in range(1, dim + 1))


def index_from_exponent(exp: Sequence[int]) -> Index:
    """(2, 0, 1) → (1, 1, 3)"""
    return tuple(i + 1 for i, count in enumerate(exp) for _ in range(count))


def _entry_name(prefix: str, index: Index) -> str:
    return prefix + "".join(str(i) for i in index)


@dataclass(frozen=True)
class EvalPoint:
    """x, x̂ veya y vektörü (2 ya da 3 rasyonel koordinat)"""
    coordinates: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(to_rational(c) for c in self.coordinates)
        if len(coords) not in (2, 3):
            raise ArityError(f"Point must have 2 or 3 coordinates, got {len(coords)}")
        object.__setattr__(self, "coordinates", coords)

    @classmethod
    def of(cls, *values: RationalLike) -> "EvalPoint":
        return cls(tuple(values))

    @classmethod
    def unit(cls, i: int, dim: int = 3) -> "EvalPoint":
        """e_i (1 tabanlı)"""
        return cls(tuple(1 if k == i else 0 for k in range(1, dim + 1)))

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    def __getitem__(self, i: int) -> Fraction:
        return self.coordinates[i]

    def __iter__(self):
        return iter(self.coordinates)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coordinates)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)

    def scaled(self, factor: RationalLike) -> "EvalPoint":
        factor = to_rational(factor)
        return EvalPoint(tuple(factor * c for c in self.coordinates))

    def to_simplex(self) -> "EvalPoint":
        """Koordinat toplamı 1 olacak şekilde ölçekle"""
        total = sum(self.coordinates)
        if total <= 0:
            raise DomainError("Cannot project a point with nonpositive coordinate sum onto the simplex")
        return EvalPoint(tuple(c / total for c in self.coordinates))

    def permuted(self, perm: Sequence[int]) -> "EvalPoint":
        """x'_k = x_{perm[k]}"""
        return EvalPoint(tuple(self.coordinates[p - 1] for p in perm))

    def embedded(self, drop: int) -> "EvalPoint":
        """2 boyutlu noktayı `drop` koordinatı 0 olacak şekilde 3 boyuta göm"""
        if self.dim != 2:
            raise ArityError("Only 2-coordinate points can be embedded")
        if drop not in (1, 2, 3):
            raise DomainError(f"Invalid face index: {drop}")
        coords = list(self.coordinates)
        coords.insert(drop - 1, Fraction(0))
        return EvalPoint(tuple(coords))

    def as_strings(self) -> List[str]:
        return [format_rational(c) for c in self.coordinates]

    def __str__(self) -> str:
        return "(" + ", ".join(self.as_strings()) + ")"


class _SymmetricArray:
    """Tekil-girdi (unique entry) saklamanın ortak kısmı"""

    INDICES: Tuple[Index, ...] = ()
    DIM: int = 0
    PREFIX: str = "a"

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, to_rational(getattr(self, f.name)))

    @classmethod
    def from_entries(cls, values: Sequence[RationalLike]):
        """Değerleri INDICES sırasıyla al"""
        values = tuple(values)
        if len(values) != len(cls.INDICES):
            raise ArityError(f"{cls.__name__} needs {len(cls.INDICES)} entries, got {len(values)}")
        return cls(*values)

    @classmethod
    def from_mapping(cls, mapping: Dict[Index, RationalLike]):
        """Eksik girdiler 0"""
        return cls(*(mapping.get(index, 0) for index in cls.INDICES))

    @classmethod
    def from_full_array(cls, array: Any):
        """
        Tam diziden oluştur; simetri tam olarak doğrulanır.

        Args:
            array: İç içe liste, array[i][j][k] (0 tabanlı)
        """
        order = len(cls.INDICES[0])
        seen: Dict[Index, Fraction] = {}
        for position in product(range(cls.DIM), repeat=order):
            try:
                raw = array
                for p in position:
                    if len(raw) != cls.DIM:
                        raise ArityError(f"Full array must have shape {(cls.DIM,) * order}")
                    raw = raw[p]
            except TypeError:
                raise ArityError(f"Full array must have shape {(cls.DIM,) * order}")
            value = to_rational(raw)
            key = tuple(sorted(p + 1 for p in position))
            if key in seen and seen[key] != value:
                label = "".join(str(p + 1) for p in position)
                raise SymmetryError(
                    f"Entry {label} = {value} differs from {_entry_name(cls.PREFIX, key)} = {seen[key]}"
                )
            seen[key] = value
        return cls.from_mapping(seen)

    def to_full_array(self) -> list:
        order = len(self.INDICES[0])

        def build(prefix: Tuple[int, ...]):
            if len(prefix) == order:
                return self.entry(*prefix)
            return [build(prefix + (i,)) for i in range(1, self.DIM + 1)]

        return build(())

    def entry(self, *index: int) -> Fraction:
        """Herhangi bir sıradaki indeks için girdi (1 tabanlı)"""
        if len(index) != len(self.INDICES[0]) or any(i < 1 or i > self.DIM for i in index):
            raise DomainError(f"Invalid index {index} for {type(self).__name__}")
        return getattr(self, _entry_name(self.PREFIX, tuple(sorted(index))))

    def entries(self) -> Tuple[Fraction, ...]:
        return tuple(getattr(self, _entry_name(self.PREFIX, index)) for index in self.INDICES)

    def items(self) -> List[Tuple[Index, Fraction]]:
        return list(zip(self.INDICES, self.entries()))

    def is_pm1(self) -> bool:
        """Tüm girdiler {-1, 0, 1} içinde mi?"""
        return all(v in (-1, 0, 1) for v in self.entries())

    def is_unit_valued(self) -> bool:
        """Tüm girdiler {-1, 1} içinde mi?"""
        return all(v in (-1, 1) for v in self.entries())


@dataclass(frozen=True)
class SymTensor2(_SymmetricArray):
    """S_{3,2} elemanı: 4 tekil girdi"""
    a111: Fraction = Fraction(0)
    a112: Fraction = Fraction(0)
    a122: Fraction = Fraction(0)
    a222: Fraction = Fraction(0)

    INDICES = TENSOR2_INDICES
    DIM = 2


@dataclass(frozen=True)
class SymTensor3(_SymmetricArray):
    """S_{3,3} elemanı: 10 tekil girdi"""
    a111: Fraction = Fraction(0)
    a222: Fraction = Fraction(0)
    a333: Fraction = Fraction(0)
    a112: Fraction = Fraction(0)
    a122: Fraction = Fraction(0)
    a113: Fraction = Fraction(0)
    a133: Fraction = Fraction(0)
    a223: Fraction = Fraction(0)
    a233: Fraction = Fraction(0)
    a123: Fraction = Fraction(0)

    INDICES = TENSOR3_INDICES
    DIM = 3

    def permuted(self, perm: Sequence[int]) -> "SymTensor3":
        """
        Koordinatları yeniden etiketle: a'_{ijk} = a_{perm[i] perm[j] perm[k]}.
        eval_form3(t.permuted(p), x.permuted(p)) == eval_form3(t, x)
        """
        if sorted(perm) != [1, 2, 3]:
            raise DomainError(f"Not a permutation of (1, 2, 3): {tuple(perm)}")
        return SymTensor3.from_mapping({
            index: self.entry(*(perm[i - 1] for i in index)) for index in TENSOR3_INDICES
        })

    def diagonal(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.a111, self.a222, self.a333)


@dataclass(frozen=True)
class SymMatrix3(_SymmetricArray):
    """Simetrik 3x3 matris: 6 tekil girdi"""
    m11: Fraction = Fraction(0)
    m22: Fraction = Fraction(0)
    m33: Fraction = Fraction(0)
    m12: Fraction = Fraction(0)
    m13: Fraction = Fraction(0)
    m23: Fraction = Fraction(0)

    INDICES = MATRIX3_INDICES
    DIM = 3
    PREFIX = "m"

    @classmethod
    def identity(cls) -> "SymMatrix3":
        return cls(1, 1, 1, 0, 0, 0)


@dataclass(frozen=True)
class Decomposition:
    """A x³ = x1 (xᵀ M x) + A' x̂³"""
    m: SymMatrix3
    face: SymTensor2


@dataclass(frozen=True)
class NormalizedTensor:
    """y_i = s_i x_i dönüşümünden sonra köşegeni 1 olan katsayılar"""
    b112: float
    b122: float
    b113: float
    b133: float
    b223: float
    b233: float
    b123: float
    scales: Tuple[float, float, float]

    def entry(self, *index: int) -> float:
        key = tuple(sorted(index))
        if len(set(key)) == 1:
            return 1.0
        return getattr(self, _entry_name("b", key))


def _as_point(x: Any, dim: int) -> EvalPoint:
    point = x if isinstance(x, EvalPoint) else EvalPoint(tuple(x))
    if point.dim != dim:
        raise ArityError(f"Expected {dim} coordinates, got {point.dim}")
    return point


def eval_form2(t: SymTensor2, x: Any) -> Fraction:
    """a111 x1³ + 3a112 x1²x2 + 3a122 x1x2² + a222 x2³"""
    x1, x2 = _as_point(x, 2)
    return (t.a111 * x1 ** 3 + 3 * t.a112 * x1 ** 2 * x2
            + 3 * t.a122 * x1 * x2 ** 2 + t.a222 * x2 ** 3)


def eval_form3(t: SymTensor3, x: Any) -> Fraction:
    """Üçlü kübik form A x³"""
    x1, x2, x3 = _as_point(x, 3)
    return (t.a111 * x1 ** 3 + t.a222 * x2 ** 3 + t.a333 * x3 ** 3
            + 3 * t.a112 * x1 ** 2 * x2 + 3 * t.a122 * x1 * x2 ** 2
            + 3 * t.a113 * x1 ** 2 * x3 + 3 * t.a133 * x1 * x3 ** 2
            + 3 * t.a223 * x2 ** 2 * x3 + 3 * t.a233 * x2 * x3 ** 2
            + 6 * t.a123 * x1 * x2 * x3)


def eval_quadratic(m: SymMatrix3, x: Any) -> Fraction:
    """xᵀ M x"""
    x1, x2, x3 = _as_point(x, 3)
    return (m.m11 * x1 ** 2 + m.m22 * x2 ** 2 + m.m33 * x3 ** 2
            + 2 * m.m12 * x1 * x2 + 2 * m.m13 * x1 * x3 + 2 * m.m23 * x2 * x3)


def decompose(t: SymTensor3) -> Decomposition:
    """x1'i ayır: M matrisi ve (x2, x3) üzerindeki A' yüz tensörü"""
    half = Fraction(3, 2)
    m = SymMatrix3(
        m11=t.a111,
        m22=3 * t.a122,
        m33=3 * t.a133,
        m12=half * t.a112,
        m13=half * t.a113,
        m23=3 * t.a123,
    )
    face = SymTensor2(a111=t.a222, a112=t.a223, a122=t.a233, a222=t.a333)
    return Decomposition(m=m, face=face)


def principal_face(t: SymTensor3, drop: int) -> SymTensor2:
    """`drop` koordinatını silerek elde edilen 2 boyutlu alt tensör"""
    if drop not in (1, 2, 3):
        raise DomainError(f"Invalid face index: {drop}")
    p, q = (i for i in (1, 2, 3) if i != drop)
    return SymTensor2(
        a111=t.entry(p, p, p),
        a112=t.entry(p, p, q),
        a122=t.entry(p, q, q),
        a222=t.entry(q, q, q),
    )


def normalize(t: SymTensor3) -> NormalizedTensor:
    """
    b_ijk = a_ijk / (s_i s_j s_k), s_i = a_iii^(1/3).
    Küp kökler float; eşik karşılaştırmaları çağıran tarafta epsilon ile yapılır.
    """
    if any(d <= 0 for d in t.diagonal()):
        raise DomainError(f"Normalization needs a positive diagonal, got {[str(d) for d in t.diagonal()]}")

    scales = tuple(float(s) for s in np.cbrt(np.array([float(d) for d in t.diagonal()])))

    def b(i: int, j: int, k: int) -> float:
        return float(t.entry(i, j, k)) / (scales[i - 1] * scales[j - 1] * scales[k - 1])

    return NormalizedTensor(
        b112=b(1, 1, 2),
        b122=b(1, 2, 2),
        b113=b(1, 1, 3),
        b133=b(1, 3, 3),
        b223=b(2, 2, 3),
        b233=b(2, 3, 3),
        b123=b(1, 2, 3),
        scales=scales,
    )
