"""
Oracle - Analitik kriterlerden bağımsız kesin karar
Tam rasyonel grid taraması (negatif tanık) + Bernstein alt bölme (pozitiflik sertifikası)
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .tensors import (
    MATRIX3_INDICES, TENSOR2_INDICES, TENSOR3_INDICES,
    DomainError, EvalPoint, Index, SymMatrix3, SymTensor2, SymTensor3,
    eval_form2, exponent, multiplicity,
)

logger = logging.getLogger(__name__)

DEFAULT_DENOMINATOR = 84
DEFAULT_MAX_DEPTH = 30
DEFAULT_GRID_DENOMINATORS = (7, 12)

# int64 güvenli üst sınır
_INT64_LIMIT = 2 ** 62


class OracleStatus(str, Enum):
    POSITIVE_CERTIFIED = "PositiveCertified"
    NONPOSITIVE_WITNESS = "NonpositiveWitness"
    INCONCLUSIVE = "Inconclusive"


# Birleştirme önceliği: NonpositiveWitness > Inconclusive > PositiveCertified
STATUS_PRECEDENCE = {
    OracleStatus.POSITIVE_CERTIFIED: 0,
    OracleStatus.INCONCLUSIVE: 1,
    OracleStatus.NONPOSITIVE_WITNESS: 2,
}


@dataclass(frozen=True)
class SubdivisionStats:
    """Pozitiflik sertifikasının özeti"""
    leaf_count: int = 0
    max_depth: int = 0
    node_count: int = 0


@dataclass(frozen=True)
class OracleResult:
    status: OracleStatus
    witness: Optional[EvalPoint] = None
    witness_value: Optional[Fraction] = None
    certificate: Optional[SubdivisionStats] = None
    min_estimate: Optional[Fraction] = None

    @property
    def is_positive(self) -> bool:
        return self.status == OracleStatus.POSITIVE_CERTIFIED

    @property
    def is_nonpositive(self) -> bool:
        return self.status == OracleStatus.NONPOSITIVE_WITNESS


def _stronger(first: OracleStatus, second: OracleStatus) -> OracleStatus:
    return max(first, second, key=STATUS_PRECEDENCE.__getitem__)


def _determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """2x2 veya 3x3 tam determinant"""
    if len(rows) == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


@dataclass(frozen=True)
class Simplex:
    """Standart simpleks içinde rasyonel köşeli simpleks"""
    vertices: Tuple[EvalPoint, ...]

    def __post_init__(self):
        dim = len(self.vertices)
        for vertex in self.vertices:
            if vertex.dim != dim:
                raise DomainError(f"Simplex with {dim} vertices needs {dim}-coordinate vertices")
            if not vertex.is_nonnegative() or sum(vertex.coordinates) != 1:
                raise DomainError(f"Vertex {vertex} is not in the standard simplex")
        if _determinant([v.coordinates for v in self.vertices]) == 0:
            raise DomainError("Simplex vertices are affinely dependent")

    @classmethod
    def standard(cls, dim: int = 3) -> "Simplex":
        return cls(tuple(EvalPoint.unit(i, dim) for i in range(1, dim + 1)))

    def longest_edge(self) -> Tuple[int, int]:
        """En uzun kenar; eşitlikte köşe sırasına göre ilk kenar"""
        best: Optional[Tuple[int, int]] = None
        best_length = Fraction(-1)
        for p, q in combinations(range(len(self.vertices)), 2):
            length = sum((a - b) ** 2 for a, b in zip(self.vertices[p], self.vertices[q]))
            if length > best_length:
                best, best_length = (p, q), length
        return best


@dataclass(frozen=True)
class BernsteinForm:
    """
    Bir simpleks üzerinde 3. derece Bernstein katsayıları.
    Anahtar: α çoklu indeksi (her köşenin kaç kez kullanıldığı), |α| = 3.
    """
    simplex: Simplex
    coefficients: Dict[Tuple[int, ...], Fraction] = field(hash=False)

    @classmethod
    def from_tensor(cls, t: SymTensor3) -> "BernsteinForm":
        # Standart simplekste katsayılar tekil girdilerin kendisi
        return cls(Simplex.standard(3), {exponent(index, 3): value for index, value in t.items()})

    @classmethod
    def from_tensor2(cls, t: SymTensor2) -> "BernsteinForm":
        return cls(Simplex.standard(2), {exponent(index, 2): value for index, value in t.items()})

    def corners(self) -> List[Tuple[EvalPoint, Fraction]]:
        """Köşe katsayıları = formun köşedeki değeri"""
        n = len(self.simplex.vertices)
        result = []
        for v, vertex in enumerate(self.simplex.vertices):
            alpha = tuple(3 if k == v else 0 for k in range(n))
            result.append((vertex, self.coefficients[alpha]))
        return result

    def all_positive(self) -> bool:
        return all(c > 0 for c in self.coefficients.values())

    def subdivide(self) -> Tuple["BernsteinForm", "BernsteinForm"]:
        """En uzun kenarı ortadan böl (de Casteljau, tam)"""
        p, q = self.simplex.longest_edge()
        vertices = self.simplex.vertices
        midpoint = EvalPoint(tuple((a + b) / 2 for a, b in zip(vertices[p], vertices[q])))

        first = list(vertices)
        first[q] = midpoint
        second = list(vertices)
        second[p] = midpoint

        return (
            BernsteinForm(Simplex(tuple(first)), self._split(keep=p, replace_=q)),
            BernsteinForm(Simplex(tuple(second)), self._split(keep=q, replace_=p)),
        )

    def _split(self, keep: int, replace_: int) -> Dict[Tuple[int, ...], Fraction]:
        """`replace_` köşesi kenar orta noktasıyla değiştirildiğinde katsayılar"""
        child = {}
        for alpha in self.coefficients:
            k = alpha[replace_]
            total = Fraction(0)
            for l in range(k + 1):
                source = list(alpha)
                source[keep] += l
                source[replace_] = k - l
                total += math.comb(k, l) * self.coefficients[tuple(source)]
            child[alpha] = total / (2 ** k)
        return child


# === Grid ===

@lru_cache(maxsize=32)
def _grid(indices: Tuple[Index, ...], denominator: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    (noktalar, monom matrisi). Noktalar toplamı `denominator` olan tam sayı
    üçlüleri; monom[p, k] = çokluk(k) * x^α_k.
    """
    dim = max(max(index) for index in indices)
    if dim == 2:
        points = [(i, denominator - i) for i in range(denominator, -1, -1)]
    else:
        points = [
            (i, j, denominator - i - j)
            for i in range(denominator, -1, -1)
            for j in range(denominator - i, -1, -1)
        ]
    monomials = [
        [multiplicity(index) * math.prod(point[c - 1] for c in index) for index in indices]
        for point in points
    ]
    return np.array(points, dtype=np.int64), np.array(monomials, dtype=np.int64)


def _scaled_integers(entries: Sequence[Fraction]) -> Tuple[List[int], int]:
    scale = math.lcm(*(value.denominator for value in entries))
    return [int(value * scale) for value in entries], scale


def _grid_min(entries: Sequence[Fraction], indices: Tuple[Index, ...], denominator: int) -> Tuple[Fraction, EvalPoint]:
    if denominator < 1:
        raise DomainError(f"Grid denominator must be positive, got {denominator}")
    points, monomials = _grid(indices, denominator)
    integers, scale = _scaled_integers(entries)
    degree = len(indices[0])

    # |değer| <= max|girdi| * N^derece
    if max(abs(v) for v in integers) * denominator ** degree < _INT64_LIMIT:
        values = monomials @ np.array(integers, dtype=np.int64)
        best = int(np.argmin(values))
        value = int(values[best])
    else:
        values = monomials.astype(object).dot(np.array(integers, dtype=object))
        best = min(range(len(values)), key=values.__getitem__)
        value = int(values[best])

    point = EvalPoint(tuple(Fraction(int(c), denominator) for c in points[best]))
    return Fraction(value, scale * denominator ** degree), point


def grid_min(t: SymTensor3, denominator: int) -> Tuple[Fraction, EvalPoint]:
    """(i/N, j/N, k/N) grid'i üzerinde tam minimum ve bir argmin"""
    return _grid_min(t.entries(), TENSOR3_INDICES, denominator)


def grid_min2(t: SymTensor2, denominator: int) -> Tuple[Fraction, EvalPoint]:
    """1-simpleks grid'i üzerinde tam minimum"""
    return _grid_min(t.entries(), TENSOR2_INDICES, denominator)


def quadratic_grid_min(m: SymMatrix3, denominator: int) -> Tuple[Fraction, EvalPoint]:
    """xᵀMx için simpleks grid minimumu (gerçek minimumun üst sınırı)"""
    return _grid_min(m.entries(), MATRIX3_INDICES, denominator)


def double_zeros2(t: SymTensor2) -> List[EvalPoint]:
    """
    Formun 1-simpleks üzerindeki katlı sıfırları (değer tam olarak 0).

    u = x1/x2 ile p(u) = a111u³ + 3a112u² + 3a122u + a222; katlı kökler
    gcd(p, p′)'nün kökleridir ve rasyoneldir. Sonsuzdaki katlı kök
    (a111 = a112 = 0) e1 noktasıdır.
    """
    u = sympy.Symbol("u")
    coefficients = [sympy.Rational(c.numerator, c.denominator) for c in (t.a111, 3 * t.a112, 3 * t.a122, t.a222)]
    p = sympy.Poly.from_list(coefficients, u, domain=sympy.QQ)
    if p.is_zero:
        return []

    points = []
    if t.a111 == 0 and t.a112 == 0:
        points.append(EvalPoint.unit(1, 2))
    for root in sorted(sympy.roots(sympy.gcd(p, p.diff(u)), filter="Q")):
        r = Fraction(int(root.p), int(root.q))
        if r >= 0:
            points.append(EvalPoint.of(r, 1).to_simplex())
    return points


def quadratic_simplex_min(m: SymMatrix3) -> Tuple[Fraction, EvalPoint]:
    """
    xᵀMx'in standart simpleks üzerindeki tam minimumu.

    Her yüz için KKT sistemi M_S y = λ1, 1ᵀy = 1 tam çözülür; y > 0 ise aday
    değer λ'dır. Tekil sistemler atlanır: sabit bir yönde ilerleyerek daha
    küçük bir yüze aynı değerle ulaşılır.
    """
    full = m.to_full_array()
    best: Optional[Tuple[Fraction, EvalPoint]] = None

    for size in (1, 2, 3):
        for support in combinations(range(3), size):
            rows = [
                [sympy.Rational(full[i][j].numerator, full[i][j].denominator) for j in support] + [-1]
                for i in support
            ]
            rows.append([1] * size + [0])
            system = sympy.Matrix(rows)
            if system.det() == 0:
                continue
            solution = system.LUsolve(sympy.Matrix([0] * size + [1]))
            y = [Fraction(int(v.p), int(v.q)) for v in solution[:size]]
            if any(v <= 0 for v in y):
                continue
            lam = solution[size]
            value = Fraction(int(lam.p), int(lam.q))
            if best is None or value < best[0]:
                coords = [Fraction(0)] * 3
                for i, v in zip(support, y):
                    coords[i] = v
                best = (value, EvalPoint(tuple(coords)))

    return best


# === Bernstein certificate ===

def _certify(root: BernsteinForm, max_depth: int) -> OracleResult:
    stack: List[Tuple[BernsteinForm, int]] = [(root, 0)]
    leaves = 0
    deepest = 0
    nodes = 0
    status = OracleStatus.POSITIVE_CERTIFIED
    best: Optional[Fraction] = None

    while stack:
        form, depth = stack.pop()
        nodes += 1
        deepest = max(deepest, depth)

        for vertex, value in form.corners():
            if best is None or value < best:
                best = value
            if value <= 0:
                # Köşe katsayısı = tam değer: kesin tanık
                stats = SubdivisionStats(leaf_count=leaves, max_depth=deepest, node_count=nodes)
                return OracleResult(
                    status=OracleStatus.NONPOSITIVE_WITNESS,
                    witness=vertex,
                    witness_value=value,
                    certificate=stats,
                    min_estimate=value,
                )

        if form.all_positive():
            leaves += 1
            continue

        if depth >= max_depth:
            status = _stronger(status, OracleStatus.INCONCLUSIVE)
            continue

        first, second = form.subdivide()
        stack.append((second, depth + 1))
        stack.append((first, depth + 1))

    stats = SubdivisionStats(leaf_count=leaves, max_depth=deepest, node_count=nodes)
    logger.debug(f"Subdivision finished: {status.value}, {nodes} nodes, depth {deepest}")
    return OracleResult(status=status, certificate=stats, min_estimate=best)


def bernstein_certify(t: SymTensor3, max_depth: int = DEFAULT_MAX_DEPTH) -> OracleResult:
    """Standart simpleksten başlayarak alt bölme ile pozitiflik sertifikası"""
    return _certify(BernsteinForm.from_tensor(t), max_depth)


def bernstein_certify2(t: SymTensor2, max_depth: int = DEFAULT_MAX_DEPTH) -> OracleResult:
    """[e1, e2] aralığında aynı işlem"""
    return _certify(BernsteinForm.from_tensor2(t), max_depth)


def _denominators(denominator: int, grid_denominators: Iterable[int]) -> List[int]:
    return sorted(set(grid_denominators) | {denominator})


def _witness(point: EvalPoint, value: Fraction) -> OracleResult:
    return OracleResult(
        status=OracleStatus.NONPOSITIVE_WITNESS,
        witness=point,
        witness_value=value,
        min_estimate=value,
    )


def _verdict(grid, certify, tensor, denominator: int, max_depth: int,
             grid_denominators: Iterable[int],
             exact_points: Sequence[Tuple[EvalPoint, Fraction]] = ()) -> OracleResult:
    """
    Sıra: tam aday noktalar, sonra grid'ler artan paydayla, sonra sertifika.
    Tanık ilk sıfır veya negatif değerli grid'den gelir; küçük paydalı
    grid'de bulunan tanık, ana grid'de daha küçük bir değer olsa da döner.
    """
    for point, value in exact_points:
        if value <= 0:
            return _witness(point, value)

    best: Optional[Fraction] = None
    for n in _denominators(denominator, grid_denominators):
        value, point = grid(tensor, n)
        if best is None or value < best:
            best = value
        if value <= 0:
            return _witness(point, value)

    result = certify(tensor, max_depth)
    if result.min_estimate is not None and result.min_estimate < best:
        best = result.min_estimate
    return replace(result, min_estimate=best)


def oracle_verdict(
    t: SymTensor3,
    denominator: int = DEFAULT_DENOMINATOR,
    max_depth: int = DEFAULT_MAX_DEPTH,
    grid_denominators: Iterable[int] = DEFAULT_GRID_DENOMINATORS,
) -> OracleResult:
    """
    Önce grid, sonra Bernstein sertifikası.

    Grid'ler paydaya göre artan sırada taranır (varsayılan 7, 12, 84); tanık
    değeri sıfır veya negatif olan ilk grid'in argmin'idir. Örneğin tanık
    (1/2, 1/4, 1/4) yerine 7 paydalı bir nokta olabilir.

    Args:
        t: Kübik form
        denominator: Ana grid paydası (küçük paydalı grid'ler de taranır)
        max_depth: Alt bölme derinlik sınırı

    Returns:
        OracleResult
    """
    return _verdict(grid_min, bernstein_certify, t, denominator, max_depth, grid_denominators)


def oracle_verdict2(
    t: SymTensor2,
    denominator: int = DEFAULT_DENOMINATOR,
    max_depth: int = DEFAULT_MAX_DEPTH,
    grid_denominators: Iterable[int] = DEFAULT_GRID_DENOMINATORS,
) -> OracleResult:
    """İkili kübik form için aynı karar; katlı sıfırlar grid'den önce denenir"""
    exact_points = [(point, eval_form2(t, point)) for point in double_zeros2(t)]
    return _verdict(grid_min2, bernstein_certify2, t, denominator, max_depth, grid_denominators, exact_points)
