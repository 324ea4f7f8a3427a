"""
Relative chains, boundary maps and combinatorial Laplacians of intervals.

The chains of Φ = (Δ, Δ′) are C(Δ)/C(Δ′), so only faces of Φ index rows and
columns; a boundary face outside Φ simply contributes nothing. Spectra are
computed exactly where they are integral (kernel dimensions of L - λI at
integer λ, certified when the multiplicities add up to the matrix size) and
by a floating-point eigensolve otherwise.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from engine.errors import EigensolverFailure
from engine.exact import ExactMatrix
from engine.faces import position_in
from engine.intervals import Interval, face_count
from utils.logger import logger

ZERO_TOLERANCE = 1e-9
GROUP_TOLERANCE = 1e-6
# A numeric eigenvalue this far from every integer rules out an integral spectrum.
NON_INTEGRAL_GAP = 1e-3


@lru_cache(maxsize=8192)
def boundary_matrix(phi: Interval, i: int) -> ExactMatrix:
    """∂_i : C_i → C_{i-1}; rows Φ_{i-1}, columns Φ_i, both in canonical order.

    ∂[F] = Σ_{v ∈ F} (-1)^{pos(v, F)} [F - v], pos counting the elements of F
    below v, restricted to the F - v that lie in Φ.
    """
    rows = phi.faces_of_dim(i - 1)
    cols = phi.faces_of_dim(i)
    index = {face: k for k, face in enumerate(rows)}
    data = [[0] * len(cols) for _ in rows]
    for c, face in enumerate(cols):
        rest = face
        while rest:
            low = rest & -rest
            r = index.get(face ^ low)
            if r is not None:
                v = low.bit_length()
                data[r][c] = -1 if position_in(v, face) % 2 else 1
            rest ^= low
    return ExactMatrix(len(rows), len(cols), data)


@lru_cache(maxsize=8192)
def up_laplacian(phi: Interval, i: int) -> ExactMatrix:
    """∂_{i+1} ∂*_{i+1}."""
    b = boundary_matrix(phi, i + 1)
    return b @ b.T


@lru_cache(maxsize=8192)
def down_laplacian(phi: Interval, i: int) -> ExactMatrix:
    """∂*_i ∂_i."""
    b = boundary_matrix(phi, i)
    return b.T @ b


@lru_cache(maxsize=8192)
def laplacian(phi: Interval, i: int) -> ExactMatrix:
    """L_i(Φ) = ∂_{i+1}∂*_{i+1} + ∂*_i∂_i, square of side f_i(Φ)."""
    return up_laplacian(phi, i) + down_laplacian(phi, i)


@dataclass(frozen=True)
class DimensionSpectrum:
    dim: int
    values: tuple
    exact: bool

    def to_dict(self):
        key = "exact" if self.exact else "numeric"
        return {key: list(self.values)}


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalue multisets s_i(Φ) for i = -1..n-1."""

    n: int
    dims: Tuple[DimensionSpectrum, ...]

    def __getitem__(self, i: int) -> tuple:
        return self.dims[i + 1].values

    def dimension(self, i: int) -> DimensionSpectrum:
        return self.dims[i + 1]

    @property
    def integral(self) -> bool:
        return all(d.exact for d in self.dims)

    @property
    def integrality(self) -> Dict[int, bool]:
        return {d.dim: d.exact for d in self.dims}

    def to_dict(self):
        return {
            "dims": {str(d.dim): d.to_dict() for d in self.dims},
            "integral": self.integral,
        }


def _numeric_eigenvalues(matrix: ExactMatrix, zero_tolerance: float, group_tolerance: float) -> tuple:
    if matrix.rows == 0:
        return ()
    try:
        raw = np.linalg.eigvalsh(matrix.to_numpy())
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(f"symmetric eigensolve failed: {exc}") from exc
    values = []
    for v in sorted(float(x) for x in raw):
        if abs(v) <= zero_tolerance:
            v = 0.0
        elif v < 0:
            logger.warning(f"Laplacian eigenvalue {v:.3e} below zero beyond tolerance")
        values.append(v)
    grouped = []
    anchor = None
    for v in values:
        if anchor is not None and v - anchor <= group_tolerance:
            grouped.append(anchor)
        else:
            anchor = v
            grouped.append(v)
    return tuple(grouped)


def _exact_eigenvalues(matrix: ExactMatrix, numeric_hints: bool) -> Optional[tuple]:
    """Integer eigenvalue multiset of a symmetric integer matrix, or None.

    m_λ = nullity(L - λI) for λ in 0..B (B the Gershgorin bound); the spectrum
    is integral exactly when these multiplicities sum to the side length.
    Numeric eigenvalues only order the candidates (and cut the scan short once
    one of them is clearly not an integer).
    """
    size = matrix.rows
    if size == 0:
        return ()
    bound = int(matrix.gershgorin_bound())
    candidates = list(range(bound + 1))
    hints = ()
    guessed = []
    if numeric_hints:
        try:
            hints = np.linalg.eigvalsh(matrix.to_numpy())
        except np.linalg.LinAlgError as exc:
            raise EigensolverFailure(f"symmetric eigensolve failed: {exc}") from exc
        for h in hints:
            lam = int(round(float(h)))
            if 0 <= lam <= bound and lam not in guessed:
                guessed.append(lam)
        candidates = guessed + [lam for lam in candidates if lam not in guessed]
    multiplicities = {}
    total = 0
    for tried, lam in enumerate(candidates):
        m = matrix.shift_diagonal(-lam).nullity()
        if m:
            multiplicities[lam] = m
            total += m
        if total == size:
            break
        if numeric_hints and tried + 1 == len(guessed) and any(
            abs(float(h) - round(float(h))) > NON_INTEGRAL_GAP for h in hints
        ):
            return None
    if total != size:
        return None
    return tuple(lam for lam in sorted(multiplicities) for _ in range(multiplicities[lam]))


@lru_cache(maxsize=4096)
def exact_integer_spectrum(
    phi: Interval,
    *,
    fallback: bool = True,
    zero_tolerance: float = ZERO_TOLERANCE,
    group_tolerance: float = GROUP_TOLERANCE,
    numeric_hints: bool = True,
) -> SpectrumReport:
    """Exact integer spectra per dimension; non-integral dimensions fall back to floats."""
    dims = []
    for i in range(-1, phi.n):
        matrix = laplacian(phi, i)
        values = _exact_eigenvalues(matrix, numeric_hints)
        if values is not None:
            dims.append(DimensionSpectrum(i, values, True))
            continue
        logger.debug(f"L_{i} of size {matrix.rows} is not integral; numeric fallback")
        values = _numeric_eigenvalues(matrix, zero_tolerance, group_tolerance) if fallback else ()
        dims.append(DimensionSpectrum(i, values, False))
    return SpectrumReport(phi.n, tuple(dims))


@lru_cache(maxsize=4096)
def numeric_spectrum(
    phi: Interval,
    *,
    zero_tolerance: float = ZERO_TOLERANCE,
    group_tolerance: float = GROUP_TOLERANCE,
) -> SpectrumReport:
    """Floating-point spectra of every L_i."""
    dims = tuple(
        DimensionSpectrum(i, _numeric_eigenvalues(laplacian(phi, i), zero_tolerance, group_tolerance), False)
        for i in range(-1, phi.n)
    )
    return SpectrumReport(phi.n, dims)


def spectrum(phi: Interval, **tolerances) -> SpectrumReport:
    return exact_integer_spectrum(phi, fallback=True, **tolerances)


def betti(phi: Interval) -> Tuple[int, ...]:
    """Reduced Betti numbers; entry k is β̃_{k-1}, from exact ranks of the boundary maps."""
    out = []
    for i in range(-1, phi.n):
        out.append(face_count(phi, i) - boundary_matrix(phi, i).rank() - boundary_matrix(phi, i + 1).rank())
    return tuple(out)


def euler_characteristic(phi: Interval) -> int:
    """χ(Φ) = Σ_i (-1)^i f_i(Φ), the empty face counting at i = -1."""
    return sum((-1) ** (i % 2) * face_count(phi, i) for i in range(-1, phi.n))


def circeq(first, second, tolerance: Optional[float] = None) -> bool:
    """Multisets agree in all non-zero parts (zeros are ignored)."""
    if tolerance is None:
        a = sorted(x for x in first if x != 0)
        b = sorted(x for x in second if x != 0)
        return a == b
    a = sorted(x for x in first if abs(x) > tolerance)
    b = sorted(x for x in second if abs(x) > tolerance)
    return len(a) == len(b) and all(abs(x - y) <= tolerance for x, y in zip(a, b))
