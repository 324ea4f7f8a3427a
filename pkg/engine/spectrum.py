"""
The spectrum polynomial S_Φ(t, q) and the spectral recursion.

S_Φ(t, q) = Σ_i t^i Σ_{λ ∈ s_{i-1}(Φ)} q^λ. The recursion at a vertex e reads

    S_Φ = q·S_{Φ-e} + q·t·S_{Φ/e} + (1 - q)·S_{Φ||e}

and its residual is kept as a signed term map so a failure shows exactly which
t^i·q^λ coefficients disagree. Exact mode keys eigenvalues by int; numeric mode
keys them by float, merging keys that sit within the grouping tolerance.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

from engine.errors import DegreeOverflow
from engine.intervals import Interval, contract, delete, f_vector, face_count, reduce
from engine.laplacian import (
    GROUP_TOLERANCE,
    ZERO_TOLERANCE,
    SpectrumReport,
    betti,
    euler_characteristic,
    numeric_spectrum,
    spectrum,
)
from utils.logger import logger

EXACT = "exact"
NUMERIC = "numeric"

RESIDUAL_TOLERANCE = 1e-6


class SpectrumPolynomial:
    """Sparse bivariate polynomial with integer coefficients.

    Terms map (t_exp, λ) to a non-zero coefficient. Built from an interval
    every coefficient is a positive multiplicity; differences may go negative.
    """

    __slots__ = ("_terms", "_mode", "_tolerance")

    def __init__(self, terms=None, mode: str = EXACT, tolerance: float = GROUP_TOLERANCE):
        if mode not in (EXACT, NUMERIC):
            raise ValueError(f"unknown polynomial mode {mode!r}")
        self._mode = mode
        self._tolerance = tolerance
        self._terms: Dict[Tuple[int, object], int] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for (t, lam), c in items:
            self._accumulate(t, lam, c)

    # -- construction ---------------------------------------------------------

    def _key(self, t: int, lam):
        if self._mode == EXACT:
            if isinstance(lam, float):
                if not lam.is_integer():
                    raise ValueError(f"exact polynomial needs integer eigenvalues, got {lam}")
                lam = int(lam)
            return t, lam
        lam = float(lam)
        for key in self._terms:
            if key[0] == t and abs(key[1] - lam) <= self._tolerance:
                return key
        return t, lam

    def _accumulate(self, t: int, lam, c: int):
        if not c:
            return
        key = self._key(int(t), lam)
        total = self._terms.get(key, 0) + c
        if total:
            self._terms[key] = total
        else:
            del self._terms[key]

    @classmethod
    def from_report(cls, report: SpectrumReport, tolerance: float = GROUP_TOLERANCE) -> "SpectrumPolynomial":
        mode = EXACT if report.integral else NUMERIC
        poly = cls(mode=mode, tolerance=tolerance)
        for dim in report.dims:
            for lam in dim.values:
                poly._accumulate(dim.dim + 1, lam, 1)
        return poly

    @classmethod
    def monomial(cls, t: int = 0, lam=0, c: int = 1, mode: str = EXACT) -> "SpectrumPolynomial":
        return cls({(t, lam): c}, mode=mode)

    # -- access ---------------------------------------------------------------

    @property
    def terms(self) -> Dict[Tuple[int, object], int]:
        return dict(self._terms)

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def tolerance(self) -> float:
        return self._tolerance

    @property
    def t_degree(self) -> int:
        """Largest t exponent, -1 for the zero polynomial."""
        return max((t for t, _ in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int) -> Dict[object, int]:
        """[t^i] S as a map λ -> coefficient."""
        return {lam: c for (t, lam), c in sorted(self._terms.items()) if t == i}

    def evaluate(self, t, q):
        return sum(c * t ** ti * q ** lam for (ti, lam), c in self._terms.items())

    def sorted_terms(self):
        return sorted(self._terms.items())

    # -- algebra --------------------------------------------------------------

    def _result_mode(self, other: "SpectrumPolynomial") -> Tuple[str, float]:
        mode = NUMERIC if NUMERIC in (self._mode, other._mode) else EXACT
        return mode, max(self._tolerance, other._tolerance)

    def __add__(self, other: "SpectrumPolynomial") -> "SpectrumPolynomial":
        mode, tol = self._result_mode(other)
        out = SpectrumPolynomial(self._terms, mode=mode, tolerance=tol)
        for (t, lam), c in other._terms.items():
            out._accumulate(t, lam, c)
        return out

    def __neg__(self) -> "SpectrumPolynomial":
        return SpectrumPolynomial({k: -c for k, c in self._terms.items()}, self._mode, self._tolerance)

    def __sub__(self, other: "SpectrumPolynomial") -> "SpectrumPolynomial":
        return self + (-other)

    def __mul__(self, other: "SpectrumPolynomial") -> "SpectrumPolynomial":
        mode, tol = self._result_mode(other)
        out = SpectrumPolynomial(mode=mode, tolerance=tol)
        for (t1, l1), c1 in self._terms.items():
            for (t2, l2), c2 in other._terms.items():
                out._accumulate(t1 + t2, l1 + l2, c1 * c2)
        return out

    def scale_q(self, power: int = 1) -> "SpectrumPolynomial":
        """Multiply by q^power."""
        return SpectrumPolynomial(
            {(t, lam + power): c for (t, lam), c in self._terms.items()}, self._mode, self._tolerance
        )

    def scale_t(self, power: int = 1) -> "SpectrumPolynomial":
        """Multiply by t^power."""
        return SpectrumPolynomial(
            {(t + power, lam): c for (t, lam), c in self._terms.items()}, self._mode, self._tolerance
        )

    def t_reversal(self, n: int) -> "SpectrumPolynomial":
        """t^n · S(1/t, q)."""
        degree = self.t_degree
        if degree > n:
            raise DegreeOverflow(degree, n)
        return SpectrumPolynomial(
            {(n - t, lam): c for (t, lam), c in self._terms.items()}, self._mode, self._tolerance
        )

    def __eq__(self, other):
        if not isinstance(other, SpectrumPolynomial):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self._mode, frozenset(self._terms.items())))

    # -- output ---------------------------------------------------------------

    def _format_q(self, lam) -> str:
        if self._mode == EXACT:
            return str(lam)
        return f"{lam:.6g}"

    def format(self) -> str:
        """Human-readable form, e.g. ``q^2 + 2·t·q^2 - t^2``."""
        if not self._terms:
            return "0"
        parts = []
        for (t, lam), c in self.sorted_terms():
            factors = []
            if t:
                factors.append("t" if t == 1 else f"t^{t}")
            if lam:
                factors.append("q" if lam == 1 else f"q^{self._format_q(lam)}")
            body = "·".join(factors)
            magnitude = abs(c)
            if not body:
                body = str(magnitude)
            elif magnitude != 1:
                body = f"{magnitude}·{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_dict(self):
        terms = []
        for (t, lam), c in self.sorted_terms():
            q = lam if self._mode == EXACT else round(float(lam), 9)
            terms.append({"t": t, "q": q, "c": c})
        return {"terms": terms, "mode": self._mode}

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SpectrumPolynomial({self.format()}, mode={self._mode})"


def poly_add(first: SpectrumPolynomial, second: SpectrumPolynomial) -> SpectrumPolynomial:
    return first + second


def poly_subtract(first: SpectrumPolynomial, second: SpectrumPolynomial) -> SpectrumPolynomial:
    return first - second


def poly_negate(poly: SpectrumPolynomial) -> SpectrumPolynomial:
    return -poly


def poly_scale_q(poly: SpectrumPolynomial, power: int = 1) -> SpectrumPolynomial:
    return poly.scale_q(power)


def poly_scale_t(poly: SpectrumPolynomial, power: int = 1) -> SpectrumPolynomial:
    return poly.scale_t(power)


def poly_multiply(first: SpectrumPolynomial, second: SpectrumPolynomial) -> SpectrumPolynomial:
    return first * second


def poly_t_reversal(poly: SpectrumPolynomial, n: int) -> SpectrumPolynomial:
    return poly.t_reversal(n)


def spectrum_polynomial(
    phi: Interval,
    *,
    numeric: bool = False,
    zero_tolerance: float = ZERO_TOLERANCE,
    group_tolerance: float = GROUP_TOLERANCE,
) -> SpectrumPolynomial:
    """S_Φ from the exact spectrum when every dimension is integral, else from floats."""
    if not numeric:
        report = spectrum(phi, zero_tolerance=zero_tolerance, group_tolerance=group_tolerance)
        if report.integral:
            return SpectrumPolynomial.from_report(report, group_tolerance)
    report = numeric_spectrum(phi, zero_tolerance=zero_tolerance, group_tolerance=group_tolerance)
    return SpectrumPolynomial.from_report(report, group_tolerance)


# -- the recursion -----------------------------------------------------------------

@dataclass(frozen=True)
class RecursionVerdict:
    vertex: int
    holds: bool
    residual: SpectrumPolynomial
    mode: str
    breakdown: Dict[int, Dict[object, int]] = field(default_factory=dict)

    @property
    def rigorous(self) -> bool:
        """Exact-mode verdicts are proofs for the instance; numeric ones are evidence."""
        return self.mode == EXACT

    def to_dict(self):
        return {
            "vertex": self.vertex,
            "holds": self.holds,
            "mode": self.mode,
            "rigorous": self.rigorous,
            "residual": self.residual.to_dict(),
            "breakdown": {
                str(i): [{"q": q if self.mode == EXACT else round(float(q), 9), "c": c} for q, c in coeffs.items()]
                for i, coeffs in sorted(self.breakdown.items())
            },
        }


def _recursion_parts(phi: Interval, e: int, zero_tolerance: float, group_tolerance: float):
    parts = (phi, delete(phi, e), contract(phi, e), reduce(phi, e))
    reports = [spectrum(p, zero_tolerance=zero_tolerance, group_tolerance=group_tolerance) for p in parts]
    if all(r.integral for r in reports):
        return EXACT, [SpectrumPolynomial.from_report(r, group_tolerance) for r in reports]
    logger.debug(f"vertex {e}: mixed or non-integral spectra, residual computed numerically")
    reports = [numeric_spectrum(p, zero_tolerance=zero_tolerance, group_tolerance=group_tolerance) for p in parts]
    return NUMERIC, [SpectrumPolynomial.from_report(r, group_tolerance) for r in reports]


def recursion_residual(
    phi: Interval,
    e: int,
    *,
    tolerance: float = RESIDUAL_TOLERANCE,
    zero_tolerance: float = ZERO_TOLERANCE,
    group_tolerance: Optional[float] = None,
) -> RecursionVerdict:
    """S_Φ - q·S_{Φ-e} - q·t·S_{Φ/e} - (1 - q)·S_{Φ||e} and whether it vanishes."""
    group_tolerance = tolerance if group_tolerance is None else group_tolerance
    mode, (s_phi, s_del, s_con, s_red) = _recursion_parts(phi, e, zero_tolerance, group_tolerance)
    residual = s_phi - s_del.scale_q() - s_con.scale_q().scale_t() - s_red + s_red.scale_q()
    breakdown = {}
    for (t, lam), c in residual.sorted_terms():
        breakdown.setdefault(t, {})[lam] = c
    if mode == EXACT:
        holds = residual.is_zero()
    else:
        holds = all(abs(c) <= tolerance for c in residual.terms.values())
    if not holds:
        logger.debug(f"recursion fails at vertex {e}: {residual.format()}")
    return RecursionVerdict(e, holds, residual, mode, breakdown)


def check_recursion_all_vertices(phi: Interval, **tolerances) -> Dict[int, RecursionVerdict]:
    return {e: recursion_residual(phi, e, **tolerances) for e in range(1, phi.n + 1)}


def satisfies_recursion(phi: Interval, vertices: Optional[Iterable[int]] = None, **tolerances) -> bool:
    vertices = range(1, phi.n + 1) if vertices is None else vertices
    return all(recursion_residual(phi, e, **tolerances).holds for e in vertices)


def residual_coefficient(phi: Interval, e: int, i: int, **tolerances) -> Dict[object, int]:
    """𝒮_i(Φ, e): the t^i coefficient of the residual, as λ -> coefficient."""
    return recursion_residual(phi, e, **tolerances).residual.coefficient(i)


# -- specializations -------------------------------------------------------------------

@dataclass(frozen=True)
class SpecializationReport:
    """The recursion at q = 0, q = 1, t = 0 and t = -1, checked without eigenvalues."""

    vertex: int
    q0: bool
    q1: bool
    t0: bool
    t_minus_1: bool

    @property
    def passed(self) -> bool:
        return self.q0 and self.q1 and self.t0 and self.t_minus_1

    def to_dict(self):
        return {
            "vertex": self.vertex,
            "q=0": self.q0,
            "q=1": self.q1,
            "t=0": self.t0,
            "t=-1": self.t_minus_1,
            "passed": self.passed,
        }


def _empty_face_term(phi: Interval) -> SpectrumPolynomial:
    """S_Φ(0, q): q^{f_0(Φ)} when ∅ ∈ Φ (L_{-1} is the 1x1 matrix [f_0]), else 0."""
    if 0 not in phi:
        return SpectrumPolynomial()
    return SpectrumPolynomial.monomial(0, face_count(phi, 0))


def specialization_checks(phi: Interval, e: int) -> SpecializationReport:
    deleted = delete(phi, e)
    contracted = contract(phi, e)
    reduced = reduce(phi, e)

    q0 = betti(phi) == betti(reduced)

    fv, fd, fc = f_vector(phi), f_vector(deleted), f_vector(contracted)
    q1 = all(fv[k] == fd[k] + (fc[k - 1] if k else 0) for k in range(len(fv)))

    lhs = _empty_face_term(phi)
    red = _empty_face_term(reduced)
    t0 = lhs == _empty_face_term(deleted).scale_q() + red - red.scale_q()

    chi = euler_characteristic(phi)
    t_minus_1 = chi == euler_characteristic(reduced) and chi == (
        euler_characteristic(deleted) - euler_characteristic(contracted)
    )
    return SpecializationReport(e, q0, q1, t0, t_minus_1)
