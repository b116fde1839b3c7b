"""The folded cylinder R x S^1 and the L^2 kernel of its perturbed Dirac operator.

Fourier mode m of a kernel element of D_t^+ solves
``a_m' = 2 pi (1 + t)(m - rho) a_m``, so ``log|a_m(r)| = 2 pi * E(m, t, r)`` with
``E = (1 + t) * integral_0^r (m - rho)``. The D_t^- modes b_m use -E. Since
rho is 1/2 for |r| >= 1/2, E is affine there with slope (1 + t)(m - 1/2) at
both ends, which is never zero for integer m, so no mode decays at both ends.

The fold profile rho is r^2 near 0, 1/2 far out, and a C^1 cubic Hermite blend
on 1/4 <= |r| <= 1/2 (all coefficients rational). Only the constant tails
matter for square-integrability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


class NegativeT(ValueError):
    pass


def _hermite_blend() -> tuple[Fraction, ...]:
    # c0 + c1 r + c2 r^2 + c3 r^3 with value/slope 1/16, 1/2 at r = 1/4 and 1/2, 0 at r = 1/2
    rows, rhs = [], []
    for r, val, slope in ((QUARTER, Fraction(1, 16), HALF), (HALF, HALF, Fraction(0))):
        rows.append([1, r, r ** 2, r ** 3])
        rhs.append(val)
        rows.append([0, 1, 2 * r, 3 * r ** 2])
        rhs.append(slope)
    return la.solve_square(rows, rhs)


BLEND = _hermite_blend()


def _blend(r: Fraction) -> Fraction:
    return sum((c * r ** i for i, c in enumerate(BLEND)), Fraction(0))


def _blend_derivative(r: Fraction) -> Fraction:
    return sum((i * c * r ** (i - 1) for i, c in enumerate(BLEND) if i), Fraction(0))


def _blend_antiderivative(r: Fraction) -> Fraction:
    return sum((c * r ** (i + 1) / (i + 1) for i, c in enumerate(BLEND)), Fraction(0))


def rho(r) -> Fraction:
    r = abs(Fraction(r))
    if r <= QUARTER:
        return r * r
    if r <= HALF:
        return _blend(r)
    return HALF


def rho_derivative(r) -> Fraction:
    r = Fraction(r)
    s = 1 if r >= 0 else -1
    a = abs(r)
    if a <= QUARTER:
        return 2 * r
    if a <= HALF:
        return s * _blend_derivative(a)
    return Fraction(0)


def _rho_integral_nonneg(r: Fraction) -> Fraction:
    if r <= QUARTER:
        return r ** 3 / 3
    inner = QUARTER ** 3 / 3
    if r <= HALF:
        return inner + _blend_antiderivative(r) - _blend_antiderivative(QUARTER)
    return inner + _blend_antiderivative(HALF) - _blend_antiderivative(QUARTER) + (r - HALF) / 2


def rho_integral(r) -> Fraction:
    """Exact integral of rho from 0 to r (odd in r since rho is even)."""
    r = Fraction(r)
    return _rho_integral_nonneg(r) if r >= 0 else -_rho_integral_nonneg(-r)


RHO_INTEGRAL_HALF = rho_integral(HALF)


def log_mode_amplitude(m: int, t, r) -> Fraction:
    """``(1 + t) * integral_0^r (m - rho)``: log|a_m(r)| / (2 pi) when a_m(0) = 1."""
    t, r = Fraction(t), Fraction(r)
    return (1 + t) * (m * r - rho_integral(r))


@dataclass(frozen=True)
class ModeCertificate:
    """Exact tail data of one Fourier mode showing it is not square-integrable.

    ``branch`` is ``"+"`` for a_m (kernel of D_t^+) and ``"-"`` for b_m.
    On r >= 1/2 the log-amplitude (over 2 pi) equals ``slope * r + intercept_plus``,
    on r <= -1/2 it equals ``slope * r + intercept_minus``.
    """

    m: int
    t: Fraction
    branch: str
    slope: Fraction
    intercept_plus: Fraction
    intercept_minus: Fraction

    @property
    def slope_plus(self) -> Fraction:
        return self.slope

    @property
    def slope_minus(self) -> Fraction:
        return self.slope

    @property
    def decays_at_plus(self) -> bool:
        return self.slope < 0

    @property
    def decays_at_minus(self) -> bool:
        return self.slope > 0

    @property
    def square_integrable(self) -> bool:
        return self.decays_at_plus and self.decays_at_minus

    def verify(self) -> bool:
        """Recompute the exponent on both tails and confirm the contradiction."""
        sign = 1 if self.branch == "+" else -1
        for r in (HALF, Fraction(1), Fraction(7, 3), Fraction(50)):
            if sign * log_mode_amplitude(self.m, self.t, r) != self.slope * r + self.intercept_plus:
                return False
            if sign * log_mode_amplitude(self.m, self.t, -r) != -self.slope * r + self.intercept_minus:
                return False
        if self.slope != sign * (1 + self.t) * (self.m - HALF):
            return False
        return self.slope != 0 and not self.square_integrable

    def to_dict(self):
        return {
            "m": self.m,
            "t": str(self.t),
            "branch": self.branch,
            "slope_plus": str(self.slope_plus),
            "slope_minus": str(self.slope_minus),
            "intercept_plus": str(self.intercept_plus),
            "intercept_minus": str(self.intercept_minus),
            "decays_at_plus": self.decays_at_plus,
            "decays_at_minus": self.decays_at_minus,
            "verdict": "L2" if self.square_integrable else "not L2",
        }


def mode_certificate(m: int, t, branch: str = "+") -> ModeCertificate:
    t = Fraction(t)
    if t < 0:
        raise NegativeT(f"t must be >= 0, got {t}")
    if branch not in "+-" or len(branch) != 1:
        raise ValueError("branch is '+' or '-'")
    sign = 1 if branch == "+" else -1
    slope = sign * (1 + t) * (m - HALF)
    c = sign * (1 + t) * (Fraction(1, 4) - RHO_INTEGRAL_HALF)
    return ModeCertificate(m, t, branch, slope, c, -c)


@dataclass
class KernelReport:
    t: Fraction
    modes: range
    certificates: dict[str, list[ModeCertificate]] = field(default_factory=dict)
    dimension: int = 0
    blanket: str = ""

    @property
    def index(self) -> int:
        kplus = sum(c.square_integrable for c in self.certificates["+"])
        kminus = sum(c.square_integrable for c in self.certificates["-"])
        return kplus - kminus

    @property
    def valid(self) -> bool:
        return all(c.verify() for cs in self.certificates.values() for c in cs)

    def to_dict(self):
        return {
            "t": str(self.t),
            "modes": [self.modes.start, self.modes.stop - 1],
            "kernel_dimension": self.dimension,
            "index": self.index,
            "certificates_valid": self.valid,
            "blanket": self.blanket,
            "certificates": {b: [c.to_dict() for c in cs] for b, cs in sorted(self.certificates.items())},
        }

    def to_text(self):
        lines = [f"folded cylinder, t = {self.t}, modes {self.modes.start}..{self.modes.stop - 1}"]
        lines.append(" branch     m  slope(+inf)  slope(-inf)  decays(+inf)  decays(-inf)  verdict")
        for b in ("+", "-"):
            for c in self.certificates[b]:
                lines.append(
                    f"   {b}   {c.m:5d}  {str(c.slope_plus):>11}  {str(c.slope_minus):>11}  "
                    f"{str(c.decays_at_plus):>12}  {str(c.decays_at_minus):>12}  "
                    f"{'L2' if c.square_integrable else 'not L2'}"
                )
        lines.append(self.blanket)
        lines.append(f"kernel {self.dimension}, index {self.index}")
        return "\n".join(lines)


def kernel_dimension(t, mode_range: range) -> KernelReport:
    """L^2 kernel of D_t^+ and D_t^- on the folded cylinder, mode by mode."""
    t = Fraction(t)
    if t < 0:
        raise NegativeT(f"t must be >= 0, got {t}")
    report = KernelReport(t, mode_range)
    for b in ("+", "-"):
        report.certificates[b] = [mode_certificate(m, t, b) for m in mode_range]
    report.dimension = sum(
        c.square_integrable for cs in report.certificates.values() for c in cs
    )
    bound = (1 + t) / 2
    report.blanket = (
        f"all modes: |slope| = (1+t)|m - 1/2| >= {bound} > 0 with the same sign at both ends, "
        "so every nonzero a_m and b_m grows exponentially at one end"
    )
    return report
