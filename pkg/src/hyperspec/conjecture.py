"""Numerical check of rho(B_m^L(1)) > rho(B_m^L(2)) > rho(B_m^P) on a (k, m) grid."""

from __future__ import annotations

from dataclasses import dataclass

from .core import gen_b_l1, gen_b_l2, gen_b_p
from .spectral import SolverOptions, SpectralError, spectral_radius


@dataclass(frozen=True)
class Bracket:
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def mid(self) -> float:
        return 0.5 * (self.lower + self.upper)


@dataclass(frozen=True)
class VerificationRow:
    k: int
    m: int
    rho_bl1: Bracket | None
    rho_bl2: Bracket | None
    rho_bp: Bracket | None
    error: str | None = None

    @property
    def margins(self) -> tuple[float, float]:
        if self.error:
            return (float("nan"), float("nan"))
        return (self.rho_bl1.mid - self.rho_bl2.mid, self.rho_bl2.mid - self.rho_bp.mid)

    @property
    def ordering_holds(self) -> bool:
        # each margin must beat the combined bracket widths, which implies
        # the brackets are disjoint and correctly ordered
        if self.error:
            return False
        d12, d23 = self.margins
        return (
            d12 > self.rho_bl1.width + self.rho_bl2.width
            and d23 > self.rho_bl2.width + self.rho_bp.width
        )


def verify_row(k: int, m: int, opts: SolverOptions | None = None) -> VerificationRow:
    brackets = []
    try:
        for gen in (gen_b_l1, gen_b_l2, gen_b_p):
            r = spectral_radius(gen(k, m).graph, opts)
            brackets.append(Bracket(r.lower, r.upper))
    except SpectralError as exc:
        return VerificationRow(k, m, None, None, None, error=str(exc))
    return VerificationRow(k, m, *brackets)


def verify_conjecture(
    ks, ms, opts: SolverOptions | None = None
) -> list[VerificationRow]:
    for k in ks:
        if k < 3:
            raise ValueError(f"need k >= 3, got {k}")
    for m in ms:
        if m < 5:
            raise ValueError(f"need m >= 5, got {m}")
    return [verify_row(k, m, opts) for k in sorted(ks) for m in sorted(ms)]
