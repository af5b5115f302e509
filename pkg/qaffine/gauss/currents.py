# qaffine/gauss/currents.py

"""
Drinfeld currents assembled from the Gauss factors of L^+ and L^- at level
zero:

    X^+_i(z) = f^+_i(z) - f^-_i(z),     X^-_i(z) = e^-_i(z) - e^+_i(z),
    phi_i(z) = k^+_{i+1}(z) k^+_i(z)^-1, psi_i(z) = k^-_{i+1}(z) k^-_i(z)^-1,

and the combined currents

    X^±(z) = [X^±_1(z) + X^±_2(zq)] / (q - q^-1),
    phi(z) = kappa phi_1(z) - phi_2(zq),
    psi(z) = psi_1(z) - kappa_bar psi_2(zq),

with kappa = 1 + q^(-1/2) - q^(1/2) and kappa_bar = 1 + q^(1/2) - q^(-1/2), its
image under q -> q^-1. With kappa_bar the difference phi - psi is supported
on the same delta functions as the X^+ X^- anticommutator.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Union
import logging

from qaffine.gauss.decompose import GaussData, invert_series
from qaffine.kernel.qpowers import q_minus_q_inverse, q_ratexpr
from qaffine.kernel.ratexpr import RatExpr
from qaffine.kernel.series import FormalSeries
from qaffine.rs.loperator import MINUS, PLUS

logger = logging.getLogger(__name__)


def kappa() -> RatExpr:
    """The constant 1 + q^(-1/2) - q^(1/2) of the combined Cartan currents."""
    return RatExpr.one() + q_ratexpr(Fraction(-1, 2)) - q_ratexpr(Fraction(1, 2))


def kappa_bar() -> RatExpr:
    """kappa with q replaced by q^-1, the constant of psi."""
    return RatExpr.one() + q_ratexpr(Fraction(1, 2)) - q_ratexpr(Fraction(-1, 2))


def q_shift(series: FormalSeries, k: Union[int, Fraction]) -> FormalSeries:
    """The series at var * q^k: coefficient n picks up q^(k n)."""
    if k == 0:
        return series
    return series.q_shifted(lambda n: q_ratexpr(k * n))


@dataclass(frozen=True)
class CurrentSet:
    """Level-zero currents; every field is a series of 3x3 operators in z."""

    X1p: FormalSeries
    X1m: FormalSeries
    X2p: FormalSeries
    X2m: FormalSeries
    Xp: FormalSeries
    Xm: FormalSeries
    phi1: FormalSeries
    phi2: FormalSeries
    psi1: FormalSeries
    psi2: FormalSeries
    phi: FormalSeries
    psi: FormalSeries
    central_charge: int = 0

    def as_dict(self) -> Dict[str, FormalSeries]:
        return {name: getattr(self, name) for name in
                ("X1p", "X1m", "X2p", "X2m", "Xp", "Xm",
                 "phi1", "phi2", "psi1", "psi2", "phi", "psi")}


def build_currents(g_plus: GaussData, g_minus: GaussData) -> CurrentSet:
    """
    Builds the currents from the Gauss data of L^+ and L^-.

    Raises:
        ValueError: If the signs of the two Gauss data are not '+' and '-'.
        SeriesNotInvertible: If a k factor cannot be inverted.
    """
    if g_plus.sign != PLUS or g_minus.sign != MINUS:
        raise ValueError(f"expected Gauss data of L^+ and L^-, got '{g_plus.sign}' and '{g_minus.sign}'")
    x1p = g_plus.f1 - g_minus.f1
    x2p = g_plus.f2 - g_minus.f2
    x1m = g_minus.e1 - g_plus.e1
    x2m = g_minus.e2 - g_plus.e2
    scale = RatExpr.one() / q_minus_q_inverse()
    xp = (x1p + q_shift(x2p, 1)).scaled(scale)
    xm = (x1m + q_shift(x2m, 1)).scaled(scale)
    phi1 = g_plus.k2 * invert_series(g_plus.k1)
    phi2 = g_plus.k3 * invert_series(g_plus.k2)
    psi1 = g_minus.k2 * invert_series(g_minus.k1)
    psi2 = g_minus.k3 * invert_series(g_minus.k2)
    phi = phi1.scaled(kappa()) - q_shift(phi2, 1)
    psi = psi1 - q_shift(psi2, 1).scaled(kappa_bar())
    logger.info(f"Built currents: X^+_1 known on {x1p.window()}, phi on {phi.window()}.")
    return CurrentSet(x1p, x1m, x2p, x2m, xp, xm, phi1, phi2, psi1, psi2, phi, psi)


def current_bindings(g_plus: GaussData, g_minus: GaussData,
                     currents: CurrentSet = None) -> Dict[str, FormalSeries]:
    """
    Names available to relation suites.

    Gauss factors appear as e.g. ``k1p`` (k^+_1) and ``f13m`` (f^-_13), the
    currents under their CurrentSet field names.
    """
    currents = currents or build_currents(g_plus, g_minus)
    bindings: Dict[str, FormalSeries] = {}
    for suffix, data in (("p", g_plus), ("m", g_minus)):
        for name, series in data.factors().items():
            bindings[f"{name}{suffix}"] = series
    bindings.update(currents.as_dict())
    return bindings
