"""
Closed-form expansion bounds.

Inputs that are ints or Fractions give exact Fractions as long as no
transcendental term is involved (λ = 0); otherwise floats are returned.
Negative values are returned as they are.
"""

import math
from fractions import Fraction
from math import comb, factorial
from typing import Sequence, Union

from errors import PreconditionError

Number = Union[int, float, Fraction]


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _as_number(x) -> Number:
    if isinstance(x, str):
        return Fraction(x)
    return x


def _betas(betas: Union[Number, Sequence[Number]], k: int) -> list:
    """A scalar β stands for β_0 = ... = β_k."""
    if isinstance(betas, (int, float, Fraction, str)):
        return [_as_number(betas)] * (k + 1)
    values = [_as_number(b) for b in betas]
    if len(values) != k + 1:
        raise PreconditionError(f"Expected {k + 1} link constants, got {len(values)}")
    return values


def _product(values) -> Number:
    result: Number = Fraction(1) if all(_is_exact(v) for v in values) else 1.0
    for v in values:
        result = result * (Fraction(v) if isinstance(result, Fraction) else float(v))
    return result


def _minus_e_times(main: Number, lam: Number) -> Number:
    lam = _as_number(lam)
    if lam == 0:
        return main
    return float(main) - math.e * float(lam)


def local_to_global_bound(betas, lam: Number, k: int) -> Number:
    """∏β_ℓ / ((k+2)!·4) − eλ: cosystolic constant from link expansion and spectral gap."""
    main = _product(_betas(betas, k)) / (factorial(k + 2) * 4)
    return _minus_e_times(main, lam)


def heavy_cosystole_bound(betas, lam: Number, k: int) -> Number:
    """∏β_ℓ / (k+1)! − eλ: weight lower bound for non-zero locally minimal cocycles."""
    main = _product(_betas(betas, k)) / factorial(k + 1)
    return _minus_e_times(main, lam)


def overlap_constant(beta: Number, nu: Number, eps: Number, k: int) -> Number:
    """νβ^{k+1}/(2(k+1)!) − εk²β^{−(2k+1)}."""
    beta, nu, eps = _as_number(beta), _as_number(nu), _as_number(eps)
    if all(_is_exact(x) for x in (beta, nu, eps)):
        beta, nu, eps = Fraction(beta), Fraction(nu), Fraction(eps)
    else:
        beta, nu, eps = float(beta), float(nu), float(eps)
    if beta == 0:
        raise PreconditionError("β must be positive")
    return nu * beta ** (k + 1) / (2 * factorial(k + 1)) - eps * k * k * beta ** (-(2 * k + 1))


def default_eta(betas, k: int) -> Number:
    """η = ∏β_ℓ / (4(k+2)!), the threshold used by the local-to-global argument."""
    return _product(_betas(betas, k)) / (4 * factorial(k + 2))


def cone_to_bound(radius: int, k_top: int, level: int, homogeneous: bool = True) -> Fraction:
    """h^ℓ ≥ 1/(B·C(k_top+1, ℓ+1)) for an ℓ-cone of radius B on a homogeneous complex."""
    if not homogeneous:
        raise PreconditionError("Cone bounds need a homogeneous lattice")
    if radius < 1:
        raise PreconditionError(f"Cone radius must be positive, got {radius}")
    return Fraction(1, radius * comb(k_top + 1, level + 1))


def nonabelian_cone_bound(diameter: int, k_top: int) -> Fraction:
    """h^1 ≥ 1/(C(k_top+1, 3)·R) from a non-abelian cone of diameter R."""
    if diameter < 1:
        raise PreconditionError(f"Cone diameter must be positive, got {diameter}")
    if k_top < 2:
        raise PreconditionError("Non-abelian cone bounds need a complex of dimension at least 2")
    return Fraction(1, comb(k_top + 1, 3) * diameter)


def decoder_stratum_bound(i: int, k: int, beta: Number, p: Number, eps: Number) -> Number:
    """
    Bound on the mismatch of δg with f on faces with exactly i vertices outside F.

    For i ≤ k: (k+2)·i!·β^{−(i+1)}·ε/p·Σ_{j≤i} 1/j!.
    For i = k+1: (k+2)!·β^{−(k+1)}·ε/p·Σ_{j=1}^{k+1} 1/j!.
    """
    if not 0 <= i <= k + 1:
        raise PreconditionError(f"Stratum {i} outside 0..{k + 1}")
    beta, p, eps = _as_number(beta), _as_number(p), _as_number(eps)
    exact = all(_is_exact(x) for x in (beta, p, eps))
    conv = Fraction if exact else float
    beta, p, eps = conv(beta), conv(p), conv(eps)
    if i <= k:
        series = sum(conv(Fraction(1, factorial(j))) for j in range(i + 1))
        return (k + 2) * factorial(i) * beta ** (-(i + 1)) * eps / p * series
    series = sum(conv(Fraction(1, factorial(j))) for j in range(1, k + 2))
    return factorial(k + 2) * beta ** (-(k + 1)) * eps / p * series


def decoder_bound(k: int, beta: Number, p: Number, eps: Number) -> float:
    """Overall e·(k+2)!·ε/(pβ^{k+1})."""
    return math.e * factorial(k + 2) * float(eps) / (float(p) * float(beta) ** (k + 1))
