"""Special functions evaluated to near machine precision.

Everything here is scalar-oriented and feeds the constants and central
values used by the weighted prime-sum identities: digamma, complex
log-gamma, Hurwitz zeta with first and second s-derivatives, the Lerch
transcendent on [0, 1], Dirichlet L-functions built from Hurwitz zeta,
and the aggregated central log-derivative C(q) summed over all characters
of a modulus.

The Hurwitz engine is Euler-Maclaurin with ``N = max(20, ceil(|s|)) + 10``
initial terms and 12 Bernoulli correction terms; derivatives are obtained
by differentiating the same expansion term by term, with Pochhammer-product
derivatives carried by recurrence.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli as _bernoulli_numbers

from .characters import (
    CharacterGroup,
    DirichletCharacter,
    _factorize,
    character_group,
    induce_primitive,
)

# B_2, B_4, ..., B_24 (even-index Bernoulli numbers).
_B_EVEN = _bernoulli_numbers(24)[2::2]
_EM_BERNOULLI_TERMS = 12
_LERCH_TOL = 1e-14


def digamma(x: float) -> float:
    """Real digamma for x > 0, via recurrence to x >= 10 plus asymptotics."""
    if x <= 0:
        raise ValueError("digamma implemented for positive real arguments")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for j in range(8):
        series -= _B_EVEN[j] / (2 * (j + 1)) * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x + series


def digamma_complex(z: complex) -> complex:
    """Digamma for complex z off the non-positive integers."""
    z = complex(z)
    if z.real < 0.5:
        # Reflection keeps the recurrence in the right half plane.
        if z == int(z.real) and z.imag == 0:
            raise ValueError("digamma pole at non-positive integer")
        return digamma_complex(1.0 - z) - math.pi / cmath.tan(math.pi * z)
    acc = 0.0 + 0.0j
    while abs(z) < 10.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    series = 0.0 + 0.0j
    power = inv2
    for j in range(8):
        series -= _B_EVEN[j] / (2 * (j + 1)) * power
        power *= inv2
    return acc + cmath.log(z) - 0.5 / z + series


def log_gamma(z: complex) -> complex:
    """log Gamma(z) for Re z > 0, continuous in z (no branch jumps).

    Shifts the argument upward until |z| >= 10, then applies Stirling's
    series with eight Bernoulli terms.
    """
    z = complex(z)
    if z.real <= 0:
        raise ValueError("log_gamma implemented for Re z > 0")
    acc = 0.0 + 0.0j
    while abs(z) < 10.0:
        acc += cmath.log(z)
        z += 1.0
    series = 0.0 + 0.0j
    zpow = z
    for j in range(8):
        k = 2 * (j + 1)
        series += _B_EVEN[j] / (k * (k - 1) * zpow)
        zpow *= z * z
    stirling = (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2.0 * math.pi) + series
    return stirling - acc


def _hurwitz_em(s: complex, a: float) -> tuple[complex, complex, complex]:
    """Hurwitz zeta(s, a) and its first two s-derivatives (s != 1, a > 0)."""
    s = complex(s)
    if a <= 0:
        raise ValueError("Hurwitz zeta requires a > 0")
    if abs(s - 1.0) < 1e-12:
        raise ValueError("Hurwitz zeta has a pole at s = 1")
    n_init = max(20, math.ceil(abs(s))) + 10

    # Leading sum over n = 0 .. N-1, differentiated term by term.
    logs = np.log(np.arange(n_init, dtype=np.float64) + a)
    weights = np.exp(-s * logs)
    v0 = weights.sum()
    v1 = -(logs * weights).sum()
    v2 = (logs * logs * weights).sum()

    big = n_init + a
    ell = math.log(big)

    # Integral tail (N + a)^(1-s) / (s - 1).
    tail = cmath.exp((1.0 - s) * ell) / (s - 1.0)
    v0 += tail
    v1 += -ell * tail - tail / (s - 1.0)
    v2 += (
        ell * ell * tail
        + 2.0 * ell * tail / (s - 1.0)
        + 2.0 * tail / (s - 1.0) ** 2
    )

    # Midpoint correction (1/2)(N + a)^(-s).
    half = 0.5 * cmath.exp(-s * ell)
    v0 += half
    v1 += -ell * half
    v2 += ell * ell * half

    # Bernoulli corrections with Pochhammer products (s)(s+1)...(s+2j-2);
    # first and second derivatives of the product follow the recurrences
    # P'_{k+1} = P'_k (s + k) + P_k and P''_{k+1} = P''_k (s + k) + 2 P'_k.
    poch = 1.0 + 0.0j
    dpoch = 0.0 + 0.0j
    d2poch = 0.0 + 0.0j
    k = 0
    for j in range(1, _EM_BERNOULLI_TERMS + 1):
        target = 2 * j - 1
        while k < target:
            d2poch = d2poch * (s + k) + 2.0 * dpoch
            dpoch = dpoch * (s + k) + poch
            poch = poch * (s + k)
            k += 1
        coeff = _B_EVEN[j - 1] / math.factorial(2 * j)
        expo = cmath.exp(-(s + 2 * j - 1) * ell)
        v0 += coeff * poch * expo
        v1 += coeff * (dpoch - ell * poch) * expo
        v2 += coeff * (d2poch - 2.0 * ell * dpoch + ell * ell * poch) * expo
    return v0, v1, v2


def hurwitz_zeta(s: complex, a: float) -> complex:
    """Hurwitz zeta(s, a) for complex s != 1, real a > 0."""
    return _hurwitz_em(s, a)[0]


def hurwitz_zeta_ds(s: complex, a: float) -> complex:
    """d/ds of Hurwitz zeta(s, a)."""
    return _hurwitz_em(s, a)[1]


def hurwitz_zeta_ds2(s: complex, a: float) -> complex:
    """d^2/ds^2 of Hurwitz zeta(s, a)."""
    return _hurwitz_em(s, a)[2]


def zeta(s: complex) -> complex:
    """Riemann zeta at complex s != 1."""
    return hurwitz_zeta(s, 1.0)


def zeta_with_derivatives(s: complex) -> tuple[complex, complex, complex]:
    """(zeta, zeta', zeta'') at complex s != 1."""
    return _hurwitz_em(s, 1.0)


def zeta_logderiv(s: complex) -> complex:
    """zeta'/zeta at complex s (not at a zero or the pole)."""
    v0, v1, _ = _hurwitz_em(s, 1.0)
    if abs(v0) < 1e-13:
        raise ArithmeticError("zeta'/zeta evaluated at a zero of zeta")
    return v1 / v0


def zeta_logderiv_prime(s: complex) -> complex:
    """(zeta'/zeta)'(s) = zeta''/zeta - (zeta'/zeta)^2."""
    v0, v1, v2 = _hurwitz_em(s, 1.0)
    if abs(v0) < 1e-13:
        raise ArithmeticError("(zeta'/zeta)' evaluated at a zero of zeta")
    r = v1 / v0
    return v2 / v0 - r * r


def xi_logderiv(s: complex) -> complex:
    """Logarithmic derivative of the completed zeta function.

    xi(s) = (1/2) s (s-1) pi^(-s/2) Gamma(s/2) zeta(s), so
    xi'/xi = 1/s + 1/(s-1) - (1/2) log pi + (1/2) psi(s/2) + zeta'/zeta.
    The functional symmetry makes this vanish at the centre s = 1/2.
    """
    s = complex(s)
    return (
        1.0 / s
        + 1.0 / (s - 1.0)
        - 0.5 * math.log(math.pi)
        + 0.5 * digamma_complex(s / 2.0)
        + zeta_logderiv(s)
    )


def lerch_phi(z: float, s: float, a: float) -> float:
    """Lerch transcendent ``sum_{n>=0} z^n / (n+a)^s`` for 0 <= z <= 1.

    Direct series for z < 1, truncated when the geometric tail bound
    ``z^N / ((N+a)^s (1-z))`` drops below 1e-14; the z = 1 endpoint
    delegates to Hurwitz zeta (requires s > 1 there).
    """
    if not 0.0 <= z <= 1.0:
        raise ValueError("lerch_phi implemented for 0 <= z <= 1")
    if a <= 0:
        raise ValueError("lerch_phi requires a > 0")
    if z == 1.0:
        if s <= 1.0:
            raise ValueError("series diverges at z = 1 unless s > 1")
        return float(hurwitz_zeta(s, a).real)
    if z > 0.999:
        raise ValueError("direct series too slow for z in (0.999, 1)")
    acc = 0.0
    comp = 0.0
    n = 0
    zpow = 1.0
    while True:
        term = zpow / (n + a) ** s
        # Neumaier step keeps the running sum compensated.
        t = acc + term
        if abs(acc) >= abs(term):
            comp += (acc - t) + term
        else:
            comp += (term - t) + acc
        acc = t
        n += 1
        zpow *= z
        if zpow / ((n + a) ** s * (1.0 - z)) < _LERCH_TOL:
            return acc + comp


# --------------------------------------------------------------------------
# Dirichlet L-functions from Hurwitz zeta.


def dirichlet_L(s: complex, chi: DirichletCharacter, route: str = "hurwitz") -> complex:
    """L(s, chi) for complex s != 1 (the pole only matters for principal chi).

    route="hurwitz": q^(-s) * sum_a chi(a) zeta(s, a/q), valid for every
    character. route="euler_factor": evaluate the inducing primitive
    character and restore the finitely many Euler factors at primes
    dividing the modulus; used as an independent cross-check.
    """
    if route == "hurwitz":
        return _dirichlet_L_derivs(s, chi)[0]
    if route == "euler_factor":
        star = induce_primitive(chi)
        value = _dirichlet_L_derivs(s, star)[0]
        for p, _ in _factorize(chi.modulus):
            # chi*(p) = 0 when p divides the conductor, so those factors
            # are exactly 1 and harmless.
            value *= 1.0 - star(p) * p ** (-complex(s))
        return value
    raise ValueError(f"unknown route {route!r}")


def _dirichlet_L_derivs(
    s: complex, chi: DirichletCharacter
) -> tuple[complex, complex, complex]:
    """(L, L', L'') at s for chi, via the Hurwitz decomposition."""
    s = complex(s)
    q = chi.modulus
    logq = math.log(q) if q > 1 else 0.0
    qs = cmath.exp(-s * logq)
    h0 = h1 = h2 = 0.0 + 0.0j
    for a in range(1, q + 1):
        c = chi(a)
        if c == 0:
            continue
        z0, z1, z2 = _hurwitz_em(s, a / q)
        h0 += c * z0
        h1 += c * z1
        h2 += c * z2
    if q == 1:
        z0, z1, z2 = _hurwitz_em(s, 1.0)
        h0, h1, h2 = z0, z1, z2
    value = qs * h0
    d1 = qs * (h1 - logq * h0)
    d2 = qs * (h2 - 2.0 * logq * h1 + logq * logq * h0)
    return value, d1, d2


def L_with_derivatives(
    s: complex, chi: DirichletCharacter
) -> tuple[complex, complex, complex]:
    """(L, L', L'') at complex s."""
    return _dirichlet_L_derivs(s, chi)


def L_logderiv(s: complex, chi: DirichletCharacter) -> complex:
    """L'/L(s, chi); raises if evaluated at a zero of L."""
    v0, v1, _ = _dirichlet_L_derivs(s, chi)
    if abs(v0) < 1e-13:
        raise ArithmeticError("L'/L evaluated at a zero of L")
    return v1 / v0


def L_logderiv_prime(s: complex, chi: DirichletCharacter) -> complex:
    """(L'/L)'(s, chi) = L''/L - (L'/L)^2."""
    v0, v1, v2 = _dirichlet_L_derivs(s, chi)
    if abs(v0) < 1e-13:
        raise ArithmeticError("(L'/L)' evaluated at a zero of L")
    r = v1 / v0
    return v2 / v0 - r * r


# --------------------------------------------------------------------------
# Central values and constants.


@dataclass(frozen=True)
class CentralConstants:
    """Constants at the centre of the critical strip, computed in-package.

    ``zeta_logderiv_half_closed`` is the closed form
    (pi/2 + log(8 pi) + euler_gamma) / 2, which must agree with the
    numerically computed ``zeta_logderiv_half``.
    """

    euler_gamma: float
    zeta_half: float
    minus_zeta_half: float
    zeta_logderiv_half: float
    zeta_logderiv_half_closed: float
    zeta_logderiv_prime_half: float
    digamma_quarter: float
    digamma_three_quarter: float
    xi_logderiv_half: float


def central_constants() -> CentralConstants:
    """Evaluate the central constants from the in-package machinery."""
    gamma0 = float(np.euler_gamma)
    v0, v1, _ = _hurwitz_em(0.5, 1.0)
    zeta_half = float(v0.real)
    logderiv = float((v1 / v0).real)
    closed = (math.pi / 2.0 + math.log(8.0 * math.pi) + gamma0) / 2.0
    return CentralConstants(
        euler_gamma=gamma0,
        zeta_half=zeta_half,
        minus_zeta_half=-zeta_half,
        zeta_logderiv_half=logderiv,
        zeta_logderiv_half_closed=closed,
        zeta_logderiv_prime_half=float(zeta_logderiv_prime(0.5).real),
        digamma_quarter=float(digamma(0.25)),
        digamma_three_quarter=float(digamma(0.75)),
        xi_logderiv_half=float(abs(xi_logderiv(0.5))),
    )


def threshold_moduli() -> tuple[float, float]:
    """(pi e^{-psi(1/4)}, pi e^{-psi(3/4)}).

    Moduli above the first value force a negative central log-derivative
    for even characters; the second plays the same role for odd ones.
    """
    return (
        math.pi * math.exp(-digamma(0.25)),
        math.pi * math.exp(-digamma(0.75)),
    )


@dataclass(frozen=True)
class LCentralData:
    """Central data for one Dirichlet character."""

    modulus: int
    conductor: int
    parity: int
    l_half: complex
    l_ds_half: complex
    logderiv: complex
    logderiv_prime: complex
    re_logderiv_closed_form: float | None

    @property
    def is_negative(self) -> bool:
        return self.logderiv.real < 0


def l_central_data(chi: DirichletCharacter) -> LCentralData:
    """Evaluate L and its first two derivatives at the centre s = 1/2.

    For a primitive character the functional equation pins the real part of
    the central log-derivative to (1/2)[log(pi/q) - psi(1/4 + kappa/2)];
    that closed form is attached for cross-checking.
    """
    v0, v1, v2 = _dirichlet_L_derivs(0.5, chi)
    if abs(v0) < 1e-13:
        raise ArithmeticError("vanishing central L-value")
    r = v1 / v0
    closed = None
    if chi.is_primitive and chi.modulus > 1:
        q = chi.modulus
        closed = 0.5 * (math.log(math.pi / q) - digamma(0.25 + chi.parity / 2.0))
    return LCentralData(
        modulus=chi.modulus,
        conductor=chi.conductor,
        parity=chi.parity,
        l_half=v0,
        l_ds_half=v1,
        logderiv=r,
        logderiv_prime=v2 / v0 - r * r,
        re_logderiv_closed_form=closed,
    )


@dataclass(frozen=True)
class CqResult:
    """Aggregated central log-derivative over all characters mod q."""

    modulus: int
    value: float
    imag_residual: float
    path: str
    per_character: tuple[complex, ...] = ()


def c_of_q(q: int, path: str = "group_sum") -> CqResult:
    """C(q) = sum over all characters mod q of L'/L(1/2, chi).

    path="group_sum" evaluates every character numerically (complex sum;
    the imaginary parts of conjugate pairs must cancel). path="closed_form"
    uses the odd-prime-modulus identity
    C(q) = (q-1)/2 (log 8 pi + gamma) - (q-2)/2 log q + log q / (sqrt(q)-1)
    and raises for any other modulus.
    """
    if q < 3:
        raise ValueError("C(q) defined here for q >= 3")
    if path == "closed_form":
        fac = _factorize(q)
        if len(fac) != 1 or fac[0][0] == 2 or fac[0][1] != 1:
            raise ValueError("closed form requires an odd prime modulus")
        gamma0 = float(np.euler_gamma)
        logq = math.log(q)
        value = (
            (q - 1) / 2.0 * (math.log(8.0 * math.pi) + gamma0)
            - (q - 2) / 2.0 * logq
            + logq / (math.sqrt(q) - 1.0)
        )
        return CqResult(modulus=q, value=value, imag_residual=0.0, path=path)
    if path != "group_sum":
        raise ValueError(f"unknown path {path!r}")
    group = character_group(q)
    parts = []
    total = 0.0 + 0.0j
    for chi in group:
        v0, v1, _ = _dirichlet_L_derivs(0.5, chi)
        if abs(v0) < 1e-13:
            raise ArithmeticError(
                f"vanishing central L-value for a character mod {q}"
            )
        r = v1 / v0
        parts.append(r)
        total += r
    return CqResult(
        modulus=q,
        value=float(total.real),
        imag_residual=abs(total.imag),
        path=path,
        per_character=tuple(parts),
    )

