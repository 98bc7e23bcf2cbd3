"""Truncated evaluation of the q-Pochhammer infinite product.

The basic object is ``(x; a)_inf = prod_{n>=0} (1 - x a^n)``, absolutely
convergent for a real modulus ``0 <= a < 1``.  Truncation stops after the
factor with index N once ``|x| a^(N+1) < eps``; the discarded tail then
contributes a relative error bounded by a constant multiple of
``sum_{n>N} |x| a^n = |x| a^(N+1) / (1 - a)``.

Coefficient ratios of four such products are evaluated factor-interleaved,
never as quotients of finished products, so intermediate magnitudes stay
near one even as the modulus approaches 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError, DomainError, PoleError

# A denominator factor below this modulus counts as a pole.
POLE_THRESHOLD = 1e-14


@dataclass(frozen=True)
class QTolerance:
    """Absolute truncation tolerance plus a hard cap on the factor count.

    With the defaults, products at modulus 0.1 finish in under 20 factors
    and the cap is only reachable for a modulus extremely close to 1.
    """

    eps: float = 1e-15
    max_terms: int = 10000

    def __post_init__(self) -> None:
        if not self.eps > 0.0:
            raise DomainError(f"eps must be > 0, got {self.eps}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_TOL = QTolerance()


def _check_modulus(a: float) -> float:
    a = float(a)
    if not 0.0 <= a < 1.0:
        raise DomainError(f"product modulus must lie in [0, 1), got {a}")
    return a


def pochhammer(x: complex, a: float, tol: QTolerance = DEFAULT_TOL) -> complex:
    """Evaluate ``(x; a)_inf`` to absolute tail tolerance ``tol.eps``.

    Raises :class:`DomainError` for a modulus outside ``[0, 1)`` and
    :class:`CapExceededError` if ``tol.max_terms`` factors do not reach the
    tail bound.
    """
    a = _check_modulus(a)
    out = 1.0 + 0.0j
    term = complex(x)
    scale = abs(term)
    power = 1.0  # a^(n+1) after multiplying in the n-th factor
    for _ in range(tol.max_terms):
        out *= 1.0 - term
        term *= a
        power *= a
        if scale * power < tol.eps:
            return out
    raise CapExceededError(
        f"(x; a)_inf with |x|={scale:.3g}, a={a}: tail bound {tol.eps} "
        f"not reached within {tol.max_terms} factors"
    )


def partial_product(x: complex, a: float, n_terms: int) -> complex:
    """Product of exactly the first ``n_terms`` factors of ``(x; a)_inf``.

    Independent truncation oracle: no tolerance logic, just a fixed number
    of factors.  Doubling ``n_terms`` changes the result by less than the
    geometric tail bound of the shorter product.
    """
    a = _check_modulus(a)
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    out = 1.0 + 0.0j
    term = complex(x)
    for _ in range(n_terms):
        out *= 1.0 - term
        term *= a
    return out


def pochhammer_ratio(
    x_num1: complex,
    x_num2: complex,
    x_den1: complex,
    x_den2: complex,
    a: float,
    tol: QTolerance = DEFAULT_TOL,
) -> complex:
    """Evaluate ``[(x_num1;a) (x_num2;a)] / [(x_den1;a) (x_den2;a)]``.

    The four products advance in lockstep, one factor of each per step, so
    the running value stays near one.  A denominator factor with modulus
    below :data:`POLE_THRESHOLD` raises :class:`PoleError`.
    """
    a = _check_modulus(a)
    n1, n2 = complex(x_num1), complex(x_num2)
    d1, d2 = complex(x_den1), complex(x_den2)
    scale = max(abs(n1), abs(n2), abs(d1), abs(d2))
    out = 1.0 + 0.0j
    power = 1.0
    for _ in range(tol.max_terms):
        f1 = 1.0 - d1
        f2 = 1.0 - d2
        if abs(f1) < POLE_THRESHOLD or abs(f2) < POLE_THRESHOLD:
            raise PoleError(
                f"denominator factor vanished (|1 - x a^n| < {POLE_THRESHOLD})"
            )
        out *= (1.0 - n1) * (1.0 - n2) / (f1 * f2)
        n1 *= a
        n2 *= a
        d1 *= a
        d2 *= a
        power *= a
        if scale * power < tol.eps:
            return out
    raise CapExceededError(
        f"product ratio at a={a}: tail bound {tol.eps} not reached "
        f"within {tol.max_terms} factors"
    )
