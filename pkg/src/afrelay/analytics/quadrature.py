"""Adaptive Gauss-Kronrod quadrature.

Each panel is integrated with the 15-point Kronrod rule and the embedded
7-point Gauss rule; ``|K15 - G7|`` serves as the panel error estimate. The
panel with the largest estimate is bisected until the summed estimate meets
the tolerance of the ``QuadratureSpec``. Panel order and summation are fixed,
so repeated calls return bit-identical results.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
"""Kronrod abscissae on [0, 1]; odd indices are the Gauss nodes."""

_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)

_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)
"""Gauss weights for _XGK[1], _XGK[3], _XGK[5], _XGK[7]."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach its tolerance."""

    def __init__(self, value: float, error_bound: float, subdivisions: int) -> None:
        self.value = value
        self.error_bound = error_bound
        self.subdivisions = subdivisions
        super().__init__(
            f"quadrature did not converge after {subdivisions} subdivisions: "
            f"best estimate {value!r}, error bound {error_bound:.3e}"
        )


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Tolerances and work limit for ``integrate_adaptive``.

    The integral is accepted once the error estimate is at most
    ``max(abs_tol, rel_tol * |value|)``.
    """

    abs_tol: float = 1e-10
    """Absolute error tolerance."""

    rel_tol: float = 1e-9
    """Relative error tolerance."""

    max_subdivisions: int = 2000
    """Maximum number of panels before giving up."""

    def __post_init__(self) -> None:
        """Validate tolerances."""
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise TypeError(f"{name} must be int or float, got {type(value)}")
            if math.isnan(value) or value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")
            object.__setattr__(self, name, float(value))
        if self.abs_tol == 0.0 and self.rel_tol == 0.0:
            raise ValueError("at least one of abs_tol and rel_tol must be positive")
        if not isinstance(self.max_subdivisions, int):
            raise TypeError(
                f"max_subdivisions must be int, got {type(self.max_subdivisions)}"
            )
        if self.max_subdivisions < 10:
            raise ValueError(
                f"max_subdivisions must be >= 10, got {self.max_subdivisions}"
            )

    def tolerance(self, value: float) -> float:
        """Error target for an integral of the given size."""
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_QUADRATURE = QuadratureSpec()


def _finite(f: Callable[[float], float], x: float) -> float:
    value = f(x)
    if not math.isfinite(value):
        raise ValueError(f"integrand is not finite at x={x!r}: {value!r}")
    return value


def gauss_kronrod_panel(
    f: Callable[[float], float], a: float, b: float
) -> tuple[float, float]:
    """
    Integrate f over one panel with the (7, 15) Gauss-Kronrod pair.

    Returns:
        ``(kronrod_estimate, |kronrod - gauss|)``
    """
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    f_center = _finite(f, center)
    kronrod = _WGK[7] * f_center
    gauss = _WG[3] * f_center
    for j in range(7):
        dx = half * _XGK[j]
        pair = _finite(f, center - dx) + _finite(f, center + dx)
        kronrod += _WGK[j] * pair
        if j % 2 == 1:
            gauss += _WG[j // 2] * pair
    return kronrod * half, abs((kronrod - gauss) * half)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """
    Adaptively integrate f over [a, b].

    Args:
        f: Integrand, finite on [a, b]
        a: Lower limit
        b: Upper limit, ``b >= a``
        quad: Tolerances and panel limit

    Returns:
        ``(value, error_bound)`` with ``error_bound <= quad.tolerance(value)``

    Raises:
        ValueError: If a > b or the integrand is not finite
        QuadratureError: If the tolerance is not met within
            ``quad.max_subdivisions`` panels

    Example:
        >>> value, err = integrate_adaptive(lambda x: x * x, 0.0, 1.0)
        >>> round(value, 12)
        0.333333333333
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"limits must be finite, got [{a}, {b}]")
    if a > b:
        raise ValueError(f"lower limit must not exceed upper limit, got [{a}, {b}]")
    if a == b:
        return 0.0, 0.0

    # heap entries: (-error, sequence, left, right, value)
    value, error = gauss_kronrod_panel(f, a, b)
    heap: list[tuple[float, int, float, float, float]] = [(-error, 0, a, b, value)]
    sequence = 1

    while True:
        total = math.fsum(entry[4] for entry in heap)
        total_error = math.fsum(-entry[0] for entry in heap)
        if total_error <= quad.tolerance(total):
            return total, total_error
        if len(heap) >= quad.max_subdivisions:
            raise QuadratureError(total, total_error, len(heap))

        _, _, left, right, _ = heapq.heappop(heap)
        mid = 0.5 * (left + right)
        if not left < mid < right:
            # Panel cannot be split further in double precision.
            raise QuadratureError(total, total_error, len(heap) + 1)
        for lo, hi in ((left, mid), (mid, right)):
            value, error = gauss_kronrod_panel(f, lo, hi)
            heapq.heappush(heap, (-error, sequence, lo, hi, value))
            sequence += 1


def integrate_sqrt_endpoint(
    f: Callable[[float], float],
    a: float,
    b: float,
    split: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """
    Integrate f over [a, b] when f has an unbounded derivative at a.

    On ``[a, split]`` the substitution ``y = a + w^2`` is applied, which turns a
    ``(y - a) log(y - a)`` type endpoint into a smooth one; ``[split, b]`` is
    integrated directly. ``split`` is clipped into [a, b].

    Returns:
        ``(value, error_bound)`` summed over both pieces
    """
    split = min(max(float(split), a), b)
    w_max = math.sqrt(split - a)

    def substituted(w: float) -> float:
        return 2.0 * w * f(a + w * w)

    head, head_err = integrate_adaptive(substituted, 0.0, w_max, quad)
    tail, tail_err = integrate_adaptive(f, split, b, quad)
    return head + tail, head_err + tail_err
