"""Order-statistics machinery: pdf matrix, permanents, and outage quadrature.

The joint density of the descending order statistics of n independent
exponentials with distinct means is the permanent of the matrix whose row r,
column c entry is the c-th marginal pdf evaluated at the r-th ordered point.
Expanding the permanent into its n! products turns the outage probability
into a sum of nested one-dimensional integrals that this module evaluates
numerically, giving an oracle that is independent of the closed forms.

Two integration regions are offered, because they genuinely differ for
n >= 3:

* ``paper_bounds``  - the nested limits x_2 < x_1 - P, x_3 < x_1 - x_2 - P,
  ..., i.e. the plain simplex {x_2 + ... + x_n < x_1 - P}.  Combined with the
  symmetric permanent density this counts every ordered configuration
  (n-1)! times and reproduces the ``paper`` closed-form variant, including
  its negative values.
* ``ordered_region`` - the same limits intersected with the descending-order
  cone x_1 >= x_2 >= ... >= x_n, where the permanent really is the joint
  density of the order statistics.  This reproduces the ``corrected``
  variant and the Monte Carlo estimates.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad

REGION_PAPER_BOUNDS = "paper_bounds"
REGION_ORDERED = "ordered_region"
REGIONS = (REGION_PAPER_BOUNDS, REGION_ORDERED)

MAX_PERMANENT_N = 12  # Ryser is O(2^n * n); explicit guard beats an hour-long call
MAX_NAIVE_N = 8  # O(n! * n)
MAX_QUAD_N = 4  # nested 1-D quadrature cost
TOL_MIN, TOL_MAX = 1e-10, 1e-3

# internal region tags for the recursive integrator
_SIMPLEX = "simplex"  # paper_bounds
_CHAIN_SIMPLEX = "chain_simplex"  # ordered_region
_CHAIN = "chain"  # descending cone only (normalization checks)


def permanent(matrix) -> float:
    """Permanent of a square matrix by Ryser's inclusion-exclusion formula.

    perm(A) = sum over non-empty column subsets S of
    (-1)^(n-|S|) * prod_rows(sum of the selected columns); the subsets are
    walked in Gray-code order so each step updates one column sum, O(2^n * n).
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if not 1 <= n <= MAX_PERMANENT_N:
        raise ValueError(f"permanent supports 1 <= n <= {MAX_PERMANENT_N}, got {n}")
    row_sum = np.zeros(n)
    total = 0.0
    gray = 0
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        bit = new_gray ^ gray
        j = bit.bit_length() - 1
        if new_gray & bit:
            row_sum += a[:, j]
        else:
            row_sum -= a[:, j]
        sign = -1.0 if (n - bin(new_gray).count("1")) % 2 else 1.0
        total += sign * float(row_sum.prod())
        gray = new_gray
    return total


def permanent_naive(matrix) -> float:
    """Permanent by direct expansion over all n! permutations (cross-check)."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if not 1 <= n <= MAX_NAIVE_N:
        raise ValueError(f"permanent_naive supports 1 <= n <= {MAX_NAIVE_N}, got {n}")
    rows = np.arange(n)
    return math.fsum(float(a[rows, perm].prod()) for perm in itertools.permutations(range(n)))


def exponential_pdf(x: float, mean: float) -> float:
    return math.exp(-x / mean) / mean


def pdf_matrix(
    x: Sequence[float],
    means: Sequence[float],
    pdfs: Optional[Sequence[Callable[[float], float]]] = None,
) -> np.ndarray:
    """n x n matrix with entry (r, c) = marginal pdf c evaluated at x[r].

    The marginals default to exponentials with the given means.  ``pdfs``
    accepts arbitrary one-dimensional pdf evaluators instead (experimental;
    the rest of the module assumes exponential marginals).
    """
    x = np.asarray(x, dtype=float)
    means = np.asarray(means, dtype=float)
    if x.ndim != 1 or x.size != means.size:
        raise ValueError(f"x and means must be 1-D with equal length, got {x.shape}, {means.shape}")
    if pdfs is None:
        out = np.exp(-x[:, None] / means[None, :]) / means[None, :]
    else:
        if len(pdfs) != x.size:
            raise ValueError("need one pdf evaluator per variable")
        out = np.array([[f(float(xi)) for f in pdfs] for xi in x], dtype=float)
    if not np.all(np.isfinite(out)) or (out < 0).any():
        raise ValueError("pdf matrix entries must be finite and >= 0")
    return out


def _validate_ordered_x(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if (x <= 0).any():
        raise ValueError(f"x must be strictly positive, got {x}")
    if np.any(np.diff(x) > 0):
        raise ValueError(f"x must be sorted descending, got {x}")
    return x


def joint_pdf_ordered(x: Sequence[float], means: Sequence[float]) -> float:
    """Joint pdf of the descending order statistics, evaluated as a permanent.

    Valid only on the ordered cone, hence the descending-sort precondition.
    """
    x = _validate_ordered_x(x)
    return permanent(pdf_matrix(x, means))


def joint_pdf_ordered_permsum(x: Sequence[float], means: Sequence[float]) -> float:
    """Same joint pdf via the explicit n!-term permutation sum (cross-check)."""
    x = _validate_ordered_x(x)
    means = np.asarray(means, dtype=float)
    if x.size != means.size:
        raise ValueError("x and means must have equal length")
    n = x.size
    if n > MAX_NAIVE_N:
        raise ValueError(f"permutation sum supports n <= {MAX_NAIVE_N}, got {n}")
    return math.fsum(
        math.prod(exponential_pdf(float(x[idx]), float(means[c])) for c, idx in enumerate(perm))
        for perm in itertools.permutations(range(n))
    )


def _validate_quad_args(means, pthres, tol):
    means = tuple(float(m) for m in means)
    if not 1 <= len(means) <= MAX_QUAD_N:
        raise ValueError(f"quadrature supports 1 <= n <= {MAX_QUAD_N}, got n={len(means)}")
    if any(not (math.isfinite(m) and m > 0) for m in means):
        raise ValueError(f"all means must be > 0 and finite, got {means}")
    pthres = float(pthres)
    if not (math.isfinite(pthres) and pthres >= 0):
        raise ValueError(f"pthres must be >= 0 and finite, got {pthres}")
    tol = float(tol)
    if not TOL_MIN <= tol <= TOL_MAX:
        raise ValueError(f"tol must lie in [{TOL_MIN}, {TOL_MAX}], got {tol}")
    return means, pthres, tol


def _breakpoints(lo: float, hi: float, scale: float, kinks=()) -> list[float]:
    """Quadrature break points for an interval much wider than its features.

    The integrands are products of exponential pdfs and partial CDFs whose
    transitions live at the smallest remaining mean; when the interval is
    orders of magnitude wider, the Gauss-Kronrod nodes of the initial whole-
    interval rule can all land past the transition and the adaptive pass
    would accept a spurious near-zero estimate.  A geometric ladder of break
    points anchored at both ends keeps the mass visible.
    """
    pts = {k for k in kinks if lo < k < hi}
    if (hi - lo) > 64.0 * scale:
        step = scale
        while lo + step < hi and len(pts) < 30:
            pts.add(lo + step)
            if hi - step > lo:
                pts.add(hi - step)
            step *= 8.0
    return sorted(pts)


def _quad(f, lo, hi, eps, scale, kinks=()):
    pts = _breakpoints(lo, hi, scale, kinks)
    if pts:
        return quad(f, lo, hi, epsabs=eps, epsrel=eps, limit=250, points=pts)[0]
    return quad(f, lo, hi, epsabs=eps, epsrel=eps, limit=200)[0]


def _exp_segment(e_lo: float, e_hi: float, length: float) -> float:
    """integral of exp(E(v)) over a segment where E varies linearly.

    ``e_lo``/``e_hi`` are the exponent values at the two endpoints (both
    <= 0 in every use here) and ``length`` the segment width.  The result is
    anchored at the endpoint with the larger exponent so nothing overflows
    even when the exponents are hugely negative.
    """
    if length <= 0.0:
        return 0.0
    de = e_hi - e_lo
    if de == 0.0:
        return length * math.exp(e_lo)
    if de > 0.0:
        return length * math.exp(e_hi) * (-math.expm1(-de)) / de
    return length * math.exp(e_lo) * math.expm1(de) / de


def _fold2_chain(prev: float, a: float, b: float) -> float:
    """integral over {0 < w < v < prev} of pdf(v; a) * pdf(w; b)."""
    if prev <= 0.0:
        return 0.0
    return -math.expm1(-prev / a) + (b / (a + b)) * math.expm1(-prev * (1.0 / a + 1.0 / b))


def _fold2_simplex(rem: float, a: float, b: float) -> float:
    """integral over {v, w > 0, v + w < rem} of pdf(v; a) * pdf(w; b)."""
    if rem <= 0.0:
        return 0.0
    # 1 - e^(-rem/a) minus the mass that escapes through the w-limit
    escaped = _exp_segment(-rem / b, -rem / a, rem) / a
    return -math.expm1(-rem / a) - escaped


def _fold2_ordered(prev: float, rem: float, a: float, b: float) -> float:
    """integral over {0 < w < v <= prev, v + w < rem} of pdf(v; a) * pdf(w; b)."""
    u = min(prev, rem)
    if u <= 0.0:
        return 0.0
    s = rem / 2.0
    v1 = min(u, s)
    # below s the binding w-limit is the ordering w < v
    out = _fold2_chain(v1, a, b)
    if u > s:
        # above s the binding w-limit is the budget w < rem - v
        out += math.exp(-s / a) - math.exp(-u / a)
        out -= _exp_segment(-(rem - s) / b - s / a, -(rem - u) / b - u / a, u - s) / a
    return out


def _term_integral(slot_means, pthres, region, tol) -> float:
    """One permutation term of the outage (or normalization) integral.

    ``slot_means[j]`` is the exponential mean attached to integration slot j
    (slot 0 outermost).  The innermost integral has the closed antiderivative
    1 - exp(-upper/mean) and is folded in analytically, cutting one nesting
    level; for n = 4 the two innermost levels are folded (the pair integrals
    above), keeping the level count that adaptive quadrature has to nest at
    two.  The infinite outer limit is truncated at
    U = P + sum(means) * ln(n * sum(means) / (tol * min(means))), which
    bounds the discarded tail mass below tol.
    """
    n = len(slot_means)
    if n == 1:
        return 1.0 if region == _CHAIN else math.exp(-pthres / slot_means[0])
    total = sum(slot_means)
    upper_limit = pthres + total * math.log(n * total / (tol * min(slot_means)))
    inner_tol = tol / 16.0
    fold2 = n >= 4
    # characteristic scale per level: this and all deeper means
    tail_scale = [0.0] * n
    acc = math.inf
    for j in range(n - 1, -1, -1):
        acc = min(acc, slot_means[j])
        tail_scale[j] = acc

    def level(j, x1, consumed, prev):
        # j is 1-based; consumed = x_2 + ... + x_{j-1}; prev = x_{j-1}
        budget = x1 - consumed - pthres
        if region == _CHAIN:
            upper = prev
        else:
            upper = budget if region == _SIMPLEX else min(prev, budget)
        if upper <= 0.0:
            return 0.0
        g = slot_means[j - 1]
        if j == n:
            return -math.expm1(-upper / g)
        if fold2 and j == n - 1:
            a, b = slot_means[n - 2], slot_means[n - 1]
            if region == _CHAIN:
                return _fold2_chain(prev, a, b)
            if region == _SIMPLEX:
                return _fold2_simplex(budget, a, b)
            return _fold2_ordered(prev, budget, a, b)

        def f(v):
            return exponential_pdf(v, g) * level(j + 1, x1, consumed + v, v)

        kinks = ()
        if region == _CHAIN_SIMPLEX:
            if fold2 and j + 1 == n - 1:
                # pair-fold branch boundaries sit at budget/3 and budget/2
                kinks = (budget / 3.0, budget / 2.0)
            else:
                # the next level's min(prev, budget) switches branch here
                kinks = (budget / 2.0,)
        return _quad(f, 0.0, upper, inner_tol, tail_scale[j - 1], kinks)

    lo = 0.0 if region == _CHAIN else pthres
    g1 = slot_means[0]
    return _quad(
        lambda x: exponential_pdf(x, g1) * level(2, x, 0.0, x),
        lo,
        upper_limit,
        tol / 4.0,
        tail_scale[0],
    )


def integral_I(
    permutation: Sequence[int], means: Sequence[float], pthres: float, tol: float = 1e-8
) -> float:
    """One permutation's nested integral over the plain simplex bounds.

    ``permutation`` is a 0-based bijection on range(n): entry c names the
    integration slot that marginal c is evaluated at, so the identity
    permutation puts marginal 0 on the outermost variable.  Swapping any two
    non-outer slots leaves the value unchanged (the subtracted coordinates
    enter the region symmetrically).
    """
    means, pthres, tol = _validate_quad_args(means, pthres, tol)
    n = len(means)
    perm = tuple(int(p) for p in permutation)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"permutation must be a bijection on 0..{n - 1}, got {perm}")
    slot_means = [0.0] * n
    for c, j in enumerate(perm):
        slot_means[j] = means[c]
    return _term_integral(tuple(slot_means), pthres, _SIMPLEX, tol)


def pout_quadrature(
    means: Sequence[float],
    pthres: float,
    region: str = REGION_ORDERED,
    tol: float = 1e-8,
) -> float:
    """Outage probability as 1 minus the quadrature of the joint density.

    The permanent density is expanded permutation by permutation, each term
    integrated over the requested non-outage region and the results summed;
    the absolute error target is ``tol``.
    """
    if region not in REGIONS:
        raise ValueError(f"region must be one of {REGIONS}, got {region!r}")
    means, pthres, tol = _validate_quad_args(means, pthres, tol)
    internal = _SIMPLEX if region == REGION_PAPER_BOUNDS else _CHAIN_SIMPLEX
    term_tol = tol / math.factorial(len(means))
    mass = math.fsum(
        _term_integral(pm, pthres, internal, term_tol)
        for pm in itertools.permutations(means)
    )
    return 1.0 - mass


def ordered_density_mass(means: Sequence[float], tol: float = 1e-6) -> float:
    """Integral of the ordered joint pdf over the whole descending cone.

    Should equal 1 for any valid means vector; exercised as a normalization
    check of the permanent density.
    """
    means, _, tol = _validate_quad_args(means, 0.0, tol)
    term_tol = tol / math.factorial(len(means))
    return math.fsum(
        _term_integral(pm, 0.0, _CHAIN, term_tol) for pm in itertools.permutations(means)
    )
