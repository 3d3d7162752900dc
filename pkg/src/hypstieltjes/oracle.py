"""Independent verification machinery.

Everything here is deliberately disjoint from the hypergeometric series
engine: tanh-sinh quadrature with between-zeros acceleration for
oscillatory tails, Euler-Maclaurin evaluation of sawtooth-weighted
integrals with exact per-interval antiderivatives, the classic limit
representation of the Stieltjes constants, and closed forms for the
regularized logarithmic trig integrals.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .accel import LogPowerSum, richardson_ladder, wynn_epsilon
from .errors import DomainError, InvalidParameters, ToleranceNotMet
from .hypergeom import SeriesResult
from .precision import DEFAULT_BITS, workprec


class P1Evaluator:
    """Sawtooth x - floor(x) - 1/2 and its sine-series partial sums."""

    @staticmethod
    def value(x):
        x = mp.mpf(x)
        return x - mp.floor(x) - mp.mpf(1) / 2

    @staticmethod
    def fourier_partial(x, terms):
        x = mp.mpf(x)
        return -sum(mp.sin(2 * mp.pi * j * x) / (mp.pi * j) for j in range(1, terms + 1))


@dataclass
class QuadratureProblem:
    """Declarative integration problem for :func:`integrate`."""

    integrand: object
    lower: object
    upper: object
    singular_endpoints: tuple = (False, False)
    oscillation_period: object = None
    decay_exponent: object = None


def integrate(problem: QuadratureProblem, target_abs_err, bits=DEFAULT_BITS,
              max_panels=400) -> SeriesResult:
    """Adaptive evaluation of the declared problem.

    Finite and semi-infinite monotone-decay cases go to tanh-sinh panels;
    oscillatory infinite tails are integrated between consecutive zeros and
    the alternating panel sums are accelerated.
    """
    target = mp.mpf(target_abs_err)
    f = problem.integrand
    with workprec(bits + 32):
        lower = mp.mpf(problem.lower)
        infinite = problem.upper is None or problem.upper == mp.inf
        if not infinite:
            upper = mp.mpf(problem.upper)
            val, qerr = mp.quad(f, [lower, upper], error=True)
            err = 10 * abs(qerr) + abs(val) * mp.mpf(2) ** (-(3 * bits) // 5)
            evals = 1
        elif problem.oscillation_period is None:
            if problem.decay_exponent is None:
                raise InvalidParameters(
                    "infinite upper limit needs oscillation_period or a declared decay exponent")
            val, qerr = mp.quad(f, [lower, lower + 10, mp.inf], error=True)
            err = 10 * abs(qerr) + abs(val) * mp.mpf(2) ** (-(3 * bits) // 5)
            evals = 2
        else:
            half = mp.mpf(problem.oscillation_period) / 2
            head, qerr = mp.quad(f, [lower, lower + half], error=True)
            partials = []
            total = head
            err_floor = 10 * abs(qerr)
            a = lower + half
            val = acc_err = None
            for k in range(max_panels):
                piece, qerr = mp.quad(f, [a, a + half], error=True)
                total += piece
                err_floor += 10 * abs(qerr)
                partials.append(total)
                a += half
                if abs(piece) < target / 100 and k >= 12:
                    break
                if k >= 24 and (k + 1) % 16 == 0:
                    val, acc_err = wynn_epsilon(partials)
                    if acc_err < target / 4:
                        break
            val, acc_err = wynn_epsilon(partials)
            err = acc_err + err_floor + abs(val) * mp.mpf(2) ** (-(3 * bits) // 5)
            evals = len(partials) + 1
        err += mp.mpf(2) ** (8 - bits)
    with workprec(bits):
        val = +val
        err = +err
    if err > target:
        raise ToleranceNotMet(
            f"achieved {mp.nstr(err, 5)} > target {mp.nstr(target, 5)}",
            value=val, achieved=err)
    return SeriesResult(val, err, evals, "quadrature")


# ---------------------------------------------------------------------------
# sawtooth-weighted integrals over [1, inf) by Euler-Maclaurin
# ---------------------------------------------------------------------------

def _antider_logpow(s, q, x):
    """Antiderivative of x^(-s) ln^q x, exact recursion."""
    if s == 1:
        return mp.ln(x) ** (q + 1) / (q + 1)
    acc = mp.mpf(0)
    factor = mp.mpf(1)
    lx = mp.ln(x)
    qq = q
    while True:
        acc += factor * x ** (1 - s) * lx ** qq / (1 - s)
        if qq == 0:
            break
        factor *= -mp.mpf(qq) / (1 - s)
        qq -= 1
    return acc


def _interval_p1_piece(weight: LogPowerSum, j):
    """integral_j^(j+1) (x - j - 1/2) * weight(x) dx, exact."""
    c = mp.mpf(j) + mp.mpf(1) / 2
    total = mp.mpf(0)
    for (p, q), coeff in weight.coeffs.items():
        hi = _antider_logpow(p - 1, q, mp.mpf(j + 1)) - c * _antider_logpow(p, q, mp.mpf(j + 1))
        lo = _antider_logpow(p - 1, q, mp.mpf(j)) - c * _antider_logpow(p, q, mp.mpf(j))
        total += coeff * (hi - lo)
    return total


def p1_weighted_integral(weight: LogPowerSum, bits=DEFAULT_BITS, m_direct=None):
    """(integral_1^inf P1(x) * weight(x) dx, error_estimate).

    Exact piecewise antiderivatives up to m_direct, then the periodic
    Bernoulli tail expansion  -sum_k B_2k/(2k)! w^(2k-2)(M)  truncated at
    its smallest term.  Independent of the series machinery.
    """
    if m_direct is None:
        m_direct = 48 + bits // 4
    with workprec(bits + 64):
        direct = mp.fsum(_interval_p1_piece(weight, j) for j in range(1, m_direct))
        m = mp.mpf(m_direct)
        tail = mp.mpf(0)
        deriv = weight
        order = 0
        prev_mag = mp.inf
        err = mp.mpf(0)
        for k in range(1, 40):
            need = 2 * k - 2
            while order < need:
                deriv = deriv.deriv()
                order += 1
            term = -mp.bernoulli(2 * k) / mp.factorial(2 * k) * deriv.value(m)
            mag = abs(term)
            if k > 2 and mag > prev_mag:
                err = 2 * prev_mag
                break
            tail += term
            prev_mag = mag
            err = 2 * mag
        val = direct + tail
        err += abs(val) * mp.mpf(2) ** (-bits - 32)
    with workprec(bits):
        return +val, +err


def p1_weighted_integral_finite(weight: LogPowerSum, x_upper, bits=DEFAULT_BITS):
    """integral_1^X P1(x) weight(x) dx for integer X, exact per interval."""
    x_upper = int(x_upper)
    with workprec(bits + 32):
        val = mp.fsum(_interval_p1_piece(weight, j) for j in range(1, x_upper))
    with workprec(bits):
        return +val


def stieltjes_weight(k):
    """Sawtooth weight whose integral reproduces the k-th constant, k >= 1."""
    return LogPowerSum({(2, k - 1): k, (2, k): -1})


def stieltjes_quadrature(k, bits=DEFAULT_BITS) -> SeriesResult:
    """Quadrature-route Stieltjes constant (a=1) via the sawtooth integral."""
    k = int(k)
    if k < 0:
        raise InvalidParameters("k must be >= 0")
    with workprec(bits + 16):
        if k == 0:
            base, err = p1_weighted_integral(LogPowerSum({(2, 0): 1}), bits + 16)
            val = mp.mpf(1) / 2 - base
        else:
            val, err = p1_weighted_integral(stieltjes_weight(k), bits + 16)
    with workprec(bits):
        return SeriesResult(+val, +err + mp.mpf(2) ** (8 - bits), 0, "quadrature")


# ---------------------------------------------------------------------------
# the classic limit representation
# ---------------------------------------------------------------------------

def stieltjes_limit(k, a, n_terms, bits=DEFAULT_BITS, levels=6) -> SeriesResult:
    """Limit-route Stieltjes constant gamma_k(a) with Richardson ladder.

    gamma_k(a) = lim_N [ sum_{m=0}^N ln^k(m+a)/(m+a) - ln^(k+1)(N+a)/(k+1) ],
    extrapolated over a ratio-2 checkpoint ladder with the spread as error.
    (No (-1)^k/k! prefactor: that factor belongs to the Laurent expansion
    the constants are defined by, and the other two routes force this
    normalization; see the numerical notes.)
    """
    k = int(k)
    a = mp.mpf(a)
    if not a > 0:
        raise InvalidParameters("a must be positive")
    n_terms = int(n_terms)
    max_levels = int(mp.log(n_terms / 48, 2)) if n_terms > 96 else 1
    levels = max(2, min(levels + 2 * k, max_levels))
    base = n_terms >> (levels - 1)
    # exact ratio-2 ladder; off-ratio checkpoints poison the extrapolation
    checkpoints = [base << i for i in range(levels)]
    n_terms = checkpoints[-1]
    with workprec(bits + 32):
        vals = []
        run = mp.mpf(0)
        idx = 0
        for m in range(0, n_terms + 1):
            x = m + a
            lx = mp.ln(x)
            run += lx ** k / x if k else 1 / x
            if idx < len(checkpoints) and m == checkpoints[idx]:
                n_ = mp.mpf(checkpoints[idx])
                vals.append(run - mp.ln(n_ + a) ** (k + 1) / (k + 1))
                idx += 1
        if idx < len(checkpoints):
            n_ = mp.mpf(n_terms)
            vals.append(run - mp.ln(n_ + a) ** (k + 1) / (k + 1))
        value, spread = richardson_ladder(vals, order_start=1, log_degree=k)
    with workprec(bits):
        return SeriesResult(+value, +(4 * spread) + mp.mpf(2) ** (8 - bits), n_terms, "hybrid")


# ---------------------------------------------------------------------------
# regularized logarithmic trig integrals
# ---------------------------------------------------------------------------

def appendix_closed_form(kind, a, bits=DEFAULT_BITS):
    """Closed form of integral_0^inf e^(-a t) trig(t) (1 - ln t) dt, a > 0."""
    a = mp.mpf(a)
    if not a > 0:
        raise DomainError("a must be positive")
    with workprec(bits):
        one = mp.mpf(1)
        pref = one / (2 * (1 + a * a))
        if kind == "cosine":
            return +(pref * (2 * mp.acot(a) + a * (mp.ln(1 + 1 / (a * a)) + 2 * (1 + mp.euler + mp.ln(a)))))
        if kind == "sine":
            return +(pref * (-2 * a * mp.acot(a) + mp.ln(1 + 1 / (a * a)) + 2 * (1 + mp.euler + mp.ln(a))))
        raise InvalidParameters(f"kind must be 'cosine' or 'sine', got {kind!r}")


def _damped_trig_quadrature(kind, a, bits):
    trig = mp.cos if kind == "cosine" else mp.sin

    def f(t):
        return mp.exp(-a * t) * trig(t) * (1 - mp.ln(t))

    with workprec(bits + 32):
        head, e1 = mp.quad(f, [0, mp.mpf(1) / 2, mp.pi], error=True)
        partials = []
        total = head
        floor = 10 * abs(e1)
        left = mp.pi
        # damped oscillation: pi-length panels, epsilon-accelerated
        panels = int(40 + 12 / min(float(a), 1.0))
        for _ in range(panels):
            piece, e2 = mp.quad(f, [left, left + mp.pi], error=True)
            total += piece
            floor += 10 * abs(e2)
            partials.append(total)
            left += mp.pi
            if abs(piece) < mp.mpf(2) ** (-bits - 16):
                break
        val, aerr = wynn_epsilon(partials)
        err = aerr + floor + mp.mpf(2) ** (8 - bits)
    with workprec(bits):
        return +val, +err


def harmonic_generating_check(z, terms=60, bits=DEFAULT_BITS):
    """|finite even-harmonic sum - closed generating form| at real z in (0,1)."""
    z = mp.mpf(z)
    with workprec(bits + 16):
        h = mp.mpf(0)
        acc = mp.mpf(0)
        for n in range(1, 2 * terms + 1):
            h += mp.mpf(1) / n
            if n % 2 == 0:
                acc += 2 * h * z ** n
        closed = -mp.ln(1 + z) / (1 + z) + mp.ln(1 - z) / (z - 1)
        # finite-sum truncation scale for the comparison
        trunc = 2 * (mp.ln(2 * terms) + 1) * z ** (2 * terms) / (1 - z * z)
    with workprec(bits):
        return +abs(acc - closed), +trunc


def appendix_verify(kind, a, bits=DEFAULT_BITS, tol=None):
    """Compare the damped-integral quadrature against the closed form.

    Also reports the even-harmonic generating identity residual at z=1/2
    and the elementary Laplace-transform check used by the derivation.
    """
    a = mp.mpf(a)
    if not a > 0:
        raise DomainError("a must be positive")
    if tol is None:
        tol = mp.mpf(10) ** -10
    closed = appendix_closed_form(kind, a, bits)
    quad_val, quad_err = _damped_trig_quadrature(kind, a, bits)
    with workprec(bits + 16):
        elementary = mp.quad(lambda t: mp.exp(-a * t) * mp.cos(t), [0, mp.inf])
        elem_diff = abs(elementary - a / (1 + a * a))
        gen_diff, gen_trunc = harmonic_generating_check(mp.mpf(1) / 2, 60, bits)
        diff = abs(quad_val - closed)
    passed = bool(diff <= tol and elem_diff <= tol and gen_diff <= gen_trunc + tol)
    return {
        "kind": kind,
        "a": a,
        "closed_form": closed,
        "quadrature": quad_val,
        "abs_diff": diff,
        "quadrature_error_estimate": quad_err,
        "elementary_laplace_diff": elem_diff,
        "generating_identity_diff": gen_diff,
        "tolerance": mp.mpf(tol),
        "passed": passed,
    }


def regularized_sine_log_limit(bits=DEFAULT_BITS, ladder=("1e-4", "1e-6", "1e-8")):
    """a -> 0 limit study of the regularized sine family.

    Returns the extrapolated limit, its sign, and the reference value
    1 + euler it is to be compared with; the report states what the limit
    actually produces rather than assuming a printed sign.
    """
    with workprec(bits + 16):
        vals = [appendix_closed_form("sine", mp.mpf(s), bits + 16) for s in ladder]
        ref = 1 + mp.euler
        limit = vals[-1]
        drift = abs(vals[-1] - vals[-2])
    with workprec(bits):
        return {
            "limit_estimate": +limit,
            "sign": "+" if limit > 0 else "-",
            "reference_value": +ref,
            "abs_diff_to_reference": +abs(limit - ref),
            "ladder_drift": +drift,
        }
