"""Series acceleration and Euler-Maclaurin summation utilities.

Three building blocks used throughout the library:

* :class:`LogPowerSum` -- exact calculus on weights of the form
  sum c_{p,q} x^(-p) ln^q x (closed under differentiation, with closed-form
  tail integrals), feeding the Euler-Maclaurin summers.
* Euler-Maclaurin tail closure for sums over integers, in plain and
  alternating-sign flavors, with adaptive order and heuristic error.
* Richardson ladder and Wynn epsilon (iterated Shanks) extrapolation for
  slowly convergent limits and oscillatory panel sums.
"""

from __future__ import annotations

import mpmath as mp

from .precision import workprec


class LogPowerSum:
    """Weight sum c[(p, q)] * x^(-p) * ln(x)^q with exact calculus."""

    def __init__(self, coeffs):
        self.coeffs = {k: mp.mpf(v) for k, v in coeffs.items() if v != 0}

    def value(self, x):
        if not self.coeffs:
            return mp.mpf(0)
        lx = mp.ln(x)
        total = mp.mpf(0)
        for (p, q), c in self.coeffs.items():
            total += c * x ** (-p) * lx ** q
        return total

    def deriv(self):
        out = {}
        for (p, q), c in self.coeffs.items():
            out[(p + 1, q)] = out.get((p + 1, q), mp.mpf(0)) - p * c
            if q >= 1:
                out[(p + 1, q - 1)] = out.get((p + 1, q - 1), mp.mpf(0)) + q * c
        return LogPowerSum(out)

    def abs_value_bound(self, x):
        lx = abs(mp.ln(x))
        return sum(abs(c) * x ** (-p) * lx ** q for (p, q), c in self.coeffs.items())

    @staticmethod
    def _tail_integral_term(p, q, n):
        # int_n^inf x^(-p) ln^q x dx, p > 1
        if p <= 1:
            raise ValueError("tail integral needs p > 1")
        val = mp.mpf(0)
        factor = mp.mpf(1)
        ln_n = mp.ln(n)
        qq = q
        while True:
            val += factor * n ** (1 - p) * ln_n ** qq / (p - 1)
            if qq == 0:
                break
            factor *= mp.mpf(qq) / (p - 1)
            qq -= 1
        return val

    def tail_integral(self, n):
        """int_n^inf of the weight (every term must have p > 1)."""
        return sum(c * self._tail_integral_term(p, q, mp.mpf(n))
                   for (p, q), c in self.coeffs.items())


def em_tail(basis: LogPowerSum, n_from, max_order=24):
    """(sum_{n > n_from} basis(n), error_estimate) via Euler-Maclaurin.

    Uses the a = n_from + 1 endpoint form; stops at the smallest correction
    (the expansion is asymptotic) or when max_order is hit.
    """
    a = mp.mpf(n_from) + 1
    total = basis.tail_integral(a) + basis.value(a) / 2
    deriv = basis
    order = 0
    prev_mag = mp.inf
    err = mp.mpf(0)
    for k in range(1, max_order + 1):
        need = 2 * k - 1
        while order < need:
            deriv = deriv.deriv()
            order += 1
        term = -mp.bernoulli(2 * k) / mp.factorial(2 * k) * deriv.value(a)
        mag = abs(term)
        if k > 2 and mag > prev_mag:
            err = 2 * prev_mag
            break
        total += term
        prev_mag = mag
        err = 2 * mag
    return total, err


def em_tail_alternating(basis: LogPowerSum, n_from, max_order=16):
    """(sum_{n > n_from} (-1)^n basis(n), error_estimate).

    Pairs consecutive terms into a smooth sequence over m and applies the
    plain Euler-Maclaurin closure to it.
    """
    a = mp.mpf(n_from) + 1
    sign = mp.mpf(-1) ** (int(n_from) + 1)
    # h(m) = f(a+2m) - f(a+1+2m); sum_{m>=0} h(m)
    integral = (basis.tail_integral(a) - basis.tail_integral(a + 1)) / 2
    h0 = basis.value(a) - basis.value(a + 1)
    total = integral + h0 / 2
    deriv = basis
    order = 0
    prev_mag = mp.inf
    err = mp.mpf(0)
    for k in range(1, max_order + 1):
        need = 2 * k - 1
        while order < need:
            deriv = deriv.deriv()
            order += 1
        hderiv = (mp.mpf(2) ** need) * (deriv.value(a) - deriv.value(a + 1))
        term = -mp.bernoulli(2 * k) / mp.factorial(2 * k) * hderiv
        mag = abs(term)
        if k > 2 and mag > prev_mag:
            err = 2 * prev_mag
            break
        total += term
        prev_mag = mag
        err = 2 * mag
    return sign * total, err


def zeta_em(s, bits, q=0):
    """zeta-type value sum_{n>=1} ln^q(n)/n^s by direct sum + EM tail.

    Precision-parametric replacement for hard-coded zeta constants.
    """
    with workprec(bits + 32):
        n0 = max(24, bits // 4)
        direct = mp.mpf(0)
        for n in range(1, n0 + 1):
            if q == 0:
                direct += mp.mpf(n) ** (-s)
            else:
                direct += mp.ln(n) ** q * mp.mpf(n) ** (-s)
        tail, err = em_tail(LogPowerSum({(mp.mpf(s), q): 1}), n0, max_order=max(16, bits // 8))
        val = direct + tail
    with workprec(bits):
        return +val


def log_power_tail(p, q, n_from, bits, alternating=False):
    """sum_{n > n_from} (+/-1)^n ln^q(n)/n^p with error estimate."""
    with workprec(bits + 32):
        basis = LogPowerSum({(mp.mpf(p), int(q)): 1})
        if alternating:
            val, err = em_tail_alternating(basis, n_from)
        else:
            val, err = em_tail(basis, n_from)
    with workprec(bits):
        return +val, +err


def richardson_ladder(values, order_start=1, log_degree=0):
    """Iterated Richardson extrapolation for S(N), N on a ratio-2 ladder.

    Assumes an error expansion sum_j P_j(ln N) / N^j starting at power
    ``order_start`` with polynomial degree <= ``log_degree``: each power is
    eliminated with (log_degree + 1) repeated passes, since one pass at a
    fixed power knocks the surviving ln-polynomial degree down by one.
    Returns (value, spread); spread compares the last two columns.
    """
    col = list(map(mp.mpf, values))
    prev_col = col
    power = order_start
    passes_left = log_degree + 1
    while len(col) > 1:
        fac = mp.mpf(2) ** power
        prev_col = col
        col = [(fac * col[i + 1] - col[i]) / (fac - 1) for i in range(len(col) - 1)]
        passes_left -= 1
        if passes_left == 0:
            power += 1
            passes_left = log_degree + 1
    best = col[0]
    prev = prev_col[-1]
    return best, abs(best - prev)


def wynn_epsilon(partials, max_pairs=None):
    """Wynn epsilon acceleration of a partial-sum sequence.

    Returns (value, error_estimate).  Robust for the alternating sequences
    produced by between-zeros oscillatory quadrature.
    """
    s = list(map(mp.mpf, partials))
    n = len(s)
    if n == 1:
        return s[0], abs(s[0])
    if max_pairs is None:
        max_pairs = (n - 1) // 2
    eps_prev = [mp.mpf(0)] * (n + 1)   # epsilon_{-1}
    eps_curr = s[:]                    # epsilon_0
    best = s[-1]
    prev_best = s[-2] if n >= 2 else s[-1]
    col = 0
    while len(eps_curr) >= 2 and col < 2 * max_pairs:
        nxt = []
        ok = True
        for i in range(len(eps_curr) - 1):
            diff = eps_curr[i + 1] - eps_curr[i]
            if diff == 0:
                # converged exactly at this column
                return eps_curr[i + 1], abs(eps_curr[i + 1] - best) + mp.mpf(2) ** (-mp.mp.prec + 4) * abs(eps_curr[i + 1])
            nxt.append(eps_prev[i + 1] + 1 / diff)
        eps_prev = eps_curr
        eps_curr = nxt
        col += 1
        if col % 2 == 0 and eps_curr:
            prev_best = best
            best = eps_curr[-1]
    return best, abs(best - prev_best) + mp.mpf(2) ** (-mp.mp.prec + 6) * abs(best)
