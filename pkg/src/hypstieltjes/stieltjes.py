"""Stieltjes constants assembled from log-sine integral summations.

The k-th constant (a = 1) is built from

    T_j = integral_1^inf P1(x) ln^j(x)/x^2 dx = -(1/pi) sum_n g_j(2 pi n)/n,
    gamma_j = j T_{j-1} - T_j,        T_0 = 1/2 - euler,

with g_j evaluated from the recursion templates.  At kappa = 2 pi n the
oscillatory expansion collapses to a pure power series in 1/n (the cosine
phases become multiples of pi/2), which both makes the bulk summation
cheap and yields the exact leading tail coefficients the accelerated
variants rely on.  Everything constant-like is generated by the residue
engine; printed closed forms serve only as regression anchors in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .accel import log_power_tail, zeta_em
from .errors import DomainError, IllConditionedFit, InvalidParameters
from .hypergeom import Family, SeriesResult, exp_coeffs
from .precision import DEFAULT_BITS, tree_sum, workprec
from .trigintegrals import (J_MAX, RecursionState, build_recursion, ci,
                            ci_over_t_tail, g_value, si_lower)

ACCEL_NONE = "none"
ACCEL_CLASSIC = "paper-1-4"
ACCEL_TAIL = "asymptotic-tail"
_ACCELS = (ACCEL_NONE, ACCEL_CLASSIC, ACCEL_TAIL)

_BULK_DEPTH = 140


@dataclass(frozen=True)
class StieltjesRequest:
    """What to compute: index, expansion point, budget, acceleration."""

    k: int
    a: object = 1
    n_terms: int = 10000
    acceleration: str = ACCEL_TAIL
    precision_bits: int = DEFAULT_BITS

    def validate(self):
        if self.k < 0 or self.k > J_MAX:
            raise InvalidParameters(f"k={self.k} outside 0..{J_MAX} (J_MAX={J_MAX})")
        a = mp.mpf(self.a)
        if a != 1 and a != mp.mpf(1) / 2:
            raise InvalidParameters("a must be 1 or 1/2")
        if self.k >= 2 and a != 1:
            raise InvalidParameters("k >= 2 is implemented only at a = 1")
        if self.acceleration not in _ACCELS:
            raise InvalidParameters(f"acceleration must be one of {_ACCELS}")
        if self.n_terms < 1:
            raise InvalidParameters("n_terms must be positive")
        return self


@dataclass(frozen=True)
class TailModel:
    """Fitted summand tail: sum of coeff * (+/-1)^n ln^q(n) / n^p terms."""

    coefficients: tuple      # (p, q, coeff, alternating) entries
    order: int
    residual: mp.mpf

    def value_at(self, n):
        n_int = int(n)
        n = mp.mpf(n)
        ln_n = mp.ln(n)
        total = mp.mpf(0)
        for (p, q, c, alt) in self.coefficients:
            t = c * n ** (-p) * ln_n ** q
            if alt:
                t *= mp.mpf(-1) ** n_int
            total += t
        return total

    def leading(self):
        """Dominant term at large n among the fitted columns."""
        probe = mp.mpf(10) ** 6
        best = None
        for entry in self.coefficients:
            (p, q, c, alt) = entry
            mag = abs(c) * probe ** (-p) * mp.ln(probe) ** q
            if best is None or mag > best[0]:
                best = (mag, entry)
        return best[1]

    def tail_beyond(self, n_from, bits=DEFAULT_BITS):
        """(sum_{n > n_from} model(n), closure error estimate).

        The estimate covers the zeta-closure itself, the in-window fit
        residual extrapolated over the tail, and an allowance for the first
        column beyond the fitted exponent set.
        """
        with workprec(bits + 16):
            total = mp.mpf(0)
            err = mp.mpf(0)
            p_last, q_last, c_last = 0, 0, mp.mpf(0)
            for (p, q, c, alt) in self.coefficients:
                v, e = log_power_tail(p, q, n_from, bits + 16, alternating=alt)
                total += c * v
                err += abs(c) * e
                if p > p_last:
                    p_last, q_last, c_last = p, q, abs(c)
            err += abs(self.residual) * mp.mpf(n_from)
            omitted, _ = log_power_tail(p_last + 1, q_last, n_from, bits + 16)
            err += 8 * c_last * omitted
        with workprec(bits):
            return +total, +err


def fit_tail(samples, order, exponents=None, bits=DEFAULT_BITS,
             residual_threshold=mp.mpf("1e-3")) -> TailModel:
    """Least-squares tail model over a declared exponent set.

    ``samples`` is a list of (n, summand); ``exponents`` entries are
    (p, q) or (p, q, alternating).  Raises IllConditionedFit when the
    design is degenerate or the relative residual exceeds the threshold.
    """
    if exponents is None:
        exponents = [(3 + i, 0) for i in range(order)]
    exponents = [tuple(e) if len(e) == 3 else (e[0], e[1], False) for e in exponents]
    if len(samples) < len(exponents) + 2:
        raise InvalidParameters(
            f"need at least {len(exponents) + 2} samples for {len(exponents)} exponents")
    with workprec(bits + 32):
        ns = [mp.mpf(n) for n, _ in samples]
        n_ints = [int(n) for n, _ in samples]
        ys = [mp.mpf(s) for _, s in samples]
        n_mid = ns[len(ns) // 2]
        ln_mid = mp.ln(n_mid)
        cols = []
        scales = []
        for (p, q, alt) in exponents:
            scale = n_mid ** (-p) * (ln_mid ** q if q else 1)
            scales.append(scale)
            col = []
            for n, ni in zip(ns, n_ints):
                v = n ** (-p) * (mp.ln(n) ** q if q else 1) / scale
                if alt:
                    v *= mp.mpf(-1) ** ni
                col.append(v)
            cols.append(col)
        m = len(exponents)
        ata = mp.matrix(m, m)
        aty = mp.matrix(m, 1)
        for i in range(m):
            for j_ in range(i, m):
                v = mp.fsum(cols[i][r] * cols[j_][r] for r in range(len(ns)))
                ata[i, j_] = v
                ata[j_, i] = v
            aty[i] = mp.fsum(cols[i][r] * ys[r] for r in range(len(ns)))
        try:
            sol = mp.lu_solve(ata, aty)
        except (ZeroDivisionError, ValueError) as exc:
            raise IllConditionedFit(f"normal equations singular: {exc}") from None
        resid = mp.mpf(0)
        for r in range(len(ns)):
            pred = mp.fsum(sol[i] * cols[i][r] for i in range(m))
            resid = max(resid, abs(pred - ys[r]))
        scale_y = max(abs(y) for y in ys)
        if scale_y > 0 and resid > mp.mpf(residual_threshold) * scale_y:
            raise IllConditionedFit(
                f"fit residual {mp.nstr(resid, 5)} exceeds {mp.nstr(mp.mpf(residual_threshold), 3)} "
                f"of sample scale {mp.nstr(scale_y, 5)}")
        coeffs = tuple((exponents[i][0], exponents[i][1], +(sol[i] / scales[i]), exponents[i][2])
                       for i in range(m))
    with workprec(bits):
        return TailModel(coeffs, order, +resid)


# ---------------------------------------------------------------------------
# zero-phase exponential series (arguments at integer multiples of pi)
# ---------------------------------------------------------------------------

class _ZeroPhase:
    """Power series sum_k C_k w^(theta-k) with C_k = 2 A_k cos(pi(theta-k)/2).

    Valid at w = (multiple of 2 pi) after factoring the parity sign of the
    w = (odd multiple of pi) case out front; the cosine factors collapse to
    {0, +/-1} so evaluation is a plain (adaptive-depth) power sum.
    """

    def __init__(self, fam: Family, depth=_BULK_DEPTH):
        self.theta = fam.theta
        a_ints = exp_coeffs(fam, depth)
        self.coeffs = []
        for k, a_k in enumerate(a_ints):
            m = (fam.theta - k) % 4
            c = 1 if m == 0 else (-1 if m == 2 else 0)
            self.coeffs.append(mp.mpf(2 * a_k * c))

    def eval(self, w, tau_abs):
        """(value, achieved truncation) summing until terms dip below tau_abs
        or start growing (asymptotic floor)."""
        u = 1 / w
        pw = w ** mp.mpf(self.theta)
        acc = mp.mpf(0)
        prev_mag = mp.inf
        trunc = mp.inf
        for c in self.coeffs:
            if c:
                term = c * pw
                mag = abs(term)
                if mag > prev_mag:
                    trunc = prev_mag
                    break
                acc += term
                prev_mag = mag
                trunc = mag
                if mag < tau_abs:
                    break
            pw *= u
        return acc, trunc


class _CiZeroPhase:
    """Ci(w) at w = m pi: -cos(w) * sum_k (-1)^k (2k+1)! / w^(2k+2)."""

    @staticmethod
    def eval(w, parity, tau_abs):
        u2 = 1 / (w * w)
        mag = u2
        acc = mag
        k = 0
        trunc = mag
        while True:
            k += 1
            nxt = mag * u2 * (2 * k) * (2 * k + 1)
            if nxt >= mag:
                trunc = mag
                break
            mag = nxt
            acc += mp.mpf(-1) ** k * mag
            trunc = mag
            if mag < tau_abs:
                break
        return -parity * acc, trunc


# ---------------------------------------------------------------------------
# the T_j series
# ---------------------------------------------------------------------------

def _per_term_tau(bits):
    return mp.mpf(2) ** (-(min(int(bits), 176) + 40))


def _t_series_partials(state: RecursionState, j, n_terms, bits, checkpoints=None):
    """Partial sums of T_j ~= -(1/pi) sum_n g_j(2 pi n)/n.

    Returns (partials dict N -> tree-sum value, summand list, per-term error).
    Small n go through the exact template; once the zero-phase expansion
    meets the per-term budget it takes over permanently.
    """
    if checkpoints is None:
        checkpoints = [n_terms]
    checkpoints = sorted(set(int(c) for c in checkpoints) | {n_terms})
    lvl = state.levels[j]
    zp = _ZeroPhase(lvl.family)
    pad = 48 + 4 * j
    with workprec(bits + pad):
        tau = _per_term_tau(bits)
        two_pi = 2 * mp.pi
        eps_v = mp.mpf(lvl.eps.numerator) / lvl.eps.denominator
        summands = []
        per_term_err = mp.mpf(0)
        asym_ready = False
        for n in range(1, n_terms + 1):
            w = two_pi * n
            scale = abs(eps_v) * w ** 3 / (mp.pi * n)
            if not asym_ready:
                e_val, trunc = zp.eval(w, tau / (2 * scale))
                if trunc * scale <= tau:
                    asym_ready = True
                else:
                    g = g_value(state, j, w, bits=bits + pad, target_abs_err=tau)
                    summands.append(-g.value / (mp.pi * n))
                    per_term_err += g.error_estimate / (mp.pi * n)
                    continue
            else:
                e_val, trunc = zp.eval(w, tau / (2 * scale))
            g_val = eps_v * w ** 3 * e_val
            summands.append(-g_val / (mp.pi * n))
            per_term_err += trunc * scale
        partials = {cp: tree_sum(summands[:cp]) for cp in checkpoints}
    return partials, summands, per_term_err


def _tail_exponent_start(j):
    # summand of the T_j series decays like n^-(j+2) for even j, n^-(j+3) odd
    return j + 2 + (1 if j % 2 else 0)


def classic_tail_coefficient(bits=DEFAULT_BITS):
    """Per-bracket n^-4 tail coefficient of the first-constant series.

    Generated from the exponential expansion: A_1 of the (3, 5/2) family
    over 192 pi^4.  Equals 5/(16 pi^4) -- twice the historically printed
    label, which its own companion constants contradict; see the notes.
    """
    a1 = exp_coeffs(Family(3, 5), 2)[1]
    with workprec(bits):
        return +(mp.mpf(a1) / (192 * mp.pi ** 4))


def _t_value(state, j, req, bits, summand_cache=None):
    """T_j estimate with the requested acceleration, as a SeriesResult."""
    n_terms = req.n_terms
    if summand_cache is not None and j in summand_cache:
        partials, summands, pt_err = summand_cache[j]
    else:
        partials, summands, pt_err = _t_series_partials(state, j, n_terms, bits)
        if summand_cache is not None:
            summand_cache[j] = (partials, summands, pt_err)
    partial = partials[n_terms]
    mode = req.acceleration
    with workprec(bits + 32):
        if mode == ACCEL_CLASSIC and j == 1:
            c4 = classic_tail_coefficient(bits + 32)
            z4 = zeta_em(4, bits + 32)
            # summand ~ -2 c4/n^4; add it back term-by-term, close with zeta(4)
            corrected = partial + 2 * c4 * mp.fsum(mp.mpf(n) ** -4 for n in range(1, n_terms + 1))
            value = corrected - 2 * c4 * z4
            resid_tail = (abs(summands[-1] + 2 * c4 * mp.mpf(n_terms) ** -4)
                          * mp.mpf(n_terms) / 4 if summands else mp.mpf(0))
            return SeriesResult(value, resid_tail + pt_err, n_terms, "hybrid")
        if mode == ACCEL_TAIL and n_terms >= 64:
            lo = max(16, (55 * n_terms) // 100)
            idxs = sorted(set(int(lo + i * (n_terms - 1 - lo) / 31) for i in range(32)))
            p0 = _tail_exponent_start(j)
            order = min(8, max(3, int(req.precision_bits) // 48))
            exps = [(p0 + 2 * i, 0) for i in range(order)]
            model = fit_tail([(nn + 1, summands[nn]) for nn in idxs], order,
                             exponents=exps, bits=bits + 32,
                             residual_threshold=mp.mpf("0.5"))
            tail_val, tail_err = model.tail_beyond(n_terms, bits + 32)
            return SeriesResult(partial + tail_val, tail_err + pt_err, n_terms,
                                "hybrid", tail_model=model)
        # none, or budgets too small to accelerate
        tail_est = abs(summands[-1]) * mp.mpf(n_terms) / 2 if summands else mp.mpf(0)
        return SeriesResult(partial, tail_est + pt_err, n_terms, "hybrid")


def _gamma_chain(req: StieltjesRequest, j_target):
    """gamma_1..gamma_{j_target} and the T_j ladder at the request budget."""
    bits = req.precision_bits
    state = build_recursion(max(j_target, 1), bits + 32)
    cache = {}
    with workprec(bits + 32):
        t_prev = mp.mpf(1) / 2 - mp.euler
        gammas = []
        err_prev = mp.mpf(2) ** (-bits - 24)
        total_terms = 0
        for j in range(1, j_target + 1):
            tj = _t_value(state, j, req, bits + 32, summand_cache=cache)
            gamma_val = j * t_prev - tj.value
            gamma_err = j * err_prev + tj.error_estimate
            gammas.append((gamma_val, gamma_err, tj))
            t_prev = tj.value
            err_prev = tj.error_estimate
            total_terms += tj.terms_used
    return gammas, total_terms


def _finish(req, value, err, terms, tail_model=None):
    with workprec(req.precision_bits):
        return SeriesResult(+value, +err, terms, "hybrid", tail_model=tail_model)


def gamma1(req: StieltjesRequest) -> SeriesResult:
    """First Stieltjes constant by the hypergeometric summation."""
    req = StieltjesRequest(1, req.a, req.n_terms, req.acceleration, req.precision_bits)
    req.validate()
    if mp.mpf(req.a) != 1:
        return gamma1_half(req.n_terms, req.precision_bits)
    gammas, terms = _gamma_chain(req, 1)
    value, err, tj = gammas[0]
    return _finish(req, value, err, terms, tj.tail_model)


def gamma2(req: StieltjesRequest) -> SeriesResult:
    """Second Stieltjes constant; the first is rebuilt internally at the
    caller's precision (its error enters doubled through the prefix)."""
    req = StieltjesRequest(2, req.a, req.n_terms, req.acceleration, req.precision_bits)
    req.validate()
    gammas, terms = _gamma_chain(req, 2)
    value, err, tj = gammas[1]
    return _finish(req, value, err, terms, tj.tail_model)


def gamma_j(req: StieltjesRequest) -> SeriesResult:
    """General gamma_j for 1 <= j <= J_MAX through the template recursion."""
    req.validate()
    if req.k < 1:
        raise InvalidParameters("gamma_j handles k >= 1")
    gammas, terms = _gamma_chain(req, req.k)
    value, err, tj = gammas[req.k - 1]
    return _finish(req, value, err, terms, tj.tail_model)


def convergence_curve(req: StieltjesRequest, checkpoints):
    """gamma_k estimates at several term counts N (one summand pass,
    acceleration=none semantics), for order-of-convergence studies."""
    req.validate()
    bits = req.precision_bits
    j = req.k
    state = build_recursion(max(j, 1), bits + 32)
    checkpoints = sorted(set(int(c) for c in checkpoints))
    n_max = max(checkpoints + [req.n_terms])
    out = {}
    with workprec(bits + 32):
        parts = {}
        for jj in range(1, j + 1):
            parts[jj], _, _ = _t_series_partials(state, jj, n_max, bits + 32,
                                                 checkpoints=checkpoints)
        t0 = mp.mpf(1) / 2 - mp.euler
        for cp in checkpoints:
            t_prev = t0
            val = None
            for jj in range(1, j + 1):
                val = jj * t_prev - parts[jj][cp]
                t_prev = parts[jj][cp]
            out[cp] = val
    with workprec(bits):
        return {cp: +v for cp, v in out.items()}


# ---------------------------------------------------------------------------
# the Euler constant and digamma variants
# ---------------------------------------------------------------------------

def _euler_summand_tail_model(order=6):
    """Expansion of the trapezoid-defect summand: coefficients of 1/j^r."""
    coeffs = []
    for r in range(3, 3 + order):
        c = mp.mpf(-1) ** (r + 1) * (mp.mpf(1) / r - mp.mpf(1) / 2)
        coeffs.append((r, 0, c, False))
    return TailModel(tuple(coeffs), order, mp.mpf(0))


def _euler_f(j):
    return mp.ln(j + 1) - mp.ln(j) - (mp.mpf(1) / (j + 1) + mp.mpf(1) / j) / 2


def _euler_f_deriv(m, x):
    x = mp.mpf(x)
    if m == 0:
        return _euler_f(x)
    lead = mp.mpf(-1) ** (m - 1) * mp.factorial(m - 1) * ((x + 1) ** (-m) - x ** (-m))
    corr = mp.mpf(-1) ** m * mp.factorial(m) * ((x + 1) ** (-m - 1) + x ** (-m - 1)) / 2
    return lead - corr


def euler_gamma(n_terms, bits=DEFAULT_BITS) -> SeriesResult:
    """Euler constant from the sawtooth-integral series with tail closure.

    gamma = 1/2 - sum_j [ln((j+1)/j) - (1/(j+1) + 1/j)/2]; the tail is
    closed by Euler-Maclaurin on the exact summand, and the attached
    TailModel carries the leading 1/j^r expansion for inspection.
    """
    n_terms = int(n_terms)
    if n_terms < 1:
        raise InvalidParameters("n_terms must be >= 1")
    with workprec(bits + 32):
        partial = mp.fsum(_euler_f(mp.mpf(j)) for j in range(1, n_terms + 1))
        a = mp.mpf(n_terms) + 1
        # closed-form integral of the summand over [a, inf)
        integral = 1 - ((a + 1) * mp.ln(a + 1) - a * mp.ln(a)) + (mp.ln(a) + mp.ln(a + 1)) / 2
        tail = integral + _euler_f(a) / 2
        prev_mag = mp.inf
        err = mp.mpf(0)
        for k in range(1, 14):
            term = -mp.bernoulli(2 * k) / mp.factorial(2 * k) * _euler_f_deriv(2 * k - 1, a)
            mag = abs(term)
            if k > 2 and mag > prev_mag:
                err = 2 * prev_mag
                break
            tail += term
            prev_mag = mag
            err = 2 * mag
        value = mp.mpf(1) / 2 - (partial + tail)
    with workprec(bits):
        return SeriesResult(+value, +err + mp.mpf(2) ** (8 - bits), n_terms, "hybrid",
                            tail_model=_euler_summand_tail_model())


def digamma_series(a, n_terms, bits=DEFAULT_BITS) -> SeriesResult:
    """Digamma by the trig-integral summation over frequencies 2 pi j a.

    psi(a) = ln a - 1/(2a) + sum_j [2 cos(w) Ci(w) + 2 sin(w) si(w)],
    w = 2 pi j a; the leading oscillatory parts cancel, leaving a summand
    ~ -2/w^2 whose tail is closed with a fitted model.
    """
    a = mp.mpf(a)
    if not a > 0:
        raise DomainError("a must be positive")
    n_terms = int(n_terms)
    pad = 32
    with workprec(bits + pad):
        two_pi_a = 2 * mp.pi * a
        summands = []
        for jj in range(1, n_terms + 1):
            w = two_pi_a * jj
            c_ = ci(w, bits + pad)
            s_ = si_lower(w, bits + pad)
            summands.append(2 * mp.cos(w) * c_ + 2 * mp.sin(w) * s_)
        total = tree_sum(summands)
        tail_val = mp.mpf(0)
        tail_err = abs(summands[-1]) * mp.mpf(n_terms)
        model = None
        if n_terms >= 64:
            lo = max(8, (55 * n_terms) // 100)
            idxs = sorted(set(int(lo + i * (n_terms - 1 - lo) / 23) for i in range(24)))
            if (2 * a) == mp.floor(2 * a):
                # frequencies hit multiples of pi: pure even-power decay
                exps = [(2, 0), (4, 0), (6, 0), (8, 0)]
            else:
                exps = [(2, 0), (3, 0), (4, 0), (5, 0), (6, 0), (7, 0)]
            try:
                model = fit_tail([(nn + 1, summands[nn]) for nn in idxs], len(exps),
                                 exponents=exps, bits=bits + pad,
                                 residual_threshold=mp.mpf("0.5"))
                tail_val, tail_err = model.tail_beyond(n_terms, bits + pad)
            except IllConditionedFit:
                model = None
        value = mp.ln(a) - 1 / (2 * a) + total + tail_val
    with workprec(bits):
        return SeriesResult(+value, +tail_err + mp.mpf(2) ** (8 - bits), n_terms,
                            "hybrid", tail_model=model)


def gamma1_half(n_terms, bits=DEFAULT_BITS) -> SeriesResult:
    """gamma_1 at expansion point 1/2 via the alternating frequency sum.

    -gamma_1(1/2) = ln 2 + ln^2(2)/2 + (1/pi) sum_n (-1)^n/n W_n,
    W_n = integral_{1/2}^inf sin(2 pi n x)(1 - ln x)/x^2 dx, split at x = 1
    into the closed finite piece and the tail template.  The boundary sine
    terms vanish at integer n, and every component collapses to zero-phase
    power series once n is moderately large.  (The sum enters with a plus:
    expanding the shifted sawtooth in sines gives
    P1(y - 1/2) = -sum_j (-1)^j sin(2 pi j y)/(pi j), and the defining
    integral carries ln(y) - 1 = -(1 - ln y); the historically printed
    minus in front of the sum converges to the wrong value, off by twice
    the sum.  Verified against the closed identity
    gamma_1(1/2) = gamma_1 - 2 euler ln 2 - ln^2 2.)
    """
    n_terms = int(n_terms)
    if n_terms < 1:
        raise InvalidParameters("n_terms must be >= 1")
    state = build_recursion(1, bits + 32)
    fam_a = Family(3, 3)   # drives integral_w^inf Ci(t)/t dt
    zp_a = _ZeroPhase(fam_a)
    zp_g = _ZeroPhase(state.levels[1].family)
    pad = 40
    with workprec(bits + pad):
        tau = mp.mpf(2) ** (-(min(int(bits), 120) + 30))
        pi_ = mp.pi
        ln_half = -mp.ln(2)
        eps1 = mp.mpf(state.levels[1].eps.numerator) / state.levels[1].eps.denominator
        summands = []
        per_term_err = mp.mpf(0)
        asym_ready = False
        for n in range(1, n_terms + 1):
            kap = 2 * pi_ * n
            half_w = pi_ * n
            parity = mp.mpf(-1) ** n
            if not asym_ready and n >= 6:
                # the pi*n-frequency pieces dominate the truncation floor
                _, t_probe = zp_a.eval(half_w, tau / (half_w * half_w * kap))
                _, t_ci = _CiZeroPhase.eval(half_w, parity, tau / (4 * kap))
                if (t_probe * half_w * half_w / 8 + t_ci) * kap <= tau:
                    asym_ready = True
            if asym_ready:
                ci_half, tr_ch = _CiZeroPhase.eval(half_w, parity, tau / (4 * kap))
                ci_full, tr_cf = _CiZeroPhase.eval(kap, mp.mpf(1), tau / (4 * kap))
                ea, tr_a = zp_a.eval(half_w, tau / half_w ** 2)
                i_half = parity * half_w * half_w / 8 * ea
                ef, tr_f = zp_a.eval(kap, tau / kap ** 2)
                i_full = kap * kap / 8 * ef
                eg, tr_g = zp_g.eval(kap, tau / (2 * abs(eps1) * kap ** 3))
                g1_val = eps1 * kap ** 3 * eg
                lf = kap * (ci_full - ci_half * (1 + ln_half) + i_full - i_half)
                w_n = -kap * ci_half - lf - g1_val
                per_term_err += (kap * (tr_ch + tr_cf) * 3
                                 + kap * (half_w ** 2 * tr_a + kap ** 2 * tr_f) / 8
                                 + abs(eps1) * kap ** 3 * tr_g) / (pi_ * n)
            else:
                ci_half = ci(half_w, bits + pad)
                ci_full = ci(kap, bits + pad)
                i_half = ci_over_t_tail(half_w, bits + pad, tau)
                i_full = ci_over_t_tail(kap, bits + pad, tau)
                g1v = g_value(state, 1, kap, bits=bits + pad, target_abs_err=tau)
                lf = kap * (ci_full - ci_half * (1 + ln_half)
                            + i_full.value - i_half.value)
                w_n = -kap * ci_half - lf - g1v.value
                per_term_err += (kap * (i_full.error_estimate + i_half.error_estimate)
                                 + g1v.error_estimate) / (pi_ * n)
            summands.append((parity / n) * w_n / pi_)
        total = tree_sum(summands)
        tail_val = mp.mpf(0)
        tail_err = abs(summands[-1]) * mp.mpf(n_terms)
        model = None
        if n_terms >= 96:
            lo = (55 * n_terms) // 100
            idxs = sorted(set(int(lo + i * (n_terms - 1 - lo) / 35) for i in range(36)))
            exps = [(2, 0, False), (4, 0, False), (6, 0, False),
                    (3, 0, True), (4, 0, True), (5, 0, True), (6, 0, True)]
            try:
                model = fit_tail([(nn + 1, summands[nn]) for nn in idxs], len(exps),
                                 exponents=exps, bits=bits + pad,
                                 residual_threshold=mp.mpf("0.5"))
                tail_val, tail_err = model.tail_beyond(n_terms, bits + pad)
            except IllConditionedFit:
                model = None
        minus_value = mp.ln(2) + mp.ln(2) ** 2 / 2 + total + tail_val
        value = -minus_value
    with workprec(bits):
        return SeriesResult(+value, +(tail_err + per_term_err) + mp.mpf(2) ** (8 - bits),
                            n_terms, "hybrid", tail_model=model)


def stieltjes_constant(req: StieltjesRequest) -> SeriesResult:
    """Dispatch a request to the appropriate series engine."""
    req.validate()
    a = mp.mpf(req.a)
    if req.k == 0:
        if a == 1:
            return euler_gamma(req.n_terms, req.precision_bits)
        res = digamma_series(a, req.n_terms, req.precision_bits)
        with workprec(req.precision_bits):
            return SeriesResult(-res.value, res.error_estimate, res.terms_used,
                                res.method, res.tail_model)
    if req.k == 1 and a != 1:
        return gamma1_half(req.n_terms, req.precision_bits)
    if req.k == 1:
        return gamma1(req)
    if req.k == 2:
        return gamma2(req)
    return gamma_j(req)
