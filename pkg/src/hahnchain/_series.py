"""Certified evaluation of the terminating series behind both polynomial families.

The forward term-ratio sum is mathematically exact, but the terms alternate in
sign and can dwarf the result, so fixed precision alone cannot reach the
tolerances the identity checks demand at larger sizes.  Every sum therefore
runs through escalating tiers -- vector double, vector double-double, mpmath at
a computed precision -- with the running max |term| acting as an a-posteriori
rounding certificate for each tier.
"""

import math

import mpmath
import numpy as np

from . import _ddouble as dd

_EPS = 2.220446049250313e-16
# safety factor on the accumulated-rounding estimate err <= C * nterms * eps * max|term|
_CERT = 8.0
_MAX_DPS = 3000


# ---------------------------------------------------------------------------
# classical family:  sum_k  prod_{j<k} r_j(x),
#     r_k(x) = (k-n)(k+n+a+b+1)(k-x) / ((k+1)(k+a+1)(k-m))
# ---------------------------------------------------------------------------

def classical_row_double(n, xs, a, b, m):
    xs = np.asarray(xs, dtype=float)
    term = np.ones_like(xs)
    total = np.ones_like(xs)
    maxterm = np.ones_like(xs)
    for k in range(n):
        c = ((k - n) * (k + n + a + b + 1.0)) / ((k + 1.0) * (k + a + 1.0) * (k - m))
        term = term * (c * (k - xs))
        total = total + term
        np.maximum(maxterm, np.abs(term), out=maxterm)
    return total, maxterm


def classical_row_dd(n, xs, a, b, m):
    xs = np.asarray(xs, dtype=float)
    th, tl = dd.from_double(np.ones_like(xs))
    sh, sl = dd.from_double(np.ones_like(xs))
    maxterm = np.ones_like(xs)
    for k in range(n):
        # parameter sums assembled in dd so every term ratio is dd-accurate
        uh, ul = dd.two_sum(k + n + 1.0, a)
        uh, ul = dd.add(uh, ul, b, 0.0)
        nh, nl = dd.mul_d(uh, ul, float(k - n))
        vh, vl = dd.two_sum(k + 1.0, a)
        dh, dl = dd.mul_d(vh, vl, float((k + 1) * (k - m)))
        rh, rl = dd.div(nh, nl, dh, dl)
        th, tl = dd.mul(th, tl, rh, rl)
        th, tl = dd.mul_d(th, tl, k - xs)
        sh, sl = dd.add(sh, sl, th, tl)
        np.maximum(maxterm, np.abs(th), out=maxterm)
    return sh, sl, maxterm


def classical_mp(n, x, a, b, m, dps):
    with mpmath.workdps(dps):
        am = mpmath.mpf(a)
        bm = mpmath.mpf(b)
        term = total = mpmath.mpf(1)
        for k in range(min(n, x)):
            term *= (k - n) * (k + n + am + bm + 1) * (k - x)
            term /= (k + am + 1) * (k + 1) * (k - m)
            total += term
        return float(total)


def classical_log_maxterm(n, x, a, b, m):
    """log10 bound on max |term|, for sizing mp precision when doubles overflow."""
    lt = 0.0
    worst = 0.0
    for k in range(min(n, x)):
        num = abs((k - n) * (k + n + a + b + 1.0) * (k - x))
        den = abs((k + 1.0) * (k + a + 1.0) * (k - m))
        if num == 0.0:
            break
        lt += math.log10(num) - math.log10(den)
        worst = max(worst, lt)
    return worst


# ---------------------------------------------------------------------------
# q-deformed family:  r_k(x) = q (1-q^{k-n})(1-ab q^{n+1+k})(1-q^{k-x})
#                              / ((1-q^{k+1})(1-a q^{k+1})(1-q^{k-m}))
# ---------------------------------------------------------------------------

def q_row_double(n, xs, a, b, q, m):
    xs = np.asarray(xs)
    term = np.ones(xs.shape)
    total = np.ones(xs.shape)
    maxterm = np.ones(xs.shape)
    for k in range(n):
        c = (q * (1.0 - q ** (k - n)) * (1.0 - a * b * q ** (n + 1 + k))
             / ((1.0 - q ** (k + 1)) * (1.0 - a * q ** (k + 1)) * (1.0 - q ** (k - m))))
        term = term * (c * (1.0 - q ** (k - xs)))
        total = total + term
        np.maximum(maxterm, np.abs(term), out=maxterm)
    return total, maxterm


def q_row_dd(n, xs, a, b, q, m):
    xs = np.asarray(xs)
    lo_exp = -(m + 2)
    ph, pl = dd.powers(q, lo_exp, 2 * m + 3)
    off = -lo_exp

    def one_minus_qpow(e):
        # dd value of 1 - q**e for integer exponent array or scalar e
        return dd.add(1.0, 0.0, -ph[e + off], -pl[e + off])

    th, tl = dd.from_double(np.ones(xs.shape))
    sh, sl = dd.from_double(np.ones(xs.shape))
    maxterm = np.ones(xs.shape)
    for k in range(n):
        f2h, f2l = dd.mul_d(*dd.mul_d(ph[n + 1 + k + off], pl[n + 1 + k + off], a), b)
        f2h, f2l = dd.add(1.0, 0.0, -f2h, -f2l)
        g2h, g2l = dd.mul_d(ph[k + 1 + off], pl[k + 1 + off], a)
        g2h, g2l = dd.add(1.0, 0.0, -g2h, -g2l)
        nh, nl = dd.mul(*one_minus_qpow(k - n), f2h, f2l)
        nh, nl = dd.mul(nh, nl, ph[1 + off], pl[1 + off])
        dh, dl = dd.mul(*one_minus_qpow(k + 1), g2h, g2l)
        dh, dl = dd.mul(dh, dl, *one_minus_qpow(k - m))
        rh, rl = dd.div(nh, nl, dh, dl)
        th, tl = dd.mul(th, tl, rh, rl)
        th, tl = dd.mul(th, tl, *one_minus_qpow(k - xs))
        sh, sl = dd.add(sh, sl, th, tl)
        np.maximum(maxterm, np.abs(th), out=maxterm)
    return sh, sl, maxterm


def q_mp(n, x, a, b, q, m, dps):
    with mpmath.workdps(dps):
        am = mpmath.mpf(a)
        bm = mpmath.mpf(b)
        qm = mpmath.mpf(q)
        term = total = mpmath.mpf(1)
        for k in range(min(n, x)):
            term *= qm * (1 - qm ** (k - n)) * (1 - am * bm * qm ** (n + 1 + k)) * (1 - qm ** (k - x))
            term /= (1 - qm ** (k + 1)) * (1 - am * qm ** (k + 1)) * (1 - qm ** (k - m))
            total += term
        return float(total)


def q_log_maxterm(n, x, a, b, q, m):
    lt = 0.0
    worst = 0.0
    lq = math.log10(q)
    for k in range(min(n, x)):
        num = abs(q * (1.0 - q ** (k - n)) * (1.0 - a * b * q ** (n + 1 + k)))
        den = abs((1.0 - q ** (k + 1)) * (1.0 - a * q ** (k + 1)) * (1.0 - q ** (k - m)))
        e = k - x
        lfx = math.log10(abs(1.0 - q ** e)) if e > -300 else e * lq
        lt += math.log10(num) - math.log10(den) + lfx
        worst = max(worst, lt)
    return worst


# ---------------------------------------------------------------------------
# certification drivers
# ---------------------------------------------------------------------------

def _mp_digits(log10_maxterm, log10_target, nterms):
    need = log10_maxterm - log10_target + math.log10(_CERT * max(nterms, 1)) + 6
    return int(min(max(30, math.ceil(need)), _MAX_DPS))


def _log_target(t):
    return math.log10(max(t, 1e-290))


def certified_row(family_args, n, xs, abs_target, kind):
    """Series values for one degree over an x grid, certified to abs_target.

    kind is "classical" (family_args = (a, b, m)) or "q" ((a, b, q, m)).
    abs_target is an array of allowed absolute errors, same length as xs.
    """
    xs = np.asarray(xs)
    if n == 0:
        return np.ones(xs.shape)
    nterms = n
    if kind == "classical":
        total, maxterm = classical_row_double(n, xs, *family_args)
    else:
        total, maxterm = q_row_double(n, xs, *family_args)
    err = _CERT * nterms * _EPS * maxterm
    err[np.asarray(xs) == 0] = 0.0  # series is exactly 1 at x = 0 in every tier
    bad = ~(err <= abs_target)
    if not bad.any():
        return total
    if kind == "classical":
        sh, _, maxterm_dd = classical_row_dd(n, xs, *family_args)
    else:
        sh, _, maxterm_dd = q_row_dd(n, xs, *family_args)
    err_dd = _CERT * nterms * dd.EPS * maxterm_dd
    total = np.where(bad, sh, total)
    bad = bad & ~(err_dd <= abs_target)
    idx = np.nonzero(bad)[0]
    if idx.size == 0:
        return total
    log_mt = {
        i: (math.log10(maxterm_dd[i]) if math.isfinite(maxterm_dd[i]) and maxterm_dd[i] > 0
            else (classical_log_maxterm(n, int(xs[i]), *family_args) if kind == "classical"
                  else q_log_maxterm(n, int(xs[i]), *family_args)))
        for i in idx
    }
    dps = max(_mp_digits(log_mt[i], _log_target(abs_target[i]), nterms) for i in idx)
    with mpmath.workdps(dps):
        for i in idx:
            if kind == "classical":
                total[i] = classical_mp(n, int(xs[i]), *family_args, dps)
            else:
                total[i] = q_mp(n, int(xs[i]), *family_args, dps)
    return total


def certified_row_rel(family_args, n, xs, rel_target, kind):
    """Series values over an x grid, each certified to a relative tolerance."""
    xs = np.asarray(xs)
    if n == 0:
        return np.ones(xs.shape)
    if kind == "classical":
        total, maxterm = classical_row_double(n, xs, *family_args)
    else:
        total, maxterm = q_row_double(n, xs, *family_args)
    err = _CERT * n * _EPS * maxterm
    err[np.asarray(xs) == 0] = 0.0
    bad = ~(err <= rel_target * np.abs(total))
    for i in np.nonzero(bad)[0]:
        total[i] = certified_value(family_args, n, int(xs[i]), rel_target, kind)
    return total


def certified_value(family_args, n, x, rel_target, kind):
    """Scalar series value certified to a relative tolerance."""
    nterms = min(n, x)
    if nterms == 0:
        return 1.0
    xs = np.array([x])
    if kind == "classical":
        total, maxterm = classical_row_double(n, xs, *family_args)
    else:
        total, maxterm = q_row_double(n, xs, *family_args)
    s, mt = float(total[0]), float(maxterm[0])
    if _CERT * nterms * _EPS * mt <= rel_target * abs(s):
        return s
    if kind == "classical":
        sh, _, mtd = classical_row_dd(n, xs, *family_args)
    else:
        sh, _, mtd = q_row_dd(n, xs, *family_args)
    s, mt = float(sh[0]), float(mtd[0])
    if _CERT * nterms * dd.EPS * mt <= rel_target * abs(s):
        return s
    if math.isfinite(mt) and mt > 0:
        lmt = math.log10(mt)
    elif kind == "classical":
        lmt = classical_log_maxterm(n, x, *family_args)
    else:
        lmt = q_log_maxterm(n, x, *family_args)
    guess = abs(s) if s != 0.0 and math.isfinite(s) else 1.0
    for _ in range(4):
        dps = _mp_digits(lmt, math.log10(rel_target * guess), nterms)
        if kind == "classical":
            s = classical_mp(n, x, *family_args, dps)
        else:
            s = q_mp(n, x, *family_args, dps)
        resolved = 10.0 ** (lmt - dps + math.log10(_CERT * nterms) + 2)
        if s == 0.0:
            if resolved <= rel_target * guess * 1e-3:
                return 0.0
            guess = guess * 1e-6
            continue
        if resolved <= rel_target * abs(s):
            return s
        guess = abs(s)
    return s
