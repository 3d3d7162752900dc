"""Exponential-expansion coefficient table: fitting, serialization, checks.

The runtime engine uses the exact integer coefficients from
:func:`hypstieltjes.hypergeom.exp_coeffs`.  This module provides the
independent least-squares determination (fitting the oscillatory residual
of high-precision Taylor values against the damped-cosine basis), records
the fit residuals as quality evidence, and serializes everything to a
versioned text table shipped with the package.
"""

from __future__ import annotations

import importlib.resources as resources
from pathlib import Path

import mpmath as mp

from .errors import IllConditionedFit
from .hypergeom import Family, algebraic_coeffs, as_family, eval_taylor, exp_coeffs
from .precision import workprec

TABLE_VERSION = 1
TABLE_NAME = "asym_exp_coeffs.v1.txt"

DEFAULT_FAMILIES = [Family(2, 3), Family(3, 3), Family(4, 3), Family(2, 5),
                    Family(3, 5), Family(4, 5), Family(5, 5), Family(6, 5),
                    Family(7, 5), Family(8, 5)]


def _residual_values(fam, grid, bits):
    """High-precision F(-z) minus its algebraic part on the kappa grid."""
    h = algebraic_coeffs(fam, bits)
    out = []
    for kappa in grid:
        z = kappa * kappa / 4
        f = eval_taylor(fam.spec(-z), mp.mpf(2) ** (-bits + 16), bits=bits)
        lz = mp.ln(z)
        hval = mp.fsum(h[m] * lz ** m for m in range(len(h))) / z
        out.append(f.value - hval)
    return out


def fit_exponential_coeffs(family, k_max=8, bits=900, grid=None):
    """Least-squares A_0..A_{k_max} from Taylor-minus-algebraic residuals.

    Returns (coefficients, max relative residual).  The basis is
    2 kappa^(theta-k) cos(kappa + pi (theta-k)/2); extra nuisance orders
    beyond k_max absorb truncation so the reported coefficients are clean.
    """
    fam = as_family(family)
    with workprec(bits):
        if grid is None:
            base = mp.mpf(250)
            grid = [base + mp.mpf("3.1") * i for i in range(44)]
        n_fit = k_max + 8
        theta = mp.mpf(fam.theta)
        resid = _residual_values(fam, grid, bits)
        mid = grid[len(grid) // 2]
        cols = []
        scales = []
        for k in range(n_fit):
            scale = mid ** (theta - k)
            scales.append(scale)
            cols.append([2 * kap ** (theta - k) * mp.cos(kap + mp.pi * (theta - k) / 2) / scale
                         for kap in grid])
        m = n_fit
        ata = mp.matrix(m, m)
        aty = mp.matrix(m, 1)
        for i in range(m):
            for j in range(i, m):
                v = mp.fsum(cols[i][r] * cols[j][r] for r in range(len(grid)))
                ata[i, j] = v
                ata[j, i] = v
            aty[i] = mp.fsum(cols[i][r] * resid[r] for r in range(len(grid)))
        try:
            sol = mp.lu_solve(ata, aty)
        except (ZeroDivisionError, ValueError) as exc:
            raise IllConditionedFit(f"coefficient fit singular: {exc}") from None
        leading = 2 * abs(sol[0] / scales[0]) * mid ** theta
        worst = mp.mpf(0)
        for r in range(len(grid)):
            pred = mp.fsum(sol[i] * cols[i][r] for i in range(m))
            worst = max(worst, abs(pred - resid[r]))
        rel_resid = worst / leading
        coeffs = [sol[k] / scales[k] for k in range(k_max + 1)]
        return coeffs, rel_resid


def generate_table(path, families=None, k_max=8, bits=900):
    """Fit every family, cross-check against the exact integers, write the
    table.  Returns the record list."""
    families = families or DEFAULT_FAMILIES
    records = []
    for fam in families:
        fitted, rel_resid = fit_exponential_coeffs(fam, k_max=k_max, bits=bits)
        exact = exp_coeffs(fam, k_max + 1)
        with workprec(bits):
            for k in range(k_max + 1):
                drift = abs(fitted[k] - exact[k])
                records.append((fam.p, fam.alpha2, k, mp.mpf(exact[k]),
                                max(rel_resid, drift / max(1, abs(exact[k])))))
    lines = [
        "# exponential-expansion coefficients A_k for the repeated-parameter",
        "# pF(p+1) families (numerators all 1, denominators all 2 plus alpha2/2)",
        f"# version: {TABLE_VERSION}",
        "# columns: p alpha2 k coefficient residual",
    ]
    with workprec(256):
        for (p, a2, k, val, res) in records:
            lines.append(f"{p} {a2} {k} {mp.nstr(val, 40)} {mp.nstr(res, 3)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")
    return records


def default_table_path():
    return resources.files("hypstieltjes") / "_data" / TABLE_NAME


def load_table(path=None):
    """Parse the table into {(p, alpha2): [(k, value, residual), ...]}."""
    if path is None:
        text = default_table_path().read_text(encoding="ascii")
    else:
        text = Path(path).read_text(encoding="ascii")
    version = None
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# version:"):
            version = int(line.split(":")[1])
            continue
        if not line or line.startswith("#"):
            continue
        p_s, a2_s, k_s, val_s, res_s = line.split()
        key = (int(p_s), int(a2_s))
        out.setdefault(key, []).append((int(k_s), mp.mpf(val_s), mp.mpf(res_s)))
    if version != TABLE_VERSION:
        raise ValueError(f"unsupported table version {version}")
    return out


def validate_table(path=None, tol=mp.mpf("1e-30")):
    """Check every table entry against the exact generator.  Returns a list
    of (family, k, abs_difference) offenders (empty when clean)."""
    table = load_table(path)
    bad = []
    for (p, a2), rows in table.items():
        exact = exp_coeffs(Family(p, a2), max(k for k, _, _ in rows) + 1)
        with workprec(256):
            for (k, val, _res) in rows:
                diff = abs(val - exact[k])
                if diff > tol * max(1, abs(exact[k])):
                    bad.append(((p, a2), k, diff))
    return bad
