"""Near-minimax polynomial approximation of exp(i*u*x) and the scope tables.

A polynomial ``P`` of degree ``r - 1`` approximating ``exp(i*pi*x)`` on
``|x| <= xi`` can be rescaled to approximate any ``exp(i*v*x)`` (substitute
``pi*x/v``) and translated to any centre, so one table of such polynomials,
indexed by tolerance and term count, serves every twiddle factor the
transform needs.

Polynomials are built by Chebyshev interpolation and their sup error is
certified on a dense grid, which makes every tabulated scope conservative.
"""

import csv
import functools
import math
import struct
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from numpy.polynomial import chebyshev

from ._validation import check_epsilon, check_finite_real, check_int
from .errors import (
    ConvergenceError,
    MissingEntry,
    PftError,
    TableFormatError,
    VersionMismatch,
)

TABLE_MAGIC = b"PFTT"
TABLE_VERSION = 1
DEFAULT_EPSILONS = tuple(10.0 ** -k for k in range(1, 9))
DEFAULT_R_MAX = 25
XI_RTOL = 1e-3
_MAX_BISECTIONS = 200


@dataclass(frozen=True, eq=False)
class ApproxPoly:
    """Complex polynomial ``sum_j coeffs[j] * x**j`` approximating
    ``exp(1j * base_frequency * x)`` on ``|x| <= scope``."""

    coeffs: np.ndarray
    base_frequency: float
    scope: float
    achieved_error: float

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128).ravel()
        if coeffs.size == 0:
            raise PftError("a polynomial needs at least one coefficient")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self):
        return self.coeffs.size - 1

    def __call__(self, x):
        return horner(self.coeffs, x)

    def validation_grid(self):
        return validation_grid(self.scope, self.degree + 1)

    def grid_error(self, center=0.0):
        """Max deviation from the target exponential over the validation grid
        shifted to ``center``."""
        x = self.validation_grid() + center
        return float(np.max(np.abs(self(x) - np.exp(1j * self.base_frequency * x))))


def horner(coeffs, x):
    x = np.asarray(x)
    out = np.full(x.shape, coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        out *= x
        out += c
    return out


def validation_grid(xi, r):
    """4096*r equispaced points plus the 8r-point Chebyshev grid on [-xi, xi]."""
    if xi == 0:
        return np.zeros(1)
    n_cheb = 8 * r
    cheb = np.cos(np.pi * (np.arange(n_cheb) + 0.5) / n_cheb)
    return np.concatenate([np.linspace(-xi, xi, 4096 * r), xi * cheb])


def _chebyshev_monomials(r, xi, u):
    # interpolate at first-kind nodes in t = x/xi, then undo the scaling
    k = np.arange(r)
    theta = np.pi * (k + 0.5) / r
    values = np.exp(1j * u * xi * np.cos(theta))
    c = (2.0 / r) * (np.cos(np.outer(k, theta)) @ values)
    c[0] *= 0.5
    t_coeffs = chebyshev.cheb2poly(c)
    return t_coeffs / xi ** np.arange(r)


def best_approx(r, xi, u):
    """Degree ``r - 1`` near-minimax approximation to ``exp(1j*u*x)`` on ``|x| <= xi``.

    Returns the constant polynomial 1 (error 0) when ``xi == 0`` or ``u == 0``.
    """
    r = check_int(r, "r", minimum=1)
    xi = abs(check_finite_real(xi, "xi"))
    u = check_finite_real(u, "u")
    if xi == 0 or u == 0:
        return ApproxPoly(np.ones(1), u, xi, 0.0)
    coeffs = _chebyshev_monomials(r, xi, u)
    x = validation_grid(xi, r)
    err = float(np.max(np.abs(horner(coeffs, x) - np.exp(1j * u * x))))
    if not math.isfinite(err):
        raise ConvergenceError(f"approximation diverged for r={r}, xi={xi}, u={u}")
    return ApproxPoly(coeffs, u, xi, err)


def scope_xi(epsilon, r):
    """Largest certified ``xi`` with ``best_approx(r, xi, pi)`` error <= epsilon.

    Bisection over ``[0, 2r]`` until the bracket is within a relative 1e-3 of
    the feasible endpoint, which is what gets returned.
    """
    epsilon = check_epsilon(epsilon)
    r = check_int(r, "r", minimum=1)
    lo, lo_poly = 0.0, best_approx(r, 0.0, math.pi)
    hi = 2.0 * r
    hi_poly = best_approx(r, hi, math.pi)
    if hi_poly.achieved_error <= epsilon:
        return hi, hi_poly
    for _ in range(_MAX_BISECTIONS):
        if lo > 0 and hi - lo <= XI_RTOL * lo:
            return lo, lo_poly
        mid = 0.5 * (lo + hi)
        poly = best_approx(r, mid, math.pi)
        if poly.achieved_error <= epsilon:
            lo, lo_poly = mid, poly
        else:
            hi = mid
    raise ConvergenceError(f"scope bisection did not converge for epsilon={epsilon}, r={r}")


def rescale_poly(poly, v):
    """Polynomial ``x -> P(v*x/u)`` approximating ``exp(1j*v*x)`` on ``|x| <= |u*xi/v|``."""
    v = check_finite_real(v, "v")
    if v == 0:
        raise PftError("rescaling frequency must be non-zero")
    u = poly.base_frequency
    if u == 0:
        return ApproxPoly(poly.coeffs, v, math.inf, poly.achieved_error)
    s = v / u
    coeffs = poly.coeffs * s ** np.arange(poly.coeffs.size)
    return ApproxPoly(coeffs, v, abs(poly.scope / s), poly.achieved_error)


def translate_poly(poly, u, mu):
    """Monomial coefficients of ``exp(1j*u*mu) * P(x - mu)``.

    The result approximates ``exp(1j*u*x)`` on ``|x - mu| <= scope`` with the
    same sup error as ``P`` on the centred interval. The returned polynomial
    keeps ``scope`` as its half-width; its centre is ``mu``.
    """
    u = check_finite_real(u, "u")
    mu = check_finite_real(mu, "mu")
    w = poly.coeffs
    n = w.size
    if mu == 0:
        return ApproxPoly(w, u, poly.scope, poly.achieved_error)
    # Q_k = sum_{j>=k} w_j * C(j, k) * (-mu)**(j-k)
    q = np.zeros(n, dtype=np.complex128)
    for j in range(n - 1, -1, -1):
        for k in range(j + 1):
            q[k] += w[j] * math.comb(j, k) * (-mu) ** (j - k)
    return ApproxPoly(np.exp(1j * u * mu) * q, u, poly.scope, poly.achieved_error)


@dataclass(eq=False)
class ScopeTable:
    """Map ``(epsilon, r) -> (xi, coeffs)`` for the base exponential ``exp(i*pi*x)``."""

    entries: dict
    version: int = TABLE_VERSION
    _certified: dict = field(default_factory=dict, repr=False)

    @property
    def epsilon_grid(self):
        return sorted({eps for eps, _ in self.entries})

    @property
    def r_max(self):
        return max(r for _, r in self.entries)

    def r_values(self, epsilon):
        eps = self.match_epsilon(epsilon)
        return sorted(r for e, r in self.entries if e == eps)

    def match_epsilon(self, epsilon):
        for eps in self.epsilon_grid:
            if math.isclose(eps, epsilon, rel_tol=1e-9):
                return eps
        raise MissingEntry(
            f"epsilon={epsilon!r} is not tabulated; available: {self.epsilon_grid}"
        )

    def xi(self, epsilon, r):
        return self._entry(epsilon, r)[0]

    def coeffs(self, epsilon, r):
        return self._entry(epsilon, r)[1]

    def _entry(self, epsilon, r):
        key = (self.match_epsilon(epsilon), int(r))
        try:
            return self.entries[key]
        except KeyError:
            raise MissingEntry(f"no table entry for epsilon={epsilon!r}, r={r}") from None

    def poly(self, epsilon, r):
        """The tabulated polynomial with its grid-certified error (cached)."""
        key = (self.match_epsilon(epsilon), int(r))
        if key not in self._certified:
            xi, coeffs = self._entry(*key)
            x = validation_grid(xi, key[1])
            err = float(np.max(np.abs(horner(coeffs, x) - np.exp(1j * math.pi * x))))
            self._certified[key] = ApproxPoly(coeffs, math.pi, xi, err)
        return self._certified[key]

    def __eq__(self, other):
        if not isinstance(other, ScopeTable):
            return NotImplemented
        if self.version != other.version or self.entries.keys() != other.entries.keys():
            return False
        return all(
            self.entries[k][0] == other.entries[k][0]
            and np.array_equal(self.entries[k][1], other.entries[k][1])
            for k in self.entries
        )


def build_table(epsilons=DEFAULT_EPSILONS, r_max=DEFAULT_R_MAX, progress=None):
    """Tabulate ``scope_xi`` over ``epsilons x {1..r_max}``.

    If a larger ``r`` certifies a narrower scope than ``r - 1`` did, the
    ``r - 1`` polynomial (zero-padded) is stored instead, so scopes never
    shrink with ``r``.
    """
    r_max = check_int(r_max, "r_max", minimum=1)
    entries = {}
    for eps in sorted(set(check_epsilon(e) for e in epsilons)):
        prev = None
        for r in range(1, r_max + 1):
            xi, poly = scope_xi(eps, r)
            coeffs = np.array(poly.coeffs)
            if prev is not None and xi < prev[0]:
                xi = prev[0]
                coeffs = np.concatenate([prev[1], [0j]])
            entries[(eps, r)] = (xi, coeffs)
            prev = (xi, coeffs)
            if progress is not None:
                progress(eps, r, xi)
    return ScopeTable(entries)


_HEADER = struct.Struct("<4sII")
_ENTRY = struct.Struct("<dId")


def table_bytes(table):
    parts = [_HEADER.pack(TABLE_MAGIC, table.version, len(table.entries))]
    for (eps, r), (xi, coeffs) in sorted(table.entries.items()):
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.size != r:
            raise PftError(f"entry (epsilon={eps}, r={r}) has {coeffs.size} coefficients")
        parts.append(_ENTRY.pack(eps, r, xi))
        parts.append(coeffs.astype("<c16").tobytes())
    return b"".join(parts)


def save_table(table, path):
    Path(path).write_bytes(table_bytes(table))


def parse_table(data):
    if len(data) < _HEADER.size:
        raise TableFormatError("file too short for a scope table header")
    magic, version, count = _HEADER.unpack_from(data, 0)
    if magic != TABLE_MAGIC:
        raise TableFormatError(f"bad magic {magic!r}, expected {TABLE_MAGIC!r}")
    if version != TABLE_VERSION:
        raise VersionMismatch(f"table version {version}, this library reads {TABLE_VERSION}")
    offset = _HEADER.size
    entries = {}
    for _ in range(count):
        if offset + _ENTRY.size > len(data):
            raise TableFormatError("truncated entry header")
        eps, r, xi = _ENTRY.unpack_from(data, offset)
        offset += _ENTRY.size
        nbytes = 16 * r
        if r < 1 or offset + nbytes > len(data):
            raise TableFormatError(f"truncated or invalid entry (epsilon={eps}, r={r})")
        coeffs = np.frombuffer(data, dtype="<c16", count=r, offset=offset).astype(np.complex128)
        offset += nbytes
        if not (eps > 0 and math.isfinite(xi) and xi >= 0 and np.all(np.isfinite(coeffs))):
            raise TableFormatError(f"corrupted entry (epsilon={eps}, r={r})")
        entries[(eps, r)] = (xi, coeffs)
    if offset != len(data):
        raise TableFormatError(f"{len(data) - offset} trailing bytes after last entry")
    return ScopeTable(entries, version=version)


def load_table(path):
    return parse_table(Path(path).read_bytes())


def export_csv(table, path):
    """Human-readable dump: epsilon, r, xi, space-separated complex coefficients."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epsilon", "r", "xi", "coeffs"])
        for (eps, r), (xi, coeffs) in sorted(table.entries.items()):
            writer.writerow([repr(eps), r, repr(xi), " ".join(repr(complex(c)) for c in coeffs)])


@functools.lru_cache(maxsize=1)
def default_table():
    """The scope table shipped with the package (epsilon 1e-1..1e-8, r <= 25)."""
    data = resources.files("pft").joinpath("data/scope_table.pftt").read_bytes()
    return parse_table(data)
