"""Homogeneous polynomials in n+1 variables x0..xn, sparse and dense.

The project-wide monomial order is graded reverse lexicographic with
x0 > x1 > ... > xn.  Within one degree, descending grevlex order
coincides with ascending lexicographic order of the *reversed* exponent
tuple; the dense tables below list monomials in exactly that order, so
index 0 is the grevlex-largest monomial of the degree.

Sparse polynomials (``HPoly``) keep exact integer coefficients and are
used for input handling, differentiation, Groebner bookkeeping and
small products.  Hot loops run on dense per-degree coefficient vectors
(numpy int64) indexed through ``DegreeTable``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

Monomial = tuple[int, ...]


def grevlex_key(mono: Monomial):
    """Sort key putting grevlex-larger monomials first (any degrees mixed)."""
    return (-sum(mono), tuple(reversed(mono)))


def grevlex_cmp_desc(monos: list[Monomial]) -> list[Monomial]:
    return sorted(monos, key=grevlex_key)


_TERM_RE = re.compile(r"^\s*([0-9]+)?\s*((?:\*?\s*x[0-9]+(?:\^[0-9]+)?\s*)*)$")
_FACTOR_RE = re.compile(r"x([0-9]+)(?:\^([0-9]+))?")


@dataclass(frozen=True)
class HPoly:
    """A homogeneous polynomial: exponent-tuple -> integer coefficient.

    The zero polynomial still records its ambient number of variables and
    its degree so that additions stay well typed.
    """

    nvars: int
    degree: int
    terms: dict[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            if len(mono) != self.nvars:
                raise ValueError(f"monomial {mono} has wrong arity")
            if sum(mono) != self.degree:
                raise ValueError(
                    f"monomial {mono} has degree {sum(mono)}, expected {self.degree}"
                )
            if c != 0:
                clean[tuple(int(e) for e in mono)] = int(c)
        object.__setattr__(self, "terms", clean)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(nvars: int, degree: int) -> HPoly:
        return HPoly(nvars, degree, {})

    @staticmethod
    def monomial(mono: Monomial, coeff: int = 1) -> HPoly:
        return HPoly(len(mono), sum(mono), {tuple(mono): coeff})

    @staticmethod
    def parse(text: str, nvars: int | None = None) -> HPoly:
        """Parse e.g. ``3*x0^2*x1*x3 - x2^4``.

        The input must be homogeneous with nonnegative integer
        coefficients written with ``+``/``-`` signs; anything else is
        rejected.
        """
        compact = text.strip()
        if not compact:
            raise ValueError("empty polynomial")
        # split into signed chunks
        chunks: list[tuple[int, str]] = []
        sign, buf = 1, []
        for ch in compact:
            if ch in "+-":
                if "".join(buf).strip():
                    chunks.append((sign, "".join(buf)))
                elif chunks:
                    raise ValueError(f"dangling sign in {text!r}")
                sign = 1 if ch == "+" else -1
                buf = []
            else:
                buf.append(ch)
        if not "".join(buf).strip():
            raise ValueError(f"trailing sign in {text!r}")
        chunks.append((sign, "".join(buf)))

        terms: dict[Monomial, int] = {}
        max_var = -1
        parsed: list[tuple[int, dict[int, int]]] = []
        for sign, chunk in chunks:
            m = _TERM_RE.match(chunk)
            if not m or (m.group(1) is None and not m.group(2).strip()):
                raise ValueError(f"cannot parse term {chunk!r}")
            coeff = int(m.group(1)) if m.group(1) else 1
            exps: dict[int, int] = {}
            body = m.group(2)
            consumed = 0
            for fm in _FACTOR_RE.finditer(body):
                idx = int(fm.group(1))
                e = int(fm.group(2)) if fm.group(2) else 1
                exps[idx] = exps.get(idx, 0) + e
                max_var = max(max_var, idx)
                consumed += 1
            if body.strip() and consumed == 0:
                raise ValueError(f"cannot parse term {chunk!r}")
            parsed.append((sign * coeff, exps))
        if nvars is None:
            nvars = max_var + 1
        elif max_var >= nvars:
            raise ValueError(f"variable x{max_var} out of range for {nvars} variables")
        degrees = {sum(e.values()) for _, e in parsed}
        if len(degrees) != 1:
            raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degrees)}")
        degree = degrees.pop()
        for coeff, exps in parsed:
            mono = tuple(exps.get(i, 0) for i in range(nvars))
            terms[mono] = terms.get(mono, 0) + coeff
        return HPoly(nvars, degree, terms)

    # -- presentation ---------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=grevlex_key):
            c = self.terms[mono]
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(f"x{i}")
                elif e > 1:
                    factors.append(f"x{i}^{e}")
            body = "*".join(factors) if factors else "1"
            mag = abs(c)
            lead = body if mag == 1 and factors else f"{mag}*{body}" if factors else str(mag)
            parts.append(("- " if c < 0 else "+ ") + lead)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"HPoly({self.to_text()})"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: HPoly) -> HPoly:
        if other.nvars != self.nvars or other.degree != self.degree:
            raise ValueError("can only add homogeneous polynomials of equal degree")
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return HPoly(self.nvars, self.degree, terms)

    def __sub__(self, other: HPoly) -> HPoly:
        return self + other.scale(-1)

    def scale(self, c: int) -> HPoly:
        return HPoly(self.nvars, self.degree, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: HPoly) -> HPoly:
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return HPoly(self.nvars, self.degree + other.degree, terms)

    def shift(self, tau: Monomial) -> HPoly:
        return HPoly(
            self.nvars,
            self.degree + sum(tau),
            {tuple(a + b for a, b in zip(m, tau)): c for m, c in self.terms.items()},
        )

    def pow(self, e: int) -> HPoly:
        """Integer power by repeated squaring, exact over Z."""
        if e < 0:
            raise ValueError("negative power")
        result = HPoly(self.nvars, 0, {(0,) * self.nvars: 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def partial(self, i: int) -> HPoly:
        terms: dict[Monomial, int] = {}
        for mono, c in self.terms.items():
            if mono[i] == 0:
                continue
            lowered = list(mono)
            lowered[i] -= 1
            key = tuple(lowered)
            terms[key] = terms.get(key, 0) + c * mono[i]
        return HPoly(self.nvars, max(self.degree - 1, 0) if terms else self.degree - 1, terms)

    def frob_substitute(self, p: int) -> HPoly:
        """Substitute x_i -> x_i^p."""
        return HPoly(
            self.nvars,
            self.degree * p,
            {tuple(e * p for e in m): c for m, c in self.terms.items()},
        )

    def reduce_mod(self, mod: int) -> HPoly:
        return HPoly(self.nvars, self.degree, {m: c % mod for m, c in self.terms.items()})

    def map_coeffs(self, f) -> HPoly:
        return HPoly(self.nvars, self.degree, {m: f(c) for m, c in self.terms.items()})

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return min(self.terms, key=lambda m: tuple(reversed(m)))

    def is_zero(self) -> bool:
        return not self.terms

    def content_val(self, p: int) -> int:
        """Minimum p-adic valuation of the coefficients (huge for zero)."""
        if not self.terms:
            return 10**9
        out = None
        for c in self.terms.values():
            v = 0
            c = abs(c)
            while c % p == 0:
                c //= p
                v += 1
            out = v if out is None else min(out, v)
            if out == 0:
                break
        return out


def euler_sum(poly: HPoly) -> HPoly:
    """sum_i x_i * d/dx_i poly (equals degree * poly for homogeneous input)."""
    acc = HPoly.zero(poly.nvars, poly.degree)
    for i in range(poly.nvars):
        e_i = tuple(1 if j == i else 0 for j in range(poly.nvars))
        acc = acc + poly.partial(i).shift(e_i)
    return acc


def compute_delta(ptilde: HPoly, p: int) -> HPoly:
    """Delta = (ptilde(x^p) - ptilde^p) / p, exactly over the integers.

    The p-th power is taken by repeated squaring over Z before the
    subtraction, because the division by p must be exact.
    """
    fr = ptilde.frob_substitute(p)
    pw = ptilde.pow(p)
    diff = fr - pw
    bad = [c for c in diff.terms.values() if c % p]
    if bad:
        raise ValueError("difference is not divisible by p; input not integral?")
    return diff.map_coeffs(lambda c: c // p)


# ---------------------------------------------------------------------------
# Dense per-degree machinery
# ---------------------------------------------------------------------------


def monomial_count(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


@lru_cache(maxsize=None)
def _exps_matrix(nvars: int, degree: int) -> np.ndarray:
    """All exponent vectors of the degree, ascending in reversed-lex order
    (i.e. descending grevlex)."""
    if degree < 0:
        return np.zeros((0, nvars), dtype=np.int32)
    if nvars == 1:
        return np.array([[degree]], dtype=np.int32)
    blocks = []
    for v in range(degree + 1):
        sub = _exps_matrix(nvars - 1, degree - v)
        col = np.full((sub.shape[0], 1), v, dtype=np.int32)
        blocks.append(np.hstack([sub, col]))
    return np.vstack(blocks) if blocks else np.zeros((0, nvars), dtype=np.int32)


class DegreeTable:
    """Monomials of one degree in grevlex-descending order, with ranking.

    ``rank_rows`` inverts the enumeration: for exponent rows E it returns
    the index of each monomial, computed from the combinatorial formula

        rank(e) = sum_t [ C(R_t + t, t) - C(R_t - e_t + t, t) ]

    where t runs over variable positions nvars-1 .. 1 and
    R_t = degree - (e_{t+1} + ... + e_{nvars-1}) is the degree left after
    fixing the more significant digits of the reversed exponent tuple.
    """

    def __init__(self, nvars: int, degree: int):
        self.nvars = nvars
        self.degree = degree
        self.dim = monomial_count(nvars, degree)
        self.exps = _exps_matrix(nvars, degree)
        # C(a, t) for 0 <= a <= degree + nvars, 1 <= t < nvars
        amax = max(degree + nvars + 1, 1)
        self._comb = np.zeros((amax, nvars), dtype=np.int64)
        for t in range(1, nvars):
            for a in range(amax):
                self._comb[a, t] = comb(a, t) if a >= t else 0

    def rank_rows(self, E: np.ndarray) -> np.ndarray:
        E = np.asarray(E, dtype=np.int64)
        single = E.ndim == 1
        if single:
            E = E[None, :]
        n = self.nvars
        rank = np.zeros(E.shape[0], dtype=np.int64)
        suffix = np.zeros(E.shape[0], dtype=np.int64)  # sum of digits above t
        for t in range(n - 1, 0, -1):
            R = self.degree - suffix
            rank += self._comb[R + t, t] - self._comb[R - E[:, t] + t, t]
            suffix += E[:, t]
        return rank[0] if single else rank

    def rank_of(self, mono: Monomial) -> int:
        return int(self.rank_rows(np.array(mono, dtype=np.int64)))

    def monomial_at(self, idx: int) -> Monomial:
        return tuple(int(v) for v in self.exps[idx])

    # -- conversions ----------------------------------------------------

    def to_dense(self, poly: HPoly, mod: int | None = None) -> np.ndarray:
        if poly.degree != self.degree or poly.nvars != self.nvars:
            raise ValueError("degree/arity mismatch")
        vec = np.zeros(self.dim, dtype=np.int64)
        if poly.terms:
            monos = np.array(list(poly.terms.keys()), dtype=np.int64)
            coeffs = [poly.terms[tuple(int(x) for x in m)] for m in monos]
            if mod is not None:
                coeffs = [c % mod for c in coeffs]
            vec[self.rank_rows(monos)] = coeffs
        return vec

    def from_dense(self, vec: np.ndarray) -> HPoly:
        terms = {}
        for idx in np.nonzero(vec)[0]:
            terms[self.monomial_at(int(idx))] = int(vec[idx])
        return HPoly(self.nvars, self.degree, terms)

    # -- index maps -----------------------------------------------------

    def shift_index(self, tau: Monomial, target: DegreeTable) -> np.ndarray:
        """Ranks in ``target`` of every monomial of this table times x^tau."""
        if target.degree != self.degree + sum(tau):
            raise ValueError("target degree mismatch")
        shifted = self.exps.astype(np.int64) + np.asarray(tau, dtype=np.int64)
        return target.rank_rows(shifted)

    def deriv_map(self, i: int, lower: DegreeTable) -> tuple[np.ndarray, np.ndarray]:
        """Gather map for d/dx_i: (src_idx, mult) with
        (dV)[k] = mult[k] * V[src_idx[k]] on the lower table."""
        if lower.degree != self.degree - 1:
            raise ValueError("lower table degree mismatch")
        e_i = tuple(1 if j == i else 0 for j in range(self.nvars))
        src = lower.shift_index(e_i, self)
        mult = lower.exps[:, i].astype(np.int64) + 1
        return src, mult


_table_cache: dict[tuple[int, int], DegreeTable] = {}


def degree_table(nvars: int, degree: int) -> DegreeTable:
    key = (nvars, degree)
    tab = _table_cache.get(key)
    if tab is None:
        tab = DegreeTable(nvars, degree)
        _table_cache[key] = tab
    return tab
