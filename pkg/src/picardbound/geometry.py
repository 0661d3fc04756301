"""Hypersurface input handling: validation, smoothness, cohomology basis.

A problem instance is a smooth degree-d hypersurface X = {P = 0} in
projective n-space over F_p, together with a fixed integer lift P~ of P.
The primitive middle cohomology has dimension

    D = ((d-1)^(n+1) + (-1)^(n+1) (d-1)) / d

and is spanned by classes mu * Omega / P~^h for h = 1..n, where the mu
are monomials of degree h*d - n - 1 whose images form a basis of that
graded piece of the Jacobian ring F_p[x0..xn]/(dP/dx0, ..., dP/dxn).
The basis is selected canonically: within each level h, the monomials
outside the row-echelon leading set of the partial-derivative span,
ordered grevlex-descending.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, SingularInputError
from .hpoly import HPoly, Monomial, degree_table


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def closed_form_dimension(d: int, n: int) -> int:
    num = (d - 1) ** (n + 1) + (-1) ** (n + 1) * (d - 1)
    if num % d:
        raise ValueError("dimension formula did not divide evenly")
    return num // d


@dataclass(frozen=True)
class HypersurfaceSpec:
    p: int
    n: int
    d: int
    poly: HPoly  # coefficients reduced to 0..p-1
    lift: HPoly  # the fixed integer lift used upstairs

    @staticmethod
    def build(p: int, n: int, poly: HPoly, lift: HPoly | None = None) -> HypersurfaceSpec:
        if not is_prime(p):
            raise InputError(f"p = {p} is not prime")
        if poly.nvars != n + 1:
            raise InputError(
                f"polynomial has {poly.nvars} variables, expected {n + 1}"
            )
        reduced = poly.reduce_mod(p)
        if reduced.is_zero():
            raise InputError("polynomial vanishes modulo p")
        if lift is None:
            lift = reduced
        else:
            if lift.nvars != poly.nvars or lift.degree != poly.degree:
                raise InputError("lift has wrong arity or degree")
            if any(
                (lift.terms.get(m, 0) - c) % p
                for m, c in reduced.terms.items()
            ) or any(c % p for m, c in lift.terms.items() if m not in reduced.terms):
                raise InputError("lift does not reduce to the polynomial mod p")
        return HypersurfaceSpec(p=p, n=n, d=poly.degree, poly=reduced, lift=lift)

    @property
    def nvars(self) -> int:
        return self.n + 1

    def partials(self) -> list[HPoly]:
        return [self.poly.partial(i).reduce_mod(self.p) for i in range(self.nvars)]

    def lift_partials(self) -> list[HPoly]:
        return [self.lift.partial(i) for i in range(self.nvars)]

    def content_hash(self) -> str:
        import hashlib

        key = f"p={self.p};n={self.n};d={self.d};P={self.poly.to_text()};Pt={self.lift.to_text()}"
        return hashlib.sha256(key.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Linear algebra over F_p
# ---------------------------------------------------------------------------


def fp_row_reduce(rows: np.ndarray, p: int) -> tuple[int, list[int]]:
    """Row echelon form mod p in place; returns (rank, pivot column list).

    Columns are scanned left to right, which in our dense tables means
    grevlex-descending, so pivot columns are the leading monomials of the
    row span.
    """
    rows = rows % p
    nrows, ncols = rows.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(rows[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            rows[[r, i]] = rows[[i, r]]
        inv = pow(int(rows[r, c]), -1, p)
        rows[r] = (rows[r] * inv) % p
        mask = np.nonzero(rows[:, c])[0]
        mask = mask[mask != r]
        if mask.size:
            rows[mask] = (rows[mask] - np.outer(rows[mask, c], rows[r])) % p
        pivots.append(c)
        r += 1
    return r, pivots


def _span_rows(gens: list[HPoly], degree: int, nvars: int, p: int) -> np.ndarray:
    """Dense rows for all x^alpha * g with g in gens, deg(x^alpha * g) = degree."""
    target = degree_table(nvars, degree)
    blocks = []
    for g in gens:
        shift_deg = degree - g.degree
        if shift_deg < 0 or g.is_zero():
            continue
        src = degree_table(nvars, shift_deg)
        rows = np.zeros((src.dim, target.dim), dtype=np.int64)
        for mono, c in g.terms.items():
            idx = src.shift_index(mono, target)
            np.add.at(rows, (np.arange(src.dim), idx), c % p)
        blocks.append(rows % p)
    if not blocks:
        return np.zeros((0, target.dim), dtype=np.int64)
    return np.vstack(blocks)


def check_smooth(spec: HypersurfaceSpec) -> None:
    """Verify smoothness of {P = 0} over F_p.

    The graded piece of F_p[x]/(dP/dx0..dP/dxn, P) in degree
    D* = (n+1)(d-2) + 1 vanishes exactly for smooth input (including P
    in the ideal covers the characteristic-divides-degree case).  On
    failure the witness degree D* is attached to the exception.
    """
    p, d, n = spec.p, spec.d, spec.n
    dstar = (n + 1) * (d - 2) + 1
    target = degree_table(spec.nvars, dstar)
    gens = spec.partials() + [spec.poly]
    rows = _span_rows(gens, dstar, spec.nvars, p)
    rank, _ = fp_row_reduce(rows, p)
    if rank < target.dim:
        raise SingularInputError(
            f"hypersurface is singular over F_{p}: Jacobian cokernel is "
            f"nonzero in degree {dstar}",
            witness_degree=dstar,
        )


@dataclass(frozen=True)
class CohomologyBasis:
    """Monomial basis mu * Omega / P~^h of primitive middle cohomology."""

    spec: HypersurfaceSpec
    elements: tuple[tuple[int, Monomial], ...]  # (h, mu), h ascending
    profile: tuple[int, ...]  # count per level h = 1..n

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def level_slices(self) -> list[tuple[int, int, int]]:
        """(h, start, stop) index ranges of each pole level."""
        out = []
        start = 0
        for h, count in enumerate(self.profile, start=1):
            out.append((h, start, start + count))
            start += count
        return out

    def labels(self) -> list[str]:
        out = []
        for h, mono in self.elements:
            mu = HPoly.monomial(mono).to_text()
            out.append(f"h={h}:{mu}")
        return out


def build_basis(spec: HypersurfaceSpec) -> CohomologyBasis:
    """Canonical monomial basis of the primitive middle cohomology."""
    p, d, n = spec.p, spec.d, spec.n
    partials = spec.partials()
    elements: list[tuple[int, Monomial]] = []
    profile = []
    for h in range(1, n + 1):
        deg = h * d - n - 1
        if deg < 0:
            profile.append(0)
            continue
        table = degree_table(spec.nvars, deg)
        rows = _span_rows(partials, deg, spec.nvars, p)
        _, pivots = fp_row_reduce(rows, p)
        taken = set(pivots)
        free = [i for i in range(table.dim) if i not in taken]
        profile.append(len(free))
        for idx in free:
            elements.append((h, table.monomial_at(idx)))
    basis = CohomologyBasis(spec=spec, elements=tuple(elements), profile=tuple(profile))
    expected = closed_form_dimension(d, n)
    if basis.dimension != expected:
        raise SingularInputError(
            f"basis dimension {basis.dimension} disagrees with the closed form "
            f"{expected}; the hypersurface is singular or degenerate"
        )
    return basis
