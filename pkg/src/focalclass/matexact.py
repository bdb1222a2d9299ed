"""Exact linear algebra over the rationals for contracting actions.

Matrices are immutable arrays of Fractions.  Spectral analysis is restricted
to characteristic polynomials that split over Q with positive roots; outside
that family a typed error is raised instead of falling back to floats.
Similarity is decided through canonical data (invariant factors in general,
eigenvalue and Jordan block data on the split family), and every similarity
witness is verified by exact multiplication before it is returned.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from random import Random
from typing import Optional, Union

from .exactnum import (
    EQUAL,
    NOT_EQUAL,
    LogRatio,
    Undecided,
    canonical_value,
    common_power,
    compare_values,
    factorize,
)

__all__ = [
    "MatQ",
    "SpectralData",
    "NonRationalSpectrumError",
    "UndecidedComparisonError",
    "charpoly",
    "det",
    "mat_power",
    "spectral_data",
    "is_contracting",
    "conjugate",
    "power_conjugacy",
    "one_param_power",
    "invariant_factors",
]


class NonRationalSpectrumError(ValueError):
    """The characteristic polynomial does not split over Q with positive roots."""


class UndecidedComparisonError(Exception):
    """An eigenvalue log-ratio comparison could not be certified either way."""

    def __init__(self, detail: Undecided):
        super().__init__(f"comparison undecided: {detail!r}")
        self.detail = detail


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MatQ:
    """Immutable square matrix over Q.  dim 0 is allowed (empty matrix)."""

    __slots__ = ("rows", "dim")

    def __init__(self, rows):
        rows = tuple(tuple(_frac(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "dim", n)

    def __setattr__(self, name, value):
        raise AttributeError("MatQ is immutable")

    @classmethod
    def identity(cls, n: int) -> "MatQ":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values) -> "MatQ":
        values = [_frac(v) for v in values]
        n = len(values)
        return cls([[values[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, MatQ) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MatQ({[[str(x) for x in row] for row in self.rows]})"

    def __matmul__(self, other: "MatQ") -> "MatQ":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        n = self.dim
        a, b = self.rows, other.rows
        return MatQ(
            [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        )

    def add(self, other: "MatQ") -> "MatQ":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return MatQ([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def sub(self, other: "MatQ") -> "MatQ":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return MatQ([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "MatQ":
        c = _frac(c)
        return MatQ([[c * x for x in row] for row in self.rows])

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.dim)), Fraction(0))

    def det(self) -> Fraction:
        """Determinant by Gaussian elimination; empty matrix gives 1."""
        n = self.dim
        m = [list(row) for row in self.rows]
        result = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                result = -result
            result *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                if m[r][col] != 0:
                    factor = m[r][col] * inv
                    for c in range(col, n):
                        m[r][c] -= factor * m[col][c]
        return result

    def inverse(self) -> "MatQ":
        n = self.dim
        m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            m[col], m[pivot] = m[pivot], m[col]
            inv = 1 / m[col][col]
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    factor = m[r][col]
                    m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
        return MatQ([row[n:] for row in m])


def det(a: MatQ) -> Fraction:
    return a.det()


def mat_power(a: MatQ, n: int) -> MatQ:
    """a**n by repeated squaring; n < 0 requires det(a) != 0."""
    if n < 0:
        if a.det() == 0:
            raise ZeroDivisionError("negative power of a singular matrix")
        return mat_power(a.inverse(), -n)
    result = MatQ.identity(a.dim)
    base = a
    while n:
        if n & 1:
            result = result @ base
        base = base @ base if n > 1 else base
        n >>= 1
    return result


def rank(a: MatQ) -> int:
    m = [list(row) for row in a.rows]
    n = a.dim
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        for i in range(r + 1, n):
            if m[i][col] != 0:
                factor = m[i][col] * inv
                for c in range(col, n):
                    m[i][c] -= factor * m[r][c]
        r += 1
    return r


# ---------------------------------------------------------------------------
# univariate polynomials over Q: tuples of Fractions, ascending, no trailing 0
# ---------------------------------------------------------------------------

Poly = tuple


def _p_trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_deg(p: Poly) -> int:
    return len(p) - 1  # zero polynomial gets degree -1


def p_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _p_trim(
        [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    )


def p_neg(p: Poly) -> Poly:
    return tuple(-x for x in p)


def p_sub(p: Poly, q: Poly) -> Poly:
    return p_add(p, p_neg(q))


def p_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _p_trim(out)


def p_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq, lead = len(q) - 1, q[-1]
    while len(rem) - 1 >= dq and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - 1 - dq
        coeff = rem[-1] / lead
        quo[shift] = coeff
        for i in range(len(q)):
            rem[shift + i] -= coeff * q[i]
        rem.pop()
    return _p_trim(quo), _p_trim(rem)


def p_monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = p[-1]
    return tuple(x / lead for x in p)


def p_eval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def charpoly(a: MatQ) -> Poly:
    """Monic characteristic polynomial det(xI - a), Faddeev-LeVerrier."""
    n = a.dim
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = MatQ.identity(n)
    for k in range(1, n + 1):
        am = a @ m
        ck = -am.trace() / k
        coeffs[n - k] = ck
        m = am.add(MatQ.identity(n).scale(ck))
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralData:
    """Distinct eigenvalues with Jordan block multisets, sorted ascending.

    entries[i] = (eigenvalue, blocks) with blocks a descending tuple of block
    sizes; the block sizes over all eigenvalues sum to the dimension.
    """

    entries: tuple

    @property
    def eigenvalues(self) -> tuple:
        return tuple(ev for ev, _ in self.entries)

    @property
    def spectral_radius(self) -> Fraction:
        if not self.entries:
            raise ValueError("empty matrix has no spectral radius")
        return max(abs(ev) for ev in self.eigenvalues)

    def is_diagonalizable(self) -> bool:
        return all(all(b == 1 for b in blocks) for _, blocks in self.entries)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def _poly_gcd(p: Poly, q: Poly) -> Poly:
    while q:
        _, r = p_divmod(p, q)
        p, q = q, r
    return p_monic(p)


def _p_derivative(p: Poly) -> Poly:
    return _p_trim([i * c for i, c in enumerate(p)][1:])


def _durand_kerner(coeffs: list) -> list:
    """Approximate complex roots of a monic float polynomial (ascending)."""
    n = len(coeffs) - 1
    roots = [complex(0.4, 0.9) ** (k + 1) for k in range(n)]
    for _ in range(300):
        shift = 0.0
        for i in range(n):
            num = complex(coeffs[-1])
            for c in reversed(coeffs[:-1]):
                num = num * roots[i] + c
            den = 1.0 + 0.0j
            for j in range(n):
                if j != i:
                    den *= roots[i] - roots[j]
            if den == 0:
                den = 1e-30
            delta = num / den
            roots[i] -= delta
            shift = max(shift, abs(delta))
        if shift < 1e-12:
            break
    return roots


def _float_root_candidates(p: Poly) -> set:
    """Exactly verified rational-root candidates of p, via its square-free part.

    The square-free part is rescaled to a monic integer polynomial whose
    rational roots are integers; float approximations of those are rounded
    and every candidate is checked exactly, so the output is sound.  On
    float overflow the set is simply empty (the caller has a fallback).
    """
    deriv = _p_derivative(p)
    g = _poly_gcd(p, deriv)
    square_free = p_monic(p_divmod(p, g)[0]) if p_deg(g) >= 1 else p_monic(p)
    m = p_deg(square_free)
    if m < 1:
        return set()
    denom_lcm = 1
    for c in square_free:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    # y = denom_lcm * x turns the square-free part into a monic integer
    # polynomial with integer roots
    int_poly = []
    for i in range(m + 1):
        scaled = square_free[i] * denom_lcm ** (m - i)
        assert scaled.denominator == 1
        int_poly.append(scaled.numerator)
    try:
        float_coeffs = [float(c) for c in int_poly]
        if any(c in (float("inf"), float("-inf")) for c in float_coeffs):
            return set()
        approx = _durand_kerner(float_coeffs)
    except OverflowError:
        return set()
    candidates = set()
    for z in approx:
        if not (cmath.isfinite(z) and abs(z.imag) <= 0.01 * (1 + abs(z.real))):
            continue
        base = round(z.real)
        for y in (base - 1, base, base + 1):
            acc = 0
            for c in reversed(int_poly):
                acc = acc * y + c
            if acc == 0:
                candidates.add(Fraction(y, denom_lcm))
    return candidates


_DIVISOR_PAIR_CAP = 20000
_VERIFY_PRIME = (1 << 61) - 1


def _divisor_root_candidates(p: Poly) -> set:
    """Rational-root candidates by the divisor bound, with a modular
    pre-filter; empty when the search space is infeasible."""
    denom_lcm = 1
    for c in p:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ip = [int(c * denom_lcm) for c in p]
    g = 0
    for c in ip:
        g = gcd(g, c)
    ip = [c // g for c in ip]
    try:
        nums = _divisors(ip[0])
        dens = _divisors(ip[-1])
    except ValueError:
        return set()
    if len(nums) * len(dens) > _DIVISOR_PAIR_CAP:
        return set()
    mod = _VERIFY_PRIME
    ip_mod = [c % mod for c in ip]
    candidates = set()
    for q in dens:
        q_inv = pow(q, mod - 2, mod)
        for r in nums:
            if gcd(r, q) != 1:
                continue
            for sign in (1, -1):
                x = sign * r % mod * q_inv % mod
                acc = 0
                for c in reversed(ip_mod):
                    acc = (acc * x + c) % mod
                if acc == 0 and p_eval(p, Fraction(sign * r, q)) == 0:
                    candidates.add(Fraction(sign * r, q))
    return candidates


def _rational_roots(p: Poly) -> tuple[dict, Poly]:
    """All rational roots with multiplicities, plus the unfactored remainder."""
    roots: dict[Fraction, int] = {}
    while p and p[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        p = p[1:]
    while p_deg(p) >= 1:
        if p_deg(p) == 1:
            root = -p[0] / p[1]
            roots[root] = roots.get(root, 0) + 1
            return roots, ()
        candidates = _float_root_candidates(p)
        if not candidates:
            candidates = _divisor_root_candidates(p)
        progressed = False
        for cand in sorted(candidates):
            while True:
                quo, rem = p_divmod(p, (-cand, Fraction(1)))
                if rem:
                    break
                roots[cand] = roots.get(cand, 0) + 1
                p = quo
                progressed = True
                if p_deg(p) < 1:
                    break
        if not progressed:
            break
    return roots, p


def _triangular_diagonal(a: MatQ) -> Optional[list]:
    """Diagonal of a when it is upper or lower triangular, else None."""
    n = a.dim
    upper = all(a.rows[i][j] == 0 for i in range(n) for j in range(i))
    lower = all(a.rows[i][j] == 0 for i in range(n) for j in range(i + 1, n))
    if upper or lower:
        return [a.rows[i][i] for i in range(n)]
    return None


def spectral_data(a: MatQ) -> SpectralData:
    """Eigenvalues, multiplicities and Jordan block sizes of a.

    Only matrices whose characteristic polynomial splits over Q with strictly
    positive roots are in the implemented family; anything else raises
    NonRationalSpectrumError.
    """
    n = a.dim
    if n == 0:
        return SpectralData(())
    diagonal = _triangular_diagonal(a)
    if diagonal is not None:
        roots: dict = {}
        for ev in diagonal:
            roots[ev] = roots.get(ev, 0) + 1
        remainder: Poly = ()
    else:
        roots, remainder = _rational_roots(charpoly(a))
    if p_deg(remainder) >= 1:
        raise NonRationalSpectrumError(
            "characteristic polynomial has an irreducible factor of degree >= 2"
        )
    if any(ev <= 0 for ev in roots):
        raise NonRationalSpectrumError("spectrum contains a non-positive rational eigenvalue")
    entries = []
    for ev in sorted(roots):
        mult = roots[ev]
        shifted = a.sub(MatQ.identity(n).scale(ev))
        ranks = [n]
        power = shifted
        while ranks[-1] > n - mult:
            ranks.append(rank(power))
            power = power @ shifted
        # d[j] = number of blocks of size >= j; sizes from successive differences
        d = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
        blocks = []
        for j in range(1, len(d) + 1):
            exactly = d[j - 1] - (d[j] if j < len(d) else 0)
            blocks.extend([j] * exactly)
        entries.append((ev, tuple(sorted(blocks, reverse=True))))
    data = SpectralData(tuple(entries))
    assert sum(sum(blocks) for _, blocks in data.entries) == n
    return data


def is_contracting(a: MatQ) -> bool:
    """True iff every eigenvalue lies in (0, 1); vacuously true for dim 0."""
    if a.dim == 0:
        return True
    return all(ev < 1 for ev in spectral_data(a).eigenvalues)


# ---------------------------------------------------------------------------
# similarity
# ---------------------------------------------------------------------------


def invariant_factors(a: MatQ) -> tuple:
    """Nonunit invariant factors of xI - a (monic, each dividing the next).

    This is the rational canonical (Frobenius) form data: two matrices are
    similar over Q iff these lists coincide.
    """
    n = a.dim
    m = [
        [
            _p_trim([-a.rows[i][j], Fraction(1)]) if i == j else _p_trim([-a.rows[i][j]])
            for j in range(n)
        ]
        for i in range(n)
    ]
    factors = []
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if m[i][j] and (best is None or p_deg(m[i][j]) < p_deg(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            bi, bj = best
            m[t], m[bi] = m[bi], m[t]
            for row in m:
                row[t], row[bj] = row[bj], row[t]
            dirty = False
            for i in range(t + 1, n):
                if m[i][t]:
                    q, _ = p_divmod(m[i][t], m[t][t])
                    if q:
                        m[i] = [p_sub(m[i][c], p_mul(q, m[t][c])) for c in range(n)]
                    if m[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if m[t][j]:
                    q, _ = p_divmod(m[t][j], m[t][t])
                    if q:
                        for i in range(n):
                            m[i][j] = p_sub(m[i][j], p_mul(q, m[i][t]))
                    if m[t][j]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if m[i][j]:
                        _, r = p_divmod(m[i][j], m[t][t])
                        if r:
                            offender = i
                            break
                if offender is not None:
                    break
            if offender is None:
                break
            m[t] = [p_add(m[t][c], m[offender][c]) for c in range(n)]
        factors.append(p_monic(m[t][t]))
    return tuple(f for f in factors if p_deg(f) >= 1)


def _similar(a: MatQ, b: MatQ) -> bool:
    if charpoly(a) != charpoly(b):
        return False
    try:
        return spectral_data(a) == spectral_data(b)
    except (NonRationalSpectrumError, ValueError):
        # outside the split-positive family (or its size guards): fall back to
        # the factorization-free invariant-factor comparison
        return invariant_factors(a) == invariant_factors(b)


def _intertwiner_space(a: MatQ, b: MatQ) -> list[MatQ]:
    """Basis of {P : P@a == b@P} as matrices, via the Sylvester system."""
    n = a.dim
    nn = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * nn
            for k in range(n):
                row[i * n + k] += a.rows[k][j]   # P[i,k] * a[k,j]
                row[k * n + j] -= b.rows[i][k]   # -b[i,k] * P[k,j]
            rows.append(row)
    basis = _nullspace(rows, nn)
    return [MatQ([vec[i * n : (i + 1) * n] for i in range(n)]) for vec in basis]


def _nullspace(rows: list, ncols: int) -> list:
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            vec[pcol] = -m[prow][fc]
        basis.append(vec)
    return basis


def _conjugate_assuming(a: MatQ, b: MatQ) -> MatQ:
    """Witness for matrices already known to be similar, exactly verified."""
    if a == b:
        return MatQ.identity(a.dim)
    basis = _intertwiner_space(a, b)
    rng = Random(0)
    for attempt in range(10000):
        bound = 3 + attempt // 50
        coeffs = [rng.randint(-bound, bound) for _ in basis]
        p = MatQ([[Fraction(0)] * a.dim for _ in range(a.dim)])
        for c, mat in zip(coeffs, basis):
            if c:
                p = p.add(mat.scale(c))
        if p.det() != 0:
            if p @ a != b @ p:
                raise RuntimeError("intertwiner verification failed")
            return p
    raise RuntimeError("similar matrices but no invertible intertwiner found")


def conjugate(a: MatQ, b: MatQ) -> Optional[MatQ]:
    """Similarity witness P with P @ a @ P^-1 == b, or None.

    Present iff a and b have equal rational canonical forms.  The witness is
    an invertible element of the intertwiner space {P : Pa = bP}; when the
    matrices are similar such elements are dense in that space, so a short
    randomized search over integer combinations finds one.  The witness is
    verified exactly before being returned.
    """
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if a.dim == 0:
        return MatQ.identity(0)
    if not _similar(a, b):
        return None
    return _conjugate_assuming(a, b)


def power_conjugacy(
    a1: MatQ, a2: MatQ, k1: int, k2: int
) -> Optional[tuple[int, int, MatQ]]:
    """Minimal (n1, n2, P) with k1**n1 == k2**n2 and P @ a1**n1 @ P^-1 == a2**n2.

    Testing only the minimal exponent pair is complete: the eigenvalues are
    positive reals, so j-th roots of the spectra are unique and Jordan block
    structure is stable under powers; hence a1**(j*m) ~ a2**(j*n) already
    forces a1**m ~ a2**n.  For the same reason the spectrum of a power is the
    powered spectrum with unchanged blocks, so the decision runs on the base
    spectra and only the witness touches the powered matrices.
    """
    if not (is_contracting(a1) and is_contracting(a2)):
        raise ValueError("power_conjugacy expects contracting matrices")
    pair = common_power(k1, k2)
    if pair is None:
        return None
    n1, n2 = pair
    if a1.dim != a2.dim:
        return None
    s1 = spectral_data(a1)
    s2 = spectral_data(a2)
    powered1 = tuple((ev**n1, blocks) for ev, blocks in s1.entries)
    powered2 = tuple((ev**n2, blocks) for ev, blocks in s2.entries)
    if powered1 != powered2:
        return None
    witness = _conjugate_assuming(mat_power(a1, n1), mat_power(a2, n2))
    return (n1, n2, witness)


def one_param_power(a1: MatQ, a2: MatQ) -> Optional[Union[Fraction, LogRatio]]:
    """The t > 0 with a2 conjugate to a1**t inside a1's positive one-parameter
    group, or None when no such t exists.

    t is found by matching the sorted spectra: the bijection must preserve
    Jordan block multisets and scale every eigenvalue log by the same factor.
    t comes back as a Fraction when that factor is certified rational, else
    as a certified LogRatio; an uncertifiable comparison raises.
    """
    if not (is_contracting(a1) and is_contracting(a2)):
        raise ValueError("one_param_power expects contracting matrices")
    if a1.dim != a2.dim:
        return None
    if a1.dim == 0:
        return Fraction(1)
    s1 = spectral_data(a1)
    s2 = spectral_data(a2)
    if len(s1.entries) != len(s2.entries):
        return None
    # eigenvalues sorted ascending; t > 0 scaling preserves that order
    ratios = []
    for (ev1, blocks1), (ev2, blocks2) in zip(s1.entries, s2.entries):
        if blocks1 != blocks2:
            return None
        ratios.append(canonical_value(LogRatio(1 / ev2, 1 / ev1)))
    t = ratios[0]
    for other in ratios[1:]:
        verdict = compare_values(t, other)
        if verdict is NOT_EQUAL:
            return None
        if verdict is not EQUAL:
            raise UndecidedComparisonError(verdict)
    return t
