"""Symbolic descriptors of focal groups and their classification invariants.

A descriptor pins down one group from the implemented families:

* ``FT(m)``: the boundary-point stabilizer in the automorphism group of the
  (m+1)-regular tree (totally disconnected type);
* ``GAk(A, k, index)``: the group built from a contracting rational action A
  on R^(d-1) together with the tree factor of valency parameter k, restricted
  to the open subgroup where the cyclic part is scaled by ``index``;
* ``Composite(A, varpi, q, index)``: the fibered product of the connected
  group described by A with the tree stabilizer of parameter q, glued along
  modular functions through the exponent ``varpi``;
* ``Millefeuille(A, t, k)``: the isometry-relevant group of the horocyclic
  product of the t-rescaled homogeneous space of A with a (k+1)-regular tree.

All invariants are computed exactly.  Scalar invariants that can be
irrational are returned as certified :class:`~focalclass.exactnum.LogRatio`
values in canonical form, never as floats.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactnum import (
    EQUAL,
    NOT_EQUAL,
    Comparison,
    LogRatio,
    LogRatioSum,
    canonical_value,
    compare_values,
    logratio_add,
    logratio_scale,
    maxroot,
)
from .matexact import MatQ, is_contracting, spectral_data

__all__ = [
    "GroupType",
    "Sphere",
    "Cantor",
    "Xi",
    "BoundaryKind",
    "FT",
    "GAk",
    "Composite",
    "Millefeuille",
    "FocalDescriptor",
    "INFINITE",
    "Invariants",
    "CanonicalForm",
    "HullSpec",
    "HullNotImplementedError",
    "classify_type",
    "invariant_s",
    "invariant_q",
    "invariant_varpi",
    "invariant_p0",
    "boundary",
    "canonical_form",
    "conn_key_equal",
    "focal_universal_hull",
    "is_special",
    "compute_invariants",
    "render_value",
    "conn_matrix",
]

INFINITE = float("inf")


class GroupType(enum.Enum):
    CONNECTED = "connected"
    TOTALLY_DISCONNECTED = "td"
    MIXED = "mixed"


@dataclass(frozen=True)
class Sphere:
    dim: int

    def render(self) -> str:
        return f"sphere({self.dim})"


@dataclass(frozen=True)
class Cantor:
    def render(self) -> str:
        return "cantor"


@dataclass(frozen=True)
class Xi:
    """One-point compactification of R^(d-1) x Cantor x Z."""

    d: int

    def render(self) -> str:
        return f"xi({self.d})"


BoundaryKind = Union[Sphere, Cantor, Xi]


def _check_connspec(a: MatQ, what: str):
    if a.dim < 1:
        raise ValueError(f"{what} needs a connected datum of dimension >= 1")
    if not is_contracting(a):
        raise ValueError(f"{what} needs a contracting action (all eigenvalues in (0,1))")


@dataclass(frozen=True)
class FT:
    """Boundary-point stabilizer in Aut of the (m+1)-regular tree."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"FT needs m >= 2, got {self.m}")


@dataclass(frozen=True)
class GAk:
    """(R^(d-1) x U_k) extended by Z acting by (A, tree shift); index n picks
    the open subgroup where Z is replaced by nZ."""

    matrix: MatQ
    k: int
    index: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"GAk needs k >= 1, got {self.k}")
        if self.index < 1:
            raise ValueError(f"GAk needs index >= 1, got {self.index}")
        if self.matrix.dim == 0 and self.k == 1:
            raise ValueError("GAk with empty action and k = 1 is not focal")
        if not is_contracting(self.matrix):
            raise ValueError("GAk needs a contracting action (all eigenvalues in (0,1))")


@dataclass(frozen=True)
class Composite:
    """Fibered product of the connected group of ``conn`` with the tree
    stabilizer of parameter q, matched through the exponent ``varpi``."""

    conn: MatQ
    varpi: Fraction
    q: int
    index: int = 1

    def __post_init__(self):
        object.__setattr__(self, "varpi", Fraction(self.varpi))
        _check_connspec(self.conn, "Composite")
        if self.varpi <= 0:
            raise ValueError("Composite needs varpi > 0")
        if self.q < 2:
            raise ValueError(f"Composite needs q >= 2, got {self.q}")
        if self.index < 1:
            raise ValueError(f"Composite needs index >= 1, got {self.index}")


@dataclass(frozen=True)
class Millefeuille:
    """Horocyclic product of the t-rescaled space of ``conn`` with a
    (k+1)-regular tree."""

    conn: MatQ
    t: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        _check_connspec(self.conn, "Millefeuille")
        if self.t <= 0:
            raise ValueError("Millefeuille needs t > 0")
        if self.k < 2:
            raise ValueError(f"Millefeuille needs k >= 2, got {self.k}")


FocalDescriptor = Union[FT, GAk, Composite, Millefeuille]


def classify_type(g: FocalDescriptor) -> GroupType:
    """Connected / totally disconnected / mixed trichotomy of the descriptor."""
    if isinstance(g, FT):
        return GroupType.TOTALLY_DISCONNECTED
    if isinstance(g, GAk):
        if g.matrix.dim == 0:
            return GroupType.TOTALLY_DISCONNECTED
        if g.k == 1:
            return GroupType.CONNECTED
        return GroupType.MIXED
    return GroupType.MIXED  # Composite, Millefeuille


def invariant_s(g: FocalDescriptor) -> int:
    """Positive generator of the modular image of the totally disconnected side."""
    if isinstance(g, FT):
        return g.m
    if isinstance(g, GAk):
        return 1 if g.k == 1 else g.k**g.index
    if isinstance(g, Composite):
        return g.q**g.index
    return g.k


def invariant_q(g: FocalDescriptor) -> int:
    """Non-power root of the s-invariant."""
    return maxroot(invariant_s(g))[0]


def conn_matrix(g: FocalDescriptor) -> Optional[MatQ]:
    """The connected-side datum, when the type has one."""
    if isinstance(g, GAk) and g.matrix.dim >= 1:
        return g.matrix
    if isinstance(g, (Composite, Millefeuille)):
        return g.conn
    return None


def _expansion(a: MatQ) -> Fraction:
    """Volume multiplier of the expanding generator on the connected part."""
    return 1 / a.det()


def _min_expansion(a: MatQ) -> Fraction:
    """Smallest eigenvalue modulus of the expanding generator (called lambda)."""
    return 1 / spectral_data(a).spectral_radius


def invariant_varpi(g: FocalDescriptor):
    """Ratio of the totally disconnected to the connected restricted modular
    logs, taken at the volume-expanding generator so the value is positive.

    Returns Fraction(0) in connected type, INFINITE in totally disconnected
    type, otherwise a canonical Fraction or LogRatio.
    """
    kind = classify_type(g)
    if kind is GroupType.CONNECTED:
        return Fraction(0)
    if kind is GroupType.TOTALLY_DISCONNECTED:
        return INFINITE
    if isinstance(g, GAk):
        return canonical_value(LogRatio(Fraction(g.k), _expansion(g.matrix)))
    if isinstance(g, Composite):
        return g.varpi
    # millefeuille: log(k) / (t * log(expansion))
    t = g.t
    return canonical_value(
        LogRatio(Fraction(g.k) ** t.denominator, _expansion(g.conn) ** t.numerator)
    )


def invariant_p0(g: FocalDescriptor):
    """Critical exponent log(delta)/log(lambda): delta is the total volume
    expansion of the expanding generator and lambda its smallest eigenvalue
    modulus on the connected part.

    Totally disconnected descriptors have no connected part to slow the
    expansion down and get INFINITE.
    """
    kind = classify_type(g)
    if kind is GroupType.TOTALLY_DISCONNECTED:
        return INFINITE
    a = conn_matrix(g)
    delta_con = _expansion(a)
    lam = _min_expansion(a)
    if kind is GroupType.CONNECTED:
        return canonical_value(LogRatio(delta_con, lam))
    if isinstance(g, GAk):
        return canonical_value(LogRatio(Fraction(g.k) * delta_con, lam))
    if isinstance(g, Composite):
        # p0 = (1 + varpi) * p0(connected part)
        return canonical_value(logratio_scale(LogRatio(delta_con, lam), 1 + g.varpi))
    # millefeuille: p0(X) + log(k) / (t * log(lambda))
    t = g.t
    combined = logratio_add(
        LogRatio(delta_con, lam),
        LogRatio(Fraction(g.k) ** t.denominator, lam**t.numerator),
    )
    if isinstance(combined, LogRatioSum):
        return combined
    return canonical_value(combined)


def boundary(g: FocalDescriptor) -> BoundaryKind:
    """Topological type of the visual boundary."""
    kind = classify_type(g)
    if kind is GroupType.TOTALLY_DISCONNECTED:
        return Cantor()
    d = conn_matrix(g).dim
    if kind is GroupType.CONNECTED:
        return Sphere(d)
    return Xi(d + 1)


@dataclass(frozen=True)
class Invariants:
    group_type: GroupType
    s: int
    q: int
    varpi: object
    p0: object
    boundary: BoundaryKind


def compute_invariants(g: FocalDescriptor) -> Invariants:
    return Invariants(
        group_type=classify_type(g),
        s=invariant_s(g),
        q=invariant_q(g),
        varpi=invariant_varpi(g),
        p0=invariant_p0(g),
        boundary=boundary(g),
    )


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

ConnKey = tuple  # entries (ratio, jordan blocks), ratio a canonical value


def conn_key(g: FocalDescriptor) -> ConnKey:
    """Scale-invariant comparison key of the connected side.

    Eigenvalues are sorted by decreasing value; each is recorded as the
    canonical ratio log(1/ev)/log(1/ev_max) together with its Jordan block
    multiset.  Rescaling the action by a positive power leaves the key fixed,
    so two connected data share a key iff one lies on the other's positive
    one-parameter group up to conjugacy.
    """
    a = conn_matrix(g)
    if a is None:
        return ()
    entries = list(reversed(spectral_data(a).entries))  # descending eigenvalue
    ref = entries[0][0]
    key = []
    for ev, blocks in entries:
        key.append((canonical_value(LogRatio(1 / ev, 1 / ref)), blocks))
    return tuple(key)


def conn_key_equal(k1: ConnKey, k2: ConnKey) -> Comparison:
    """Certified equality of two connected keys."""
    if len(k1) != len(k2):
        return NOT_EQUAL
    for (r1, b1), (r2, b2) in zip(k1, k2):
        if b1 != b2:
            return NOT_EQUAL
        verdict = compare_values(r1, r2)
        if verdict is not EQUAL:
            return verdict
    return EQUAL


@dataclass(frozen=True)
class CanonicalForm:
    """Complete commability-within-focal invariant (key, varpi, q)."""

    key: ConnKey
    varpi: object
    q: int


def canonical_form(g: FocalDescriptor) -> CanonicalForm:
    return CanonicalForm(key=conn_key(g), varpi=invariant_varpi(g), q=invariant_q(g))


# ---------------------------------------------------------------------------
# hull, special-focal predicate
# ---------------------------------------------------------------------------


class HullNotImplementedError(NotImplementedError):
    """Hull of a non-diagonalizable connected action is not implemented."""


@dataclass(frozen=True)
class HullSpec:
    """Structure of the focal-universal hull R^dim x| (R x K).

    ``factors`` lists the sizes of the orthogonal blocks of the maximal
    compact factor K, one per eigenvalue of the action, largest first.
    """

    dim: int
    factors: tuple

    def render(self) -> str:
        parts = ["ℝ"]
        ones = sum(1 for m in self.factors if m == 1)
        for m in self.factors:
            if m > 1:
                parts.append(f"O({m})")
        if ones == 1:
            parts.append("{±1}")
        elif ones > 1:
            parts.append("{±1}^" + str(ones))
        inner = " × ".join(parts)
        return f"ℝ^{self.dim} ⋊ ({inner})"


def focal_universal_hull(g: FocalDescriptor) -> HullSpec:
    """Hull of a connected diagonalizable descriptor.

    The compact factor is the maximal compact subgroup of the centralizer of
    the one-parameter contraction group: one orthogonal group per eigenspace.
    A single eigenvalue therefore yields the full similarity group, and all
    distinct eigenvalues yield the sign group {+-1}^(d-1).
    """
    if classify_type(g) is not GroupType.CONNECTED:
        raise ValueError("the hull is defined for connected-type descriptors")
    data = spectral_data(conn_matrix(g))
    if not data.is_diagonalizable():
        raise HullNotImplementedError(
            "hull of a non-diagonalizable connected action is not implemented"
        )
    mults = sorted((len(blocks) for _, blocks in data.entries), reverse=True)
    return HullSpec(dim=conn_matrix(g).dim, factors=tuple(mults))


def is_special(g: FocalDescriptor) -> tuple[bool, str]:
    """Whether the group admits a copci homomorphism into a non-focal group.

    Totally disconnected descriptors always do (into the full tree
    automorphism group).  Mixed descriptors never do.  In connected type,
    with an abelian horospherical part, only the homothety actions embed
    into a rank-one isometry group: special iff the action is scalar.
    """
    kind = classify_type(g)
    if kind is GroupType.TOTALLY_DISCONNECTED:
        return (True, "embeds copci into the full automorphism group of a regular tree")
    if kind is GroupType.MIXED:
        return (False, "mixed type: every copci target is again focal")
    data = spectral_data(conn_matrix(g))
    if len(data.entries) == 1 and data.is_diagonalizable():
        return (True, "homothety action: the hull is the full similarity group")
    return (False, "non-homothetic abelian contraction: no rank-one isometry model")


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_value(v) -> str:
    """Stable string form of an exact invariant value for the wire format."""
    if v == INFINITE:
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, LogRatio):
        return f"log({v.a})/log({v.b})"
    if isinstance(v, LogRatioSum):
        return f"{render_value(v.left)} + {render_value(v.right)}"
    if isinstance(v, int):
        return str(v)
    raise TypeError(f"cannot render {v!r}")
