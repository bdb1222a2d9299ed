"""Decision procedures for commability and quasi-isometry on descriptors.

Verdicts are three-valued.  A Yes carries a witness chain: an alternating
sequence of symbolic groups and copci arrows, every arrow citing the
construction law that produces it (see :data:`CITATIONS`).  A No carries a
machine-checkable obstruction, i.e. a named invariant with both values.  An
Undecided records the uncertified comparison that blocked the decision; it
is never collapsed into yes or no.

Witness chains are symbolic: an edge asserts the existence of a copci
homomorphism by citing a constructive law, and :func:`validate_chain` checks
the conservation laws (type, q, varpi along within-focal segments) rather
than materializing homomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Union

from .exactnum import EQUAL, NOT_EQUAL, compare_values, maxroot
from .matexact import UndecidedComparisonError, one_param_power
from .focalmodel import (
    INFINITE,
    FT,
    FocalDescriptor,
    GroupType,
    HullNotImplementedError,
    HullSpec,
    Millefeuille,
    classify_type,
    conn_key,
    conn_key_equal,
    conn_matrix,
    focal_universal_hull,
    invariant_q,
    invariant_s,
    invariant_varpi,
    render_value,
)

__all__ = [
    "SDesc",
    "SFreeGroup",
    "SAutTree",
    "SFTpow",
    "SQpLattice",
    "SCompositeProduct",
    "SHull",
    "SymbolicGroup",
    "Arrow",
    "WitnessChain",
    "Yes",
    "No",
    "UndecidedVerdict",
    "Verdict",
    "CITATIONS",
    "INTO",
    "FROM",
    "commable_within_focal",
    "commable",
    "quasi_isometric",
    "qp_valley_chain",
    "PatternEntry",
    "pattern_catalog",
    "validate_chain",
    "ft_index_oracle",
]


# ---------------------------------------------------------------------------
# symbolic groups appearing as chain nodes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SDesc:
    desc: FocalDescriptor


@dataclass(frozen=True)
class SFreeGroup:
    rank: int

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError("free group rank must be >= 2")


@dataclass(frozen=True)
class SAutTree:
    """Full automorphism group of the (m+1)-regular tree (not focal)."""

    m: int


@dataclass(frozen=True)
class SFTpow:
    """FT_q restricted to the open subgroup scaling the cyclic part by n."""

    q: int
    n: int


@dataclass(frozen=True)
class SQpLattice:
    """The affine group Q_l x| Z, with Z acting by multiplication by l**e."""

    l: int
    e: int


@dataclass(frozen=True)
class SCompositeProduct:
    """Fibered product H[varpi, m] of the connected class `key`, at index n."""

    key: tuple
    varpi: object
    m: int
    n: int


@dataclass(frozen=True)
class SHull:
    """Focal-universal hull of a connected commability class."""

    key: tuple
    hull: Optional[HullSpec]


SymbolicGroup = Union[SDesc, SFreeGroup, SAutTree, SFTpow, SQpLattice, SCompositeProduct, SHull]


INTO = "into-next"
FROM = "from-next"

CITATIONS = {
    "identity": "a group maps to itself by the identity",
    "bass-serre-embedding": (
        "a totally disconnected focal group acts properly and vertex-transitively "
        "on the Bass-Serre tree of its compacting HNN structure, giving a copci map "
        "into the boundary stabilizer FT at the scale of its modular image"
    ),
    "finite-index-subgroup": (
        "the open subgroup rescaling the cyclic part by n embeds copci and shifts "
        "the level of the tree stabilizer or fibered product accordingly"
    ),
    "padic-cocompact-lattice": (
        "the affine p-adic group Q_l x| Z sits as a closed cocompact subgroup of the "
        "tree stabilizers at both scales l^a and l^b"
    ),
    "tree-automorphism-group": (
        "a boundary stabilizer sits copci inside the full automorphism group of its tree"
    ),
    "tree-lattice-free-group": (
        "a full tree automorphism group contains a cocompact free lattice, whose rank "
        "can be matched across two trees"
    ),
    "focal-universal-hull": (
        "every member of a connected commability class admits a copci map into the "
        "class hull"
    ),
    "modular-fibered-product": (
        "a mixed-type group maps copci into the fibered product of its connected hull "
        "with its tree side, glued along modular functions"
    ),
}

# pattern catalog citations (impossibility and open-status entries)
PATTERN_CITATIONS = {
    "no-common-overgroup": (
        "distinct boundary tree stabilizers never map copci into one common group: "
        "a torsion-order count in the larger tree obstructs it"
    ),
    "no-two-step-valley": (
        "with different non-power roots, no group maps copci into both stabilizers "
        "even through an intermediate peak"
    ),
    "open-commability-pattern": (
        "whether same-root stabilizers always connect through a single valley is open"
    ),
    "ft-ladder": "the four-step ladder through FT levels and their index subgroups",
    "index-ladder": "the four-step ladder through index subgroups into a common FT level",
    "fibered-ladder": "the four-step ladder through fibered products and index subgroups",
    "identity": CITATIONS["identity"],
}


@dataclass(frozen=True)
class Arrow:
    direction: str  # INTO or FROM
    citation: str


@dataclass(frozen=True)
class WitnessChain:
    nodes: tuple
    arrows: tuple

    def __post_init__(self):
        if len(self.arrows) != max(0, len(self.nodes) - 1):
            raise ValueError("chain needs exactly one arrow between consecutive nodes")

    def pattern(self) -> str:
        return "".join("↗" if a.direction == INTO else "↖" for a in self.arrows)


@dataclass(frozen=True)
class Yes:
    chain: WitnessChain
    kind = "yes"


@dataclass(frozen=True)
class No:
    invariant: str  # "type" | "q" | "varpi" | "connected-key"
    values: tuple
    note: str = ""
    kind = "no"


@dataclass(frozen=True)
class UndecidedVerdict:
    detail: str
    kind = "undecided"


Verdict = Union[Yes, No, UndecidedVerdict]


# ---------------------------------------------------------------------------
# invariants of symbolic nodes (for chain validation)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Profile:
    focal: bool
    group_type: Optional[GroupType] = None
    q: Optional[int] = None
    varpi: object = None


def _node_profile(node: SymbolicGroup) -> _Profile:
    if isinstance(node, SDesc):
        g = node.desc
        return _Profile(True, classify_type(g), invariant_q(g), invariant_varpi(g))
    if isinstance(node, SFTpow):
        return _Profile(
            True, GroupType.TOTALLY_DISCONNECTED, maxroot(node.q**node.n)[0], INFINITE
        )
    if isinstance(node, SQpLattice):
        return _Profile(
            True, GroupType.TOTALLY_DISCONNECTED, maxroot(node.l**node.e)[0], INFINITE
        )
    if isinstance(node, SCompositeProduct):
        return _Profile(True, GroupType.MIXED, maxroot(node.m**node.n)[0], node.varpi)
    if isinstance(node, SHull):
        return _Profile(True, GroupType.CONNECTED, 1, Fraction(0))
    return _Profile(False)  # free groups and full tree groups are not focal


def _varpi_equal(x, y):
    if x == INFINITE or y == INFINITE:
        return EQUAL if (x == INFINITE and y == INFINITE) else NOT_EQUAL
    return compare_values(x, y)


def validate_chain(chain: WitnessChain) -> tuple[bool, str]:
    """Check the conservation laws along a chain.

    Along every within-focal segment the group type and the q-invariant must
    be constant and varpi certified equal; every arrow must cite a cataloged
    construction.  Returns (ok, diagnostics); an uncertifiable varpi
    comparison raises UndecidedComparisonError.
    """
    for arrow in chain.arrows:
        if arrow.citation not in CITATIONS:
            return (False, f"unknown construction citation: {arrow.citation}")
        if arrow.direction not in (INTO, FROM):
            return (False, f"bad arrow direction: {arrow.direction}")
    profiles = [_node_profile(n) for n in chain.nodes]
    for i in range(len(chain.nodes) - 1):
        p, s = profiles[i], profiles[i + 1]
        if not (p.focal and s.focal):
            continue  # a non-focal node ends the within-focal segment
        if p.group_type is not s.group_type:
            return (False, f"type not conserved across edge {i}")
        if p.q != s.q:
            return (False, f"q not conserved across edge {i}: {p.q} != {s.q}")
        verdict = _varpi_equal(p.varpi, s.varpi)
        if verdict is NOT_EQUAL:
            return (False, f"varpi not conserved across edge {i}")
        if verdict is not EQUAL:
            raise UndecidedComparisonError(verdict)
    return (True, "ok")


# ---------------------------------------------------------------------------
# chain constructions
# ---------------------------------------------------------------------------


def _empty_chain(g: FocalDescriptor) -> WitnessChain:
    return WitnessChain(nodes=(SDesc(g),), arrows=())


def _td_chain(g1: FocalDescriptor, g2: FocalDescriptor) -> WitnessChain:
    """G1 up FT(s1) down FT_q^[n] up FT(s2) down G2, n = max level."""
    q = invariant_q(g1)
    s1, s2 = invariant_s(g1), invariant_s(g2)
    n1, n2 = maxroot(s1)[1], maxroot(s2)[1]
    n = max(n1, n2)
    return WitnessChain(
        nodes=(SDesc(g1), SDesc(FT(s1)), SFTpow(q, n), SDesc(FT(s2)), SDesc(g2)),
        arrows=(
            Arrow(INTO, "bass-serre-embedding"),
            Arrow(FROM, "finite-index-subgroup"),
            Arrow(INTO, "finite-index-subgroup"),
            Arrow(FROM, "bass-serre-embedding"),
        ),
    )


def _mixed_chain(g1: FocalDescriptor, g2: FocalDescriptor) -> WitnessChain:
    q = invariant_q(g1)
    key = conn_key(g1)
    varpi = invariant_varpi(g1)
    n1, n2 = maxroot(invariant_s(g1))[1], maxroot(invariant_s(g2))[1]
    n = max(n1, n2)
    return WitnessChain(
        nodes=(
            SDesc(g1),
            SCompositeProduct(key, varpi, q**n1, 1),
            SCompositeProduct(key, varpi, q, n),
            SCompositeProduct(key, varpi, q**n2, 1),
            SDesc(g2),
        ),
        arrows=(
            Arrow(INTO, "modular-fibered-product"),
            Arrow(FROM, "finite-index-subgroup"),
            Arrow(INTO, "finite-index-subgroup"),
            Arrow(FROM, "modular-fibered-product"),
        ),
    )


def _connected_chain(g1: FocalDescriptor, g2: FocalDescriptor) -> WitnessChain:
    key = conn_key(g1)
    try:
        hull = focal_universal_hull(g1)
    except HullNotImplementedError:
        hull = None
    return WitnessChain(
        nodes=(SDesc(g1), SHull(key, hull), SDesc(g2)),
        arrows=(Arrow(INTO, "focal-universal-hull"), Arrow(FROM, "focal-universal-hull")),
    )


def qp_valley_chain(g1: FocalDescriptor, g2: FocalDescriptor) -> WitnessChain:
    """Alternative two-arrow witness for same-root tree stabilizers.

    FT(q**a) and FT(q**b) both contain the affine group Q_q x| Z scaled by
    q**(a*b) as a closed cocompact subgroup, giving the valley shape
    G1 down-up G2 that the pattern catalog certifies.
    """
    if not (isinstance(g1, FT) and isinstance(g2, FT)):
        raise ValueError("the valley witness is built for tree-stabilizer pairs")
    q1, e1 = maxroot(g1.m)
    q2, e2 = maxroot(g2.m)
    if q1 != q2:
        raise ValueError("the valley witness needs equal non-power roots")
    return WitnessChain(
        nodes=(SDesc(g1), SQpLattice(q1, e1 * e2), SDesc(g2)),
        arrows=(
            Arrow(FROM, "padic-cocompact-lattice"),
            Arrow(INTO, "padic-cocompact-lattice"),
        ),
    )


def _free_chain(g1: FocalDescriptor, g2: FocalDescriptor) -> WitnessChain:
    """G1 up Aut(tree1) down F_k up Aut(tree2) down G2.

    rank - 1 = lcm(m1 - 1, m2 - 1) makes a cocompact free lattice of that
    rank available in both tree automorphism groups.
    """
    m1, m2 = invariant_s(g1), invariant_s(g2)
    rank = 1 + lcm(m1 - 1, m2 - 1)
    return WitnessChain(
        nodes=(SDesc(g1), SAutTree(m1), SFreeGroup(rank), SAutTree(m2), SDesc(g2)),
        arrows=(
            Arrow(INTO, "tree-automorphism-group"),
            Arrow(FROM, "tree-lattice-free-group"),
            Arrow(INTO, "tree-lattice-free-group"),
            Arrow(FROM, "tree-automorphism-group"),
        ),
    )


# ---------------------------------------------------------------------------
# decisions
# ---------------------------------------------------------------------------


def commable_within_focal(g1: FocalDescriptor, g2: FocalDescriptor) -> Verdict:
    """Commability with every intermediate group focal.

    Totally disconnected pairs are equivalent iff their q-invariants agree;
    connected pairs iff one action lies on the other's positive
    one-parameter group up to conjugacy; mixed pairs iff connected keys,
    q-invariants and varpi all agree (varpi certified).
    """
    if g1 == g2:
        return Yes(_empty_chain(g1))
    t1, t2 = classify_type(g1), classify_type(g2)
    if t1 is not t2:
        return No("type", (t1.value, t2.value), "the type is a commability invariant")
    if t1 is GroupType.TOTALLY_DISCONNECTED:
        q1, q2 = invariant_q(g1), invariant_q(g2)
        if q1 != q2:
            return No("q", (q1, q2), "q is an invariant of commability within focal groups")
        return Yes(_td_chain(g1, g2))
    if t1 is GroupType.CONNECTED:
        try:
            t = one_param_power(conn_matrix(g1), conn_matrix(g2))
        except UndecidedComparisonError as exc:
            return UndecidedVerdict(str(exc))
        if t is None:
            return No(
                "connected-key",
                (_render_key(conn_key(g1)), _render_key(conn_key(g2))),
                "the actions lie on different one-parameter classes",
            )
        return Yes(_connected_chain(g1, g2))
    # mixed type
    q1, q2 = invariant_q(g1), invariant_q(g2)
    if q1 != q2:
        return No("q", (q1, q2), "q is an invariant of commability within focal groups")
    key_verdict = conn_key_equal(conn_key(g1), conn_key(g2))
    if key_verdict is NOT_EQUAL:
        return No(
            "connected-key",
            (_render_key(conn_key(g1)), _render_key(conn_key(g2))),
            "the connected sides are not commable",
        )
    if key_verdict is not EQUAL:
        return UndecidedVerdict(f"connected key comparison undecided: {key_verdict!r}")
    v1, v2 = invariant_varpi(g1), invariant_varpi(g2)
    varpi_verdict = compare_values(v1, v2)
    if varpi_verdict is NOT_EQUAL:
        return No(
            "varpi",
            (render_value(v1), render_value(v2)),
            "varpi is an invariant of commability",
        )
    if varpi_verdict is not EQUAL:
        return UndecidedVerdict(f"varpi comparison undecided: {varpi_verdict!r}")
    return Yes(_mixed_chain(g1, g2))


def commable(g1: FocalDescriptor, g2: FocalDescriptor) -> Verdict:
    """Unrestricted commability.

    Coincides with commability within focal groups except that all totally
    disconnected descriptors are equivalent, through a free-group chain.
    """
    within = commable_within_focal(g1, g2)
    if isinstance(within, (Yes, UndecidedVerdict)):
        return within
    t1, t2 = classify_type(g1), classify_type(g2)
    if t1 is GroupType.TOTALLY_DISCONNECTED and t2 is GroupType.TOTALLY_DISCONNECTED:
        return Yes(_free_chain(g1, g2))
    return within


def quasi_isometric(g1: FocalDescriptor, g2: FocalDescriptor) -> Verdict:
    """Quasi-isometry on the implemented families.

    The decision matches commability everywhere it answers: different types
    are separated by the boundary topology, the connected family is decided
    by the one-parameter comparison, and on mixed pairs q and varpi are
    quasi-isometry invariants, so the commability conditions are equivalent
    to quasi-isometry.  Millefeuille pairs over one connected datum reduce to
    the exact check k1**t2 == k2**t1 plus equality of non-power roots.
    """
    t1, t2 = classify_type(g1), classify_type(g2)
    if t1 is not t2:
        return No("type", (t1.value, t2.value), "the boundary topology separates the types")
    if (
        isinstance(g1, Millefeuille)
        and isinstance(g2, Millefeuille)
        and g1.conn == g2.conn
        and g1 != g2
    ):
        q1, q2 = maxroot(g1.k)[0], maxroot(g2.k)[0]
        if q1 != q2:
            return No("q", (q1, q2), "the non-power root is a quasi-isometry invariant")
        # log(k1)/t1 == log(k2)/t2, cleared of denominators
        lhs = g1.k ** (g2.t.numerator * g1.t.denominator)
        rhs = g2.k ** (g1.t.numerator * g2.t.denominator)
        if lhs != rhs:
            return No(
                "varpi",
                (render_value(invariant_varpi(g1)), render_value(invariant_varpi(g2))),
                "varpi is a quasi-isometry invariant",
            )
        return Yes(_mixed_chain(g1, g2))
    verdict = commable(g1, g2)
    if isinstance(verdict, No):
        notes = {
            "varpi": "varpi is a quasi-isometry invariant",
            "q": "the non-power root is a quasi-isometry invariant on mixed type",
            "type": "the boundary topology separates the types",
            "connected-key": "one-parameter classes are quasi-isometry classes here",
        }
        return No(verdict.invariant, verdict.values, notes[verdict.invariant])
    return verdict


# ---------------------------------------------------------------------------
# pattern catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternEntry:
    pattern: str
    status: str  # "exists" | "impossible" | "unknown"
    citation: str


def pattern_catalog(g1: FocalDescriptor, g2: FocalDescriptor) -> list[PatternEntry]:
    """Certified and refuted commation shapes for a pair of descriptors.

    Arrows read left to right between the two groups; an empty pattern is
    the identity.  Boundary-stabilizer pairs carry the richest catalog,
    including the single-valley shape whose status is an open question.
    """
    t1, t2 = classify_type(g1), classify_type(g2)
    if not (
        (t1 is GroupType.TOTALLY_DISCONNECTED and t2 is GroupType.TOTALLY_DISCONNECTED)
        or (t1 is GroupType.MIXED and t2 is GroupType.MIXED)
    ):
        raise ValueError("pattern catalog covers totally disconnected or mixed pairs")
    if g1 == g2:
        return [PatternEntry("", "exists", "identity")]
    if t1 is GroupType.TOTALLY_DISCONNECTED:
        same_root = invariant_q(g1) == invariant_q(g2)
        if isinstance(g1, FT) and isinstance(g2, FT):
            if same_root:
                return [
                    PatternEntry("↗↖", "impossible", "no-common-overgroup"),
                    PatternEntry("↖↗", "exists", "padic-cocompact-lattice"),
                    PatternEntry("↗↖↗↖", "exists", "ft-ladder"),
                    PatternEntry("↖↗↖", "unknown", "open-commability-pattern"),
                ]
            return [
                PatternEntry("↗↖", "impossible", "no-common-overgroup"),
                PatternEntry("↖↗↖", "impossible", "no-two-step-valley"),
            ]
        if same_root:
            return [
                PatternEntry("↗↖↗↖", "exists", "ft-ladder"),
                PatternEntry("↖↗↖↗", "exists", "index-ladder"),
            ]
        return []
    verdict = commable_within_focal(g1, g2)
    if isinstance(verdict, Yes):
        return [
            PatternEntry("↗↖↗↖", "exists", "fibered-ladder"),
            PatternEntry("↖↗↖↗", "exists", "fibered-ladder"),
        ]
    return []


def _render_key(key: tuple) -> str:
    parts = [f"({render_value(r)}; blocks {list(b)})" for r, b in key]
    return "[" + ", ".join(parts) + "]"


# ---------------------------------------------------------------------------
# combinatorial tree oracle
# ---------------------------------------------------------------------------


def ft_index_oracle(m: int, depth: int) -> int:
    """Orbit size of the off-ray neighbor of the base vertex under ray-fixing
    automorphisms of the depth-truncated (m+1)-regular tree.

    The tree is the radius-`depth` ball around x0, with the ray x0..x_depth
    toward the fixed boundary point marked.  Ray-fixing automorphisms are
    generated by swaps of isomorphic sibling subtrees; the orbit is closed
    under those generators by breadth-first enumeration.  By orbit-stabilizer
    the result equals the index [stab(x0) : stab(x0, x_-1)], which is m at
    every depth.
    """
    if not (2 <= m <= 6):
        raise ValueError("oracle guard: m must be in 2..6")
    if not (1 <= depth <= 5):
        raise ValueError("oracle guard: depth must be in 1..5")

    # vertices: ("ray", i) for the marked ray, ("sub", i, path) for the
    # off-ray subtree hanging at ray vertex i; path depth is bounded so that
    # every vertex is within distance `depth` of x0.
    generators = []  # (ray_index, prefix_a, prefix_b): swap two sibling subtrees

    def emit_subtree(ray_i: int, path: tuple, dist: int):
        if dist >= depth:
            return
        children = [path + (j,) for j in range(m)]
        for a, b in zip(children, children[1:]):
            generators.append((ray_i, a, b))
        for child in children:
            emit_subtree(ray_i, child, dist + 1)

    for i in range(0, depth + 1):
        # x0 has m off-ray neighbors; deeper ray vertices have m - 1
        n_children = m if i == 0 else m - 1
        if i + 1 > depth:
            n_children = 0  # outside the ball
        roots = [(j,) for j in range(n_children)]
        for a, b in zip(roots, roots[1:]):
            generators.append((i, a, b))
        for root in roots:
            emit_subtree(i, root, i + 1)

    def apply(gen, vertex):
        gi, pa, pb = gen
        kind, vi, path = vertex
        if vi != gi:
            return vertex
        if path[: len(pa)] == pa:
            return (kind, vi, pb + path[len(pa):])
        if path[: len(pb)] == pb:
            return (kind, vi, pa + path[len(pb):])
        return vertex

    start = ("sub", 0, (0,))
    orbit = {start}
    frontier = [start]
    while frontier:
        vertex = frontier.pop()
        for gen in generators:
            image = apply(gen, vertex)
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return len(orbit)
