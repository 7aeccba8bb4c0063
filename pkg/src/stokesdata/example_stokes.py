"""The worked example: two exponential factors 0 and 1/t, coverings and Stokes data.

The fine covering 𝔅 has pieces B_1..B_11; sections live on J' = {2,3,9,10,11}.
Its one-cells are the components of pairwise overlaps listed in K_PRIME, with
two components over (3,9) and over (6,9).  Crossing into B_9 through the
components marked in CROSSING_WORDS picks up the monodromy S or T.

The triple overlaps, incidence words and refinement images below were
reconstructed (the source pictures are not available) and frozen.  They are
validated only by reproducing the target matrices N_pi and N_0.

Sign convention for d0: an overlap (i, j) with i < j gets -1 at B_i and +1 at B_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .cech import (CechDatum, Incidence, MonodromyRep, RefinementMap, change_of_basis,
                   flat_two_cell, refinement_map)
from .divisor_config import example_config, formal_decomposition
from .ring import GroupWord, RingElement

J_PRIME = (2, 3, 9, 10, 11)
K_PRIME = ((1, 2), (1, 9), (1, 11), (2, 3), (2, 8), (2, 9), (2, 10), (2, 11), (3, 9), (3, 10),
           (3, 11), (4, 9), (4, 10), (4, 11), (5, 9), (5, 10), (6, 9), (8, 9), (9, 10), (10, 11))
MULTIPLICITY = {(3, 9): 2, (6, 9): 2}

# (overlap, component, zero cell) -> word
CROSSING_WORDS = {((2, 9), 0, 9): "S", ((3, 9), 1, 9): "S", ((6, 9), 1, 9): "T"}

# section-carrying triple overlaps: triangle -> the overlap components forming its faces
TRIANGLES = {
    (1, 2, 8): (((1, 2), 0), ((2, 8), 0)),
    (1, 2, 11): (((1, 2), 0), ((1, 11), 0), ((2, 11), 0)),
    (1, 4, 11): (((1, 11), 0), ((4, 11), 0)),
    (1, 6, 9): (((1, 9), 0), ((6, 9), 0)),
    (1, 8, 9): (((1, 9), 0), ((8, 9), 0)),
    (2, 3, 9): (((2, 3), 0), ((2, 9), 0), ((3, 9), 1)),
    (2, 3, 11): (((2, 3), 0), ((2, 11), 0), ((3, 11), 0)),
    (2, 8, 9): (((2, 8), 0), ((2, 9), 0), ((8, 9), 0)),
    (3, 9, 10): (((3, 9), 0), ((3, 10), 0), ((9, 10), 0)),
    (3, 10, 11): (((3, 10), 0), ((3, 11), 0), ((10, 11), 0)),
    (4, 5, 9): (((4, 9), 0), ((5, 9), 0)),
    (4, 5, 10): (((4, 10), 0), ((5, 10), 0)),
    (4, 6, 9): (((4, 9), 0), ((6, 9), 1)),
    (4, 10, 11): (((4, 10), 0), ((4, 11), 0), ((10, 11), 0)),
    (5, 9, 10): (((5, 9), 0), ((5, 10), 0), ((9, 10), 0)),
}

# refinement images at pi, as fine cochains (overlap, component) -> coefficient
REF_A_PI = {
    "a2": {((3, 9), 0): "1", ((4, 9), 0): "1", ((5, 9), 0): "1", ((6, 9), 1): "T", ((9, 10), 0): "-1"},
    "a4": {((1, 2), 0): "-1", ((2, 8), 0): "1", ((2, 9), 0): "1", ((2, 11), 0): "1", ((3, 9), 0): "1",
           ((3, 9), 1): "1", ((3, 10), 0): "1", ((3, 11), 0): "1"},
}
REF_AT_PI = {
    "ã1": {((1, 2), 0): "-1 + S·T^-1", ((1, 9), 0): "1", ((1, 11), 0): "-T", ((2, 3), 0): "S",
           ((2, 8), 0): "1 - S·T^-1", ((2, 9), 0): "1 + S - S·T^-1", ((2, 11), 0): "1 - T - S·T^-1",
           ((3, 9), 0): "1 - S - S·T^-1", ((3, 9), 1): "1 - S·T^-1", ((3, 10), 0): "1 - S - S·T^-1",
           ((3, 11), 0): "1 - S - T - S·T^-1", ((4, 11), 0): "-T", ((6, 9), 0): "1", ((8, 9), 0): "1",
           ((10, 11), 0): "-T"},
    "ã3": {((1, 2), 0): "1 + S·T^-1", ((1, 9), 0): "-1", ((2, 3), 0): "-1", ((2, 8), 0): "-1 - S·T^-1",
           ((2, 9), 0): "-1 - S - S·T^-1", ((2, 10), 0): "-1 + T", ((2, 11), 0): "-1 - S·T^-1",
           ((3, 9), 0): "-1 - S·T^-1", ((3, 9), 1): "-S - S·T^-1", ((3, 10), 0): "T - S·T^-1",
           ((3, 11), 0): "-S·T^-1", ((4, 9), 0): "-1", ((4, 10), 0): "T", ((5, 9), 0): "-1",
           ((5, 10), 0): "T", ((6, 9), 0): "-1", ((6, 9), 1): "-T", ((8, 9), 0): "-1",
           ((9, 10), 0): "1 + T", ((10, 11), 0): "-T"},
}

# the direction 0 is the mirror image of pi: S and T trade places
MIRROR = {"S": "T", "T": "S"}

# rotation identifications between the two sectors, as words
ROTATION_WORDS = {"mu_0^pi": "U", "mu_pi^0": "1"}


def fine_datum() -> CechDatum:
    one_cells = [(k, MULTIPLICITY.get(k, 1)) for k in K_PRIME]
    incidences = []
    for (i, j), m in one_cells:
        for c in range(m):
            for z, sign in ((i, -1), (j, 1)):
                if z in J_PRIME:
                    w = GroupWord.parse(CROSSING_WORDS.get(((i, j), c, z), "1"))
                    incidences.append(Incidence(((i, j), c), z, sign, w))
    datum = CechDatum(list(J_PRIME), one_cells, incidences)
    datum.two_cells = [flat_two_cell(datum, t, faces) for t, faces in TRIANGLES.items()]
    return datum


def coarse_datum(names) -> CechDatum:
    """A covering whose sections all sit on overlaps: no zero cells."""
    return CechDatum([], [(n, 1) for n in names], [], basis_cells=[(n, 0) for n in names])


@dataclass
class CoveringPair:
    theta: str
    coarse: CechDatum  # 𝔄 side
    coarse_tilde: CechDatum  # 𝔄̃ side
    fine: CechDatum
    ref: RefinementMap
    ref_tilde: RefinementMap

    def images(self):
        a = [self.ref.image(c) for c in self.coarse.basis_cells]
        at = [self.ref_tilde.image(c) for c in self.coarse_tilde.basis_cells]
        return a, at


@dataclass
class ExampleBundle:
    fine: CechDatum
    at_pi: CoveringPair
    at_zero: CoveringPair
    rotation_words: dict = field(default_factory=lambda: dict(ROTATION_WORDS))

    @property
    def rotation_composite(self) -> GroupWord:
        return GroupWord.parse(self.rotation_words["mu_0^pi"]) * GroupWord.parse(self.rotation_words["mu_pi^0"])


def _assignment(images: dict, mapping=None) -> dict:
    out = {}
    for name, cochain in images.items():
        terms = []
        for copy, coeff in cochain.items():
            x = RingElement.parse(coeff)
            terms.append((copy, x.substitute(mapping) if mapping else x))
        out[(name, 0)] = terms
    return out


def _pair(theta, fine, a_images, at_images, mapping=None) -> CoveringPair:
    coarse = coarse_datum(list(a_images))
    coarse_t = coarse_datum(list(at_images))
    return CoveringPair(theta, coarse, coarse_t, fine,
                        refinement_map(coarse, fine, _assignment(a_images, mapping)),
                        refinement_map(coarse_t, fine, _assignment(at_images, mapping)))


def build_bundle() -> ExampleBundle:
    fine = fine_datum()
    at_pi = _pair("1·π", fine, REF_A_PI, REF_AT_PI)
    # at 0 the roles of the basis curves are mirrored and listed in reverse order
    fine0 = fine.substitute(MIRROR)
    a0 = {"a1": REF_A_PI["a4"], "a3": REF_A_PI["a2"]}
    at0 = {"ã2": REF_AT_PI["ã3"], "ã4": REF_AT_PI["ã1"]}
    at_zero = _pair("0·π", fine0, a0, at0, MIRROR)
    return ExampleBundle(fine, at_pi, at_zero)


_BUNDLE = None


def bundle() -> ExampleBundle:
    global _BUNDLE
    if _BUNDLE is None:
        _BUNDLE = build_bundle()
    return _BUNDLE


def _split(M, rep: MonodromyRep, n: int = 2):
    if rep.is_symbolic:
        return M
    r = rep.rank
    return [[linalg.block(M, i, j, r) for j in range(n)] for i in range(n)]


def _change(pair: CoveringPair, rep: MonodromyRep):
    a, at = pair.images()
    return _split(change_of_basis(pair.fine, rep, a, at), rep)


def compute_n_pi(rep: MonodromyRep | None = None):
    rep = rep or MonodromyRep.symbolic()
    return _change(bundle().at_pi, rep)


def compute_n_zero(rep: MonodromyRep | None = None):
    rep = rep or MonodromyRep.symbolic()
    return _change(bundle().at_zero, rep)


# --- Stokes data ------------------------------------------------------------


@dataclass
class StokesDatum:
    """Opposite block-triangular pair: S maps the grading at theta_0 to theta_1, S' goes back."""

    g_dims: dict  # factor label -> dim G_phi
    h_dims: dict
    S: list  # 2x2 blocks, RingElement or DomainMatrix
    Sprime: list
    rank: int | None = None


def _block_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for l in range(1, k):
                acc = acc + A[i][l] * B[l][j]
            row.append(acc)
        out.append(row)
    return out


def _diag(x, n=2, zero=None):
    return [[x if i == j else zero for j in range(n)] for i in range(n)]


def stokes_data(rep: MonodromyRep | None = None, rank: int | None = None) -> StokesDatum:
    rep = rep or MonodromyRep.symbolic()
    b = bundle()
    n_pi = compute_n_pi(rep)
    n_0 = compute_n_zero(rep)
    rot = RingElement.word(b.rotation_composite)
    if rep.is_symbolic:
        D = _diag(rot, zero=RingElement.zero())
    else:
        D = _diag(rep.evaluate(rot), zero=linalg.zeros(rep.rank, rep.rank))
    r = rep.rank if not rep.is_symbolic else rank
    dims = {}
    if r is not None:
        dims = {str(phi): d for phi, d in formal_decomposition(example_config(r))}
    return StokesDatum(dims, dict(dims), n_pi, _block_mul(D, n_0), r)


def total_monodromy(sd: StokesDatum):
    """S' · S, once around the circle."""
    return _block_mul(sd.Sprime, sd.S)


@dataclass
class Validation:
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def _evaluate_blocks(blocks, rep: MonodromyRep):
    if isinstance(blocks[0][0], RingElement):
        return [[rep.evaluate(x) for x in row] for row in blocks]
    return blocks


def validate_stokes_datum(sd: StokesDatum, rep: MonodromyRep) -> Validation:
    """Check the shape required of Stokes data; needs the matrix backend."""
    if rep.is_symbolic:
        raise ValueError("validation needs a matrix representation")
    r = rep.rank
    S = _evaluate_blocks(sd.S, rep)
    Sp = _evaluate_blocks(sd.Sprime, rep)
    bad = []
    if sd.g_dims and sd.h_dims and sd.g_dims != sd.h_dims:
        bad.append("dim G_phi = dim H_phi")
    for label, blocks in (("S", S), ("S'", Sp)):
        for row in blocks:
            for x in row:
                if x.shape != (r, r):
                    bad.append(f"{label} block size")
                    break
    if bad:
        return Validation(bad)
    if not linalg.is_zero(S[1][0]):
        bad.append("S upper-triangularity")
    if not linalg.is_zero(Sp[0][1]):
        bad.append("S' lower-triangularity")
    for label, blocks in (("S", S), ("S'", Sp)):
        for i in range(2):
            if not linalg.is_invertible(blocks[i][i]):
                bad.append(f"{label}_{i}{i} invertible")
        if not linalg.is_invertible(linalg.blocks(blocks, r)):
            bad.append(f"{label} invertible")
    return Validation(bad)


TARGET_N_PI = [["-1", "1 - S·T^-1"], ["0", "-S·T^-1"]]
TARGET_N_ZERO = [["-T·S^-1", "0"], ["1 - T·S^-1", "-1"]]


def target(matrix) -> list:
    return [[RingElement.parse(x) for x in row] for row in matrix]
