"""Čech cohomology of extension-by-zero local systems over combinatorial coverings.

A covering is described by a :class:`CechDatum`: zero-cells (pieces carrying
sections), one-cell copies (connected components of pairwise overlaps) and
incidences ``(copy, zero_cell, sign, word)``.  Optional two-cells record
section-carrying triple overlaps; without them the complex stops at C^1.

Cochains take values in the group algebra: a cochain is a list of
:class:`RingElement` indexed by one-cell copies, standing for the map
``V -> C^1`` obtained by letting the words act through a representation.
Ring coefficients therefore multiply cochains on the right.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import (BasisNotTransverse, InconsistentSystem, MalformedDatum, NotABasis,
                     NotInvertible, PivotNotUnit)
from .ring import GENERATORS, GroupWord, RingElement

SYMBOLIC = "symbolic"
MATRIX = "matrix"


@dataclass(frozen=True)
class Incidence:
    copy: tuple
    zero_cell: object
    sign: int
    word: GroupWord = GroupWord()


@dataclass(frozen=True)
class TwoCell:
    id: object
    faces: tuple  # ((copy, sign, word), ...)


@dataclass
class CechDatum:
    zero_cells: list
    one_cells: list  # [(id, multiplicity)]
    incidences: list
    basis_cells: list = field(default_factory=list)
    two_cells: list = field(default_factory=list)

    @property
    def copies(self) -> list[tuple]:
        return [(cid, c) for cid, k in self.one_cells for c in range(k)]

    def validate(self) -> None:
        ids = [cid for cid, _ in self.one_cells]
        if len(set(ids)) != len(ids):
            raise MalformedDatum("duplicate one-cell ids")
        for cid, k in self.one_cells:
            if k < 1:
                raise MalformedDatum(f"multiplicity of {cid} must be at least 1", cell=str(cid))
        copies = set(self.copies)
        zeros = set(self.zero_cells)
        for inc in self.incidences:
            if inc.copy not in copies or inc.zero_cell not in zeros:
                raise MalformedDatum(f"incidence {inc} references a missing cell")
            if inc.sign not in (1, -1):
                raise MalformedDatum(f"incidence sign must be ±1: {inc}")
        for b in self.basis_cells:
            if b not in copies:
                raise MalformedDatum(f"basis cell {b} is not a one-cell copy")
        for tc in self.two_cells:
            for copy, sign, _ in tc.faces:
                if copy not in copies or sign not in (1, -1):
                    raise MalformedDatum(f"two-cell {tc.id} has a bad face {copy}")

    def index(self) -> dict:
        return {c: i for i, c in enumerate(self.copies)}

    def indicator(self, copy, coeff=None) -> list:
        vec = [RingElement.zero() for _ in self.copies]
        vec[self.index()[copy]] = RingElement.one() if coeff is None else RingElement.coerce(coeff)
        return vec

    def substitute(self, mapping: dict) -> "CechDatum":
        """Same covering with generators renamed in every word."""
        return CechDatum(
            list(self.zero_cells), list(self.one_cells),
            [Incidence(i.copy, i.zero_cell, i.sign, i.word.substitute(mapping)) for i in self.incidences],
            list(self.basis_cells),
            [TwoCell(tc.id, tuple((c, s, w.substitute(mapping)) for c, s, w in tc.faces))
             for tc in self.two_cells])

    def with_flipped_signs(self) -> "CechDatum":
        return CechDatum(list(self.zero_cells), list(self.one_cells),
                         [Incidence(i.copy, i.zero_cell, -i.sign, i.word) for i in self.incidences],
                         list(self.basis_cells), list(self.two_cells))


def flat_two_cell(datum: CechDatum, cell_id, faces) -> TwoCell:
    """Choose face coefficients ±word for a triple overlap so that d1 d0 vanishes on it.

    Faces sharing a zero-cell must cancel there; the first face is anchored
    with coefficient +1.  A loop whose transport does not close raises
    MalformedDatum: the triple overlap would then carry no flat section.
    """
    inc = {}
    for i in datum.incidences:
        if i.copy in faces:
            inc.setdefault(i.zero_cell, []).append((i.copy, RingElement.word(i.word, i.sign)))
    coeff = {faces[0]: RingElement.one()}
    changed = True
    while changed:
        changed = False
        for z, touching in inc.items():
            if len(touching) != 2:
                raise MalformedDatum(f"zero cell {z} meets {len(touching)} faces of {cell_id}",
                                     two_cell=str(cell_id))
            (e1, d1), (e2, d2) = touching
            if e1 in coeff and e2 not in coeff:
                coeff[e2] = -(coeff[e1] * d1 * d2.unit_inverse())
                changed = True
            elif e2 in coeff and e1 not in coeff:
                coeff[e1] = -(coeff[e2] * d2 * d1.unit_inverse())
                changed = True
    for z, ((e1, d1), (e2, d2)) in inc.items():
        if e1 not in coeff or e2 not in coeff:
            raise MalformedDatum(f"faces of {cell_id} are not linked through zero cells")
        if not (coeff[e1] * d1 + coeff[e2] * d2).is_zero():
            raise MalformedDatum(f"transport around {cell_id} does not close", two_cell=str(cell_id))
    for f in faces:
        if f not in coeff:
            raise MalformedDatum(f"face {f} of {cell_id} meets no zero cell")
    out = []
    for f in faces:
        sign, word = coeff[f].unit_word()
        out.append((f, sign, word))
    return TwoCell(cell_id, tuple(out))


# --- representations --------------------------------------------------------


class MonodromyRep:
    """Symbolic backend, or S, T, U assigned to invertible exact-rational matrices."""

    def __init__(self, backend: str = SYMBOLIC, matrices: dict | None = None):
        if backend not in (SYMBOLIC, MATRIX):
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        self.rank = None
        self._mats = {}
        self._cache = {}
        if backend == MATRIX:
            if not matrices:
                raise ValueError("matrix backend needs generator matrices")
            for g, rows in matrices.items():
                if g not in GENERATORS:
                    raise ValueError(f"unknown generator {g!r}")
                M = rows if not isinstance(rows, (list, tuple)) else linalg.matrix(rows)
                if M.shape[0] != M.shape[1]:
                    raise ValueError(f"{g} is not square")
                if self.rank is None:
                    self.rank = M.shape[0]
                elif M.shape[0] != self.rank:
                    raise ValueError("generator matrices have different sizes")
                if not linalg.is_invertible(M):
                    raise NotInvertible(f"matrix assigned to {g} is singular", generator=g)
                self._mats[g] = M
                self._mats[g + "^-1"] = M.inv()
            for g in GENERATORS:
                if g not in self._mats:
                    self._mats[g] = linalg.eye(self.rank)
                    self._mats[g + "^-1"] = linalg.eye(self.rank)

    @classmethod
    def symbolic(cls) -> "MonodromyRep":
        return cls(SYMBOLIC)

    @classmethod
    def from_matrices(cls, **mats) -> "MonodromyRep":
        return cls(MATRIX, mats)

    @classmethod
    def scalars(cls, **values) -> "MonodromyRep":
        return cls(MATRIX, {g: [[Fraction(x)]] for g, x in values.items()})

    @property
    def is_symbolic(self) -> bool:
        return self.backend == SYMBOLIC

    def generator(self, g: str):
        return self._mats[g]

    def word(self, w: GroupWord):
        if w in self._cache:
            return self._cache[w]
        M = linalg.eye(self.rank)
        for g, e in w.letters:
            M = M * self._mats[g if e > 0 else g + "^-1"]
        self._cache[w] = M
        return M

    def evaluate(self, x) -> "linalg.DomainMatrix":
        x = RingElement.coerce(x)
        M = linalg.zeros(self.rank, self.rank)
        for w, c in x.terms.items():
            M = M + self.word(w) * linalg.qq(c)
        return M

    def evaluate_matrix(self, rows):
        """Block matrix of evaluated ring elements."""
        return linalg.blocks([[self.evaluate(x) if x else None for x in row] for row in rows], self.rank)

    def evaluate_cochain(self, vec):
        return linalg.blocks([[self.evaluate(x) if x else None] for x in vec], self.rank)


def random_rep(r: int, seed: int, generators=GENERATORS, bound: int = 4) -> MonodromyRep:
    """Seeded random invertible rational matrices for each generator."""
    rng = random.Random(seed)
    mats = {}
    for g in generators:
        while True:
            rows = [[Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(r)]
                    for _ in range(r)]
            if linalg.is_invertible(linalg.matrix(rows)):
                mats[g] = rows
                break
    return MonodromyRep(MATRIX, mats)


# --- coboundaries -----------------------------------------------------------


def d0_matrix(datum: CechDatum, rep: MonodromyRep | None = None):
    """Rows: one-cell copies; columns: zero cells; entries sum of sign*word."""
    datum.validate()
    idx = datum.index()
    zidx = {z: j for j, z in enumerate(datum.zero_cells)}
    rows = [[RingElement.zero() for _ in datum.zero_cells] for _ in datum.copies]
    for inc in datum.incidences:
        i, j = idx[inc.copy], zidx[inc.zero_cell]
        rows[i][j] = rows[i][j] + RingElement.word(inc.word, inc.sign)
    if rep is None or rep.is_symbolic:
        return rows
    return rep.evaluate_matrix(rows) if rows and datum.zero_cells else linalg.zeros(
        len(datum.copies) * rep.rank, len(datum.zero_cells) * rep.rank)


def d1_matrix(datum: CechDatum, rep: MonodromyRep | None = None):
    """Rows: two-cells; columns: one-cell copies."""
    datum.validate()
    idx = datum.index()
    rows = [[RingElement.zero() for _ in datum.copies] for _ in datum.two_cells]
    for k, tc in enumerate(datum.two_cells):
        for copy, sign, word in tc.faces:
            rows[k][idx[copy]] = rows[k][idx[copy]] + RingElement.word(word, sign)
    if rep is None or rep.is_symbolic:
        return rows
    if not rows:
        return linalg.zeros(0, len(datum.copies) * rep.rank)
    return rep.evaluate_matrix(rows)


def ring_matmul(A, B):
    n = len(A)
    m = len(B[0]) if B else 0
    inner = len(B)
    out = [[RingElement.zero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = RingElement.zero()
            for k in range(inner):
                if A[i][k] and B[k][j]:
                    acc = acc + A[i][k] * B[k][j]
            out[i][j] = acc
    return out


def apply(A, vec):
    return [row[0] for row in ring_matmul(A, [[x] for x in vec])]


def is_complex(datum: CechDatum) -> bool:
    """d1 ∘ d0 = 0 in the group algebra."""
    prod = ring_matmul(d1_matrix(datum), d0_matrix(datum))
    return all(x.is_zero() for row in prod for x in row)


def is_cocycle(datum: CechDatum, vec) -> bool:
    return all(x.is_zero() for x in apply(d1_matrix(datum), vec))


# --- cohomology -------------------------------------------------------------


@dataclass
class CohomologyPresentation:
    datum: CechDatum
    rep: MonodromyRep
    d0: object
    d1: object
    basis: list  # cochains spanning H^1 modulo im d0
    dim: int | None = None

    @property
    def ambient(self) -> list:
        return self.datum.copies


def h1(datum: CechDatum, rep: MonodromyRep | None = None, basis=None) -> CohomologyPresentation:
    """Presentation of ker d1 / im d0 with a designated basis.

    ``basis`` defaults to the indicator cochains of ``datum.basis_cells``.
    The matrix backend also computes the dimension and checks that the
    basis is transverse to im d0 and spans the quotient.
    """
    rep = rep or MonodromyRep.symbolic()
    datum.validate()
    if basis is None:
        basis = [datum.indicator(c) for c in datum.basis_cells]
    basis = [[RingElement.coerce(x) for x in b] for b in basis]
    for b in basis:
        if len(b) != len(datum.copies):
            raise MalformedDatum("basis cochain has the wrong length")
    d0s = d0_matrix(datum)
    d1s = d1_matrix(datum)
    pres = CohomologyPresentation(datum, rep, d0s, d1s, basis)
    if rep.is_symbolic:
        for b in basis:
            if not all(x.is_zero() for x in apply(d1s, b)):
                raise BasisNotTransverse("basis cochain is not a cocycle")
        return pres
    r = rep.rank
    n1 = len(datum.copies) * r
    D0 = d0_matrix(datum, rep)
    D1 = d1_matrix(datum, rep)
    rank0 = linalg.rank(D0)
    pres.dim = n1 - linalg.rank(D1) - rank0
    if basis:
        B = linalg.blocks([[rep.evaluate(x) if x else None for x in row] for row in zip(*basis)], r)
        if D1.shape[0] and not linalg.is_zero(D1 * B):
            raise BasisNotTransverse("basis cochain is not a cocycle")
        full = B.hstack(D0) if D0.shape[1] else B
        if linalg.rank(full) != len(basis) * r + rank0 or len(basis) * r != pres.dim:
            raise BasisNotTransverse(
                f"basis of {len(basis)} cochains does not present H^1 of dimension {pres.dim}",
                dim=pres.dim, basis_size=len(basis) * r)
    return pres


def reduce_mod_image(pres: CohomologyPresentation, cocycle) -> list:
    """Coefficients c_l with cocycle = sum_l basis_l * c_l + d0(x).

    Symbolic backend: Gauss-Jordan elimination pivoting only on ±word
    entries.  Matrix backend: exact rational solve; returns r-by-r blocks.
    """
    vec = [RingElement.coerce(x) for x in cocycle]
    if len(vec) != len(pres.datum.copies):
        raise MalformedDatum("cochain has the wrong length")
    nb = len(pres.basis)
    nz = len(pres.datum.zero_cells)
    if pres.rep.is_symbolic:
        A = [[pres.basis[l][i] for l in range(nb)] + list(pres.d0[i]) for i in range(len(vec))]
        sol = _unit_pivot_solve(A, vec, order=list(range(nb, nb + nz)) + list(range(nb)),
                                required=set(range(nb)))
        return sol[:nb]
    r = pres.rep.rank
    D0 = d0_matrix(pres.datum, pres.rep)
    B = linalg.blocks([[pres.rep.evaluate(x) if x else None for x in row] for row in zip(*pres.basis)], r) \
        if nb else linalg.zeros(len(vec) * r, 0)
    A = B.hstack(D0) if nz else B
    rhs = pres.rep.evaluate_cochain(vec)
    out = linalg.solve(A, rhs)
    if out is None:
        raise InconsistentSystem("cochain is not in the span of the basis and im d0")
    X, pivots = out
    if not set(range(nb * r)) <= set(pivots):
        raise BasisNotTransverse("basis coefficients are not determined")
    return [X.extract(list(range(l * r, (l + 1) * r)), list(range(r))) for l in range(nb)]


def _unit_pivot_solve(A, b, order, required):
    A = [list(row) for row in A]
    b = list(b)
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivot_of = {}
    used_rows = set()
    pending = list(order)
    progress = True
    while pending and progress:
        progress = False
        for col in list(pending):
            entries = [i for i in range(nrows) if i not in used_rows and not A[i][col].is_zero()]
            if not entries:
                pending.remove(col)
                continue
            units = [i for i in entries if A[i][col].unit_word() is not None]
            if not units:
                continue
            p = min(units, key=lambda i: (len(A[i][col].unit_word()[1]), i))
            uinv = A[p][col].unit_inverse()
            for i in range(nrows):
                if i != p and not A[i][col].is_zero():
                    f = A[i][col] * uinv
                    A[i] = [A[i][k] - f * A[p][k] for k in range(ncols)]
                    b[i] = b[i] - f * b[p]
            pivot_of[col] = p
            used_rows.add(p)
            pending.remove(col)
            progress = True
    for col in pending:
        raise PivotNotUnit(f"column {col} has no ±word pivot", column=col,
                           entries=[str(A[i][col]) for i in range(nrows) if i not in used_rows
                                    and not A[i][col].is_zero()])
    for i in range(nrows):
        if i not in used_rows and not b[i].is_zero():
            raise InconsistentSystem("cochain is not in the span of the basis and im d0", row=i)
    missing = [c for c in required if c not in pivot_of]
    if missing:
        raise NotABasis("basis coefficients are not determined", columns=missing)
    sol = [RingElement.zero() for _ in range(ncols)]
    for col, p in pivot_of.items():
        sol[col] = A[p][col].unit_inverse() * b[p]
    return sol


# --- refinement -------------------------------------------------------------


@dataclass
class RefinementMap:
    coarse: CechDatum
    fine: CechDatum
    terms: dict  # coarse copy -> [(fine copy, RingElement)]

    def image(self, coarse_copy) -> list:
        return self(self.coarse.indicator(coarse_copy))

    def __call__(self, cochain) -> list:
        """Refine a coarse cochain; coefficients act from the left on the coarse values."""
        idx = self.fine.index()
        out = [RingElement.zero() for _ in self.fine.copies]
        for cc, x in zip(self.coarse.copies, cochain):
            x = RingElement.coerce(x)
            if x.is_zero():
                continue
            for fc, coeff in self.terms.get(cc, []):
                out[idx[fc]] = out[idx[fc]] + coeff * x
        return out


def refinement_map(coarse: CechDatum, fine: CechDatum, assignment: dict) -> RefinementMap:
    """assignment: coarse copy -> (fine copy, word), or a list of (fine copy, coefficient).

    A coefficient is a RingElement (or anything RingElement.parse accepts);
    a list may also hold (fine copy, sign, word) triples.
    """
    coarse.validate()
    fine.validate()
    fine_copies = set(fine.copies)
    terms = {}
    for cc in coarse.copies:
        if cc not in assignment:
            raise MalformedDatum(f"assignment misses coarse cell {cc}")
        a = assignment[cc]
        if isinstance(a, tuple):
            a = [a]
        out = []
        for entry in a:
            if len(entry) == 3:
                fc, sign, word = entry
                coeff = RingElement.word(word if isinstance(word, GroupWord) else GroupWord.parse(str(word)),
                                         sign)
            else:
                fc, coeff = entry
                coeff = coeff if isinstance(coeff, RingElement) else RingElement.coerce(
                    coeff if not isinstance(coeff, str) else RingElement.parse(coeff))
            if fc not in fine_copies:
                raise MalformedDatum(f"fine copy {fc} does not exist")
            out.append((fc, coeff))
        terms[cc] = out
    return RefinementMap(coarse, fine, terms)


def change_of_basis(fine: CechDatum, rep: MonodromyRep | None, ref_a_images, ref_at_images):
    """N with ref_at[k] = sum_l ref_a[l] * N[k][l] mod im d0.

    Symbolic backend: list of lists of RingElement.  Matrix backend: the
    block matrix assembled from r-by-r blocks.
    """
    rep = rep or MonodromyRep.symbolic()
    try:
        pres = h1(fine, rep, basis=ref_a_images)
    except BasisNotTransverse as exc:
        raise NotABasis(f"ref_A images are not a basis: {exc.message}") from exc
    for img in ref_at_images:
        if rep.is_symbolic and not is_cocycle(fine, img):
            raise NotABasis("a ref_At image is not a cocycle")
    rows = [reduce_mod_image(pres, img) for img in ref_at_images]
    if rep.is_symbolic:
        return rows
    N = linalg.blocks(rows, rep.rank)
    if not linalg.is_invertible(N):
        raise NotABasis("ref_At images do not form a basis")
    return N
