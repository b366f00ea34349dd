"""Linear representations of quasigroups over abelian groups.

A representation is f(x,y) = phi(x) + psi(y) + c with phi, psi automorphisms
of a derived abelian group.  Construction goes through the principal loop
isotope at a base element; verification is always pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import (AbelianGroup, Automorphism, GroupError, as_abelian_group)
from .equations import (CatalogEntry, Counterexample, RelationSet, satisfies)
from .errors import MedialqError
from .tables import Mapping, QuasigroupTable

#: Classifications whose satisfaction guarantees a linear representation.
LINEAR_CLASSIFICATIONS = frozenset({
    "medial", "paramedial", "commutativeT",
    "medialPair", "paramedialPair", "mainTheorem",
})


class LinearizationError(MedialqError):
    pass


class NotAbelianGroupError(LinearizationError):
    """The principal loop isotope at this base point is not an abelian group."""

    def __init__(self, witness: str):
        self.witness = witness
        super().__init__(f"derived loop is not an abelian group: {witness}")


class NotAutomorphismError(LinearizationError):
    """A translation map decomposed, but its linear part is not additive."""

    def __init__(self, which: str):
        self.which = which
        super().__init__(f"extracted map {which} is not an automorphism")


class NotLinearError(LinearizationError):
    def __init__(self, which: str):
        self.which = which
        super().__init__(f"operation {which} does not reconstruct from its affine form")


@dataclass(frozen=True)
class LinearRep:
    group: AbelianGroup
    phi: Automorphism
    psi: Automorphism
    c: int

    def __call__(self, x: int, y: int) -> int:
        g = self.group
        return g.add(g.add(self.phi(x), self.psi(y)), self.c)

    def table(self) -> QuasigroupTable:
        n = self.group.order
        return QuasigroupTable(tuple(
            tuple(self(x, y) for y in range(n)) for x in range(n)))


@dataclass(frozen=True)
class PairLinearRep:
    group: AbelianGroup
    rep_f: LinearRep
    rep_g: LinearRep


def affine_table(group: AbelianGroup, phi, psi, c: int) -> QuasigroupTable:
    """Build the table of (x,y) -> phi(x) + psi(y) + c over ``group``.

    ``phi`` and ``psi`` may be Mapping or Automorphism.
    """
    pm = phi.map.images if isinstance(phi, Automorphism) else phi.images
    sm = psi.map.images if isinstance(psi, Automorphism) else psi.images
    t = group.table.cells
    n = group.order
    return QuasigroupTable(tuple(
        tuple(t[t[pm[x]][sm[y]]][c] for y in range(n)) for x in range(n)))


def derive_group(q: QuasigroupTable, e: int) -> AbelianGroup:
    """x + y = q(R^-1(x), L^-1(y)) with R(x)=q(x,e), L(y)=q(e,y).

    Succeeds iff the principal loop isotope at e is an abelian group; its
    identity is q(e, e).
    """
    n = q.order
    rinv = Mapping(tuple(q.cells[x][e] for x in range(n))).inverse().images
    linv = Mapping(q.cells[e]).inverse().images
    loop = QuasigroupTable(tuple(
        tuple(q.cells[rinv[x]][linv[y]] for y in range(n)) for x in range(n)))
    try:
        return as_abelian_group(loop)
    except GroupError as exc:
        raise NotAbelianGroupError(str(exc)) from exc


def _affine_parts(grp: AbelianGroup, right_translation: tuple[int, ...],
                  left_translation: tuple[int, ...], which: tuple[str, str]):
    """Split the two translation maps of an operation around the group identity."""
    z = grp.identity
    rz = right_translation[z]
    lz = left_translation[z]
    try:
        phi = Automorphism(group=grp, map=Mapping(
            tuple(grp.sub(v, rz) for v in right_translation)))
    except (GroupError, MedialqError) as exc:
        raise NotAutomorphismError(which[0]) from exc
    try:
        psi = Automorphism(group=grp, map=Mapping(
            tuple(grp.sub(v, lz) for v in left_translation)))
    except (GroupError, MedialqError) as exc:
        raise NotAutomorphismError(which[1]) from exc
    return phi, psi, rz, lz


def linearize_single(q: QuasigroupTable, e: int) -> LinearRep:
    """Linear representation of q over the group derived at base element e."""
    grp = derive_group(q, e)
    n = q.order
    right = tuple(q.cells[x][e] for x in range(n))   # R(x) = q(x, e)
    left = tuple(q.cells[e])                          # L(y) = q(e, y)
    phi, psi, rz, lz = _affine_parts(grp, right, left, ("phi", "psi"))
    # q(x,y) = R(x) + L(y) by construction of the derived group, so the
    # constant is the sum of the two offsets at the group identity.
    rep = LinearRep(group=grp, phi=phi, psi=psi, c=grp.add(rz, lz))
    if any(rep(x, y) != q.cells[x][y] for x in range(n) for y in range(n)):
        raise NotLinearError("f")
    return rep


def linearize_pair(f: QuasigroupTable, g: QuasigroupTable, e: int) -> PairLinearRep:
    """Represent both operations over the single group derived from f at e."""
    if f.order != g.order:
        raise MedialqError("operations must share a universe")
    rep_f = linearize_single(f, e)
    grp = rep_f.group
    z = grp.identity
    n = g.order
    right = tuple(g.cells[x][z] for x in range(n))
    left = tuple(g.cells[z])
    phi2, psi2, rz, lz = _affine_parts(grp, right, left, ("phi2", "psi2"))
    # Both translations here are taken at the group identity z, so
    # g(x,y) = g(x,z) + g(z,y) - g(z,z) when g is linear; the constant is
    # g(z,z) itself (equal to both offsets).
    assert rz == lz == g.cells[z][z]
    rep_g = LinearRep(group=grp, phi=phi2, psi=psi2, c=rz)
    if any(rep_g(x, y) != g.cells[x][y] for x in range(n) for y in range(n)):
        raise NotLinearError("g")
    return PairLinearRep(group=grp, rep_f=rep_f, rep_g=rep_g)


def _compose_images(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[v] for v in b)


@dataclass(frozen=True)
class RelationCheck:
    """Pointwise results for a four-relation set under both composition
    conventions: "rl" reads the pair (A, B) as x -> A(B(x)), "lr" as
    x -> B(A(x))."""

    relations: RelationSet
    rl: tuple[bool, bool, bool, bool]
    lr: tuple[bool, bool, bool, bool]

    @property
    def holds_rl(self) -> bool:
        return all(self.rl)

    @property
    def holds_lr(self) -> bool:
        return all(self.lr)

    @property
    def conventions(self) -> tuple[str, ...]:
        out = []
        if self.holds_rl:
            out.append("rl")
        if self.holds_lr:
            out.append("lr")
        return tuple(out)

    def __bool__(self) -> bool:
        return self.holds_rl or self.holds_lr


def verify_relations(pair: PairLinearRep, relations: RelationSet) -> RelationCheck:
    maps = {
        "phi1": pair.rep_f.phi.map.images,
        "psi1": pair.rep_f.psi.map.images,
        "phi2": pair.rep_g.phi.map.images,
        "psi2": pair.rep_g.psi.map.images,
    }
    rl, lr = [], []
    for (a, b), (c, d) in relations:
        ma, mb, mc, md = maps[a], maps[b], maps[c], maps[d]
        rl.append(_compose_images(ma, mb) == _compose_images(mc, md))
        lr.append(_compose_images(mb, ma) == _compose_images(md, mc))
    return RelationCheck(relations=relations, rl=tuple(rl), lr=tuple(lr))


@dataclass
class EquationReport:
    """Outcome of checking one catalog entry against concrete operations."""

    label: str
    satisfied: bool
    counterexample: Counterexample | None = None
    representation: PairLinearRep | None = None
    failure: str | None = None
    relation_check: RelationCheck | None = None
    flags: dict = field(default_factory=dict)
    theorem_violation: bool = False


def check_equation_implies_representation(entry: CatalogEntry,
                                          f: QuasigroupTable,
                                          g: QuasigroupTable | None = None,
                                          base: int = 0) -> EquationReport:
    """Satisfaction check followed, when satisfied, by linearization and
    relation verification.  A satisfied linearity-implying entry whose
    linearization fails is flagged as a theorem violation (the strongest bug
    signal available)."""
    is_pair = entry.label.startswith("2-")
    if is_pair and g is None:
        raise MedialqError(f"entry {entry.label} needs a second operation table")
    bindings = {"f": f}
    if is_pair:
        bindings["g"] = g
    result = satisfies(entry.equation, bindings)
    if result is not True:
        return EquationReport(label=entry.label, satisfied=False,
                              counterexample=result)
    report = EquationReport(label=entry.label, satisfied=True)
    linearity_expected = entry.classification in LINEAR_CLASSIFICATIONS
    try:
        pair_rep = linearize_pair(f, g if is_pair else f, base)
    except LinearizationError as exc:
        report.failure = str(exc)
        report.theorem_violation = linearity_expected
        return report
    report.representation = pair_rep
    if entry.relations is not None:
        report.relation_check = verify_relations(pair_rep, entry.relations)
        if linearity_expected and not report.relation_check:
            report.theorem_violation = True
    phi1 = pair_rep.rep_f.phi.map.images
    psi1 = pair_rep.rep_f.psi.map.images
    phi2 = pair_rep.rep_g.phi.map.images
    psi2 = pair_rep.rep_g.psi.map.images
    if entry.classification == "medial":
        report.flags["phi_psi_commute"] = (
            _compose_images(phi1, psi1) == _compose_images(psi1, phi1))
    elif entry.classification == "paramedial":
        report.flags["phi_sq_eq_psi_sq"] = (
            _compose_images(phi1, phi1) == _compose_images(psi1, psi1))
    elif entry.classification == "commutativeT":
        report.flags["phi_eq_psi"] = phi1 == psi1
    elif entry.classification == "mainTheorem":
        # per-operation phi = psi is what the multi-operation corollary adds
        report.flags["phi1_eq_psi1"] = phi1 == psi1
        report.flags["phi2_eq_psi2"] = phi2 == psi2
    return report
