"""Right ideals of K[F] (and submodules of K[F]^m) generated on a finite forest.

An ideal generated on a forest T is represented by its restriction Delta = I|_T, a
subspace of K^T closed under shifting along edges in both directions (condition C2).
Saturation computes Delta from any generating set supported on T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import SupportError
from .forest import SupportForest, hull_forest
from .gf import GF
from .linalg import Subspace

__all__ = [
    "IdealRep",
    "ExposureStep",
    "saturate",
    "check_c2",
    "classify_exposure",
    "rank_of",
    "basis_from_coincidences",
    "is_proper",
    "membership",
    "ideal_equal",
    "element_str",
    "w_minus_one",
]

Element = Mapping[tuple, int]  # {(component, letters): code}


def shift(vec, src: Sequence[int], dst: Sequence[int]) -> list[int]:
    out = [0] * len(vec)
    for a, b in zip(src, dst):
        out[b] = vec[a]
    return out


def _as_vector(forest: SupportForest, g) -> list[int]:
    if isinstance(g, Mapping):
        return forest.vector(g)
    g = list(g)
    if len(g) != forest.n:
        raise SupportError("generator length does not match the forest")
    return g


def saturate_space(delta: Subspace, forest: SupportForest) -> Subspace:
    """Close ``delta`` (in place) under b-shifts and inverse b-shifts until nothing grows."""
    grew = True
    while grew:
        grew = False
        for g in range(1, forest.rank + 1):
            O, T = forest.origins[g], forest.termini[g]
            if not O:
                continue
            for src, dst in ((O, T), (T, O)):
                for row in delta.restrict(src).basis():
                    if delta.add(shift(row, src, dst)):
                        grew = True
    return delta


def check_c2(delta: Subspace, forest: SupportForest) -> bool:
    for g in range(1, forest.rank + 1):
        O, T = forest.origins[g], forest.termini[g]
        if not O:
            continue
        a, b = delta.restrict(O), delta.restrict(T)
        if a.dim != b.dim:
            return False
        if any(shift(r, O, T) not in delta for r in a.basis()):
            return False
    return True


@dataclass
class IdealRep:
    forest: SupportForest
    F: GF
    delta: Subspace
    _d_b: dict | None = field(default=None, repr=False)

    @property
    def d(self) -> int:
        return self.delta.dim

    @property
    def d_b(self) -> dict[int, int]:
        if self._d_b is None:
            self._d_b = {g: self.delta.restrict_dim(self.forest.origins[g]) for g in self.forest.origins}
        return self._d_b

    @property
    def rank(self) -> int:
        return self.d - sum(self.d_b.values())

    def key(self) -> tuple:
        return self.delta.key()

    def contains(self, f) -> bool:
        return membership(self, f)

    def generators(self) -> list[list[int]]:
        return basis_from_coincidences(self)

    def generator_strings(self) -> list[str]:
        return [element_str(self.forest, g, self.F) for g in self.generators()]

    def to_json(self) -> dict:
        fo = self.forest
        return {
            "vertices": [fo.label(v) for v in fo.vertices],
            "edges": [[fo.label(fo.vertices[a]), g, fo.label(fo.vertices[b])]
                      for g in fo.origins for a, b in zip(fo.origins[g], fo.termini[g])],
            "rows": [{fo.label(fo.vertices[i]): self.F.elem_str(c) for i, c in enumerate(r) if c}
                     for r in self.delta.basis()],
            "rank": self.rank,
            "d": self.d,
            "d_b": {str(g): v for g, v in self.d_b.items()},
        }


def saturate(generators: Iterable, forest: SupportForest, F: GF) -> IdealRep:
    delta = Subspace(F, forest.n)
    for g in generators:
        delta.add(_as_vector(forest, g))
    return IdealRep(forest, F, saturate_space(delta, forest))


def rank_of(I: IdealRep) -> int:
    return I.rank


def is_proper(I: IdealRep) -> bool:
    return I.d < I.forest.n


@dataclass(frozen=True)
class ExposureStep:
    vertex: int
    kind: str  # "free" | "forced" | "coincidence"
    witness: tuple | None = None


def classify_exposure(I: IdealRep, order: Sequence[int] | None = None) -> list[ExposureStep]:
    """Scan the forest vertex by vertex in ``order`` and classify every step."""
    fo, delta = I.forest, I.delta
    order = list(range(fo.n)) if order is None else list(order)
    if not fo.is_exploration(order):
        raise ValueError("order is not an exploration of the forest")
    pos = {v: t for t, v in enumerate(order)}
    exposed: set[int] = set()
    log: list[ExposureStep] = []
    for t, v in enumerate(order):
        exposed.add(v)
        parent = [(j, -lab) for j, lab in fo.neighbours[v] if j in exposed and j != v]
        if parent:
            u, b = parent[0]
            Db = [x for x in exposed if any(j in exposed and lab == b for j, lab in fo.neighbours[x])]
            if any(r[u] for r in delta.restrict(Db).basis()):
                log.append(ExposureStep(v, "forced"))
                continue
        local = delta.restrict(exposed)
        if any(r[v] for r in local.basis()):
            witness = _minimal_witness(local, pos, v, fo.n)
            log.append(ExposureStep(v, "coincidence", tuple(witness)))
        else:
            log.append(ExposureStep(v, "free"))
    return log


def _minimal_witness(local: Subspace, pos: dict[int, int], v: int, n: int) -> list[int]:
    """Reduced monic element of ``local`` whose leading vertex (in exploration order) is v."""
    rank = [pos[i] for i in range(n)]
    re = local.reranked(rank)
    row = re.rows[pos[v]]
    return [row[rank[i]] for i in range(n)]


def basis_from_coincidences(I: IdealRep) -> list[list[int]]:
    return [list(s.witness) for s in classify_exposure(I) if s.kind == "coincidence"]


def coincidence_count(I: IdealRep, order: Sequence[int] | None = None) -> int:
    return sum(s.kind == "coincidence" for s in classify_exposure(I, order))


# -- membership and equality across forests -----------------------------------

def _elements(I: IdealRep) -> list[dict]:
    return [I.forest.element(r) for r in I.delta.basis()]


def _common_forest(forests: Sequence[SupportForest], extra: Iterable = ()) -> SupportForest:
    extra = list(extra)
    rank = max([f.rank for f in forests] + [abs(x) for _, z in extra for x in z])
    m = max([f.m for f in forests] + [c + 1 for c, _ in extra])
    verts = [v for f in forests for v in f.vertices] + extra
    return hull_forest(verts, rank, m)


def membership(I: IdealRep, f) -> bool:
    """Whether f (a ``{vertex: code}`` mapping or a vector on I's forest) lies in I."""
    if not isinstance(f, Mapping):
        f = I.forest.element(f)
    f = {(c, tuple(z)): x for (c, z), x in f.items() if x}
    if all(v in I.forest for v in f):
        return I.forest.vector(f) in I.delta
    U = _common_forest([I.forest], f.keys())
    J = saturate(_elements(I), U, I.F)
    return U.vector(f) in J.delta


def ideal_equal(I: IdealRep, J: IdealRep) -> bool:
    if I.F != J.F:
        return False
    if I.forest == J.forest:
        return I.delta == J.delta
    U = _common_forest([I.forest, J.forest])
    return saturate(_elements(I), U, I.F).delta == saturate(_elements(J), U, J.F).delta


# -- helpers -------------------------------------------------------------------

def w_minus_one(forest: SupportForest, w_letters, F: GF, component: int = 0) -> list[int]:
    v = [0] * forest.n
    v[forest.index[(component, tuple(w_letters))]] = 1
    one = forest.index[(component, ())]
    v[one] = F.add[v[one]][F.minus_one]
    return v


def element_str(forest: SupportForest, vec, F: GF) -> str:
    """Render an element like ``a - 1`` or ``2*ab + b`` (terms by descending vertex order)."""
    terms = []
    for i in range(len(vec) - 1, -1, -1):
        c = vec[i]
        if not c:
            continue
        mono = forest.label(forest.vertices[i])
        neg = F.k == 1 and c == F.p - 1 and F.p > 2
        if neg:
            coef = ""
        elif c == 1:
            coef = ""
        else:
            cs = F.elem_str(c)
            coef = f"({cs})" if "+" in cs else cs
        if mono == "1" and forest.m == 1:
            body = coef or "1"
        else:
            body = f"{coef}*{mono}" if coef else mono
        terms.append(("-" if neg else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sgn, body in terms[1:]:
        out += f" {sgn} {body}"
    return out
