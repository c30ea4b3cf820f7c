"""Reduced stratification of a totally degenerate special fiber.

Strata are the Delaunay cells modulo Y.  The orbit of a cell of dimension k
is a k-dimensional torus, and closure follows the face relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import CycNum
from .degeneration import SCHEMA, DegenerationData
from .delaunay import DelaunayCell, DelaunayComplex, delaunay_complex
from .errors import BadStar, NotCodimOne, UserInputError

Vec = tuple[int, ...]


def local_type(cell: DelaunayCell) -> str:
    """Toric variety of a cell, named for dimension at most 2."""
    n = len(cell.vertices)
    if cell.dim == 0:
        return "point"
    if cell.dim == 1:
        return "P1"
    if cell.dim == 2:
        return {3: "P2", 4: "P1xP1"}.get(n, f"toric surface ({n} vertices)")
    if cell.dim == 3 and n == 4:
        return "P3"
    return f"toric {cell.dim}-fold ({n} vertices)"


def shape(cell: DelaunayCell) -> str:
    if cell.dim == 2:
        return {3: "triangle", 4: "square"}.get(len(cell.vertices), "polygon")
    return {0: "vertex", 1: "interval"}.get(cell.dim, f"{cell.dim}-cell")


@dataclass
class Stratum:
    index: int
    cell: DelaunayCell
    dim: int
    is_component: bool
    local_type: str

    def to_json(self):
        return {
            "index": self.index,
            "cell": [list(v) for v in self.cell.vertices],
            "dim": self.dim,
            "is_component": self.is_component,
            "local_type": self.local_type,
        }


@dataclass
class LocalModel:
    stratum: int
    torus_dim: int
    branches: list[tuple[int, Vec]]  # (maximal cell index, translation) with Z(sigma_i) = {zeta_i = 0}

    def presentation(self) -> str:
        if self.torus_dim == 0:
            torus = "k"
        elif self.torus_dim == 1:
            torus = "k[t1^±1]"
        else:
            torus = f"k[t1^±1..t{self.torus_dim}^±1]"
        return f"{torus}[zeta1,zeta2]/(zeta1*zeta2)"

    def to_json(self):
        return {
            "stratum": self.stratum,
            "torus_dim": self.torus_dim,
            "presentation": self.presentation(),
            "branches": [{"label": f"zeta{i + 1}", "cell": j, "translation": list(t)}
                         for i, (j, t) in enumerate(self.branches)],
        }


def unit_str(u: CycNum) -> str:
    """Roots of unity as z<n>^k, anything else in the power basis."""
    n = u.order()
    if n is None or n <= 2:
        return str(u)
    k = u.root_exponent(n)
    return f"z{n}" if k == 1 else f"z{n}^{k}"


@dataclass
class Gluing:
    generator: Vec
    character: int
    shift: CycNum
    alpha_power: int | None = None

    def to_json(self):
        out = {"y": list(self.generator), "character": f"w{self.character + 1}", "shift": unit_str(self.shift)}
        if self.alpha_power is not None:
            out["alpha_power"] = self.alpha_power
        return out


@dataclass
class StrataReport:
    complex: DelaunayComplex
    strata: list[Stratum]
    closure: list[tuple[int, int]]
    local_models: list[LocalModel]
    gluings: list[Gluing]
    very_ample_flag: bool
    flags: list[str] = field(default_factory=list)

    @property
    def counts(self) -> tuple[int, ...]:
        return self.complex.counts()

    @property
    def components(self) -> list[Stratum]:
        return [s for s in self.strata if s.is_component]

    def component_types(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.components:
            out[s.local_type] = out.get(s.local_type, 0) + 1
        return out

    def euler(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.counts))

    def to_json(self):
        return {
            "schema": SCHEMA,
            "kind": "strata",
            "rank": self.complex.form.g,
            "quotient": self.complex.quotient.to_json(),
            "counts": list(self.counts),
            "euler": self.euler(),
            "components": len(self.components),
            "component_types": self.component_types(),
            "strata": [s.to_json() for s in self.strata],
            "closure": [list(p) for p in self.closure],
            "codim1_local_models": [m.to_json() for m in self.local_models],
            "gluing_shifts": [gl.to_json() for gl in self.gluings],
            "very_ample_flag": self.very_ample_flag,
            "flags": self.flags,
        }

    def to_dot(self) -> str:
        lines = ["digraph strata {", "  rankdir=BT;"]
        for s in self.strata:
            label = " ".join("(" + ",".join(map(str, v)) + ")" for v in s.cell.vertices)
            lines.append(f'  s{s.index} [label="O{s.index} dim {s.dim}\\n{label}"];')
        for a, b in self.closure:
            lines.append(f"  s{a} -> s{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _complex_for(d: DegenerationData) -> DelaunayComplex:
    form = d.require_form()
    if form.g > 3:
        raise UserInputError("strata are computed for rank at most 3")
    return delaunay_complex(form, d.Y)


def local_model_codim1(d: DegenerationData, tau, cx: DelaunayComplex | None = None) -> LocalModel:
    """The node model O(tau) x {zeta1 zeta2 = 0} along a codimension-1 stratum.

    tau may be a stratum index or a vertex list.
    """
    cx = cx or _complex_for(d)
    g = cx.form.g
    i = tau if isinstance(tau, int) else cx.index_of([tuple(v) for v in tau])
    cell = cx.cells[i]
    if cell.dim != g - 1:
        raise NotCodimOne(f"cell has dimension {cell.dim}, expected {g - 1}")
    branches = cx.cofaces(i)
    if len(branches) != 2:
        raise BadStar(f"cell lies in {len(branches)} maximal cells, expected 2")
    return LocalModel(i, cell.dim, sorted(branches))


def gluing_shifts(d: DegenerationData) -> list[Gluing]:
    """Unit b(f_i, y) for each generator y of Y and each coordinate character w_i."""
    g = d.g
    out = []
    for y in d.Y.generators():
        for i in range(g):
            f = tuple(int(i == j) for j in range(g))
            k = None
            if d.unit_matrix is not None:
                E = d.unit_matrix
                k = sum(f[a] * (E[a][b] + E[b][a]) * y[b] for a in range(g) for b in range(g))
            out.append(Gluing(y, i, d.b(f, y)[1], k))
    return out


def build_strata(d: DegenerationData) -> StrataReport:
    cx = _complex_for(d)
    g = cx.form.g
    strata = [Stratum(i, c, c.dim, c.dim == g, local_type(c)) for i, c in enumerate(cx.cells)]
    closure = sorted(set(cx.faces))
    models = [local_model_codim1(d, s.index, cx) for s in strata if s.dim == g - 1]
    flags = []
    tops = [s for s in strata if s.is_component]
    if g == 2:
        tri = sum(1 for s in tops if shape(s.cell) == "triangle")
        if tri:
            flags.append(f"{tri} triangle components (P2) mod Y, "
                         f"{tri // cx.quotient.index} per fundamental domain of X/Y, derived from the cell enumeration")
    return StrataReport(cx, strata, closure, models, gluing_shifts(d), d.Y.e_min >= 3, flags)
