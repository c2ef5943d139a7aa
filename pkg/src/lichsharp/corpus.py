"""Named graph corpus, the two appendix tables and the classification sweeps."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Optional

from . import families
from .exact import QuadraticSurd, fmt
from .graph import Graph, diameter, line_graph
from .graph6 import decode
from .regularity import AmplyParams, IntersectionArray, amply_params, intersection_array
from .spectra import SpectrumReport, adjacency_spectrum, drg_spectrum
from .transport import CurvatureReport, curvature_report
from .verify import (
    NUMERIC_TOL,
    ArtgVerdict,
    SharpnessVerdict,
    classify_artg,
    edge_common_neighbours,
    sharpness,
)


@dataclass(frozen=True)
class Caps:
    """Parameter caps for the generated table rows."""

    cp: int = 5                    # CP(n), n <= cp
    h2: int = 5                    # H(2, n), n <= h2
    triangular: int = 7            # T(n), n <= triangular
    hamming_vertices: int = 256    # H(d, n), n**d <= hamming_vertices
    johnson_vertices: int = 70     # J(n, k), C(n, k) <= johnson_vertices
    demi_cube: int = 7             # demi-cube(n), n <= demi_cube
    doob: int = 3                  # Doob(n, m), n + 2m <= doob

    @classmethod
    def parse(cls, text: str) -> "Caps":
        """``"cp=4,hamming_vertices=64"`` style overrides."""
        names = {f.name for f in fields(cls)}
        kw = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, value = part.partition("=")
            if not sep or key.strip() not in names:
                raise ValueError(f"bad cap {part!r}; known caps: {', '.join(sorted(names))}")
            kw[key.strip()] = int(value)
        return replace(cls(), **kw)


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    family: str
    params: tuple[int, ...] = ()
    build: Optional[Callable[[], Graph]] = None
    line: bool = False             # the entry is the line graph of the family member

    def graph(self) -> Graph:
        if self.build is not None:
            return self.build()
        g = families.generate(self.family, *self.params)
        return line_graph(g) if self.line else g

    def automorphisms(self) -> list[list[int]]:
        if self.build is not None or self.line or self.family not in families.FAMILY_ARITY:
            return []
        return families.automorphism_generators(self.family, *self.params)


def entry(family: str, *params: int) -> CorpusEntry:
    return CorpusEntry(families.FamilySpec(family, params).label, family, params)


def line_entry(family: str, *params: int) -> CorpusEntry:
    return CorpusEntry(f"line_graph({families.FamilySpec(family, params).label})", family, params, line=True)


@dataclass
class Analysis:
    graph: Graph
    curvature: CurvatureReport
    spectrum: SpectrumReport
    verdict: SharpnessVerdict
    amply: Optional[AmplyParams]
    array: Optional[IntersectionArray]
    diameter: int


_CACHE: dict[str, Analysis] = {}


def analyze(e: CorpusEntry, workers: int = 1) -> Analysis:
    """Curvature, spectrum and sharpness of a corpus entry (memoised by label)."""
    if e.label in _CACHE:
        return _CACHE[e.label]
    g = e.graph()
    curv = curvature_report(g, e.automorphisms(), workers=workers)
    spec = adjacency_spectrum(g, exact=True)
    verdict = sharpness(g, curvature=curv, spectrum=spec)
    params = amply_params(g)
    ia = intersection_array(g)
    out = Analysis(g, curv, spec, verdict, params or None, ia or None, diameter(g))
    _CACHE[e.label] = out
    return out


# ---------------------------------------------------------------------------
# table rows

@dataclass
class Expected:
    lambda1: QuadraticSurd
    kappa: Fraction
    bound: Optional[Fraction]
    sharp: bool
    params: Optional[tuple[int, int, int, int]] = None
    n: Optional[int] = None
    diameter: Optional[int] = None
    listed_bound: Optional[Fraction] = None   # table value when it disagrees with the construction


@dataclass
class TableRow:
    table: str                        # "srg" or "drg"
    label: str
    n: int
    diameter: int
    params: Optional[tuple[int, int, int, int]]
    lambda1: float
    lambda1_exact: Optional[QuadraticSurd]
    kappa_min: Fraction
    bound: Optional[Fraction]
    sharp: bool
    mode: str
    expected: Expected
    mismatches: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        ex = self.expected
        return {
            "table": self.table,
            "graph": self.label,
            "n": self.n,
            "diameter": self.diameter,
            "params": None if self.params is None else list(self.params),
            "lambda1": f"{self.lambda1:.12g}",
            "lambda1_exact": None if self.lambda1_exact is None else str(self.lambda1_exact),
            "kappa_min": fmt(self.kappa_min),
            "bound": None if self.bound is None else fmt(self.bound),
            "sharp": self.sharp,
            "mode": self.mode,
            "expected": {
                "lambda1": str(ex.lambda1),
                "kappa_min": fmt(ex.kappa),
                "bound": None if ex.bound is None else fmt(ex.bound),
                "sharp": ex.sharp,
            },
            "match": self.match,
            "mismatches": self.mismatches,
            "notes": self.notes,
        }


def _q(x) -> QuadraticSurd:
    return x if isinstance(x, QuadraticSurd) else QuadraticSurd(Fraction(x))


def evaluate_row(table: str, e: CorpusEntry, expected: Expected, workers: int = 1) -> TableRow:
    a = analyze(e, workers)
    g = a.graph
    alpha = edge_common_neighbours(g)
    d = g.degrees[0]
    bound = Fraction(2 + alpha, d) if alpha is not None and len(set(g.degrees)) == 1 else None
    v = a.verdict
    row = TableRow(table, e.label, g.n, a.diameter, a.amply.as_tuple() if a.amply else None,
                   v.lambda1, v.lambda1_exact, v.kappa_min, bound, v.sharp, v.mode, expected)
    bad = row.mismatches

    lam = _q(expected.lambda1)
    if v.lambda1_exact is None:
        bad.append(f"lambda1 not certified exactly (numeric {v.lambda1:.12g}, expected {lam})")
    elif v.lambda1_exact != lam:
        bad.append(f"lambda1 {v.lambda1_exact} != {lam}")
    if abs(v.lambda1 - float(lam)) > NUMERIC_TOL:
        bad.append(f"numeric lambda1 {v.lambda1:.12g} differs from {float(lam):.12g}")
    if v.kappa_min != expected.kappa:
        bad.append(f"kappa_min {fmt(v.kappa_min)} != {fmt(expected.kappa)}")
    if expected.bound is not None and bound != expected.bound:
        bad.append(f"(2+alpha)/d {bound if bound is None else fmt(bound)} != {fmt(expected.bound)}")
    if expected.listed_bound is not None and bound != expected.listed_bound:
        row.notes.append(f"table lists (2+alpha)/d = {fmt(expected.listed_bound)}; "
                         f"constructed graph has alpha={alpha}, giving {fmt(bound)}")
    if v.sharp != expected.sharp:
        bad.append(f"sharp={v.sharp}, expected {expected.sharp}")
    if expected.params is not None and row.params != expected.params:
        bad.append(f"parameters {row.params} != {expected.params}")
    if expected.n is not None and g.n != expected.n:
        bad.append(f"|V|={g.n} != {expected.n}")
    if expected.diameter is not None and a.diameter != expected.diameter:
        bad.append(f"diameter {a.diameter} != {expected.diameter}")
    if a.array is not None and a.spectrum.degree:
        # independent route through the intersection array
        drg = drg_spectrum(a.array)
        if abs(drg.lambda1 - v.lambda1) > NUMERIC_TOL:
            bad.append(f"intersection-array lambda1 {drg.lambda1:.12g} disagrees with dense {v.lambda1:.12g}")
        if drg.lambda1_exact is not None and v.lambda1_exact is not None and drg.lambda1_exact != v.lambda1_exact:
            bad.append(f"intersection-array lambda1 {drg.lambda1_exact} != {v.lambda1_exact}")
    return row


def srg_table_plan(caps: Caps) -> list[tuple[CorpusEntry, Expected]]:
    plan = []
    for n in range(2, caps.cp + 1):
        plan.append((entry("cocktail_party", n),
                     Expected(_q(1), Fraction(1), Fraction(1), True, (2 * n, 2 * n - 2, 2 * n - 4, 2 * n - 2))))
    for n in range(2, caps.h2 + 1):
        x = Fraction(n, 2 * (n - 1))
        plan.append((entry("hamming", 2, n), Expected(_q(x), x, x, True, (n * n, 2 * (n - 1), n - 2, 2))))
    for n in range(4, caps.triangular + 1):
        x = Fraction(n, 2 * (n - 2))
        plan.append((entry("triangular", n), Expected(_q(x), x, x, True, (comb(n, 2), 2 * (n - 2), n - 2, 4))))
    third, two3 = Fraction(1, 3), Fraction(2, 3)
    plan.append((entry("shrikhande"), Expected(_q(two3), third, two3, False, (16, 6, 2, 2))))
    for i in (1, 2, 3):
        plan.append((entry("chang", i), Expected(_q(two3), third, two3, False, (28, 12, 6, 4))))
    plan.append((entry("petersen"), Expected(_q(two3), Fraction(0), two3, False, (10, 3, 0, 1))))
    x = Fraction(4, 5)
    plan.append((entry("clebsch"), Expected(_q(x), x, x, True, (16, 10, 6, 6))))
    x = Fraction(3, 4)
    plan.append((entry("schlafli"), Expected(_q(x), x, x, True, (27, 16, 10, 8))))
    return plan


def drg_table_plan(caps: Caps) -> list[tuple[CorpusEntry, Expected]]:
    plan = []
    for d in range(1, caps.hamming_vertices.bit_length()):
        n = 2
        while n ** d <= caps.hamming_vertices:
            x = Fraction(n, d * (n - 1))
            plan.append((entry("hamming", d, n), Expected(_q(x), x, x, True, n=n ** d, diameter=d)))
            n += 1
    for n in range(1, caps.doob + 1):
        for m in range(1, (caps.doob - n) // 2 + 1):
            D = n + 2 * m
            plan.append((entry("doob", n, m),
                         Expected(_q(Fraction(4, 3 * D)), Fraction(2, 3 * D), Fraction(4, 3 * D), False,
                                  n=4 ** D, diameter=D, listed_bound=Fraction(2, 3 * D))))
    n = 2
    while n - 1 <= caps.johnson_vertices:
        for k in range(1, n):
            if comb(n, k) <= caps.johnson_vertices:
                x = Fraction(n, k * (n - k))
                plan.append((entry("johnson", n, k), Expected(_q(x), x, x, True, n=comb(n, k),
                                                              diameter=min(k, n - k))))
        n += 1
    for n in range(2, caps.demi_cube + 1):
        x = Fraction(4, n)
        plan.append((entry("demi_cube", n), Expected(_q(x), x, x, True, n=2 ** (n - 1), diameter=n // 2)))
    x = Fraction(2, 3)
    plan.append((entry("gosset"), Expected(_q(x), x, x, True, n=56, diameter=3)))
    plan.append((entry("icosahedron"),
                 Expected(QuadraticSurd(Fraction(1), Fraction(-1, 5), 5), Fraction(2, 5), Fraction(4, 5), False,
                          n=12, diameter=3)))
    return plan


GRAPH6_ROWS = {
    "conway_smith": (63, 3),
    "doro": (65, 3),
}


def graph6_rows(paths: dict[str, Path]) -> list[tuple[CorpusEntry, Expected]]:
    """Optional rows read from graph6 files (``{"conway_smith": path, "doro": path}``)."""
    plan = []
    for name, path in sorted(paths.items()):
        if name not in GRAPH6_ROWS:
            raise ValueError(f"no table row named {name!r}; expected one of {sorted(GRAPH6_ROWS)}")
        g = decode(Path(path).read_text().strip().splitlines()[0])
        nv, diam = GRAPH6_ROWS[name]
        plan.append((CorpusEntry(name, "graph6", build=lambda g=g: g),
                     Expected(_q(Fraction(1, 2)), Fraction(-1, 10), Fraction(1, 2), False, n=nv, diameter=diam)))
    return plan


def reproduce_tables(caps: Caps | None = None, graph6: dict[str, Path] | None = None,
                     workers: int = 1) -> list[TableRow]:
    caps = caps or Caps()
    rows = [evaluate_row("srg", e, ex, workers) for e, ex in srg_table_plan(caps)]
    rows += [evaluate_row("drg", e, ex, workers) for e, ex in drg_table_plan(caps) + graph6_rows(graph6 or {})]
    return rows


def format_rows(rows: Iterable[TableRow]) -> str:
    """Aligned text mirroring the appendix layout, plus a status column."""
    head = ["table", "graph", "|V|", "diam", "(n,d,a,b)", "lambda1", "inf kappa", "(2+a)/d", "sharp", "status"]
    body = []
    for r in rows:
        lam = str(r.lambda1_exact) if r.lambda1_exact is not None else f"{r.lambda1:.12g}"
        body.append([
            r.table, r.label, str(r.n), str(r.diameter),
            "-" if r.params is None else "(" + ",".join(map(str, r.params)) + ")",
            lam, fmt(r.kappa_min), "-" if r.bound is None else fmt(r.bound),
            "yes" if r.sharp else "no", "ok" if r.match else "FAIL",
        ])
        for msg in r.mismatches:
            body.append(["", "  ! " + msg] + [""] * (len(head) - 2))
        for msg in r.notes:
            body.append(["", "  * " + msg] + [""] * (len(head) - 2))
    widths = [max(len(row[i]) for row in [head] + body if not row[1].startswith("  ")) for i in range(len(head))]
    lines = []
    for row in [head] + body:
        if row[1].startswith("  "):
            lines.append(row[1])
        else:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def rows_json(rows: Iterable[TableRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=2)


def rows_csv(rows: Iterable[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "graph", "n", "diameter", "lambda1", "lambda1_exact", "kappa_min", "bound", "sharp", "match"])
    for r in rows:
        w.writerow([r.table, r.label, r.n, r.diameter, f"{r.lambda1:.12g}",
                    "" if r.lambda1_exact is None else str(r.lambda1_exact), fmt(r.kappa_min),
                    "" if r.bound is None else fmt(r.bound), r.sharp, r.match])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# classification sweeps

# families whose members are sharp among distance-regular graphs
SHARP_DRG_FAMILIES = {
    "complete", "cocktail_party", "hamming", "johnson", "triangular", "demi_cube", "clebsch", "schlafli", "gosset",
}

POSITIVE_ARTG_LABELS = {
    "cycle(5)", "line_graph(cycle(5))", "icosahedron", "line_graph(petersen)", "line_graph(hoffman_singleton)",
}


def expected_sharp_drg(e: CorpusEntry) -> bool:
    if e.line:
        return False
    if e.family == "cycle":
        return e.params[0] in (3, 4)     # K3 and H(2,2)
    return e.family in SHARP_DRG_FAMILIES


def expected_sharp_srg(e: CorpusEntry) -> bool:
    """Membership in the strongly regular sharp list: CP(n), H(2,n), T(n), Clebsch, Schlafli.

    Coincidences used: J(n,2) = T(n), demi-cube(4) = CP(4), demi-cube(5) = Clebsch, C4 = H(2,2).
    """
    f, p = e.family, e.params
    if e.line:
        return False
    return (
        f in ("cocktail_party", "triangular", "clebsch", "schlafli")
        or (f == "hamming" and p[0] == 2)
        or (f == "johnson" and min(p[1], p[0] - p[1]) == 2)
        or (f == "demi_cube" and p[0] in (4, 5))
        or (f == "cycle" and p[0] == 4)
    )


def sweep_corpus(caps: Caps | None = None) -> list[CorpusEntry]:
    """Table rows plus named graphs, cycles and line graphs used by the sweeps."""
    caps = caps or Caps()
    seen: dict[str, CorpusEntry] = {}
    extras = [entry("cycle", n) for n in range(3, 9)]
    extras += [entry(f) for f in ("hoffman_singleton", "dodecahedron", "heawood")]
    extras += [line_entry(f) for f in ("petersen", "hoffman_singleton", "dodecahedron", "heawood")]
    extras.append(line_entry("cycle", 5))
    for e, _ in srg_table_plan(caps) + drg_table_plan(caps):
        seen.setdefault(e.label, e)
    for e in extras:
        seen.setdefault(e.label, e)
    return list(seen.values())


@dataclass
class SweepViolation:
    sweep: str
    label: str
    detail: str


def classification_sweeps(corpus: list[CorpusEntry], workers: int = 1) -> tuple[list[SweepViolation], dict]:
    """Run the sharp-DRG, sharp-SRG, beta=1 and positive-ARTG sweeps over ``corpus``."""
    bad: list[SweepViolation] = []
    stats = {"drg": 0, "srg": 0, "beta_one": 0, "artg_checked": 0, "sharp": [], "positive_artg": []}
    for e in corpus:
        a = analyze(e, workers)
        sharp = a.verdict.sharp
        if sharp:
            stats["sharp"].append(e.label)
        if a.array is not None:
            stats["drg"] += 1
            if sharp != expected_sharp_drg(e):
                bad.append(SweepViolation("sharp_drg", e.label, f"sharp={sharp}"))
        if a.amply is not None and a.diameter == 2:
            stats["srg"] += 1
            if sharp != expected_sharp_srg(e):
                bad.append(SweepViolation("sharp_srg", e.label, f"sharp={sharp}"))
        if a.amply is not None and a.amply.beta == 1:
            stats["beta_one"] += 1
            if sharp:
                bad.append(SweepViolation("beta_one_not_sharp", e.label, "sharp with beta = 1"))
        verdict: ArtgVerdict = classify_artg(a.graph, curvature=a.curvature)
        stats["artg_checked"] += 1
        if verdict.member:
            stats["positive_artg"].append(e.label)
        if verdict.counterexample:
            bad.append(SweepViolation("positive_artg", e.label, verdict.reason))
        elif verdict.member != (e.label in POSITIVE_ARTG_LABELS):
            bad.append(SweepViolation("positive_artg", e.label, f"member={verdict.member}"))
    return bad, stats
