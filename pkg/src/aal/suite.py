"""The full check suite: one function per acceptance criterion, each
returning a deterministic block of tab-separated report lines."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

from .algebra import has_trivial_subalgebra
from .congruence import classify_identity, congruence_lattice, greatest_proper_congruence
from .demorgan import (
    NAMED,
    filter_congruence_iso_check,
    fusion_solutions,
    rt_il_weml_check,
    validate_dmm,
)
from .enumeration import bruteforce_lattice_classes, enumerate_lattices
from .filters import FilterSystem, dmm_rule_system, filter_lattice, weml_eml_on_filters
from .heyting import boolean_algebra, godel_chain, kc_bridge_report, kc_holds, upset_algebra
from .modal import (
    KripkeFrame,
    TermKind,
    complex_algebra,
    frame_properties,
    modal_term,
    stabilization_index,
    valid_in_class,
)
from .order import (
    FinitePoset,
    Property,
    is_distributive,
    is_dpc,
    semilattice_property,
    theorem_conditions,
)

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_suite", "format_report", "pmap", "reflexive_transitive_frames"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    lines: tuple

    def status(self) -> str:
        return f"criterion\t{self.number}\t{self.title}\t{'PASS' if self.passed else 'FAIL'}"


def pmap(fn: Callable, items: Iterable, jobs: int = 1) -> list:
    """Order-preserving map, optionally across processes."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _dash(x) -> str:
    return "-" if x is None else str(x)


# -- criteria 1-3: lattice sweeps -------------------------------------------

def lattice_size_summary(n: int) -> dict:
    """Counts for all lattices of size n; the oracle runs only for n <= 6."""
    lattices = list(enumerate_lattices(n))
    oracle = len(bruteforce_lattice_classes(n)[2]) if n <= 6 else None
    row = {"n": n, "lattices": len(lattices), "oracle": oracle, "dpc": 0, "main_agree": 0, "eml_agree": 0,
           "frink": 0, "dist_ssmz": 0, "dist_ssmz_weml": 0, "disagreements": []}
    for L in lattices:
        if not is_dpc(L):
            continue
        row["dpc"] += 1
        main = theorem_conditions(L, "MAIN")
        eml = theorem_conditions(L, "EML")
        row["main_agree"] += main.agreement
        row["eml_agree"] += eml.agreement
        if not (main.agreement and eml.agreement):
            row["disagreements"].append(L.name)
        row["frink"] += semilattice_property(L, Property.FRINK).holds
        if is_distributive(L) and semilattice_property(L, Property.STAR_STARSTAR_MEET_ZERO).holds:
            row["dist_ssmz"] += 1
            row["dist_ssmz_weml"] += semilattice_property(L, Property.WEML_ID).holds
    return row


def _lattice_rows(max_size: int, jobs: int) -> list[dict]:
    return pmap(lattice_size_summary, range(1, max_size + 1), jobs)


def criterion_main_theorem(max_size: int = 7, jobs: int = 1, rows=None) -> CriterionResult:
    rows = rows or _lattice_rows(max_size, jobs)
    lines, ok = [], True
    for r in rows:
        oracle_ok = r["oracle"] is None or r["oracle"] == r["lattices"]
        agree = r["main_agree"] == r["dpc"] == r["eml_agree"]
        ok &= oracle_ok and agree
        lines.append(
            f"lattices\tn={r['n']}\tcount={r['lattices']}\toracle={_dash(r['oracle'])}\tdpc={r['dpc']}"
            f"\tmain_agree={r['main_agree']}\teml_agree={r['eml_agree']}\tdisagreements={','.join(r['disagreements']) or '-'}"
        )
    return CriterionResult(1, "main-theorem-oracle", ok, tuple(lines))


def criterion_frink(max_size: int = 7, jobs: int = 1, rows=None) -> CriterionResult:
    rows = rows or _lattice_rows(max_size, jobs)
    lines = [f"frink\tn={r['n']}\tdpc={r['dpc']}\tfrink={r['frink']}" for r in rows]
    return CriterionResult(2, "frink", all(r["frink"] == r["dpc"] for r in rows), tuple(lines))


def criterion_distributive_upgrade(max_size: int = 7, jobs: int = 1, rows=None) -> CriterionResult:
    rows = rows or _lattice_rows(max_size, jobs)
    lines = [f"upgrade\tn={r['n']}\tdistributive_ssmz={r['dist_ssmz']}\tweml={r['dist_ssmz_weml']}" for r in rows]
    return CriterionResult(3, "distributive-upgrade", all(r["dist_ssmz"] == r["dist_ssmz_weml"] for r in rows), tuple(lines))


# -- criteria 4-6: De Morgan monoids ----------------------------------------

NAMED_ORDER = ("B2", "S3", "C4", "D4")


def criterion_named_dmm() -> CriterionResult:
    lines, ok = [], True
    for name in NAMED_ORDER:
        sols = fusion_solutions(name)
        A = sols[0] if sols else None
        fails = sorted(validate_dmm(A).failures()) if A else ["no-solution"]
        trivial = A is not None and has_trivial_subalgebra(A) is not None
        congs = len(congruence_lattice(A).congruences) if A else 0
        expect_trivial = name == "S3"
        row_ok = len(sols) == 1 and not fails and trivial == expect_trivial
        if name in ("C4", "D4"):
            row_ok &= congs == 2
        ok &= row_ok
        fuse = " ".join(str(x) for x in A.table("fuse")) if A else "-"
        lines.append(
            f"named\t{name}\tsolutions={len(sols)}\taxiom_failures={','.join(fails) or '-'}"
            f"\ttrivial_subalgebra={trivial}\tcongruences={congs}\tfuse={fuse}"
        )
    return CriterionResult(4, "named-de-morgan-monoids", ok, tuple(lines))


def _named(name: str):
    from .demorgan import named

    return named(name)


def criterion_rt(nmax: int = 2) -> CriterionResult:
    lines, ok = [], True
    for name in ("B2", "C4", "D4"):
        r = rt_il_weml_check(_named(name), nmax)
        ok &= r.all_ok
        lines.append(
            f"rt\t{name}\til_ok={r.il_ok}\tleast_is_fmeet={r.least_is_fmeet}\tweml_id={r.weml_id}"
            f"\tgreatest_proper_when_fsi={r.greatest_proper_when_fsi}\tchecked={r.detail['il']}"
        )
    return CriterionResult(5, "rt-il-weml", ok, tuple(lines))


def criterion_leibniz() -> CriterionResult:
    lines, ok = [], True
    for name in NAMED_ORDER:
        res = filter_congruence_iso_check(_named(name))
        ok &= res.ok
        pairs = "; ".join(f"{sorted(F)}->{theta}" for F, theta in res.pairs)
        lines.append(f"leibniz\t{name}\tiso={res.ok}\tpairs={pairs}\tdetail={res.detail or '-'}")
    return CriterionResult(6, "leibniz-cross-check", ok, tuple(lines))


# -- criterion 7: KC bridge -------------------------------------------------

FORK = FinitePoset.from_covers(3, [(0, 1), (0, 2)])


def heyting_examples():
    return [upset_algebra(FORK, "fork"), godel_chain(3), boolean_algebra(1), boolean_algebra(2), boolean_algebra(3)]


def criterion_kc_bridge() -> CriterionResult:
    H = FilterSystem.builtin("heyting")
    lines, ok = [], True
    examples = heyting_examples()
    for A in examples:
        clr = congruence_lattice(A)
        label = classify_identity(clr)
        si = label in ("RS", "RSI")
        gp = greatest_proper_congruence(clr) is not None
        kc = bool(kc_holds(A))
        weml = weml_eml_on_filters(A, H).weml_id
        if A.name == "fork":
            ok &= (not kc) and (not gp) and si
        else:
            ok &= kc and (gp or not si)
        ok &= kc == bool(weml)
        lines.append(f"kc\t{A.name}\tkc={kc}\tclass={label}\tgreatest_proper={gp}\tfilter_weml={weml}")
    report = kc_bridge_report(examples)
    ok &= report.consistent
    lines.append(f"kc\tbridge\tconsistent={report.consistent}\t{report.wording}")
    return CriterionResult(7, "kc-bridge", ok, tuple(lines))


# -- criterion 8: S4.2 ------------------------------------------------------

def reflexive_transitive_frames(points: int):
    """Every preorder on range(points), as frames named by edge bitmask."""
    off = [(i, j) for i in range(points) for j in range(points) if i != j]
    for bits in product((0, 1), repeat=len(off)):
        rel = [[i == j for j in range(points)] for i in range(points)]
        for (i, j), b in zip(off, bits):
            rel[i][j] = bool(b)
        if all(rel[i][k] for i in range(points) for j in range(points) for k in range(points) if rel[i][j] and rel[j][k]):
            code = "".join(map(str, bits))
            yield KripkeFrame(points, [(i, j) for i in range(points) for j in range(points) if rel[i][j]], f"P{points}.{code}")


def frame_row(frame: KripkeFrame) -> tuple:
    A = complex_algebra(frame)
    conv = valid_in_class([A], modal_term(TermKind.CONVERGENCE)).valid
    bound = stabilization_index(A)
    weml = all(valid_in_class([A], modal_term(TermKind.WEML_COND, m, 1)).valid for m in range(bound + 1))
    return frame.name, frame_properties(frame).up_directed, conv, weml


def criterion_s42(max_points: int = 4, jobs: int = 1) -> CriterionResult:
    frames = [f for k in range(1, max_points + 1) for f in reflexive_transitive_frames(k)]
    rows = pmap(frame_row, frames, jobs)
    lines, ok = [], True
    for k in range(1, max_points + 1):
        sel = [r for r in rows if r[0].startswith(f"P{k}.")]
        bad = [r[0] for r in sel if not (r[1] == r[2] == r[3])]
        ok &= not bad
        lines.append(
            f"s42\tpoints={k}\tframes={len(sel)}\tup_directed={sum(r[1] for r in sel)}"
            f"\tconvergence={sum(r[2] for r in sel)}\tweml={sum(r[3] for r in sel)}\tmismatches={','.join(bad) or '-'}"
        )
    chain2 = complex_algebra(KripkeFrame(2, [(0, 1)], "chain2", "preorder"))
    laws = weml_eml_on_filters(chain2, FilterSystem.builtin("modal"))
    ok &= laws.weml_id is True and laws.eml_id is False
    lines.append(f"s42\tchain2\tweml_id={laws.weml_id}\teml_id={laws.eml_id}\tEML_witness={_dash(laws.witnesses.get('EML_ID'))}")
    return CriterionResult(8, "modal-s42-bridge", ok, tuple(lines))


# -- criterion 9: filter engine self-oracle ---------------------------------

def filter_examples():
    """(algebra, system) pairs of size <= 6 used across the suite."""
    dmm = FilterSystem.builtin("dmm")
    heyting = FilterSystem.builtin("heyting")
    modal = FilterSystem.builtin("modal")
    out = [(_named(n), dmm) for n in NAMED_ORDER]
    out += [(A, heyting) for A in heyting_examples() if A.size <= 6]
    out += [(complex_algebra(KripkeFrame(1, [], "point", "preorder")), modal),
            (complex_algebra(KripkeFrame(2, [(0, 1)], "chain2", "preorder")), modal),
            (complex_algebra(KripkeFrame(2, [], "antichain2", "preorder")), modal)]
    return out


def criterion_filter_engine() -> CriterionResult:
    lines, ok = [], True
    for A, sys in filter_examples():
        a = filter_lattice(A, sys, "subsets").filters
        b = filter_lattice(A, sys, "principal").filters
        ok &= a == b
        lines.append(f"filters\t{A.name}\t{sys.kind}\tsubsets={len(a)}\tprincipal={len(b)}\tagree={a == b}")
    rules = dmm_rule_system()
    for name in NAMED_ORDER:
        A = _named(name)
        a = filter_lattice(A, FilterSystem.builtin("dmm")).filters
        b = filter_lattice(A, rules).filters
        ok &= a == b
        lines.append(f"filters\t{name}\tdmm-vs-rules\tbuiltin={len(a)}\trules={len(b)}\tagree={a == b}")
    return CriterionResult(9, "filter-engine-self-oracle", ok, tuple(lines))


CRITERIA = {
    1: criterion_main_theorem,
    2: criterion_frink,
    3: criterion_distributive_upgrade,
    4: criterion_named_dmm,
    5: criterion_rt,
    6: criterion_leibniz,
    7: criterion_kc_bridge,
    8: criterion_s42,
    9: criterion_filter_engine,
}


def run_criterion(number: int, jobs: int = 1) -> CriterionResult:
    fn = CRITERIA[number]
    return fn(jobs=jobs) if number in (1, 2, 3, 8) else fn()


def run_suite(jobs: int = 1, max_size: int = 7) -> list[CriterionResult]:
    rows = _lattice_rows(max_size, jobs)
    out = [
        criterion_main_theorem(rows=rows),
        criterion_frink(rows=rows),
        criterion_distributive_upgrade(rows=rows),
    ]
    out += [CRITERIA[k]() for k in (4, 5, 6, 7)]
    out.append(criterion_s42(jobs=jobs))
    out.append(criterion_filter_engine())
    return out


def format_report(results: Sequence[CriterionResult]) -> str:
    lines = []
    for r in results:
        lines.extend(r.lines)
        lines.append(r.status())
    return "\n".join(lines) + "\n"
