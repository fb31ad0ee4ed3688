"""Command-line front end.

Exit status: 0 when every check passed, 1 when a check failed (the report
carries a witness), 2 on usage or parse errors. Reports are tab-separated
and deterministic.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import formats
from .algebra import FiniteAlgebra, has_trivial_subalgebra
from .config import DEFAULT_MAX_LATTICE, CapExceeded
from .congruence import classify_identity, congruence_lattice, greatest_proper_congruence, is_reduced_matrix, leibniz_congruence
from .demorgan import (
    expand_dmm,
    filter_congruence_iso_check,
    named,
    rt_il_weml_check,
    structure_flags,
    validate_dmm,
)
from .enumeration import bruteforce_lattice_classes, enumerate_lattices
from .filters import (
    FilterSystem,
    dmm_il_sequence,
    filter_lattice,
    heyting_il_sequence,
    s4_il_sequence,
    verify_il_sequence,
    weml_eml_on_filters,
)
from .heyting import kc_bridge_report, kc_holds, upset_algebra
from .modal import complex_algebra, frame_properties, modal_condition_report, modal_term, TermKind, valid_in_class
from .order import (
    Property,
    is_dpc,
    lattice_from_order,
    semilattice_property,
    theorem_conditions,
)
from .suite import format_report, lattice_size_summary, pmap, run_suite

USAGE_ERRORS = (formats.FormatError, CapExceeded, ValueError, KeyError, OSError)


class Report:
    def __init__(self):
        self.lines: list[str] = []
        self.failed = False

    def add(self, *fields) -> None:
        self.lines.append("\t".join(str(f) for f in fields))

    def check(self, ok: bool, *fields) -> None:
        self.failed |= not ok
        self.add(*fields, "ok" if ok else "FAIL")


def _dash(x) -> str:
    return "-" if x is None else str(x)


def _fmt_set(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


# -- loading ---------------------------------------------------------------

def _algebra(args) -> FiniteAlgebra:
    if getattr(args, "named", None):
        return named(args.named)
    if getattr(args, "algebra", None):
        return formats.read_algebra(args.algebra)
    if getattr(args, "poset", None):
        name, p = formats.read_poset(args.poset)
        return upset_algebra(p, name)
    if getattr(args, "frame", None):
        return complex_algebra(formats.read_frame(args.frame[0] if isinstance(args.frame, list) else args.frame))
    raise ValueError("supply --algebra, --named, --poset or --frame")


def _default_kind(A: FiniteAlgebra) -> str:
    if "fuse" in A.signature:
        return "dmm"
    if "box" in A.signature:
        return "modal"
    if "arrow" in A.signature:
        return "heyting"
    raise ValueError("cannot infer a filter system for this signature; pass --system")


def _system(args, A: FiniteAlgebra) -> FilterSystem:
    if getattr(args, "system", None):
        return formats.read_system(args.system)
    return FilterSystem.builtin(getattr(args, "kind", None) or _default_kind(A))


def _psi(args, system: FilterSystem):
    if getattr(args, "psi", None):
        return formats.read_psi(args.psi)
    defaults = {"dmm": dmm_il_sequence, "heyting": heyting_il_sequence, "modal": s4_il_sequence}
    if system.kind not in defaults:
        raise ValueError("rule systems need an explicit --psi file")
    return defaults[system.kind]()


def _dmm_ready(A: FiniteAlgebra) -> FiniteAlgebra:
    return expand_dmm(A) if "fuse" in A.signature else A


# -- lattice ---------------------------------------------------------------

def cmd_lattice_check(args, out: Report) -> None:
    name, p = formats.read_poset(args.path)
    L = lattice_from_order(p, name)
    dpc = semilattice_property(L, Property.DPC)
    out.add(name, "DPC", dpc.holds, _dash(dpc.witness))
    if not dpc:
        return
    for prop in list(Property)[1:]:
        r = semilattice_property(L, prop)
        out.add(name, prop.value, r.holds, _dash(r.witness))
    for which in ("MAIN", "EML"):
        tc = theorem_conditions(L, which)
        conds = " ".join(f"{k}={v}" for k, v in tc.conditions.items())
        out.check(tc.agreement, name, which, conds)


def cmd_lattice_theorem(args, out: Report) -> None:
    rows = pmap(lattice_size_summary, range(1, args.max_size + 1), args.jobs)
    which = args.which.upper()
    for r in rows:
        agree = {"MAIN": r["main_agree"], "EML": r["eml_agree"]}
        selected = ["MAIN", "EML"] if which == "BOTH" else [which]
        ok = all(agree[w] == r["dpc"] for w in selected)
        counts = "\t".join(f"{w.lower()}_agree={agree[w]}" for w in selected)
        out.check(ok, "size", r["n"], f"lattices={r['lattices']}", f"dpc={r['dpc']}", counts,
                  f"disagreements={','.join(r['disagreements']) or '-'}")


def cmd_lattice_enumerate(args, out: Report) -> None:
    for n in range(1, args.max_size + 1):
        count = sum(1 for _ in enumerate_lattices(n, cap=max(args.max_size, DEFAULT_MAX_LATTICE)))
        if args.oracle and n <= 6:
            oracle = len(bruteforce_lattice_classes(n)[2])
            out.check(oracle == count, "size", n, f"lattices={count}", f"oracle={oracle}")
        else:
            out.add("size", n, f"lattices={count}")
        if args.list:
            for L in enumerate_lattices(n):
                out.add("lattice", L.name, " ".join(f"{a}<{b}" for a, b in L.poset.covers()), f"dpc={is_dpc(L)}")


# -- algebra ---------------------------------------------------------------

def cmd_algebra_validate(args, out: Report) -> None:
    A = _algebra(args)
    sig = " ".join(f"{s}/{k}" for s, k in A.signature)
    out.add(A.name, f"size={A.size}", f"signature={sig}", f"trivial_subalgebra={_dash(has_trivial_subalgebra(A))}")
    if "fuse" in A.signature:
        rep = validate_dmm(A)
        for law, w in rep.results.items():
            out.check(w is None, A.name, law, _dash(w))
        if rep.ok:
            fl = structure_flags(A)
            for k, v in vars(fl).items():
                out.add(A.name, k, _dash(v))


def cmd_algebra_congruences(args, out: Report) -> None:
    A = _algebra(args)
    clr = congruence_lattice(A)
    for theta in clr.congruences:
        out.add(A.name, "congruence", theta)
    gp = greatest_proper_congruence(clr)
    out.add(A.name, classify_identity(clr), _dash(gp))


def cmd_algebra_leibniz(args, out: Report) -> None:
    A = _algebra(args)
    F = _parse_elements(args.filter, A)
    omega = leibniz_congruence(A, F)
    out.add(A.name, _fmt_set(F), omega, f"reduced={is_reduced_matrix(A, F)}")


def _parse_elements(text: str, A: FiniteAlgebra) -> list[int]:
    if text is None:
        raise ValueError("--filter is required")
    items = [t for t in text.replace("{", "").replace("}", "").split(",") if t.strip()]
    out = []
    for t in items:
        t = t.strip()
        out.append(int(t) if t.isdigit() else A.element(t))
    return out


# -- filters ---------------------------------------------------------------

def cmd_filters_lattice(args, out: Report) -> None:
    A = _algebra(args)
    sys_ = _system(args, A)
    a = filter_lattice(A, sys_, "subsets")
    b = filter_lattice(A, sys_, "principal")
    for F in a.filters:
        out.add(A.name, sys_.name or sys_.kind, "filter", _fmt_set(F))
    out.check(a.filters == b.filters, A.name, "subsets-vs-principal", f"count={len(a.filters)}")
    out.add(A.name, "provenance", sys_.provenance)


def cmd_filters_il_verify(args, out: Report) -> None:
    A = _dmm_ready(_algebra(args))
    sys_ = _system(args, A)
    res = verify_il_sequence(A, sys_, _psi(args, sys_), args.nmax)
    out.check(res.ok, A.name, "il", f"nmax={args.nmax}", f"checked={res.checked}", f"witness={_dash(res.witness)}", res.detail or "-")


def cmd_filters_weml(args, out: Report) -> None:
    A = _algebra(args)
    sys_ = _system(args, A)
    r = weml_eml_on_filters(A, sys_)
    out.add(A.name, "DPC", r.dpc, _dash(r.witnesses.get("DPC")))
    out.add(A.name, "WEML_ID", _dash(r.weml_id), _dash(r.witnesses.get("WEML_ID")))
    out.add(A.name, "EML_ID", _dash(r.eml_id), _dash(r.witnesses.get("EML_ID")))
    out.add(A.name, "distributive", r.distributive, _dash(r.witnesses.get("distributive")))


# -- heyting ---------------------------------------------------------------

def _heyting_inputs(args) -> list[FiniteAlgebra]:
    algebras = []
    for path in args.poset or []:
        name, p = formats.read_poset(path)
        algebras.append(upset_algebra(p, name))
    for path in args.algebra or []:
        algebras.append(formats.read_algebra(path))
    if not algebras:
        raise ValueError("supply --poset or --algebra")
    return algebras


def cmd_heyting_kc(args, out: Report) -> None:
    for H in _heyting_inputs(args):
        kc = kc_holds(H)
        weml = weml_eml_on_filters(H, FilterSystem.builtin("heyting")).weml_id
        w = "-" if kc.witness is None else f"a={H.label(kc.witness[0])} value={H.label(kc.witness[1])}"
        out.check(bool(kc) == bool(weml), H.name, f"kc={kc.holds}", w, f"filter_weml={weml}")


def cmd_heyting_bridge(args, out: Report) -> None:
    rep = kc_bridge_report(_heyting_inputs(args))
    for e in rep.entries:
        out.add(e.name, f"kc={e.kc}", e.classification, f"si={e.si}", f"greatest_proper={e.greatest_proper_exists}")
    out.check(rep.consistent, "bridge", rep.wording)


# -- modal -----------------------------------------------------------------

def cmd_modal_report(args, out: Report) -> None:
    frames = [formats.read_frame(p) for p in args.frame]
    algebras = [complex_algebra(f) for f in frames]
    r = modal_condition_report(algebras, args.nmax)
    names = ",".join(f.name for f in frames)
    out.add(names, f"il_n={_dash(r.il_n)}", f"weml={_dash(r.weml_at_n)}", f"s4={r.s4}", f"convergence={r.convergence}")
    if r.weml_witness:
        m, alg, asg = r.weml_witness
        out.add(names, "weml_witness", f"m={m}", alg, " ".join(f"v{k}={algebras[0].label(v) if len(algebras) == 1 else v}" for k, v in sorted(asg.items())))
    out.check(r.cross_check is not False, names, f"cross_check={_dash(r.cross_check)}", r.note)


def cmd_modal_frame(args, out: Report) -> None:
    for path in args.frame:
        fr = formats.read_frame(path)
        props = frame_properties(fr)
        out.add(fr.name, f"reflexive={props.reflexive}", f"transitive={props.transitive}",
                f"up_directed={props.up_directed}", f"witness={_dash(props.up_directed_witness)}")
        if props.reflexive and props.transitive:
            conv = valid_in_class([complex_algebra(fr)], modal_term(TermKind.CONVERGENCE))
            out.check(conv.valid == props.up_directed, fr.name, f"convergence={conv.valid}")


# -- dmm -------------------------------------------------------------------

def cmd_dmm_verify(args, out: Report) -> None:
    A = _algebra(args)
    rep = validate_dmm(A)
    out.check(rep.ok, A.name, "axioms", " ".join(f"{k}={v}" for k, v in sorted(rep.failures().items())) or "-")
    if not rep.ok:
        return
    A = expand_dmm(A)
    iso = filter_congruence_iso_check(A)
    out.check(iso.ok, A.name, "filter-congruence-iso", iso.detail or "-")
    if args.il or args.weml:
        r = rt_il_weml_check(A, args.nmax)
        if args.il:
            out.check(r.il_ok, A.name, "il_ok", r.detail["il"])
            out.check(r.least_is_fmeet, A.name, "least_is_fmeet", f"f∧¬f²={r.detail['f_meet_neg_f2']}")
        if args.weml:
            out.check(bool(r.weml_id), A.name, "weml_id")
            out.check(r.greatest_proper_when_fsi, A.name, "greatest_proper_when_fsi", r.detail["classification"])
        out.add(A.name, "note", r.note)


def cmd_dmm_export(args, out: Report) -> None:
    out.lines.extend(formats.write_algebra(named(args.named)).rstrip("\n").split("\n"))


# -- suite -----------------------------------------------------------------

def cmd_suite(args, out: Report) -> None:
    results = run_suite(jobs=args.jobs, max_size=args.max_size)
    out.lines.extend(format_report(results).rstrip("\n").split("\n"))
    out.failed = not all(r.passed for r in results)


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aal", description="finite-model checks for inconsistency lemmas and excluded-middle laws")
    top = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, fn, help_):
        p = group.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    def algebra_source(p, frames=False):
        p.add_argument("--algebra", metavar="PATH")
        p.add_argument("--named", metavar="NAME", choices=["B2", "S3", "C4", "D4"])
        p.add_argument("--poset", metavar="PATH", help="use the up-set Heyting algebra of this poset")
        if frames:
            p.add_argument("--frame", metavar="PATH", help="use the complex algebra of this frame")

    lat = top.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    p = sub(lat, "check", cmd_lattice_check, "properties and theorem conditions of one lattice")
    p.add_argument("path", help="poset file whose order is a lattice")
    p = sub(lat, "theorem", cmd_lattice_theorem, "theorem conditions over all small lattices")
    p.add_argument("--which", choices=["main", "eml", "both"], default="both")
    p.add_argument("--max-size", type=int, default=7)
    p.add_argument("--jobs", type=int, default=1)
    p = sub(lat, "enumerate", cmd_lattice_enumerate, "count lattices up to isomorphism")
    p.add_argument("--max-size", type=int, default=7)
    p.add_argument("--oracle", action="store_true", help="cross-check counts by brute force for n <= 6")
    p.add_argument("--list", action="store_true")

    alg = top.add_parser("algebra").add_subparsers(dest="cmd", required=True)
    p = sub(alg, "validate", cmd_algebra_validate, "load an algebra and check its axioms")
    algebra_source(p, frames=True)
    p = sub(alg, "congruences", cmd_algebra_congruences, "congruence lattice and classification")
    algebra_source(p, frames=True)
    p = sub(alg, "leibniz", cmd_algebra_leibniz, "Leibniz congruence of a subset")
    algebra_source(p, frames=True)
    p.add_argument("--filter", required=True, help="comma-separated elements or labels")

    fil = top.add_parser("filters").add_subparsers(dest="cmd", required=True)
    for name, fn, help_ in (
        ("lattice", cmd_filters_lattice, "all filters, with the two constructions cross-checked"),
        ("il-verify", cmd_filters_il_verify, "verify an IL-sequence"),
        ("weml", cmd_filters_weml, "WEML and EML identities on the filter lattice"),
    ):
        p = sub(fil, name, fn, help_)
        algebra_source(p, frames=True)
        p.add_argument("--system", metavar="PATH")
        p.add_argument("--kind", choices=["heyting", "modal", "dmm"])
        if name == "il-verify":
            p.add_argument("--psi", metavar="PATH")
            p.add_argument("--nmax", type=int, default=2)

    hey = top.add_parser("heyting").add_subparsers(dest="cmd", required=True)
    for name, fn, help_ in (("kc", cmd_heyting_kc, "weak excluded middle"), ("bridge", cmd_heyting_bridge, "KC versus greatest proper congruences")):
        p = sub(hey, name, fn, help_)
        p.add_argument("--poset", metavar="PATH", action="append")
        p.add_argument("--algebra", metavar="PATH", action="append")

    mod = top.add_parser("modal").add_subparsers(dest="cmd", required=True)
    p = sub(mod, "report", cmd_modal_report, "IL index, WEML condition and convergence for a class of frames")
    p.add_argument("--frame", metavar="PATH", action="append", required=True)
    p.add_argument("--nmax", type=int, default=2)
    p = sub(mod, "frame", cmd_modal_frame, "frame properties and the convergence correspondence")
    p.add_argument("--frame", metavar="PATH", action="append", required=True)

    dmm = top.add_parser("dmm").add_subparsers(dest="cmd", required=True)
    p = sub(dmm, "verify", cmd_dmm_verify, "axioms, filter/congruence isomorphism and IL/WEML flags")
    algebra_source(p)
    p.add_argument("--il", action="store_true")
    p.add_argument("--weml", action="store_true")
    p.add_argument("--nmax", type=int, default=2)
    p = sub(dmm, "export", cmd_dmm_export, "write a named algebra in the algebra file format")
    p.add_argument("--named", required=True, choices=["B2", "S3", "C4", "D4"])

    p = top.add_parser("suite", help="run every acceptance check")
    p.set_defaults(fn=cmd_suite)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-size", type=int, default=7)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and on bad usage
        return exc.code if isinstance(exc.code, int) else 2
    out = Report()
    try:
        args.fn(args, out)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write("\n".join(out.lines) + ("\n" if out.lines else ""))
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
