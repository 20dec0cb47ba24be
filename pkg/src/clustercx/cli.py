"""Command-line front end.

Every subcommand prints a short human summary by default, or a canonical
machine-readable RunReport with ``--json`` (timing excluded so identical
inputs give byte-identical output).  Exit codes: 0 success, 1 a checked
relation failed (witness included), 2 usage error.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import barcx, indexcalc, labelings, signs, strata, trees
from .errors import ClusterCxError


def _report(args, verdict, data, counterexample=None, started=None):
    obj = {
        "command": args._command_echo,
        "verdict": verdict,
        "data": data,
    }
    if counterexample is not None:
        obj["counterexample"] = counterexample
    if getattr(args, "seed", None) is not None:
        obj["seed"] = args.seed
    if args.json:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        if started is not None:
            obj["timing_s"] = round(time.time() - started, 3)
        print(json.dumps(obj, sort_keys=True, indent=2))
    return 0 if verdict == "pass" else 1


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _window(args):
    return barcx.TruncationWindow(
        qmax=args.qmax, emax=args.emax, lmax=args.lmax
    )


def _add_window_flags(p):
    p.add_argument("--qmax", type=int, default=5)
    p.add_argument("--emax", type=int, default=8)
    p.add_argument("--lmax", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)


def _cluster_type_from_obj(obj):
    tree = trees.from_obj(obj["tree"])
    fam = obj.get("family", "K")
    stratum = strata.Stratum(fam, tree)
    states = {
        labelings.edge_from_id(e): s
        for e, s in obj.get("edge_states", {}).items()
    }
    for e in tree.edges():
        states.setdefault(e, "line")
    return strata.ClusterType(
        stratum, states, n_complex_nodes=obj.get("complex_nodes", 0)
    )


# -- subcommand bodies -------------------------------------------------------


def _cmd_strata(args):
    prof = strata.grading_profile(args.family, args.l, args.k)
    data = {
        "family": args.family,
        "l": args.l,
        "k": args.k,
        "by_codim_dim": [
            {"codim": cd, "dim": dm, "count": n}
            for (cd, dm), n in sorted(prof.items())
        ],
        "total": sum(prof.values()),
    }
    return _report(args, "pass", data)


def _cmd_fvector(args):
    fv = strata.f_vector(args.family, args.l, args.k)
    if args.json:
        return _report(args, "pass", {"f_vector": list(fv)})
    print(" ".join(str(x) for x in fv))
    return 0


def _cmd_export(args):
    poset = strata.face_poset(args.family, args.l, args.k)
    text = strata.export_poset(poset, fmt=args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        return _report(args, "pass", {"written": args.output})
    print(text)
    return 0


def _cmd_collar(args):
    cells, gluings = strata.collar_cells(args.l, args.k)
    return _report(
        args, "pass", {"cells": len(cells), "gluings": len(gluings)}
    )


def _cmd_tiles(args):
    tc = strata.tile_complex(args.l, args.k)
    consistent = strata.orientation_consistency(tc)
    by_kind = {}
    for tag, _, _ in tc.identifications:
        by_kind[tag] = by_kind.get(tag, 0) + 1
    data = {
        "tiles": tc.n_tiles,
        "identified_pairs": by_kind,
        "orientation_consistent": consistent,
    }
    return _report(args, "pass" if consistent else "fail", data)


def _cmd_sign(args):
    if args.kind == "concat":
        val = signs.sign_concat(args.l1, args.j, args.l2)
    elif args.kind == "lower":
        val = signs.sign_lower_quilt(args.l1, args.j, args.l2)
    elif args.kind == "upper":
        parts = [int(x) for x in args.parts.split(",")]
        val = signs.sign_upper_quilt(parts)
    else:
        perm = [int(x) for x in args.perm.split(",")]
        val = signs.sign_bullet(args.l1, args.j, args.l2, perm)
    if args.json:
        return _report(args, "pass", {"sign": val})
    print(str(val))
    return 0


def _cmd_chart(args):
    obj = _load_json(args.file)
    tree = trees.from_obj(obj["tree"])
    if args.invert:
        lab = labelings.labeling_from_obj(tree, obj["labels"])
        disk = labelings.chart_inverse(lab)
        out = {
            "xs": [str(x) for x in disk.xs],
            "zs": [[str(a), str(b)] for a, b in disk.zs],
            "seam": None if disk.seam is None else str(disk.seam),
        }
        return _report(args, "pass", out)
    disk = labelings.MarkedDisk(
        [Fraction(x) for x in obj.get("xs", [])],
        [(Fraction(a), Fraction(b)) for a, b in obj.get("zs", [])],
        seam=None if obj.get("seam") is None else Fraction(obj["seam"]),
    )
    lab = labelings.simple_ratio_chart(disk, tree)
    return _report(
        args,
        "pass",
        {"tree": obj["tree"], "labels": labelings.labeling_to_obj(lab)},
    )


def _cmd_chi(args):
    obj = _load_json(args.file)
    tree = trees.from_obj(obj["tree"])
    lab = labelings.labeling_from_obj(tree, obj["labels"])
    eps = Fraction(args.eps)
    if args.quilted:
        out = labelings.chi_quilted(lab, eps)
    else:
        out = labelings.chi_unquilted(lab, eps)
    return _report(
        args,
        "pass",
        {"tree": obj["tree"], "labels": labelings.labeling_to_obj(out, eps=eps)},
    )


def _finish_check(args, report, started):
    data = {
        "check": report.check,
        "window": report.window.to_obj(),
        "words_checked": report.n_words,
    }
    witness = None
    if not report.passed:
        witness = report.to_obj()["failures"][:3]
    return _report(
        args,
        "pass" if report.passed else "fail",
        data,
        counterexample=witness,
        started=started,
    )


def _cmd_check_ainf(args):
    started = time.time()
    fam = barcx.family_from_obj(_load_json(args.file), role="m")
    report = barcx.check_a_infinity(
        fam, _window(args), jobs=args.jobs, via_suspension=args.suspended
    )
    return _finish_check(args, report, started)


def _cmd_check_morphism(args):
    started = time.time()
    h = barcx.family_from_obj(_load_json(args.morphism), role="h")
    m0 = barcx.family_from_obj(_load_json(args.target), role="m")
    m1 = barcx.family_from_obj(_load_json(args.source), role="m")
    report = barcx.check_chain_map(h, m0, m1, _window(args), jobs=args.jobs)
    return _finish_check(args, report, started)


def _cmd_check_homotopy(args):
    started = time.time()
    h0 = barcx.family_from_obj(_load_json(args.h0), role="h")
    h1 = barcx.family_from_obj(_load_json(args.h1), role="h")
    kf = barcx.family_from_obj(_load_json(args.homotopy), role="k")
    m0 = barcx.family_from_obj(_load_json(args.target), role="m")
    m1 = barcx.family_from_obj(_load_json(args.source), role="m")
    report = barcx.check_homotopy(
        h0, h1, kf, m0, m1, _window(args), jobs=args.jobs
    )
    return _finish_check(args, report, started)


def _cmd_index(args):
    obj = _load_json(args.file)
    ct = _cluster_type_from_obj(obj)
    ec = indexcalc.EndpointCondition(
        obj["mu_root"], obj["mu_leaves"], n=obj.get("n", 2)
    )
    muF = indexcalc.BoundaryConditionIndex(
        obj.get("maslov", []),
        NL=obj.get("NL", 2),
        monotone=obj.get("monotone", False),
    )
    val = indexcalc.index_cr(
        ct,
        ec,
        muF,
        n=obj.get("n", 2),
        interior_incidences=obj.get("interior_incidences", 0),
    )
    if args.json:
        return _report(args, "pass", {"index": val})
    print(val)
    return 0


def _surgery_record(args, obj):
    tree = trees.from_obj(obj["tree"])
    spec = json.loads(args.surgery)
    return indexcalc.reduce(tree, spec), spec


def _cmd_reduce(args):
    rec, spec = _surgery_record(args, _load_json(args.file))
    data = {
        "tag": rec.tag,
        "after": trees.to_obj(rec.after),
        "removed_marks": rec.removed_marks,
    }
    return _report(args, "pass", data)


def _cmd_audit(args):
    rec, spec = _surgery_record(args, _load_json(args.file))
    rep = indexcalc.reduction_index_audit(
        rec, args.assumed_index, n=args.n, NL=args.NL
    )
    return _report(args, "pass", rep)


def _cmd_labelings(args):
    fam = "otimes" if args.family in ("otimes", "x") else "bullet"
    labs = indexcalc.enumerate_end_labelings(args.l, args.c, fam)
    data = {
        "count": len(labs),
        "labelings": sorted(list(x) for x in labs),
    }
    return _report(args, "pass", data)


# -- parser ------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="clustercx",
        description="Exact combinatorics of cluster moduli strata, "
        "signs, and bar-complex algebra.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine report")
    common.add_argument("--seed", type=int, default=None)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def fam_lk(q, fam=True):
        if fam:
            q.add_argument("--family", default="K", choices=["K", "Q", "Ks"])
        q.add_argument("--l", type=int, required=True)
        q.add_argument("--k", type=int, default=0)

    q = add_parser("strata", help="stratum counts by (codim, dim)")
    fam_lk(q)
    q.set_defaults(fn=_cmd_strata)

    q = add_parser("fvector", help="faces by ascending dimension")
    fam_lk(q)
    q.set_defaults(fn=_cmd_fvector)

    q = add_parser("export", help="face poset as json or dot")
    fam_lk(q)
    q.add_argument("--format", default="json", choices=["json", "dot"])
    q.add_argument("--output", default=None)
    q.set_defaults(fn=_cmd_export)

    q = add_parser("collar", help="collar cells and gluings")
    fam_lk(q, fam=False)
    q.set_defaults(fn=_cmd_collar)

    q = add_parser("tiles", help="quotient tile complex")
    fam_lk(q, fam=False)
    q.set_defaults(fn=_cmd_tiles)

    q = add_parser("sign", help="orientation sign formulas")
    q.add_argument("kind", choices=["concat", "lower", "upper", "bullet"])
    q.add_argument("--l1", type=int, default=0)
    q.add_argument("--j", type=int, default=1)
    q.add_argument("--l2", type=int, default=0)
    q.add_argument("--parts", default="", help="comma list for upper")
    q.add_argument("--perm", default="", help="comma list for bullet")
    q.set_defaults(fn=_cmd_sign)

    q = add_parser("chart", help="simple-ratio chart of a marked disk")
    q.add_argument("file")
    q.add_argument("--invert", action="store_true")
    q.set_defaults(fn=_cmd_chart)

    q = add_parser("chi", help="collar smoothing map on a labeling")
    q.add_argument("file")
    q.add_argument("--eps", default="1/2")
    q.add_argument("--quilted", action="store_true")
    q.set_defaults(fn=_cmd_chi)

    q = add_parser("check-ainf", help="delta squared on a family file")
    q.add_argument("file")
    q.add_argument("--suspended", action="store_true")
    _add_window_flags(q)
    q.set_defaults(fn=_cmd_check_ainf)

    q = add_parser("check-morphism", help="chain-map relation")
    q.add_argument("--morphism", required=True)
    q.add_argument("--source", required=True)
    q.add_argument("--target", required=True)
    _add_window_flags(q)
    q.set_defaults(fn=_cmd_check_morphism)

    q = add_parser("check-homotopy", help="homotopy relation")
    q.add_argument("--h0", required=True)
    q.add_argument("--h1", required=True)
    q.add_argument("--homotopy", required=True)
    q.add_argument("--source", required=True)
    q.add_argument("--target", required=True)
    _add_window_flags(q)
    q.set_defaults(fn=_cmd_check_homotopy)

    q = add_parser("index", help="linearized operator index")
    q.add_argument("file")
    q.set_defaults(fn=_cmd_index)

    q = add_parser("reduce", help="apply a reduction surgery")
    q.add_argument("file")
    q.add_argument("--surgery", required=True, help="json spec")
    q.set_defaults(fn=_cmd_reduce)

    q = add_parser("audit", help="reduction index-drop inequalities")
    q.add_argument("file")
    q.add_argument("--surgery", required=True, help="json spec")
    q.add_argument("--assumed-index", type=int, required=True)
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--NL", type=int, default=2)
    q.set_defaults(fn=_cmd_audit)

    q = add_parser("labelings", help="enumerate end labelings")
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--family", default="otimes", choices=["otimes", "bullet"])
    q.set_defaults(fn=_cmd_labelings)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0,) else 0
    args._command_echo = " ".join(argv if argv is not None else sys.argv[1:])
    try:
        return args.fn(args)
    except ClusterCxError as e:
        msg = {"verdict": "fail", "error": type(e).__name__, "detail": str(e)}
        print(json.dumps(msg, sort_keys=True))
        return 1
    except (OSError, ValueError, KeyError) as e:
        print("usage error: %s" % (e,), file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
