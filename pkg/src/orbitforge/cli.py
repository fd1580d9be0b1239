"""Command-line front end: construct families, print orbit structure,
run claim verifiers, and export Cayley tables.

Exit codes: 0 all claims verified, 1 usage or parameter error, 2 at
least one claim refuted, 3 at least one claim inconclusive or a search
hit its cap."""

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from . import constructions as cons
from . import verify_suite as vs
from .group_engine import export_cayley
from .orbit_machine import brute_force_aut, omega_exact

REPORT_KEYS = ("claim_id", "anchor", "params", "status", "omega",
               "orbit_lengths", "orbit_orders", "subgroup_orders",
               "induced", "witnesses", "wall_ms")


def report_schema():
    """Field-by-field description of the claim report, in emission
    order."""
    return {
        "claim_id": "stable identifier: battery name plus parameters",
        "anchor": "which catalog statement the claim instantiates",
        "params": "parameter map used for the construction",
        "status": "one of verified | refuted | inconclusive",
        "omega": "orbit-count bounds {lower, upper, exact?}; exact "
                 "present exactly when the bounds meet",
        "orbit_lengths": "orbit sizes, ascending then by representative",
        "orbit_orders": "element order of each orbit, same row order",
        "subgroup_orders": "{Z, Gprime, Phi, N}; null where a cap "
                           "blocked the computation or not applicable",
        "induced": "{A_order?, B_order?, A_transitive, B_transitive} "
                   "for the quotient/bottom layer actions",
        "witnesses": "claim-specific evidence; omitted when empty",
        "wall_ms": "wall-clock milliseconds for this claim",
    }


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract here reserves 2 for
    refuted claims, so downgrade usage errors to exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(1)


_FAMILY_PARAMS = {
    "line1": ("p", "n"),
    "line2": ("p", "r", "ell", "d"),
    "suzukiA": ("n", "theta"),
    "suzukiB": ("n", "eps_choice"),
    "dornhoff": (),
    "sl3": ("q",),
    "heisenberg": ("p", "m", "n", "b"),
    "gl3-tower": (),
    "extraspecial2": ("k", "eps"),
}

_PARAM_DEFAULT = {"theta": 1, "eps_choice": 0, "ell": 1, "d": 1}


def _collect_params(args, names):
    got = {}
    for k in names:
        v = getattr(args, k.replace("-", "_"), None)
        if v is not None:
            got[k] = v
        elif k in _PARAM_DEFAULT:
            got[k] = _PARAM_DEFAULT[k]
        else:
            raise ValueError("missing required parameter --%s" % k)
    return got


def _build_family(family, args):
    names = _FAMILY_PARAMS[family]
    prm = _collect_params(args, names)
    if family == "line1":
        return cons.line1_abelian(prm["p"], prm["n"]), prm
    if family == "line2":
        return cons.line2_frobenius(prm["p"], prm["r"], prm["ell"],
                                    prm["d"]), prm
    if family == "suzukiA":
        return cons.suzuki_A(prm["n"], prm["theta"]), prm
    if family == "suzukiB":
        return cons.suzuki_B(prm["n"], prm["eps_choice"]), prm
    if family == "dornhoff":
        return cons.dornhoff_P(), prm
    if family == "sl3":
        from .group_engine import _prime_power
        pk = _prime_power(prm["q"])
        if pk is None:
            raise ValueError("%d is not a prime power" % prm["q"])
        return cons.sl3_pair(pk), prm
    if family == "heisenberg":
        p, m, n, b = prm["p"], prm["m"], prm["n"], prm["b"]
        if b % n or m % b or (m // b) % 2:
            raise ValueError("need n | b | m with m/b even")
        return cons.heisenberg_trace((p, b), (p, n), m // b), prm
    if family == "gl3-tower":
        return cons.gl3_tower((3, 1), (3, 1)), prm
    if family == "extraspecial2":
        return cons.extraspecial2(prm["k"], prm["eps"]), prm
    raise ValueError("unknown family %r" % family)


def _add_common(sp):
    sp.add_argument("--json", action="store_true",
                    help="emit JSON lines instead of human-readable rows")
    sp.add_argument("--cap", type=int, metavar="BYTES", default=None,
                    help="Cayley table memory budget per group "
                         "(default %d bytes, order <= %d)"
                         % (8 * cons.SIZE_CAP ** 2, cons.SIZE_CAP))
    sp.add_argument("--seed", type=int, default=0, metavar="S",
                    help="seed for randomized subroutines (default 0; "
                         "the stock verifiers are deterministic)")


def _add_param_flags(sp, names):
    helptext = {
        "p": "prime", "n": "layer dimension or size index",
        "r": "prime acting order", "q": "field size", "m": "top dimension",
        "b": "middle field degree", "theta": "Galois twist exponent",
        "eps_choice": "norm-form variant index", "ell": "acting power",
        "d": "vector dimension", "k": "field degree", "e": "tower step",
    }
    for k in names:
        if k == "eps":
            sp.add_argument("--eps", choices=("+", "-"),
                            help="quadratic form type")
        else:
            sp.add_argument("--" + k, type=int, help=helptext.get(k, ""))


_ALL_PARAM_FLAGS = ("p", "n", "r", "q", "m", "b", "theta", "eps_choice",
                    "ell", "d", "k", "eps")


def build_parser():
    ap = _Parser(prog="orbitforge",
                 description="construct and verify finite groups with "
                             "few automorphism orbits")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    families = sorted(_FAMILY_PARAMS)
    sp = sub.add_parser("construct", help="build one family instance")
    sp.add_argument("family", choices=families)
    _add_param_flags(sp, _ALL_PARAM_FLAGS)
    sp.add_argument("--export-cayley", metavar="PATH", default=None,
                    help="also write the Cayley table to PATH")
    _add_common(sp)

    sp = sub.add_parser("orbits", help="orbit structure of one instance")
    sp.add_argument("family", choices=families + ["q8-c3c3"])
    _add_param_flags(sp, _ALL_PARAM_FLAGS)
    _add_common(sp)

    sp = sub.add_parser("verify-line", help="three-orbit claim for a "
                                            "catalog line")
    sp.add_argument("line", choices=[str(t) for t in range(1, 8)] + ["all"])
    _add_param_flags(sp, ("p", "n", "r", "q", "m", "b", "theta",
                          "eps_choice"))
    sp.add_argument("--threads", type=int, default=1, metavar="N",
                    help="worker threads for battery runs (default 1)")
    _add_common(sp)

    sp = sub.add_parser("verify-iso", help="explicit isomorphism between "
                                           "the two subfield models "
                                           "(battery unless --q/--d/--e)")
    _add_param_flags(sp, ("q", "d", "e"))
    sp.add_argument("--threads", type=int, default=1, metavar="N")
    _add_common(sp)

    sp = sub.add_parser("verify-irredundant",
                        help="catalog irredundancy checks")
    sp.add_argument("--exhaustive", action="store_true",
                    help="include the order-1024 twist pair")
    _add_common(sp)

    sp = sub.add_parser("verify-4orbit", help="four-orbit claims")
    sp.add_argument("family", choices=["gl3-tower", "extraspecial2",
                                       "line2-frobenius", "q8-c3c3", "all"])
    _add_param_flags(sp, ("q", "k", "eps", "p", "r", "ell", "d"))
    sp.add_argument("--threads", type=int, default=1, metavar="N")
    _add_common(sp)

    sp = sub.add_parser("hering-check", help="transitive linear group "
                                             "certificates")
    sp.add_argument("kind", choices=["gammaL1", "sp", "sl", "sl2-5", "all"])
    _add_param_flags(sp, ("p", "m", "d", "q"))
    sp.add_argument("--threads", type=int, default=1, metavar="N")
    _add_common(sp)

    sp = sub.add_parser("export-cayley", help="write a Cayley table file")
    sp.add_argument("family", choices=families)
    _add_param_flags(sp, _ALL_PARAM_FLAGS)
    sp.add_argument("--out", metavar="PATH", required=True)
    _add_common(sp)

    return ap


def _apply_cap(args):
    cap = getattr(args, "cap", None)
    if cap is not None:
        if cap < 8:
            raise ValueError("--cap must be at least 8 bytes")
        cons.SIZE_CAP = math.isqrt(cap // 8)


def _run_jobs(jobs, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            reports = list(ex.map(vs.run_job, jobs))
    else:
        reports = [vs.run_job(j) for j in jobs]
    return sorted(reports, key=lambda r: r["claim_id"])


def _detail(rep):
    """Compact human-readable summary column for one claim row."""
    om = rep["omega"]
    if om is not None:
        omtxt = str(om["exact"]) if "exact" in om else \
            "%d..%d" % (om["lower"], om["upper"])
        return "omega=%-5s lengths=%s" % (omtxt, rep["orbit_lengths"])
    wit = rep.get("witnesses") or {}
    if "transitive" in wit:
        bits = ["transitive: %s" % str(wit["transitive"]).lower()]
        for k in ("closure_order", "residual_order", "perfect", "order"):
            if k in wit:
                bits.append("%s=%s" % (k, wit[k]))
        return "  ".join(bits)
    if "homomorphism" in wit:
        return "order=%s bijective=%s homomorphism=%s oracle=%s" % (
            wit["order"], wit["bijective"], wit["homomorphism"],
            wit["oracle"])
    if "checks" in wit:
        good = sum(1 for c in wit["checks"] if c["ok"])
        return "checks %d/%d ok" % (good, len(wit["checks"]))
    return "-"


def _emit_reports(reports, as_json, out):
    counts = {"verified": 0, "refuted": 0, "inconclusive": 0}
    for rep in reports:
        counts[rep["status"]] += 1
        if as_json:
            out.write(json.dumps(rep) + "\n")
        else:
            out.write("%-46s %-13s %s  %dms\n"
                      % (rep["claim_id"], rep["status"], _detail(rep),
                         rep["wall_ms"]))
    if not as_json and len(reports) > 1:
        out.write("claims: %d verified, %d refuted, %d inconclusive\n"
                  % (counts["verified"], counts["refuted"],
                     counts["inconclusive"]))
    if counts["refuted"]:
        return 2
    if counts["inconclusive"]:
        return 3
    return 0


def _instance_summary(inst, family, prm):
    return {
        "family": family,
        "params": prm,
        "order": inst.group.n,
        "generators_given": len(inst.acts),
        "meta": vs._py(inst.meta),
    }


def _do_construct(args, out):
    inst, prm = _build_family(args.family, args)
    info = _instance_summary(inst, args.family, prm)
    path = getattr(args, "export_cayley", None)
    if path:
        export_cayley(inst.group, path)
        info["cayley_file"] = path
    if args.json:
        out.write(json.dumps(info) + "\n")
    else:
        name = args.family + (" %s" % prm if prm else "")
        out.write("%s: order %d\n" % (name, inst.group.n))
        if path:
            out.write("wrote %s (%d entries)\n"
                      % (path, inst.group.n ** 2))
    return 0


def _do_orbits(args, out):
    if args.family == "q8-c3c3":
        G = vs.q8_on_c3c3()
        prm = {}
        om = omega_exact(G, brute_force_aut(G), inner=False)
    else:
        inst, prm = _build_family(args.family, args)
        G = inst.group
        om = omega_exact(G, inst.acts, caut=vs._caut_or_none(G))
    info = {
        "family": args.family,
        "params": prm,
        "order": G.n,
        "omega": vs._omega_dict(om),
        "orbit_lengths": om["report"]["lengths"],
        "orbit_orders": om["report"]["orders"],
    }
    if args.json:
        out.write(json.dumps(vs._py(info)) + "\n")
    else:
        name = args.family + (" %s" % prm if prm else "")
        out.write("%s: order %d, omega %s\n" % (name, G.n, info["omega"]))
        out.write("orbit lengths %s, element orders %s\n"
                  % (info["orbit_lengths"], info["orbit_orders"]))
    return 0


def _line_params_from_args(line, args):
    names = {1: ("p", "n"), 2: ("p", "r"), 3: ("n", "theta"),
             4: ("n", "eps_choice"), 5: (), 6: ("q",),
             7: ("p", "m", "n", "b")}[line]
    prm = {}
    for k in names:
        v = getattr(args, k, None)
        if v is not None:
            prm[k] = v
    return prm


def _do_verify_line(args, out):
    if args.line == "all":
        jobs = [("line", line, prm) for line, prm in vs.table_battery()]
    else:
        line = int(args.line)
        jobs = [("line", line, _line_params_from_args(line, args))]
    return _emit_reports(_run_jobs(jobs, args.threads), args.json, out)


def _do_verify_iso(args, out):
    explicit = [getattr(args, k) for k in ("q", "d", "e")]
    if any(v is not None for v in explicit):
        if None in explicit:
            raise ValueError("give all of --q, --d, --e or none")
        jobs = [("gfgf", *explicit)]
    else:
        jobs = [("gfgf", *t) for t in vs.gfgf_battery()]
    return _emit_reports(_run_jobs(jobs, args.threads), args.json, out)


def _do_verify_irredundant(args, out):
    jobs = [("irredundant", bool(args.exhaustive))]
    return _emit_reports(_run_jobs(jobs, 1), args.json, out)


def _do_verify_4orbit(args, out):
    if args.family == "all":
        jobs = [("four", fam, prm) for fam, prm in vs.four_orbit_battery()]
    else:
        prm = {k: getattr(args, k) for k in
               ("q", "k", "eps", "p", "r", "ell", "d")
               if getattr(args, k, None) is not None}
        jobs = [("four", args.family, prm)]
    return _emit_reports(_run_jobs(jobs, args.threads), args.json, out)


def _do_hering(args, out):
    if args.kind == "all":
        jobs = [("hering", kind, prm) for kind, prm in vs.hering_battery()]
    else:
        need = {"gammaL1": ("p", "m"), "sp": ("d", "q"), "sl": ("d", "q"),
                "sl2-5": ("p",)}[args.kind]
        prm = {}
        for k in need:
            v = getattr(args, k, None)
            if v is None:
                raise ValueError("%s needs --%s" % (args.kind, k))
            prm[k] = v
        jobs = [("hering", args.kind, prm)]
    return _emit_reports(_run_jobs(jobs, args.threads), args.json, out)


def _do_export(args, out):
    inst, prm = _build_family(args.family, args)
    export_cayley(inst.group, args.out)
    if args.json:
        out.write(json.dumps({"family": args.family, "params": prm,
                              "order": inst.group.n,
                              "cayley_file": args.out}) + "\n")
    else:
        out.write("wrote %s: order %d\n" % (args.out, inst.group.n))
    return 0


_HANDLERS = {
    "construct": _do_construct,
    "orbits": _do_orbits,
    "verify-line": _do_verify_line,
    "verify-iso": _do_verify_iso,
    "verify-irredundant": _do_verify_irredundant,
    "verify-4orbit": _do_verify_4orbit,
    "hering-check": _do_hering,
    "export-cayley": _do_export,
}


def run(argv, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        _apply_cap(args)
        return _HANDLERS[args.verb](args, out)
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except RuntimeError as exc:
        sys.stderr.write("inconclusive: %s\n" % exc)
        return 3


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
