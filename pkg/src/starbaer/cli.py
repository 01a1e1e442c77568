"""starbaer command line: classify, verify, spectrum, sheaf, unitify."""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import Context, resolve_ids, run_catalog, summarize, theorem_failures
from .errors import StarRingError, CheckFailure, PreconditionError
from .ideals import DEFAULT_IDEAL_LIMIT, classify
from .ring import DEFAULT_ELEMENT_LIMIT, build_ring, load_ring_spec, spec_to_object
from .sheaf import gelfand_iso_check, section_power_scan, stalks, trajectory_bound
from .projections import gc_remark_conflicts
from .spectrum import (basis_bits, non_star_closed_points, radical, spectrum,
                       spectrum_comparison, topology_report)
from .suite import RING_DIR
from .unitification import build_unitification, embedding_checks, load_action

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SECTION_LIST_LIMIT = 64


class UsageError(Exception):
    pass


def _resolve_path(path):
    """The path itself, or a bundled spec with the same file name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = RING_DIR / p.name
    if p.parent.name == "rings" and bundled.exists():
        return bundled
    return p


def _load(args):
    spec = load_ring_spec(_resolve_path(args.spec))
    return build_ring(spec, args.limit_elements)


def _header(R):
    return {"schemaVersion": SCHEMA_VERSION,
            "tool": {"name": "starbaer", "version": __version__},
            "ring": spec_to_object(R.spec),
            "size": R.size}


def _flags_record(R, limit, witnesses=False):
    f = classify(R, limit)
    rec = f.to_json(R)
    if not witnesses:
        rec.pop("witnesses")
    return rec


def cmd_classify(args):
    R = _load(args)
    out = _header(R)
    out["classification"] = _flags_record(R, args.limit_ideals, witnesses=True)
    # non-central x where GC(x) is not 1 for non-nilpotent x or not 0 for nilpotent x
    conflicts = gc_remark_conflicts(R)
    out["gcShortcutConflicts"] = {"count": len(conflicts),
                                  "examples": [R.encode(x) for x in conflicts[:8]]}
    return out, EXIT_OK


def cmd_verify(args):
    try:
        ids = resolve_ids(args.props)
    except KeyError as exc:
        raise UsageError(f"unknown proposition ID {exc.args[0]!r}") from None
    R = _load(args)
    ctx = Context(R, args.limit_ideals, args.limit_elements)
    results = run_catalog(ctx, ids, args.jobs)
    out = _header(R)
    out["classification"] = _flags_record(R, args.limit_ideals)
    out["limits"] = {"elements": args.limit_elements, "ideals": args.limit_ideals}
    out["results"] = results
    out["summary"] = summarize(results)
    failed = theorem_failures(results)
    out["summary"]["theoremFailures"] = failed
    return out, EXIT_FAIL if failed else EXIT_OK


def cmd_spectrum(args):
    R = _load(args)
    points = spectrum(R, "brute", args.limit_ideals)
    bits = basis_bits(R, points)
    n = len(points)
    _, topo = topology_report(R, args.limit_ideals)
    cmp_ = spectrum_comparison(R, args.limit_ideals)
    out = _header(R)
    out["points"] = [p.render() for p in points]
    out["basis"] = {R.encode(x): [i for i in range(n) if int(bits[x]) >> i & 1] for x in range(R.size)}
    out["comparison"] = cmp_
    out["topology"] = topo
    ok = (cmp_["agree"] and topo["basis"]["covers"] and topo["basis"]["unionOfBasis"]
          and topo["clopen"]["holds"] and topo["hausdorff"]["holds"] and topo["compact"]["holds"])
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_sheaf(args):
    R = _load(args)
    limit = args.limit_ideals
    st = stalks(R, limit)
    out = _header(R)
    out["stalkSizes"] = [s.size for s in st]
    points = spectrum(R, "brute", limit)
    out["radical"] = radical(R, points).render()
    # recorded only; a point that is not star-closed already stops the stalk build
    out["nonStarClosedPoints"] = [points[i].render() for i in non_star_closed_points(R, points)]
    ok = True
    try:
        iso = gelfand_iso_check(R, limit)
        out["gelfand"] = iso
        ok = iso["homomorphism"] and iso["starPreserving"] and iso["surjective"]
        # non-injectivity is the radical finding; anything else is a failure
        if not iso["injective"] and iso["radical"] == [R.encode(R.zero)]:
            ok = False
    except CheckFailure as exc:
        out["gelfand"] = {"error": str(exc), **exc.witness}
        ok = False
    try:
        roots = section_power_scan(R, limit)
        rec = {"sections": len(roots), "trajectoryBound": trajectory_bound(R, limit),
               "maxExponent": max(m for m, _ in roots) if roots else 0}
        if len(roots) <= SECTION_LIST_LIMIT:
            rec["roots"] = [{"m": m, "r": R.encode(r)} for m, r in roots]
        out["sectionPowers"] = rec
    except CheckFailure as exc:
        out["sectionPowers"] = {"error": str(exc), **exc.witness}
        ok = False
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_unitify(args):
    R = _load(args)
    p = args.p if args.p is not None else R.characteristic
    action = None
    if args.action:
        ap, action = load_action(args.action, R)
        if args.p is not None and ap != p:
            raise UsageError(f"--p={p} but the action file is over Z{ap}")
        p = ap
    U = build_unitification(R, p, action, args.limit_elements)
    rec = embedding_checks(U)
    out = _header(R)
    out["p"] = p
    out["baseClassification"] = _flags_record(R, args.limit_ideals)
    out["unitification"] = {"size": U.ring.size,
                            "classification": _flags_record(U.ring, args.limit_ideals)}
    out["checks"] = rec
    ok = (rec["genPqBaerStar"] and rec["starIdeal"] and rec["gcLift"]["holds"]
          and rec["largestCentralStep"]["holds"])
    return out, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"classify": cmd_classify, "verify": cmd_verify, "spectrum": cmd_spectrum,
            "sheaf": cmd_sheaf, "unitify": cmd_unitify}


def build_parser():
    parser = argparse.ArgumentParser(prog="starbaer", description=__doc__)
    parser.add_argument("--version", action="version", version=f"starbaer {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("spec", help="ring spec JSON file")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--limit-elements", type=int, default=DEFAULT_ELEMENT_LIMIT)
        sp.add_argument("--limit-ideals", type=int, default=DEFAULT_IDEAL_LIMIT)
        if name == "verify":
            sp.add_argument("--props", default="all", help="comma separated IDs or 'all'")
            sp.add_argument("--jobs", type=int, default=1)
        if name == "unitify":
            sp.add_argument("--p", type=int, help="scalar prime (default: the characteristic)")
            sp.add_argument("--action", help="action table JSON file")
    return parser


def render(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = COMMANDS[args.command](args)
    except CheckFailure as exc:
        print(f"starbaer {args.command}: check failed: {exc} {json.dumps(exc.witness, sort_keys=True)}",
              file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, PreconditionError, StarRingError) as exc:
        print(f"starbaer {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
