"""Command-line front end.

Exit codes: 0 success, 1 mathematical rejection of the input, 2 internal
consistency failure, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field

from . import extensions as ext
from .bicomplex import BicomplexIdentityFailure, TotalizationSignFailure
from .homology import (
    CohomologyReport,
    ComparisonVerdict,
    TruncationTooSmall,
    compare,
    hochschild_over_A,
    hochschild_over_K,
    shukla_cohomology,
)
from .library import (
    BadParams,
    UnknownBuiltin,
    base_field,
    builtin,
    builtin_notes,
    character_bimodule,
    quotient_k,
    regular_algebra,
    regular_bimodule,
    trivial_lie_module,
)
from .lie import ImageNotAlternating, lie_cohomology, lie_compare
from .linalg import SizeCapExceeded
from .presentations import ShapeError, ValidationFailure, from_json, to_json, validate
from .scalars import FieldSpec, ScalarParseError

EXIT_OK, EXIT_REJECT, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class Rejected(Exception):
    """The input is well formed but mathematically invalid."""


@dataclass
class RunConfig:
    command: str
    field: FieldSpec
    N: int = 4
    cap: int = 5_000_000
    inputs: list = dc_field(default_factory=list)
    fmt: str = "table"
    seed: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise UsageError("--n must be >= 1")
        if self.cap < 1000:
            raise UsageError("--cap must be >= 1000")
        if self.fmt not in ("table", "json"):
            raise UsageError("--format must be table or json")


# ---------------------------------------------------------------------------
# input resolution

COMPONENT_REFS = {
    "A": ("base_field",),
    "R": ("quotient_k", "regular"),
    "M": ("trivial_module", "regular_module"),
}


def _parse_ref(ref):
    body = ref[len("builtin:"):]
    name, *params = body.split(":")
    try:
        return name, [int(x) for x in params]
    except ValueError:
        raise UsageError(f"bad builtin parameters in {ref!r}") from None


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise Rejected(f"{path}: invalid JSON ({e})") from None


def _bundle(name, params, cfg):
    try:
        return builtin(name, cfg.field, params)
    except UnknownBuiltin:
        raise UsageError(f"unknown builtin {name!r} (see `builtin list`)") from None
    except BadParams as e:
        raise UsageError(str(e)) from None


def resolve(ref, slot, cfg, A=None, R=None, lie=False):
    """A presentation for ``slot`` (A, R/L or M) from a file path or builtin reference."""
    if ref.startswith("builtin:"):
        name, params = _parse_ref(ref)
        if slot == "A" and name == "base_field":
            return base_field(cfg.field)
        if slot == "R" and not lie and name in COMPONENT_REFS["R"]:
            return quotient_k(A) if name == "quotient_k" else regular_algebra(A)
        if slot == "M" and name in COMPONENT_REFS["M"]:
            if lie:
                if name != "trivial_module":
                    raise UsageError("only trivial_module is available as a Lie module reference")
                return trivial_lie_module(A, R)
            return character_bimodule(R) if name == "trivial_module" else regular_bimodule(R)
        b = _bundle(name, params, cfg)
        if lie != b.is_lie and slot != "A":
            raise UsageError(f"builtin {name!r} is {'a Lie' if b.is_lie else 'an associative'} bundle")
        pres = {"A": b.A, "R": b.L if lie else b.R, "M": b.M}[slot]
        return pres
    obj = _load_json(ref)
    expect = {"A": "commutative", "R": "lie" if lie else "associative", "M": "lie_module" if lie else "bimodule"}[slot]
    try:
        return from_json(obj, expect, cfg.field, A)
    except (KeyError, TypeError) as e:
        raise Rejected(f"{ref}: malformed presentation ({e})") from None


def resolve_triple(refs, cfg, lie=False):
    if len(refs) != 3:
        raise UsageError("expected three inputs: A R M" if not lie else "expected three inputs: A L M")
    A = resolve(refs[0], "A", cfg, lie=lie)
    R = resolve(refs[1], "R", cfg, A=A, lie=lie)
    M = resolve(refs[2], "M", cfg, A=A, R=R, lie=lie)
    return A, R, M


# ---------------------------------------------------------------------------
# rendering


def _table(headers, rows):
    cells = [list(map(str, headers))] + [[("" if c is None else str(c)) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    numeric = [all(r[i].lstrip("-").isdigit() or r[i] in ("", "?") for r in cells[1:]) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) if num else c.ljust(w) for c, w, num in zip(r, widths, numeric)).rstrip()
             for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_report(report, fmt="table") -> str:
    if fmt == "json":
        obj = report.to_json() if hasattr(report, "to_json") else report
        return json.dumps(obj, indent=2, sort_keys=True)
    if isinstance(report, CohomologyReport):
        rows = []
        for d in report.degrees:
            rows.append([d.n, d.dim if d.complete else "?", d.kernel_dim, d.image_dim, d.space_dim,
                         "" if d.complete else "boundary-incomplete"])
        head = f"{report.title} over {report.field}, truncation N={report.N}"
        return head + "\n" + _table(["n", "dim H^n", "ker", "im", "C^n", "note"], rows)
    if isinstance(report, ComparisonVerdict):
        rows = [[e.n, e.dim_source, e.dim_target, e.rank, e.verdict()] for e in report.entries]
        head = f"{report.title} over {report.field}, truncation N={report.N}"
        return head + "\n" + _table(["n", "dim H_A^n", "dim H^n", "rank", "verdict"], rows)
    if isinstance(report, dict):
        rows = [[k, report[k]] for k in sorted(report)]
        return _table(["key", "value"], rows)
    return str(report)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(cfg, args, out):
    bad = False
    for path in cfg.inputs:
        if path.startswith("builtin:"):
            name, params = _parse_ref(path)
            b = _bundle(name, params, cfg)
            from .presentations import validate_lie_triple, validate_triple

            rep = validate_lie_triple(b.A, b.L, b.M) if b.is_lie else validate_triple(b.A, b.R, b.M)
            rep.subject = path
        else:
            obj = _load_json(path)
            try:
                rep = _validate_document(obj, cfg)
            except (KeyError, TypeError) as e:
                raise Rejected(f"{path}: malformed presentation ({e})") from None
            rep.subject = path
        bad |= not rep.ok
        if cfg.fmt == "json":
            out.append(json.dumps({"subject": rep.subject, "ok": rep.ok,
                                   "violations": [str(v) for v in rep.violations]}, sort_keys=True))
        else:
            out.append(str(rep))
    return EXIT_REJECT if bad else EXIT_OK


def _validate_document(obj, cfg):
    """A single presentation, or a bundle {"A": .., "R"|"L": .., "M": ..}."""
    from .presentations import validate_lie_triple, validate_triple

    if "A" in obj and "M" in obj:
        A = from_json(obj["A"], "commutative", cfg.field)
        if "L" in obj:
            L = from_json(obj["L"], "lie", cfg.field)
            M = from_json(obj["M"], "lie_module", cfg.field)
            return validate_lie_triple(A, L, M)
        R = from_json(obj["R"], "associative", cfg.field, A)
        M = from_json(obj["M"], "bimodule", cfg.field)
        return validate_triple(A, R, M)
    pres = from_json(obj, None, cfg.field)
    if pres.kind in ("bimodule", "lie_module"):
        raise Rejected(f"a {pres.kind} is validated together with its algebra; pass a bundle with A, R|L and M")
    return validate(pres)


def cmd_cohomology(cfg, args, out):
    A, X, M = resolve_triple(cfg.inputs, cfg, lie=args.lie)
    if args.lie:
        rep, _ = lie_cohomology(A, X, M, cfg.N, cap=cfg.cap)
    else:
        rep, _ = shukla_cohomology(A, X, M, cfg.N, cap=cfg.cap)
    out.append(render_report(rep, cfg.fmt))
    return EXIT_OK


def cmd_hochschild(cfg, args, out):
    if len(cfg.inputs) != 2:
        raise UsageError("expected two inputs: R M")
    if args.over_a:
        A = resolve(args.over_a, "A", cfg)
    else:
        A = base_field(cfg.field)
    R = resolve(cfg.inputs[0], "R", cfg, A=A)
    M = resolve(cfg.inputs[1], "M", cfg, A=A, R=R)
    if args.over_a:
        rep = hochschild_over_A(A, R, M, cfg.N, method=args.method, cap=cfg.cap)
    else:
        from .presentations import require_valid, validate_bimodule

        require_valid(validate_bimodule(M, R))
        rep = hochschild_over_K(R, M, cfg.N, cap=cfg.cap)
    out.append(render_report(rep, cfg.fmt))
    return EXIT_OK


def cmd_compare(cfg, args, out):
    A, X, M = resolve_triple(cfg.inputs, cfg, lie=args.lie)
    cv = lie_compare(A, X, M, cfg.N, cap=cfg.cap) if args.lie else compare(A, X, M, cfg.N, cap=cfg.cap)
    out.append(render_report(cv, cfg.fmt))
    if cfg.fmt == "table":
        iso = [e.n for e in cv.entries if e.iso]
        if len(iso) == len(cv.entries):
            out.append(f"alpha^n iso for n=0..{cv.N - 1}")
    return EXIT_OK


def _context(cfg, refs):
    A, R, M = resolve_triple(refs, cfg)
    return ext.ExtContext(A, R, M, cfg.cap)


def _verdict_lines(v):
    if v.ok:
        return ["cocycle: yes"]
    lines = [f"cocycle: no ({len(v.violations)} violated coordinate(s))"]
    for name, block, idx, m in v.violations[:20]:
        lines.append(f"  {name}  at {block} args {idx} M[{m}]")
    return lines


def _datum(cls, path, cfg, ec):
    obj = _load_json(path)
    try:
        d = cls.from_json(obj, cfg.field)
        d.vector(ec)
    except (KeyError, TypeError, ValueError) as e:
        raise Rejected(f"{path}: not a degree-{cls.degree} cochain for these inputs ({e})") from None
    return d


def cmd_ext2(cfg, args, out):
    action = args.action
    if action == "classify":
        if not (cfg.field.is_prime_field and cfg.field.p == 2):
            raise UsageError("ext2 classify enumerates over F2 only; pass --field Fp:2")
        ec = _context(cfg, cfg.inputs)
        try:
            c = ext.classify_bruteforce(ec)
        except ext.SearchSpaceTooLarge as err:
            raise Rejected(str(err)) from None
        rep = {"|Z2|": c.z2, "|B2|": c.b2, "|H2|": c.h2, "classes": c.classes,
               "dim H2 (linear algebra)": ext.h_dim(ec, 2), "searched": c.searched}
        out.append(render_report(rep, cfg.fmt))
        return EXIT_OK
    if len(cfg.inputs) != 4:
        raise UsageError(f"ext2 {action} expects A R M and a JSON file")
    ec = _context(cfg, cfg.inputs[:3])
    if action == "extract":
        try:
            e = ext.extension_from_json(_load_json(cfg.inputs[3]), ec)
        except (KeyError, TypeError) as err:
            raise Rejected(f"{cfg.inputs[3]}: malformed extension ({err})") from None
        try:
            z = ext.extract_cocycle2(e, ec)
        except ext.NotExact as err:
            raise Rejected(str(err)) from None
        out.append(json.dumps(z.to_json(), indent=2, sort_keys=True))
        return EXIT_OK
    z = _datum(ext.TwoCocycleDatum, cfg.inputs[3], cfg, ec)
    v = ext.check_z2(z, ec)
    if action == "check":
        if cfg.fmt == "json":
            w = ext.is_coboundary2(z, ec) if v.ok else None
            out.append(json.dumps({"cocycle": v.ok, "coboundary": w is not None,
                                   "violations": [list(map(str, x)) for x in v.violations]}, sort_keys=True))
        else:
            out.extend(_verdict_lines(v))
            if v.ok:
                w = ext.is_coboundary2(z, ec)
                out.append("coboundary: " + ("yes" if w is not None else "no"))
        return EXIT_OK if v.ok else EXIT_REJECT
    if action == "build":
        if not v.ok:
            out.extend(_verdict_lines(v))
            return EXIT_REJECT
        e = ext.build_extension(z, ec)
        out.append(json.dumps(e.to_json(), indent=2, sort_keys=True))
        return EXIT_OK
    raise UsageError(f"unknown ext2 action {action!r}")


def cmd_ext3(cfg, args, out):
    action = args.action
    if len(cfg.inputs) != 4:
        raise UsageError(f"ext3 {action} expects A R M and a JSON file or builtin reference")
    ec = _context(cfg, cfg.inputs[:3])
    src = cfg.inputs[3]
    if action == "check":
        t = _datum(ext.ThreeCocycleDatum, src, cfg, ec)
        v = ext.check_z3(t, ec)
        if cfg.fmt == "json":
            w = ext.is_coboundary3(t, ec) if v.ok else None
            out.append(json.dumps({"cocycle": v.ok, "coboundary": w is not None,
                                   "violations": [list(map(str, x)) for x in v.violations]}, sort_keys=True))
        else:
            out.extend(_verdict_lines(v))
            if v.ok:
                out.append("coboundary: " + ("yes" if ext.is_coboundary3(t, ec) is not None else "no"))
        return EXIT_OK if v.ok else EXIT_REJECT
    if action == "from-crossed":
        if src == "builtin:trivial":
            ce = ext.trivial_crossed_extension(ec)
        elif src == "builtin:dual_numbers_crossed":
            ce = ext.dual_numbers_crossed(ec)
        elif src.startswith("builtin:"):
            raise UsageError("crossed extension builtins: trivial, dual_numbers_crossed")
        else:
            try:
                ce = ext.crossed_from_json(_load_json(src), ec)
            except (KeyError, TypeError) as err:
                raise Rejected(f"{src}: malformed crossed extension ({err})") from None
        rep = ce.validate()
        if not rep.ok:
            raise ValidationFailure(rep)
        t = ext.crossed_to_cocycle(ce, ec)
        w = ext.is_coboundary3(t, ec)
        if cfg.fmt == "json":
            out.append(json.dumps({"cocycle": t.to_json(), "class_zero": w is not None}, indent=2, sort_keys=True))
        else:
            out.append(f"3-cocycle with {len(t.vector(ec))} nonzero coordinates")
            out.append("class: " + ("zero (coboundary)" if w is not None else "nonzero"))
        return EXIT_OK
    raise UsageError(f"unknown ext3 action {action!r}")


def cmd_builtin(cfg, args, out):
    if args.action == "list":
        rows = [[name, params, note] for name, params, note in builtin_notes(cfg.field)]
        rows += [[name, "", f"component reference for slot {slot}"] for slot, names in COMPONENT_REFS.items()
                 for name in names if name != "base_field"]
        rows += [["trivial", "", "ext3 from-crossed: 0 -> M -> M -> R -> R -> 0"],
                 ["dual_numbers_crossed", "", "ext3 from-crossed: nonzero class over the dual numbers"]]
        if cfg.fmt == "json":
            out.append(json.dumps([{"name": r[0], "params": r[1], "note": r[2]} for r in rows], indent=2))
        else:
            out.append(_table(["name", "params", "description"], rows))
        return EXIT_OK
    if args.action == "emit":
        if not cfg.inputs:
            raise UsageError("builtin emit needs a name")
        name, params = _parse_ref("builtin:" + cfg.inputs[0].removeprefix("builtin:"))
        b = _bundle(name, params, cfg)
        doc = {"A": to_json(b.A), "M": to_json(b.M)}
        doc["L" if b.is_lie else "R"] = to_json(b.L if b.is_lie else b.R)
        out.append(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    raise UsageError(f"unknown builtin action {args.action!r}")


def cmd_selftest(cfg, args, out):
    from .selftest import run_selftest

    results = run_selftest(cfg.seed, cfg.field)
    ok = True
    for name, passed, detail in results:
        ok &= passed
        out.append(f"{'PASS' if passed else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    return EXIT_OK if ok else EXIT_INTERNAL


COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "hochschild": cmd_hochschild,
    "compare": cmd_compare,
    "ext2": cmd_ext2,
    "ext3": cmd_ext3,
    "builtin": cmd_builtin,
    "selftest": cmd_selftest,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or Fp:<p>")
    common.add_argument("--n", type=int, default=4, help="truncation N (H^n reported for n <= N-1)")
    common.add_argument("--cap", type=int, default=5_000_000, help="largest cochain space allowed")
    common.add_argument("--format", default="table", choices=["table", "json"])
    common.add_argument("--seed", type=int, default=0)
    p = _Parser(prog="shukla", description="Exact Shukla cohomology of algebras over a commutative base.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    s = sub.add_parser("validate", parents=[common], help="validate presentation files or builtins")
    s.add_argument("inputs", nargs="+")
    s = sub.add_parser("cohomology", parents=[common], help="H^n(A,R,M) or H^n(A,L,M)")
    s.add_argument("inputs", nargs=3)
    s.add_argument("--lie", action="store_true")
    s = sub.add_parser("hochschild", parents=[common], help="Hochschild cohomology over K or over A")
    s.add_argument("inputs", nargs=2)
    s.add_argument("--over-a", dest="over_a")
    s.add_argument("--method", default="kernel", choices=["kernel", "tensor"])
    s = sub.add_parser("compare", parents=[common], help="comparison maps alpha^n")
    s.add_argument("inputs", nargs=3)
    s.add_argument("--lie", action="store_true")
    s = sub.add_parser("ext2", parents=[common], help="degree-2 cocycles and abelian extensions")
    s.add_argument("action", choices=["check", "build", "extract", "classify"])
    s.add_argument("inputs", nargs="+")
    s = sub.add_parser("ext3", parents=[common], help="degree-3 cocycles and crossed extensions")
    s.add_argument("action", choices=["check", "from-crossed"])
    s.add_argument("inputs", nargs="+")
    s = sub.add_parser("builtin", parents=[common], help="list or emit builtin examples")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("inputs", nargs="*")
    sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out: list = []
    try:
        args = build_parser().parse_args(argv)
        try:
            fld = FieldSpec.parse(args.field)
        except ValueError as e:
            raise UsageError(f"--field: {e}") from None
        cfg = RunConfig(args.command, fld, args.n, args.cap, list(getattr(args, "inputs", []) or []),
                        args.format, args.seed)
        code = COMMANDS[args.command](cfg, args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return EXIT_USAGE
    except (Rejected, ValidationFailure, ShapeError, ScalarParseError, SizeCapExceeded, TruncationTooSmall,
            ext.NotACocycle, ext.NotExact, ZeroDivisionError) as e:
        for line in out:
            print(line, file=stdout)
        print(f"rejected: {e}", file=stderr)
        return EXIT_REJECT
    except (BicomplexIdentityFailure, TotalizationSignFailure, ImageNotAlternating,
            ext.InconsistentWithMatrixKernel, AssertionError) as e:
        print(f"internal consistency failure: {e}", file=stderr)
        return EXIT_INTERNAL
    for line in out:
        print(line, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
