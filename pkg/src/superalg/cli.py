"""Command-line front end.

Every verb writes one JSON report (to ``--out`` or stdout)::

    {"tool": "superalg", "version": ..., "verb": ..., "seed": ...,
     "inputs": [{"sha256": ...}], "params": {...}, "result": {...}}

Exit status: 0 success, 1 a check failed (the report carries a witness),
2 invalid input, 3 unsupported parameters.  Input documents may be raw
documents or earlier reports; a report is unwrapped to the matching entry
of its ``result``.  The default seed is 0.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .crossratio import (
    DegenerateQuadruple,
    HarnessReport,
    apply_linear,
    block_linear,
    cross_ratio_quadric,
    invariance_harness,
    invariants,
    inversion,
    quadric_harness,
    quadric_inversion,
    random_quadric_isometry,
    translation,
)
from .io import (
    InvalidDocument,
    digest,
    dumps,
    field_from_json,
    field_to_json,
    jordan_from_json,
    jordan_to_json,
    lie_from_json,
    lie_to_json,
    matrix_from_json,
    poly_to_json,
    quadric_from_json,
    quadruple_from_json,
    quadruple_to_json,
    validate,
)
from .jordan import (
    GradingMismatch,
    check_jordan_identity,
    check_supercommutative,
    jordan_bilinear,
    jordan_from_graded,
    jordan_generalized_depth_d,
    jordan_hamiltonian_odd,
    jordan_matrix,
)
from .liealg import (
    DiagonalDerivation,
    GradingError,
    NotClosed,
    UnsupportedParameters,
    abelian,
    build_classical,
    check_axioms,
    grade_by_element,
    depth_one_grading,
)
from .sampling import random_invertible, random_matrix, random_quadruple, random_queer, random_queer_quadruple
from .scalars import DegreeCapExceeded, NotInvertible, VariableContext
from .supermatrix import berezinian, queer_determinant, queer_trace, supertrace
from .vectorfields import (
    KanClosureError,
    NotHomological,
    ce_field,
    derived_bracket,
    divergence,
    field_coordinates,
    is_homological,
    kan_build,
    kan_roundtrip,
    vect_odd,
)

FORMAT_VERSION = 1
DEFAULT_SEED = 0

VERBS = {
    "algebra": ("build", "check"),
    "jordan": ("build", "check"),
    "kan": (),
    "roundtrip": (),
    "ce": (),
    "homological-check": (),
    "derived-bracket": (),
    "divergence": (),
    "ber": (),
    "str": (),
    "qtr": (),
    "qet": (),
    "crossratio": (),
    "invariance": (),
}

PARAM_SCHEMAS = {
    "algebra build": "algebra-build",
    "jordan build": "jordan-build",
    "derived-bracket": "derived-bracket",
    "invariance": "invariance",
}


class CheckFailed(Exception):
    def __init__(self, result: dict):
        super().__init__("check failed")
        self.result = result


@dataclass
class JobSpec:
    verb: str
    action: str | None = None
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    seed: int = DEFAULT_SEED
    order: int | None = None
    variant: str | None = None
    params: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @property
    def name(self) -> str:
        return f"{self.verb} {self.action}" if self.action else self.verb

    def validate(self):
        validate(asdict(self), "jobs", "job")
        if self.verb not in VERBS:
            raise InvalidDocument(f"unknown verb {self.verb!r}")
        actions = VERBS[self.verb]
        if actions and self.action not in actions:
            raise InvalidDocument(f"{self.verb} needs one of {', '.join(actions)}")
        validate(self.params, "jobs", PARAM_SCHEMAS.get(self.name, "empty"))


# ---------------------------------------------------------------------------
# input helpers


def _read(path: str) -> tuple[Any, bytes]:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    try:
        return json.loads(data), data
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidDocument(f"malformed JSON in {path}: {exc}") from exc


def _unwrap(doc, key: str):
    """Accept an earlier report in place of a raw document."""
    if isinstance(doc, dict) and doc.get("tool") == "superalg" and isinstance(doc.get("result"), dict):
        if key not in doc["result"]:
            raise InvalidDocument(f"report carries no {key!r} entry")
        return doc["result"][key]
    return doc


def _vector(sparse: dict) -> dict:
    return {int(k): Fraction(v) for k, v in sparse.items()}


def _dims(parities, degrees=None) -> dict:
    out: dict = {}
    for i, p in enumerate(parities):
        d = str(degrees[i]) if degrees is not None else "all"
        e, o = out.get(d, [0, 0])
        out[d] = [e + (p == 0), o + (p == 1)]
    return dict(sorted(out.items(), key=lambda kv: (kv[0] == "all", int(kv[0]) if kv[0] != "all" else 0)))


def _axioms_result(g) -> dict:
    rep = check_axioms(g)
    res = {"ok": rep.ok, "label": g.label, "dims": _dims(g.parities, g.degrees)}
    if not rep.ok:
        res["witness"] = rep.witness()
    return res


def _jordan_check_result(J) -> dict:
    sc = check_supercommutative(J)
    res = {"label": J.label, "dims": _dims(J.parities)}
    if sc:
        res.update(ok=False, witness={"kind": "supercommutativity", "detail": sc[0]})
        return res
    rep = check_jordan_identity(J)
    res["ok"] = rep.ok
    if not rep.ok:
        res["witness"] = {"kind": "jordan_identity", "detail": rep.witness}
    return res


# ---------------------------------------------------------------------------
# verbs


def _algebra_build(job: JobSpec, docs) -> dict:
    p = job.params
    if "depth_one" in p:
        t = p["depth_one"]
        g, grading = depth_one_grading(t["series"], tuple(t["params"]), t.get("variant", ""))
    else:
        series = p.get("series")
        if series is None:
            raise InvalidDocument("algebra build needs 'series' or 'depth_one'")
        if series == "abelian":
            g = abelian(p.get("parities", []))
        elif series == "vect":
            g = vect_odd(p.get("m", 1))[0]
        else:
            g = build_classical(series, p.get("m", 1), p.get("n"), split=p.get("split", False))
        grading = None
        if "grading" in p:
            gr = p["grading"]
            if "weights" in gr:
                h = DiagonalDerivation(Fraction(w) for w in gr["weights"])
            elif "element" in gr:
                h = _vector(gr["element"])
            else:
                raise InvalidDocument("grading needs 'weights' or 'element'")
            g, grading = grade_by_element(g, h, rebase=gr.get("rebase", False))
    if "perturb" in p:
        i, j, k, *rest = p["perturb"]
        if not all(0 <= x < g.dim for x in (i, j, k)):
            raise InvalidDocument("perturbation index out of range")
        g = g.perturbed(i, j, k, rest[0] if rest else 1)
    res = {"algebra": lie_to_json(g), "dims": _dims(g.parities, g.degrees)}
    if grading is not None:
        res["grading"] = grading.as_dict()
    return res


def _algebra_check(job: JobSpec, docs) -> dict:
    g = lie_from_json(_unwrap(docs[0], "algebra"))
    res = _axioms_result(g)
    if not res["ok"]:
        raise CheckFailed(res)
    return res


def _input_algebra(docs):
    if not docs:
        raise InvalidDocument("this construction needs --in with a graded Lie superalgebra")
    return lie_from_json(_unwrap(docs[0], "algebra"))


def _jordan_build(job: JobSpec, docs) -> dict:
    p = job.params
    kind = p["kind"]
    extra = {}
    if kind in ("mat", "q", "osp", "pe"):
        J = jordan_matrix(kind, p.get("m", 1), p.get("n", 0))
    elif kind == "bilinear":
        J = jordan_bilinear(p.get("m", 1), p.get("n", 0))
    elif kind == "hamiltonian":
        J = jordan_hamiltonian_odd(p.get("m", 2), variant=p.get("variant", "double"))
    else:
        g = _input_algebra(docs)
        pv = _vector(p.get("p", {}))
        if kind == "graded":
            J = jordan_from_graded(g, pv)
        else:
            J, rep = jordan_generalized_depth_d(g, pv, include_zero=p.get("include_zero", True))
            extra = {"closed": rep.closed, "supercommutative": rep.supercommutative,
                     "jordan_identity": rep.jordan_identity}
    if "perturb" in p:
        i, j, k, *rest = p["perturb"]
        if not all(0 <= x < J.dim for x in (i, j, k)):
            raise InvalidDocument("perturbation index out of range")
        J = J.perturbed(i, j, k, rest[0] if rest else 1)
    return {"jordan": jordan_to_json(J), "dims": _dims(J.parities), **extra}


def _jordan_check(job: JobSpec, docs) -> dict:
    J = jordan_from_json(_unwrap(docs[0], "jordan"))
    res = _jordan_check_result(J)
    if not res["ok"]:
        raise CheckFailed(res)
    return res


def _kan(job: JobSpec, docs) -> dict:
    J = jordan_from_json(_unwrap(docs[0], "jordan"))
    try:
        k = kan_build(J)
    except KanClosureError as exc:
        raise CheckFailed({"ok": False, "witness": {"kind": "closure", "detail": str(exc)}}) from exc
    g = k.algebra
    return {"dims": _dims(g.parities, g.degrees), "algebra": lie_to_json(g),
            "p": {str(i): str(c) for i, c in sorted(k.p_coordinates.items())}}


def _roundtrip(job: JobSpec, docs) -> dict:
    J = jordan_from_json(_unwrap(docs[0], "jordan"))
    try:
        rep = kan_roundtrip(J)
    except KanClosureError as exc:
        raise CheckFailed({"ok": False, "witness": {"kind": "closure", "detail": str(exc)}}) from exc
    res = {"ok": rep.ok, "label": J.label}
    if not rep.ok:
        res["witness"] = rep.mismatches[0] if rep.mismatches else {"kind": "parity"}
        raise CheckFailed(res)
    return res


def _ce(job: JobSpec, docs) -> dict:
    g = lie_from_json(_unwrap(docs[0], "algebra"))
    p = ce_field(g)
    ok, _ = is_homological(p)
    return {"field": field_to_json(p), "homological": ok}


def _homological(job: JobSpec, docs) -> dict:
    doc = docs[0]
    if isinstance(doc, dict) and doc.get("tool") == "superalg":
        key = "field" if "field" in doc.get("result", {}) else "algebra"
        doc = _unwrap(doc, key)
    if isinstance(doc, dict) and doc.get("kind") == "field":
        x = field_from_json(doc)
        res = {"input": "field"}
    else:
        g = lie_from_json(doc)
        x = ce_field(g)
        res = {"input": "algebra", "label": g.label}
    if not x:
        res["ok"] = True
        return res
    if x.parity() != 1:
        raise InvalidDocument("homological fields must be odd")
    ok, witness = is_homological(x)
    res["ok"] = ok
    if not ok:
        res["witness"] = witness
        raise CheckFailed(res)
    return res


def _derived(job: JobSpec, docs) -> dict:
    g = lie_from_json(_unwrap(docs[0], "algebra"))
    if "p" in job.params:
        host, pv = g, _vector(job.params["p"])
    else:
        # [[p, x], y] for p = ce_field(g) inside vect(0|dim g)
        if any(g.parities):
            raise UnsupportedParameters("the CE route needs a purely even algebra")
        host, _, _ = vect_odd(g.dim)
        pv = field_coordinates(ce_field(g), g.dim)
    try:
        d = derived_bracket(host, pv)
    except NotHomological as exc:
        raise CheckFailed({"ok": False, "witness": {"kind": "homological", "detail": str(exc)}}) from exc
    except ValueError as exc:
        raise InvalidDocument(str(exc)) from exc
    res = _axioms_result(d)
    res["algebra"] = lie_to_json(d)
    if not res["ok"]:
        raise CheckFailed(res)
    return res


def _divergence(job: JobSpec, docs) -> dict:
    x = field_from_json(_unwrap(docs[0], "field"))
    return {"divergence": poly_to_json(divergence(x))}


def _matrix_invariant(job: JobSpec, docs) -> dict:
    doc = _unwrap(docs[0], "matrix")
    validate(doc, "matrix")
    x = matrix_from_json(doc)
    fn = {"ber": berezinian, "str": supertrace, "qtr": queer_trace, "qet": queer_determinant}[job.verb]
    try:
        value = fn(x)
    except NotInvertible as exc:
        raise InvalidDocument(f"{job.verb}: {exc}") from exc
    return {"value": poly_to_json(value)}


def _crossratio(job: JobSpec, docs) -> dict:
    variant = job.variant or "ber"
    doc = docs[0]
    try:
        if variant == "quadric":
            points, gram, parities = quadric_from_json(_unwrap(doc, "quadric"))
            if len(points) != 4:
                raise InvalidDocument("a quadric cross ratio needs four points")
            return {"variant": "quadric", "value": poly_to_json(cross_ratio_quadric(*points, gram, parities))}
        q = quadruple_from_json(_unwrap(doc, "quadruple"))
        inv = invariants(variant, q, job.order)
    except DegenerateQuadruple as exc:
        raise InvalidDocument(f"degenerate quadruple: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, InvalidDocument):
            raise
        raise InvalidDocument(str(exc)) from exc
    return {"variant": inv.variant, "order": inv.order, "coeffs": inv.as_strings()}


def _invariance(job: JobSpec, docs) -> dict:
    p = job.params
    rng = random.Random(job.seed)
    samples = p.get("samples", 20)
    k = p.get("odd_generators", 2)
    ctx = VariableContext.create(0, k)
    kw = dict(terms=2, max_odd_degree=2, coeff_range=2)
    total = HarnessReport()
    res: dict = {}
    if job.variant == "quadric" or "quadric" in p:
        m, n = p.get("quadric", [2, 1])
        if n and not k:
            raise UnsupportedParameters("odd quadric coordinates need odd generators")
        gram = [[Fraction(0)] * (m + 2 * n) for _ in range(m + 2 * n)]
        for i in range(m):
            gram[i][i] = Fraction(1)
        for i in range(n):
            gram[m + i][m + n + i] = Fraction(1)
            gram[m + n + i][m + i] = Fraction(-1)
        parities = [0] * m + [1] * (2 * n)
        from .sampling import random_element

        while total.checked < samples * 2:
            pts = [[random_element(rng, ctx, par, **kw) for par in parities] for _ in range(4)]
            iso = random_quadric_isometry(rng, m, n)
            maps = [("isometry", lambda x, iso=iso: apply_linear(iso, x)),
                    ("inversion", quadric_inversion(gram, parities))]
            rep = quadric_harness(pts, gram, parities, maps)
            total.merge(rep)
            if rep.skipped and total.skipped > 50 * samples:
                break
        res["quadric"] = [m, n]
    else:
        sig = tuple(p.get("signature", [1, 0]))
        variant = job.variant
        if variant == "qet":
            if sig[0] != sig[1]:
                raise UnsupportedParameters("qet needs a signature (n|n)")
            variants = ("qet",)
        elif variant in ("det", "ber"):
            if variant == "det" and sig[1]:
                raise UnsupportedParameters("det needs a purely even signature")
            variants = (variant,)
        elif variant is None:
            variants = ("det", "ber") if not sig[1] else ("ber",)
        else:
            raise UnsupportedParameters(f"unknown variant {variant!r}")
        for _ in range(samples):
            if variants == ("qet",):
                n = sig[0]
                q = random_queer_quadruple(rng, ctx, n, **kw)
                gens = [translation(random_queer(rng, ctx, n, 0, **kw)),
                        block_linear(random_queer(rng, ctx, n, 0, invertible=True, **kw),
                                     random_queer(rng, ctx, n, 0, invertible=True, **kw)),
                        inversion(ctx, sig)]
            else:
                q = random_quadruple(rng, ctx, sig, **kw)
                gens = [translation(random_matrix(rng, ctx, sig, 0, **kw)),
                        block_linear(random_invertible(rng, ctx, sig, **kw), random_invertible(rng, ctx, sig, **kw)),
                        inversion(ctx, sig)]
            rep = invariance_harness(q, gens, variants, job.order)
            for f in rep.failures:
                f["quadruple"] = quadruple_to_json(q)
            total.merge(rep)
        res["signature"] = list(sig)
        res["variants"] = list(variants)
    res.update(ok=total.ok, checked=total.checked, skipped=total.skipped)
    if not total.ok:
        res["witness"] = total.failures[0]
        raise CheckFailed(res)
    return res


HANDLERS = {
    "algebra build": _algebra_build,
    "algebra check": _algebra_check,
    "jordan build": _jordan_build,
    "jordan check": _jordan_check,
    "kan": _kan,
    "roundtrip": _roundtrip,
    "ce": _ce,
    "homological-check": _homological,
    "derived-bracket": _derived,
    "divergence": _divergence,
    "ber": _matrix_invariant,
    "str": _matrix_invariant,
    "qtr": _matrix_invariant,
    "qet": _matrix_invariant,
    "crossratio": _crossratio,
    "invariance": _invariance,
}

NEEDS_INPUT = {"algebra check", "jordan check", "kan", "roundtrip", "ce", "homological-check", "derived-bracket",
               "divergence", "ber", "str", "qtr", "qet", "crossratio"}


# ---------------------------------------------------------------------------
# driver


def _envelope(job: JobSpec, digests: list) -> dict:
    return {"tool": "superalg", "version": __version__, "format_version": job.format_version,
            "verb": job.name, "seed": job.seed, "inputs": [{"sha256": d} for d in digests],
            "params": job.params}


def _emit(doc: dict, output: str | None, stream):
    text = dumps(doc)
    if output:
        Path(output).write_text(text)
    else:
        stream.write(text)


def run(job: JobSpec, stdout=None, stderr=None) -> int:
    """Execute one job; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    digests: list = []
    try:
        job.validate()
        if job.name in NEEDS_INPUT and not job.inputs:
            raise InvalidDocument(f"{job.name} needs --in")
        docs = []
        for path in job.inputs:
            doc, raw = _read(path)
            docs.append(doc)
            digests.append(digest(raw))
        result = HANDLERS[job.name](job, docs)
        _emit({**_envelope(job, digests), "result": result}, job.output, stdout)
        return 0
    except CheckFailed as exc:
        _emit({**_envelope(job, digests), "result": exc.result}, job.output, stdout)
        return 1
    except (UnsupportedParameters, DegreeCapExceeded) as exc:
        status, kind = 3, "unsupported"
        err = exc
    except (InvalidDocument, GradingError, GradingMismatch, NotClosed, OSError) as exc:
        status, kind = 2, "invalid_input"
        err = exc
    except (ValueError, KeyError, TypeError, NotInvertible) as exc:
        status, kind = 2, "invalid_input"
        err = exc
    stderr.write(dumps({**_envelope(job, digests), "error": {"kind": kind, "type": type(err).__name__,
                                                             "message": str(err)}}))
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inputs", action="append", default=[], metavar="PATH",
                        help="input JSON document ('-' for stdin)")
    common.add_argument("--out", dest="output", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--order", type=int, help="truncation order of invariant collections")
    common.add_argument("--variant", help="det|ber|qet|quadric for cross ratios")
    common.add_argument("--params", default="{}", help="verb parameters as a JSON object")

    parser = argparse.ArgumentParser(prog="superalg", description="Exact super linear algebra toolkit.")
    parser.add_argument("--version", action="version", version=f"superalg {__version__}")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    for verb, actions in VERBS.items():
        sp = sub.add_parser(verb, parents=[common])
        if actions:
            sp.add_argument("action", choices=actions)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.verb is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        params = json.loads(args.params)
    except json.JSONDecodeError as exc:
        sys.stderr.write(dumps({"error": {"kind": "invalid_input", "message": f"--params: {exc}"}}))
        return 2
    job = JobSpec(verb=args.verb, action=getattr(args, "action", None), inputs=args.inputs, output=args.output,
                  seed=args.seed, order=args.order, variant=args.variant, params=params)
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
