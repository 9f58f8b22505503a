"""Batch command line: structure reports, CM checks, and survey sweeps.

Every verb reads one structure document (JSON) and writes a deterministic
JSON report to stdout; identical inputs and flags produce identical bytes.
``survey`` instead writes line-delimited TSV records (plus optional summary
figures) and prints a short run summary.

Exit codes: 0 success, 2 usage, 3 validation/invalid input, 4 resource
guard, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
from typing import Optional

from . import double_posets as dp
from . import mixed_graphs as mg
from .complexes import (
    RelativePair,
    dimension,
    f_vector,
    gamma,
    maximal_faces_rendered,
    relative_f_vector,
    sigma,
    sigma_gamma_pair,
)
from .errors import (
    HopfColorError,
    InternalConsistencyError,
    InvalidInputError,
    ResourceLimitError,
    ValidationError,
)
from .homology import (
    is_cm,
    is_relatively_cm,
    reduced_betti,
    relative_betti,
    theorem1_combinatorial,
)
from .invariants import (
    char_polynomial,
    char_polynomial_via_compositions,
    h_vector_shifted,
    is_f_positive,
    is_h_positive,
    qsym_monomial,
    to_fundamental,
    w_transform,
)
from .limits import MAX_FACES, MAX_SURVEY_SIZE, MAX_VERTICES
from .species import Submonoid, count_s_proper, parse_submonoid

FAMILY_DEFAULT_SUBMONOID = {
    mg.MixedGraph.kind: Submonoid.EDGELESS,
    dp.DoublePoset.kind: Submonoid.INVERSION_FREE,
}


def load_structure(path: str, max_vertices: Optional[int] = None):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ValidationError("bad-json", f"{path}: {e}") from e
    kind = doc.get("kind")
    if kind == mg.MixedGraph.kind:
        h = mg.from_doc(doc)
    elif kind == dp.DoublePoset.kind:
        h = dp.from_doc(doc)
    else:
        raise ValidationError("bad-kind", f"unknown structure kind {kind!r}")
    cap = MAX_VERTICES if max_vertices is None else max_vertices
    if len(h.ground) > cap:
        raise ResourceLimitError(f"structure has more than {cap} elements")
    return h


def pick_submonoid(h, name: Optional[str]) -> Submonoid:
    if name is None:
        return FAMILY_DEFAULT_SUBMONOID[h.kind]
    s = parse_submonoid(name)
    if s not in h.valid_submonoids:
        raise InvalidInputError(f"submonoid {s.value!r} is invalid for {h.kind}")
    return s


def parse_field(text: str) -> Optional[int]:
    if text == "rational":
        return None
    if text.startswith("prime:"):
        p = int(text.split(":", 1)[1])
        if p < 2:
            raise InvalidInputError("prime field characteristic must be at least 2")
        return p
    raise InvalidInputError(f"unknown field {text!r}; use rational or prime:<p>")


def emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def structure_doc(h) -> dict:
    return mg.to_doc(h) if isinstance(h, mg.MixedGraph) else dp.to_doc(h)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    emit({"verb": "validate", "valid": True, "canonical": structure_doc(h)})
    return 0


def cmd_sigma(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    c = sigma(h, max_faces=args.max_faces)
    doc = {
        "verb": "sigma",
        "f_vector": list(f_vector(c)),
        "dimension": dimension(c),
        "maximal_faces": maximal_faces_rendered(c),
    }
    if args.figure:
        from .report import draw_complex

        doc["figure"] = draw_complex(c, args.figure, title="order complex")
    emit(doc)
    return 0


def cmd_gamma(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    s = pick_submonoid(h, args.submonoid)
    total = sigma(h, max_faces=args.max_faces)
    g = gamma(h, s, sigma_complex=total, max_faces=args.max_faces)
    doc = {
        "verb": "gamma",
        "submonoid": s.value,
        "void": g.is_void,
        "f_vector": list(f_vector(g)),
        "dimension": dimension(g),
        "maximal_faces": maximal_faces_rendered(g),
    }
    if args.figure:
        from .report import draw_complex

        doc["figure"] = draw_complex(
            total, args.figure, title=f"coloring subcomplex ({s.value})", highlight=g
        )
    emit(doc)
    return 0


def cmd_fvector(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    s = pick_submonoid(h, args.submonoid)
    pair = sigma_gamma_pair(h, s)
    emit(
        {
            "verb": "fvector",
            "submonoid": s.value,
            "sigma": list(f_vector(pair.total)),
            "gamma": list(f_vector(pair.sub)),
            "relative": list(relative_f_vector(pair)),
        }
    )
    return 0


def cmd_homology(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    s = pick_submonoid(h, args.submonoid)
    p = parse_field(args.field)
    pair = sigma_gamma_pair(h, s)
    emit(
        {
            "verb": "homology",
            "submonoid": s.value,
            "field": args.field,
            "sigma_betti": reduced_betti(pair.total, p).as_doc(),
            "gamma_betti": reduced_betti(pair.sub, p).as_doc(),
            "relative_betti": relative_betti(pair, p).as_doc(),
        }
    )
    return 0


def cmd_charpoly(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    s = pick_submonoid(h, args.submonoid)
    poly = char_polynomial(h, s)
    n = len(h.ground)
    emit(
        {
            "verb": "charpoly",
            "submonoid": s.value,
            "coefficients": poly.as_doc(),
            "values": {str(k): count_s_proper(h, s, k) for k in range(n + 2)},
        }
    )
    return 0


def cmd_hvector(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    s = pick_submonoid(h, args.submonoid)
    if args.unshifted:
        vec = w_transform(char_polynomial(h, s))
    else:
        vec = h_vector_shifted(h, s)
    emit(
        {
            "verb": "hvector",
            "submonoid": s.value,
            "shifted": not args.unshifted,
            "stored": list(vec.entries),
            "display": vec.display(),
            "h_positive": is_h_positive(vec),
        }
    )
    return 0


def cmd_qsym(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    s = pick_submonoid(h, args.submonoid)
    q = qsym_monomial(h, s)
    if args.basis == "fundamental":
        q = to_fundamental(q)
    doc = {
        "verb": "qsym",
        "submonoid": s.value,
        "basis": q.basis,
        "degree": q.degree,
        "coefficients": q.as_doc(),
        "display": q.display(),
    }
    if q.basis == "F":
        doc["f_positive"] = is_f_positive(q)
    emit(doc)
    return 0


def cmd_cm_check(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    s = pick_submonoid(h, args.submonoid)
    p = parse_field(args.field)
    pair = sigma_gamma_pair(h, s)
    sigma_report = is_cm(pair.total, p)
    rel_report = is_relatively_cm(pair, p)
    emit(
        {
            "verb": "cm-check",
            "submonoid": s.value,
            "field": args.field,
            "sigma_cm": sigma_report.as_doc(),
            "relatively_cm": rel_report.as_doc(),
        }
    )
    return 0


def cmd_theorem_check(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    s = pick_submonoid(h, args.submonoid)
    report = theorem1_combinatorial(h, s)
    doc = {
        "verb": "theorem-check",
        "submonoid": s.value,
        "status": "PASS" if report.verdict else "FAIL",
        "verdict": report.verdict,
        "failures": [f.as_doc() for f in report.failures],
    }
    if isinstance(h, mg.MixedGraph) and s is Submonoid.DIRECTED:
        doc["crossing_pairs"] = [
            [list(e), list(f)] for e, f in mg.crossing_pairs(h)
        ]
        doc["noncrossing"] = mg.is_noncrossing(h)
    emit(doc)
    return 0


def cmd_crossing(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    if not isinstance(h, mg.MixedGraph):
        raise InvalidInputError("crossing pairs are defined for mixed graphs")
    pairs = mg.crossing_pairs(h)
    emit(
        {
            "verb": "crossing",
            "crossing_pairs": [[list(e), list(f)] for e, f in pairs],
            "noncrossing": not pairs,
        }
    )
    return 0


def cmd_inv2desc(args) -> int:
    h = load_structure(args.input, args.max_vertices)
    if not isinstance(h, dp.DoublePoset):
        raise InvalidInputError("the inversion-to-descent condition is for double posets")
    holds, witness = dp.inversion_to_descent(h)
    emit(
        {
            "verb": "inv2desc",
            "holds": holds,
            "witness": list(witness) if witness else None,
            "inversions": [list(x) for x in dp.inversions(h)],
            "descents": [list(x) for x in dp.descents(h)],
        }
    )
    return 0


# ---------------------------------------------------------------------------
# survey
# ---------------------------------------------------------------------------

SURVEY_COLUMNS = (
    "canonical",
    "n",
    "h_vector",
    "h_positive",
    "theorem1",
    "relative_cm",
    "criterion",
    "agreement",
)


def survey_row(family: str, submonoid_value: str, key: str) -> dict:
    """One survey record, recomputable from the canonical document alone."""
    doc = json.loads(key)
    h = mg.from_doc(doc) if family == mg.MixedGraph.kind else dp.from_doc(doc)
    s = parse_submonoid(submonoid_value)
    vec = h_vector_shifted(h, s, fast=True)
    pair = sigma_gamma_pair(h, s)
    t1 = theorem1_combinatorial(h, s, stop_on_first=True).verdict
    rcm = is_relatively_cm(pair, stop_on_first=True).verdict
    if family == mg.MixedGraph.kind:
        criterion = mg.is_noncrossing(h)
    else:
        criterion = dp.inversion_to_descent(h)[0]
    return {
        "canonical": key,
        "n": len(h.ground),
        "h_vector": list(vec.entries),
        "h_display": vec.display(),
        "h_positive": is_h_positive(vec),
        "theorem1": t1,
        "relative_cm": rcm,
        "criterion": criterion,
        "agreement": t1 == rcm,
    }


def _survey_row_star(packed) -> dict:
    return survey_row(*packed)


def _format_row(row: dict) -> str:
    def b(x):
        return "true" if x else "false"

    return "\t".join(
        [
            row["canonical"],
            str(row["n"]),
            row["h_display"],
            b(row["h_positive"]),
            b(row["theorem1"]),
            b(row["relative_cm"]),
            b(row["criterion"]),
            b(row["agreement"]),
        ]
    )


def cmd_survey(args) -> int:
    from . import enumeration

    family = args.family
    if family not in FAMILY_DEFAULT_SUBMONOID:
        raise InvalidInputError(f"unknown family {family!r}")
    s = parse_submonoid(args.submonoid) if args.submonoid else FAMILY_DEFAULT_SUBMONOID[family]
    hard_cap = 5 if family == mg.MixedGraph.kind else 4
    if args.n > min(args.max_size, hard_cap):
        raise ResourceLimitError(
            f"survey size {args.n} exceeds the cap {min(args.max_size, hard_cap)}"
        )
    if family == dp.DoublePoset.kind and s not in dp.DoublePoset.valid_submonoids:
        raise InvalidInputError(f"submonoid {s.value!r} is invalid for {family}")
    if family == mg.MixedGraph.kind and s not in mg.MixedGraph.valid_submonoids:
        raise InvalidInputError(f"submonoid {s.value!r} is invalid for {family}")

    done: dict[str, str] = {}
    header = "\t".join(SURVEY_COLUMNS)
    if args.resume and os.path.exists(args.out):
        with open(args.out, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line or line == header:
                    continue
                done[line.split("\t", 1)[0]] = line

    keys = [
        enumeration.canonical_key(h)
        for h in enumeration.structures_up_to(family, args.n)
    ]
    todo = [k for k in keys if k not in done]

    rows: dict[str, str] = dict(done)
    mode = "a" if args.resume and os.path.exists(args.out) else "w"
    with open(args.out, mode, encoding="utf-8") as fh:
        if mode == "w":
            fh.write(header + "\n")
        packed = [(family, s.value, k) for k in todo]
        if args.jobs > 1 and packed:
            with multiprocessing.Pool(args.jobs) as pool:
                computed = pool.map(_survey_row_star, packed)
        else:
            computed = [_survey_row_star(p) for p in packed]
        row_dicts = []
        for row in computed:
            line = _format_row(row)
            rows[row["canonical"]] = line
            row_dicts.append(row)
            fh.write(line + "\n")
            fh.flush()

    # finalize: canonical-form-sorted records, byte-stable across runs
    with open(args.out + ".tmp", "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for key in sorted(rows):
            fh.write(rows[key] + "\n")
    os.replace(args.out + ".tmp", args.out)

    summary = {
        "verb": "survey",
        "family": family,
        "submonoid": s.value,
        "n": args.n,
        "rows": len(rows),
        "out": args.out,
    }
    if args.figures:
        from .report import survey_figures

        os.makedirs(args.figures, exist_ok=True)
        all_rows = [
            survey_parse_line(line) for line in rows.values()
        ]
        summary["figures"] = survey_figures(
            all_rows, args.figures, f"{family}/{s.value}/n<={args.n}"
        )
    emit(summary)
    return 0


def survey_parse_line(line: str) -> dict:
    parts = line.split("\t")
    vec_text = parts[2].strip("()")
    entries = [int(x) for x in vec_text.split(",")] if vec_text else []
    return {
        "canonical": parts[0],
        "n": int(parts[1]),
        "h_vector": entries,
        "h_positive": parts[3] == "true",
        "theorem1": parts[4] == "true",
        "relative_cm": parts[5] == "true",
        "criterion": parts[6] == "true",
        "agreement": parts[7] == "true",
    }


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfcolor",
        description="Coloring complexes, h-vectors, and Cohen-Macaulay checks "
        "for acyclic mixed graphs and double posets.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p, submonoid=True, field=False, figure=False):
        p.add_argument("input", help="path to a structure document (JSON)")
        p.add_argument(
            "--max-vertices", type=int, default=MAX_VERTICES, help="resource guard"
        )
        p.add_argument("--max-faces", type=int, default=MAX_FACES, help="resource guard")
        if submonoid:
            p.add_argument(
                "--submonoid",
                choices=[s.value for s in Submonoid],
                default=None,
                help="geometric submonoid (default: edgeless for mixed graphs, "
                "inversion-free for double posets)",
            )
        if field:
            p.add_argument(
                "--field",
                default="rational",
                help="homology coefficients: rational or prime:<p>",
            )
        if figure:
            p.add_argument("--figure", default=None, help="also render a PNG here")

    p = sub.add_parser("validate", help="validate and echo the canonical document")
    add_common(p, submonoid=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sigma", help="order complex of coproduct supports")
    add_common(p, submonoid=False, figure=True)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("gamma", help="generalized coloring subcomplex")
    add_common(p, figure=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("fvector", help="face counts of sigma, gamma, and the pair")
    add_common(p)
    p.set_defaults(func=cmd_fvector)

    p = sub.add_parser("homology", help="Betti tables of sigma, gamma, and the pair")
    add_common(p, field=True)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("charpoly", help="characteristic polynomial by exact interpolation")
    add_common(p)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("hvector", help="h-vector of the shifted counting polynomial")
    add_common(p)
    p.add_argument("--unshifted", action="store_true", help="W-transform without the shift")
    p.set_defaults(func=cmd_hvector)

    p = sub.add_parser("qsym", help="quasisymmetric expansion of the proper-function enumerator")
    add_common(p)
    p.add_argument("--basis", choices=["monomial", "fundamental"], default="monomial")
    p.set_defaults(func=cmd_qsym)

    p = sub.add_parser("cm-check", help="homological (relative) Cohen-Macaulay check")
    add_common(p, field=True)
    p.set_defaults(func=cmd_cm_check)

    p = sub.add_parser("theorem-check", help="combinatorial relative-CM criterion over minors")
    add_common(p)
    p.set_defaults(func=cmd_theorem_check)

    p = sub.add_parser("crossing", help="crossing pairs of undirected edges")
    add_common(p, submonoid=False)
    p.set_defaults(func=cmd_crossing)

    p = sub.add_parser("inv2desc", help="inversion-to-descent condition of a double poset")
    add_common(p, submonoid=False)
    p.set_defaults(func=cmd_inv2desc)

    p = sub.add_parser("survey", help="exhaustive sweep writing TSV records")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_DEFAULT_SUBMONOID))
    p.add_argument("--submonoid", choices=[s.value for s in Submonoid], default=None)
    p.add_argument("-n", type=int, required=True, help="maximum ground-set size")
    p.add_argument("--out", required=True, help="output TSV path")
    p.add_argument("--figures", default=None, help="directory for summary figures")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--resume", action="store_true", help="skip records already in --out")
    p.add_argument("--max-size", type=int, default=MAX_SURVEY_SIZE, help="resource guard")
    p.set_defaults(func=cmd_survey)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"validation error [{e.code}]: {e}", file=sys.stderr)
        return 3
    except InvalidInputError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 3
    except ResourceLimitError as e:
        print(f"resource guard: {e}", file=sys.stderr)
        return 4
    except InternalConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return 5
    except HopfColorError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
