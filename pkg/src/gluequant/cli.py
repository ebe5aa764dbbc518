"""Command-line front end: catalog, nsm, glue-survey, geometry, export, import.

All JSON output is versioned with schema_version 1 and is byte-identical for
identical configurations (including seed and streams).  Errors print a single
machine-parsable line `error: <Code>: <message>` and exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import catalog, geometry, glue, nsm
from .core import make_lattice, read_generator_text, write_generator_text
from .errors import GluequantError

SCHEMA_VERSION = 1
DEFAULT_SAMPLES = 10_000_000
FAST_SAMPLES = 100_000


def _emit(payload: dict, text_lines: list[str], args) -> None:
    if args.format == "json":
        clean = {k: v for k, v in payload.items() if not k.startswith("_")}
        out = json.dumps(clean, indent=2) + "\n"
    elif args.format == "csv":
        out = payload["_csv"]
    else:
        out = "\n".join(text_lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return format(x, ".9g")
    return str(x)


def _samples(args) -> int:
    if args.samples is not None:
        return args.samples
    return FAST_SAMPLES if args.fast else DEFAULT_SAMPLES


def cmd_catalog(args) -> int:
    rows = catalog.listing()
    payload = {"schema_version": SCHEMA_VERSION, "command": "catalog", "entries": rows}
    header = f"{'name':<12} {'dim':>4} {'det':>8} {'nsm':>12}  exact"
    lines = [header, "-" * len(header)]
    csv_lines = ["name,dimension,det_gram,known_nsm,known_nsm_exact,known_facets"]
    for r in rows:
        dim = r["dimension"] if r["dimension"] is not None else "n"
        lines.append(
            f"{r['name']:<12} {dim:>4} {_fmt(r['det_gram']):>8} {_fmt(r['known_nsm']):>12}  {r['known_nsm_exact'] or '-'}"
        )
        csv_lines.append(
            f"{r['name']},{dim},{r['det_gram']},{_fmt(r['known_nsm'])},{r['known_nsm_exact'] or ''},{r['known_facets'] or ''}"
        )
    payload["_csv"] = "\n".join(csv_lines) + "\n"
    _emit(payload, lines, args)
    return 0


def cmd_nsm(args) -> int:
    lattice = catalog.resolve_spec(args.lattice)
    est = nsm.estimate_nsm(
        lattice,
        samples=_samples(args),
        seed=args.seed,
        streams=args.streams,
        lattice_id=args.lattice,
    )
    payload = {"schema_version": SCHEMA_VERSION, "command": "nsm", **est.to_json()}
    payload["_csv"] = f"lattice,g_hat,two_sigma\n{args.lattice},{est.g_hat!r},{2 * est.sigma_hat!r}\n"
    lines = [
        f"{args.lattice}: G = {est.g_hat:.6f} ± {2 * est.sigma_hat:.6f}  "
        f"(samples={est.samples}, seed={est.seed}, streams={est.streams})",
        json.dumps(est.to_json()),
    ]
    _emit(payload, lines, args)
    return 0


def _survey_rows(base_name: str):
    if base_name == "E6xE6":
        comp = glue.standard_glue_vectors("E6")
        base = catalog.resolve_spec("E6xE6")
        groups = glue.enumerate_glue_groups(base, [comp, comp])
        return groups, groups, None, None
    if base_name == "D6xD6":
        comp = glue.standard_glue_vectors("D6")
        base = catalog.resolve_spec("D6xD6")
        groups = glue.enumerate_glue_groups(base, [comp, comp])
        classes = glue.reduce_by_symmetry(groups, glue.builtin_symmetries("D6xD6"))
        nonproduct = [g for g in classes if not glue.is_product_group(g)]
        return groups, nonproduct, len(classes), len(nonproduct)
    raise GluequantError(f"unsupported survey base {base_name}")


def cmd_glue_survey(args) -> int:
    t0 = time.perf_counter()
    groups, rows_groups, class_count, nonproduct_count = _survey_rows(args.base)
    samples = _samples(args)
    rows = []
    for idx, g in enumerate(rows_groups):
        lat = glue.glued_generator(g).result
        row_seed = args.seed + idx
        est = nsm.estimate_nsm(lat, samples, seed=row_seed, streams=args.streams,
                               lattice_id="+".join(g.labels()))
        rows.append(
            {
                "glue_words": g.labels(),
                "word_indices": list(g.word_indices),
                "order": g.order,
                "seed": row_seed,
                "g_hat": est.g_hat,
                "sigma_hat": est.sigma_hat,
                "two_sigma": 2 * est.sigma_hat,
            }
        )
    elapsed = time.perf_counter() - t0
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "glue-survey",
        "base": args.base,
        "samples": samples,
        "seed": args.seed,
        "streams": args.streams,
        "group_count": len(groups),
        "class_count": class_count,
        "nonproduct_count": nonproduct_count,
        "rows": rows,
    }
    lines = [
        f"base {args.base}: {len(groups)} glue groups"
        + (f", {class_count} classes, {nonproduct_count} non-product" if class_count else ""),
        f"samples={samples} seed={args.seed} streams={args.streams} wall={elapsed:.2f}s",
    ]
    csv_lines = ["group,g_hat,two_sigma"]
    for r in rows:
        label = "+".join(r["glue_words"])
        lines.append(f"  {{{','.join(r['glue_words'])}}}: G = {r['g_hat']:.6f} ± {r['two_sigma']:.6f} (seed={r['seed']})")
        csv_lines.append(f"{label},{r['g_hat']!r},{r['two_sigma']!r}")
    payload["_csv"] = "\n".join(csv_lines) + "\n"
    _emit(payload, lines, args)
    return 0


def cmd_geometry(args) -> int:
    lattice = catalog.resolve_spec(args.lattice)
    covering = None
    try:
        covering = catalog.get(args.lattice).known_covering_radius
    except GluequantError:
        pass
    summary = geometry.summarize(lattice, covering_radius=covering,
                                 covering_samples=args.covering_samples, seed=args.seed)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "geometry",
        "lattice": args.lattice,
        "dimension": lattice.dimension,
        "det_gram": lattice.det_gram,
        **summary.to_json(),
    }
    lines = [
        f"{args.lattice}: facets={summary.relevant_count} min_norm2={_fmt(summary.min_norm2)} "
        f"kissing={summary.kissing}",
        f"packing_radius={_fmt(summary.packing_radius)} density={_fmt(summary.packing_density)}",
        f"covering_radius={_fmt(summary.covering_radius)} ({summary.covering_radius_source or 'n/a'}) "
        f"thickness={_fmt(summary.thickness)}",
    ]
    cov = summary.covering_radius
    payload["_csv"] = (
        "lattice,facets,min_norm2,kissing,density,covering_radius,thickness\n"
        f"{args.lattice},{summary.relevant_count},{summary.min_norm2!r},{summary.kissing},"
        f"{summary.packing_density!r},{'' if cov is None else repr(cov)},"
        f"{'' if summary.thickness is None else repr(summary.thickness)}\n"
    )
    _emit(payload, lines, args)
    return 0


def cmd_export(args) -> int:
    lattice = catalog.resolve_spec(args.lattice)
    write_generator_text(lattice, args.path)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "export",
        "lattice": args.lattice,
        "path": args.path,
        "rows": lattice.dimension,
        "cols": lattice.ambient_dim,
    }
    payload["_csv"] = f"lattice,path\n{args.lattice},{args.path}\n"
    _emit(payload, [f"wrote {lattice.dimension}x{lattice.ambient_dim} generator to {args.path}"], args)
    return 0


def cmd_import(args) -> int:
    mat = read_generator_text(args.path)
    lattice = make_lattice(mat, name=os.path.basename(args.path))
    min_norm2 = None
    if lattice.dimension <= geometry.MAX_DIM:
        min_norm2, _ = geometry.minimal_vectors(lattice)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "import",
        "path": args.path,
        "dimension": lattice.dimension,
        "ambient_dim": lattice.ambient_dim,
        "det_gram": lattice.det_gram,
        "volume": lattice.volume,
        "min_norm2": min_norm2,
    }
    payload["_csv"] = f"path,dimension,det_gram\n{args.path},{lattice.dimension},{lattice.det_gram!r}\n"
    lines = [
        f"imported {args.path}: n={lattice.dimension} m={lattice.ambient_dim} "
        f"det={_fmt(lattice.det_gram)} min_norm2={_fmt(min_norm2)}"
    ]
    _emit(payload, lines, args)
    return 0


def _add_common(p, samples=False):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", default=None, help="write the report to a file instead of stdout")
    if samples:
        p.add_argument("--samples", type=int, default=None,
                       help=f"Monte Carlo samples (default {DEFAULT_SAMPLES})")
        p.add_argument("--fast", action="store_true", help=f"shortcut for --samples {FAST_SAMPLES}")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--streams", type=int, default=os.cpu_count() or 1,
                       help="independent RNG substreams (part of the reproducible config)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gluequant",
                                 description="lattice quantizers from coset gluing")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in lattices and reference values")
    _add_common(p)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("nsm", help="Monte Carlo NSM estimate for a lattice spec")
    p.add_argument("lattice", help="catalog name, product like E6xE6*, or a generator file")
    _add_common(p, samples=True)
    p.set_defaults(fn=cmd_nsm)

    p = sub.add_parser("glue-survey", help="enumerate glue groups of a product base and estimate each NSM")
    p.add_argument("base", choices=("E6xE6", "D6xD6"))
    _add_common(p, samples=True)
    p.set_defaults(fn=cmd_glue_survey)

    p = sub.add_parser("geometry", help="facet/kissing/density/thickness report")
    p.add_argument("lattice")
    p.add_argument("--covering-samples", type=int, default=0,
                   help="sample a covering-radius lower bound when no asserted value exists")
    p.add_argument("--seed", type=int, default=1)
    _add_common(p)
    p.set_defaults(fn=cmd_geometry)

    p = sub.add_parser("export", help="write a generator matrix file")
    p.add_argument("lattice")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("import", help="read and validate a generator matrix file")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(fn=cmd_import)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except GluequantError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: IOError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
