"""Command-line surface: compress, sim, matrix, index.

Exit codes are a stable contract: 0 success, 2 malformed input, 3 not
found, 4 undefined result, 5 provider failure. Similarity values print
with 6 decimal places; files keep full precision.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import compressor, corpus, distances, relations
from .errors import MalformedInput, ProviderFailure, SimrelError

KINDS = ("ncd", "nsd", "ngd", "metric-m", "dice", "nid")


def _load_provider(spec: str):
    scheme, _, path = spec.partition(":")
    if scheme == "index" and path:
        return corpus.CorpusIndex.load(path), spec
    if scheme == "table" and path:
        return corpus.HitTable.load(path), spec
    raise MalformedInput(f"provider must be index:<path> or table:<path>, got {spec!r}")


def _read_bitstring(path: str) -> compressor.BitString:
    p = Path(path)
    if not p.is_file():
        raise MalformedInput(f"bitstring file not found: {p}")
    bits = compressor.BitString.from_text(p.read_text(encoding="utf-8"))
    if bits.length == 0:
        raise MalformedInput("empty bitstring")
    return bits


def cmd_compress(args: argparse.Namespace) -> int:
    w = _read_bitstring(args.bitstring)
    keys = None
    if args.keys:
        keys = compressor.KeyDictionary.from_text(Path(args.keys).read_text(encoding="utf-8"))
    if args.preset and args.keys:
        raise MalformedInput("pass a conditional key file or --preset, not both")
    if args.preset:
        preset = compressor.KeyDictionary.from_text(
            Path(args.preset).read_text(encoding="utf-8")
        )
        form = compressor.compress(w, preset)
    elif keys is not None:
        form = compressor.compress_conditional(w, keys, share_by=args.share_by)
    else:
        form = compressor.compress(w)
    k_p = form.length_bits / w.length
    print("|C(w)| |w| K_P(w)")
    print(f"{form.length_bits} {w.length} {k_p:.6f}")
    print("emitted keys:")
    sys.stdout.write(form.emitted.to_text())
    return 0


def cmd_sim(args: argparse.Namespace) -> int:
    provider, _ = _load_provider(args.provider)
    if args.ngd_n is not None and isinstance(provider, corpus.HitTable):
        provider.n_total = args.ngd_n
    h = corpus.hit_counts(provider, args.term_x, args.term_y)
    if args.ngd_n is not None and not isinstance(provider, corpus.HitTable):
        h = distances.HitCounts(h.f_x, h.f_y, h.f_xy, args.ngd_n)
    score = distances.similarity_from_counts(args.kind, h)
    print(f"f_x={h.f_x} f_y={h.f_y} f_xy={h.f_xy} {args.kind}={score.value:.6f}")
    return 0


def cmd_matrix(args: argparse.Namespace) -> int:
    objects = relations.load_objects_csv(args.objects)
    if len(objects) < 2:
        raise MalformedInput("need >= 2 objects")
    provider, label = _load_provider(args.provider)
    matrix = relations.build_matrix(objects, None, provider, args.kind, provider_label=label)
    if matrix.defined_count() == 0:
        raise ProviderFailure("provider produced no defined cells")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "values.tsv").write_text(relations.export_matrix(matrix, "values"), encoding="utf-8")
    (out / "categories.tsv").write_text(
        relations.export_matrix(matrix, "categories"), encoding="utf-8"
    )
    (out / "legend.txt").write_text(relations.format_legend(), encoding="utf-8")
    (out / "provenance.tsv").write_text(relations.provenance_tsv(matrix), encoding="utf-8")
    absent = sum(
        1
        for r in matrix.row_objects
        for c in matrix.col_objects
        if r.id != c.id and not matrix.cell(r.id, c.id).present
    )
    print(f"objects={len(objects)} defined_cells={matrix.defined_count()} absent_cells={absent}")
    print(f"wrote values.tsv categories.tsv legend.txt provenance.tsv to {out}")
    if args.format:
        sys.stdout.write(relations.export_matrix(matrix, args.format))
    return 0


def _read_corpus(path: str) -> list[tuple[str, str]]:
    import json

    p = Path(path)
    if p.is_dir():
        files = sorted(f for f in p.iterdir() if f.is_file() and f.suffix == ".txt")
        if not files:
            raise MalformedInput(f"no .txt documents in {p}")
        return [(f.stem, f.read_text(encoding="utf-8")) for f in files]
    if p.is_file():
        docs = []
        for lineno, line in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                docs.append((str(obj["id"]), str(obj["text"])))
            except (ValueError, KeyError) as exc:
                raise MalformedInput(f"{p}:{lineno}: expected JSON with id and text") from exc
        if not docs:
            raise MalformedInput(f"no documents in {p}")
        return docs
    raise MalformedInput(f"corpus path not readable: {p}")


def cmd_index(args: argparse.Namespace) -> int:
    docs = _read_corpus(args.corpus)
    idx = corpus.build_index(docs, omega_mode=args.omega_mode)
    idx.save(args.out)
    s = idx.stats()
    print(
        f"docs={s['documents']} vocab={s['vocabulary']} omega={s['omega_cardinality']} "
        f"psi={s['psi']} psi_ge_omega={str(s['psi_ge_omega']).lower()}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simrel",
        description="Compression- and hit-count-based similarity and relation matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a bitstring file and report |C(w)|, |w|, K_P")
    p.add_argument("bitstring", help="text file of 0/1 digits, whitespace ignored")
    p.add_argument("keys", nargs="?", default=None, help="key file for conditional compression")
    p.add_argument(
        "--share-by",
        choices=("value", "symbol"),
        default="value",
        help="how conditional keys match: by nibble value (default) or by key name",
    )
    p.add_argument("--preset", default=None, help="evaluate this key table verbatim")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("sim", help="similarity of two terms from a provider")
    p.add_argument("term_x")
    p.add_argument("term_y")
    p.add_argument("--provider", required=True, help="index:<path> or table:<path>")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument(
        "--ngd-n",
        type=int,
        default=None,
        help="index size N for ngd (nid/ncd are served by the count form of the distance)",
    )
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("matrix", help="pairwise relation matrix over an object list")
    p.add_argument("--objects", required=True, help="CSV with header id,display_name,group")
    p.add_argument("--provider", required=True, help="index:<path> or table:<path>")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument(
        "--format",
        choices=("values", "categories"),
        default=None,
        help="also echo the chosen matrix TSV to stdout",
    )
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("index", help="build and persist a corpus index")
    p.add_argument("corpus", help="directory of .txt files or a JSONL file with id/text")
    p.add_argument("--out", required=True, help="index file to write")
    p.add_argument(
        "--omega-mode",
        choices=("sum-unique", "vocabulary", "documents"),
        default="sum-unique",
    )
    p.set_defaults(func=cmd_index)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SimrelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
