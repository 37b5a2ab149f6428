"""Command-line surface.

Exit codes: 0 = the input belongs to the class (or a verify pass);
1 = certified non-membership (or a verify failure); 2 = usage or parse
errors; 3 = a guarded oracle refused the instance size.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import certificates as certdoc
from .certificates import CertificateDocument, CertificateError, digest_bytes
from .checkers import (
    check_c1p_order,
    check_interval_model,
    check_lb_certificate,
    check_tucker_certificate,
    gen_instance,
    oracle_minimal_noninterval,
)
from .graphs import Graph, GraphFormatError, parse_graph
from .lb import IntervalModel, LBCertificate, lb_catalog, recognize_interval
from .matrix import MatrixFormatError, parse_matrix
from .oracles import TooLarge, oracle_c1p
from .pqtree import reduce_max_prefix
from .tucker import TuckerCertificate, canonical_tucker, find_tucker

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_TOO_LARGE = 3


def _build_parser():
    p = argparse.ArgumentParser(
        prog="intervalcert",
        description="Certifying consecutive-ones and interval-graph recognition",
    )
    p.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="certificate encoding (default: text)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("c1p", help="decide the consecutive-ones property")
    s.add_argument("matrix_file")

    s = sub.add_parser("interval", help="decide interval-graph membership")
    s.add_argument("graph_file")

    s = sub.add_parser("verify", help="check a certificate against its input")
    s.add_argument("cert_file")
    s.add_argument("--against", required=True, metavar="INPUT_FILE")

    s = sub.add_parser("catalog", help="emit a catalog matrix or graph")
    s.add_argument("which", choices=("tucker", "lb"))
    s.add_argument("family", choices=("I", "II", "III", "IV", "V"))
    s.add_argument("k", nargs="?", type=int, default=None)

    s = sub.add_parser("gen", help="emit a generated instance")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--class", dest="size_class", required=True)
    s.add_argument("--rows", type=int, default=None)
    s.add_argument("--cols", type=int, default=None)
    s.add_argument("--n", type=int, default=None)

    s = sub.add_parser("oracle", help="guarded brute-force ground truth")
    s.add_argument("which", choices=("c1p", "lb-min"))
    s.add_argument("input_file")

    s = sub.add_parser("bench", help="scaling benchmark of the Tucker pipeline")
    s.add_argument("--min-size", type=int, required=True)
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    return p


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _tucker_doc(cert, digest):
    return CertificateDocument(
        "tucker",
        {
            "family": cert.family,
            "k": cert.k,
            "rows": cert.row_ids,
            "cols": cert.col_ids,
            "row_perm": cert.row_perm,
            "col_perm": cert.col_perm,
        },
        digest,
    )


def _lb_doc(cert, digest):
    return CertificateDocument(
        "lb",
        {
            "family": cert.family,
            "k": cert.k,
            "vertices": cert.vertices,
            "iso": cert.iso,
        },
        digest,
    )


def cmd_c1p(args, out, err):
    data = _read(args.matrix_file)
    m = parse_matrix(data)
    digest = digest_bytes(data)
    trace = reduce_max_prefix(m, list(range(m.n_rows)))
    if trace.z_index is None:
        doc = CertificateDocument(
            "c1p-order", {"order": trace.frontier_order()}, digest
        )
        out.write(certdoc.emit(doc, args.format))
        return EXIT_OK
    cert = find_tucker(m)
    out.write(certdoc.emit(_tucker_doc(cert, digest), args.format))
    return EXIT_NEGATIVE


def cmd_interval(args, out, err):
    data = _read(args.graph_file)
    g = parse_graph(data)
    digest = digest_bytes(data)
    res = recognize_interval(g)
    if res.is_interval:
        doc = CertificateDocument(
            "interval-model", {"intervals": res.model.intervals}, digest
        )
        out.write(certdoc.emit(doc, args.format))
        return EXIT_OK
    out.write(certdoc.emit(_lb_doc(res.certificate, digest), args.format))
    return EXIT_NEGATIVE


def cmd_verify(args, out, err):
    doc = certdoc.parse_document(_read(args.cert_file))
    data = _read(args.against)
    digest = digest_bytes(data)
    if doc.input_digest and doc.input_digest != digest:
        out.write("FAIL: input digest mismatch\n")
        return EXIT_NEGATIVE
    if doc.kind == "c1p-order":
        m = parse_matrix(data)
        report = check_c1p_order(m, doc.fields["order"])
    elif doc.kind == "tucker":
        m = parse_matrix(data)
        cert = TuckerCertificate(
            doc.fields["family"],
            doc.fields["k"],
            doc.fields["rows"],
            doc.fields["cols"],
            doc.fields["row_perm"],
            doc.fields["col_perm"],
        )
        report = check_tucker_certificate(m, cert)
    elif doc.kind == "interval-model":
        g = parse_graph(data)
        report = check_interval_model(g, IntervalModel(doc.fields["intervals"]))
    else:
        g = parse_graph(data)
        cert = LBCertificate(
            doc.fields["family"],
            doc.fields["k"],
            doc.fields["vertices"],
            doc.fields["iso"],
        )
        report = check_lb_certificate(g, cert)
    if report.ok:
        out.write("OK\n")
        return EXIT_OK
    for v in report.violations:
        out.write(f"FAIL: {v}\n")
    return EXIT_NEGATIVE


def cmd_catalog(args, out, err):
    if args.which == "tucker":
        out.write(canonical_tucker(args.family, args.k).to_text())
    else:
        out.write(lb_catalog(args.family, args.k).to_text())
    return EXIT_OK


def cmd_gen(args, out, err):
    inst = gen_instance(
        args.seed, args.size_class, n_rows=args.rows, n_cols=args.cols, n=args.n
    )
    out.write(inst.to_text())
    return EXIT_OK


def cmd_oracle(args, out, err):
    data = _read(args.input_file)
    if args.which == "c1p":
        m = parse_matrix(data)
        order = oracle_c1p(m)
        if order is None:
            out.write("non-c1p\n")
            return EXIT_NEGATIVE
        out.write("c1p " + " ".join(map(str, order)) + "\n")
        return EXIT_OK
    g = parse_graph(data)
    if oracle_minimal_noninterval(g):
        out.write("minimal-non-interval\n")
        return EXIT_OK
    out.write("not-minimal-non-interval\n")
    return EXIT_NEGATIVE


def bench_instance(seed, target_size):
    """A non-C1P matrix with size(M) near target_size.

    Random short interval rows over a shuffled column line with a canonical
    forbidden pattern on fresh columns appended last, so every pipeline
    iteration processes the whole matrix and timings are comparable across
    sizes.
    """
    import random

    from .matrix import BinaryMatrix

    rng = random.Random(f"bench|{seed}|{target_size}")
    n_rows = max(12, target_size // 6)
    n_cols = max(24, n_rows // 2)
    pattern = canonical_tucker("III", 6)
    base_cols = n_cols - pattern.n_cols
    rows = []
    for _ in range(n_rows - pattern.n_rows):
        length = 1 + min(rng.randrange(1, 9), rng.randrange(1, 9))
        start = rng.randrange(base_cols - length + 1)
        rows.append(range(start, start + length))
    col_map = list(range(n_cols))
    rng.shuffle(col_map)
    out = [sorted(col_map[c] for c in r) for r in rows]
    pat_cols = [col_map[base_cols + j] for j in range(pattern.n_cols)]
    for r in pattern.rows:
        out.append(sorted(pat_cols[c] for c in r))
    return BinaryMatrix(n_rows, n_cols, out)


def run_bench(min_size, max_size, seed):
    """[(actual_size, millis)] for doubling target sizes."""
    results = []
    size = min_size
    while size <= max_size:
        m = bench_instance(seed, size)
        t0 = time.perf_counter()
        cert = find_tucker(m)
        dt = (time.perf_counter() - t0) * 1000.0
        results.append((m.size(), dt))
        size *= 2
    return results


def cmd_bench(args, out, err):
    out.write("size,millis\n")
    for size, ms in run_bench(args.min_size, args.max_size, args.seed):
        out.write(f"{size},{ms:.3f}\n")
    return EXIT_OK


_DISPATCH = {
    "c1p": cmd_c1p,
    "interval": cmd_interval,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
    "gen": cmd_gen,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
}


def main(argv, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _DISPATCH[args.command](args, out, err)
    except TooLarge as exc:
        err.write(f"error: {exc}\n")
        return EXIT_TOO_LARGE
    except (MatrixFormatError, GraphFormatError, CertificateError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def entry():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
