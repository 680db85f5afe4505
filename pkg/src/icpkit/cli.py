"""Command-line front end.

Exit status: 0 success or ACCEPT, 1 REJECT / ABSENT / not a solution,
2 usage, parse or domain errors.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import embeddings as emb
from .documents import InstanceDocument, WitnessDocument, parse_instance_document, parse_witness_document
from .errors import IcpkitError, NotASolution
from .freegroup import format_word
from .icp import (
    IcpInstance,
    TaggedIcpInstance,
    decompose_by_parts,
    eval_product,
    part_zetas,
    search_identity_bounded,
    split_cycles,
    verify_icp,
)
from .pcp import (
    PcpInstance,
    RestrictedPcpInstance,
    eval_pcp,
    eval_restricted,
    solve_pcp_bounded,
    solve_restricted_bounded,
)
from .reduction import build_icp_instance, sigma_collapse, translate_witness

log = logging.getLogger("icpkit")

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class UsageError(IcpkitError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_instance(path: str):
    doc = parse_instance_document(_read(path))
    return doc, doc.to_instance()


def _witness_target(inst) -> str:
    if isinstance(inst, RestrictedPcpInstance):
        return "restricted-pcp"
    if isinstance(inst, PcpInstance):
        return "pcp"
    return "icp"


def cmd_reduce(args) -> int:
    doc, inst = _load_instance(args.input)
    if not isinstance(inst, RestrictedPcpInstance):
        raise UsageError(f"reduce expects a restricted-pcp document, got {doc.kind}")
    W = build_icp_instance(inst)
    meta = {"n": str(inst.n), "m": str(len(W))}
    _emit(InstanceDocument.from_instance(W, meta).serialize(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    _, inst = _load_instance(args.instance)
    wit = parse_witness_document(_read(args.witness))
    target = _witness_target(inst)
    if wit.target != target:
        raise UsageError(f"{wit.target} witness cannot be checked against a {target} instance")
    if not wit.found:
        raise UsageError("witness document records an absent witness; nothing to verify")
    if target == "icp":
        value = eval_product(inst, wit.indices)
        ok = value.is_identity()
        detail = f"result: {format_word(value.s) or 'ε'} | {format_word(value.t) or 'ε'}"
    else:
        top, bottom = eval_pcp(inst, wit.indices) if target == "pcp" else eval_restricted(inst, wit.indices)
        ok = top == bottom
        detail = f"word: {format_word(top)}" if ok else f"result: {format_word(top)} | {format_word(bottom)}"
    _emit(f"{'ACCEPT' if ok else 'REJECT'}\n{detail}\n", args.output)
    return EXIT_OK if ok else EXIT_NO


def cmd_search(args) -> int:
    _, inst = _load_instance(args.instance)
    if args.max_len < 1:
        raise UsageError("--max-len must be >= 1")
    stats: dict = {}
    target = _witness_target(inst)
    if target == "restricted-pcp":
        seq = solve_restricted_bounded(inst, args.max_len, stats)
    elif target == "pcp":
        seq = solve_pcp_bounded(inst, args.max_len, stats)
    else:
        seq = search_identity_bounded(inst, args.max_len, stats)
    meta = {"max-len": str(args.max_len), "states": str(stats.get("states", 0))}
    result = None
    if seq is not None:
        if target == "icp":
            result = tuple(eval_product(inst, seq))
        elif target == "pcp":
            result = eval_pcp(inst, seq)
        else:
            result = eval_restricted(inst, seq)
    _emit(WitnessDocument(target, seq, result, meta).serialize(), args.output)
    if seq is None:
        print("ABSENT", file=sys.stderr)
        return EXIT_NO
    return EXIT_OK


def cmd_translate(args) -> int:
    _, inst = _load_instance(args.instance)
    if not isinstance(inst, RestrictedPcpInstance):
        raise UsageError("translate expects a restricted-pcp instance")
    wit = parse_witness_document(_read(args.witness))
    if wit.target != "restricted-pcp" or not wit.found:
        raise UsageError("translate expects a found restricted-pcp witness")
    try:
        seq = translate_witness(inst, wit.indices)
    except NotASolution as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO
    value = eval_product(build_icp_instance(inst), seq)
    meta = {"source": " ".join(map(str, wit.indices)) or "-"}
    _emit(WitnessDocument("icp", seq, tuple(value), meta).serialize(), args.output)
    return EXIT_OK


def cmd_embed(args) -> int:
    doc, inst = _load_instance(args.instance)
    if not isinstance(inst, (IcpInstance, TaggedIcpInstance)):
        raise UsageError(f"embed expects an icp or tagged-icp document, got {doc.kind}")
    if args.collapse:
        inst = sigma_collapse(inst)
    lines = ["format: 1", "kind: embedding", f"target: {args.target}", f"count: {len(inst)}"]
    if args.target == "matrix":
        for k, m in enumerate(emb.embed_icp_as_matrices(inst), 1):
            lines += [f"generator: {k}", emb.format_matrix(m)]
    else:
        for k, (a, b) in enumerate(emb.embed_icp_as_rotations(inst), 1):
            lines += [f"generator: {k}", emb.format_quaternion(a), emb.format_quaternion(b)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    doc, inst = _load_instance(args.instance)
    if not isinstance(inst, TaggedIcpInstance):
        raise UsageError(f"analyze needs a tagged-icp document, got {doc.kind}")
    wit = parse_witness_document(_read(args.witness))
    if wit.target != "icp" or not wit.found:
        raise UsageError("analyze expects a found icp witness")
    seq = wit.indices
    lines = ["format: 1", "kind: analysis", f"length: {len(seq)}", f"identity: {verify_icp(inst, seq)}"]
    for part in decompose_by_parts(inst, seq):
        lines.append(f"part: {part.part_type.name} {part.segment.start} {part.segment.stop - 1}")
    for segment, ok in split_cycles(inst, seq):
        lines.append(f"segment: {segment.start} {segment.stop - 1} {'cycle' if ok else 'not-a-cycle'}")
    total, malformed = 0, 0
    for pz in part_zetas(inst, seq):
        where = f"{pz.part.part_type.name} {pz.part.segment.start}"
        if pz.error is not None:
            malformed += 1
            lines.append(f"zeta-part: {where} malformed")
            print(f"warning: {pz.error}", file=sys.stderr)
        else:
            total += pz.value
            lines.append(f"zeta-part: {where} {pz.value}")
    lines.append(f"zeta: {total}" if not malformed else f"zeta: undefined ({malformed} malformed parts)")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="icpkit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *positionals):
        p = sub.add_parser(name, help=help_text)
        for pos in positionals:
            p.add_argument(pos, help="path, or - for standard input")
        p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("reduce", cmd_reduce, "encode a restricted PCP instance as an ICP instance", "input")
    add("verify", cmd_verify, "check a witness against an instance", "instance", "witness")
    p = add("search", cmd_search, "bounded (length, lex) witness search", "instance")
    p.add_argument("--max-len", type=int, required=True)
    add("translate", cmd_translate, "turn a restricted PCP solution into an ICP solution", "instance", "witness")
    p = add("embed", cmd_embed, "print matrix or quaternion generators", "instance")
    p.add_argument("--target", choices=("matrix", "quaternion"), default="matrix")
    p.add_argument("--collapse", action="store_true", help="rewrite over {a, b} first")
    add("analyze", cmd_analyze, "parts, cycles and zeta of a witness", "instance", "witness")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (IcpkitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
