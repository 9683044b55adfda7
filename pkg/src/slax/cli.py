"""Composer-facing command line: build, check, inspect, render, serve.

Exit codes are stable for scripting: 0 success, 1 validation/decode/solver
errors, 2 I/O errors.  ``--json`` switches reports to machine-readable
canonical JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import container, wire
from .model import PieceInvalid, ValidationReport, validate_piece
from .render import PcmBuffer, render
from .session import Accepted, Session
from .wavpcm import decode_wav, encode_wav

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


def _print_report(report: ValidationReport, lint, as_json: bool):
    if as_json:
        print(container.canonical_json({
            "errors": [vars(e) for e in report.errors],
            "warnings": [vars(w) for w in report.warnings],
            "lint": [vars(w) for w in lint],
        }))
        return
    for issue in report.errors:
        print("error {} at {}: {}".format(issue.code, issue.location, issue.message))
    for issue in report.warnings:
        print("warning {} at {}: {}".format(issue.code, issue.location, issue.message))
    for w in lint:
        print("warning {} for track {}: {}".format(w.rule, w.track, w.explanation))


def _fail(message: str, code: int, as_json: bool) -> int:
    if as_json:
        print(container.canonical_json({"error": message}))
    else:
        print("error: " + message, file=sys.stderr)
    return code


def cmd_build(spec_path: str, out_path: str, as_json: bool = False) -> int:
    """Author a container: read a project spec + stem WAVs, validate, encode."""
    from .session import lint_crossed_constraints

    try:
        spec = json.loads(Path(spec_path).read_text("utf-8"))
    except OSError as e:
        return _fail("cannot read {}: {}".format(spec_path, e), EXIT_IO, as_json)
    except json.JSONDecodeError as e:
        return _fail("spec is not valid JSON: {}".format(e), EXIT_INVALID, as_json)
    if not isinstance(spec, dict) or not isinstance(spec.get("stems"), list):
        return _fail("spec must be a manifest object plus a stems[] path list",
                     EXIT_INVALID, as_json)
    stems = spec.pop("stems")
    try:
        piece = container.piece_from_manifest(spec)
    except container.ManifestSyntax as e:
        return _fail(str(e), EXIT_INVALID, as_json)
    if len(stems) != len(piece.tracks):
        return _fail("{} stems listed for {} tracks".format(len(stems), len(piece.tracks)),
                     EXIT_INVALID, as_json)
    payloads = []
    base = Path(spec_path).parent
    for rel in stems:
        stem_path = Path(rel) if Path(rel).is_absolute() else base / rel
        try:
            payloads.append(stem_path.read_bytes())
        except OSError as e:
            return _fail("cannot read stem {}: {}".format(stem_path, e), EXIT_IO, as_json)

    report = validate_piece(piece)
    lint = lint_crossed_constraints(piece) if report.ok else ()
    _print_report(report, lint, as_json)
    if not report.ok:
        return EXIT_INVALID
    try:
        blob = container.encode(piece, payloads)
    except (container.ContainerError, PieceInvalid) as e:
        return _fail(str(e), EXIT_INVALID, as_json)
    try:
        Path(out_path).write_bytes(blob)
    except OSError as e:
        return _fail("cannot write {}: {}".format(out_path, e), EXIT_IO, as_json)
    if not as_json:
        print("wrote {} ({} bytes, {} stems)".format(out_path, len(blob), len(payloads)))
    return EXIT_OK


def _read_container(path: str, as_json: bool):
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        return None, _fail("cannot read {}: {}".format(path, e), EXIT_IO, as_json)
    try:
        return container.decode(data), None
    except container.ManifestInvalid as e:
        _print_report(e.report, (), as_json)
        return None, EXIT_INVALID
    except container.ContainerError as e:
        return None, _fail(str(e), EXIT_INVALID, as_json)


def cmd_check(container_path: str, as_json: bool = False) -> int:
    """Decode, validate, and lint a container; 0 iff no errors."""
    from .session import lint_crossed_constraints

    decoded, failure = _read_container(container_path, as_json)
    if decoded is None:
        return failure
    piece, _ = decoded
    report = validate_piece(piece)
    _print_report(report, lint_crossed_constraints(piece), as_json)
    if not as_json and report.ok:
        print("ok: {!r}, {} tracks".format(piece.title, len(piece.tracks)))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_inspect(container_path: str, as_json: bool = False) -> int:
    """Print the manifest of a container."""
    decoded, failure = _read_container(container_path, as_json)
    if decoded is None:
        return failure
    manifest = container.piece_to_manifest(decoded[0])
    if as_json:
        print(container.canonical_json(manifest))
    else:
        print(json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False))
    return EXIT_OK


def cmd_render(container_path: str, script_path: str, out_path: str,
               as_json: bool = False) -> int:
    """Replay a scripted action timeline and write the mixdown WAV.

    The script is JSON: {"length_frames": n?, "actions": [{"frame": f,
    "action": {...}}]} with actions in the wire encoding.  A rejected
    action aborts the render.
    """
    decoded, failure = _read_container(container_path, as_json)
    if decoded is None:
        return failure
    piece, payload_bytes = decoded
    try:
        script = json.loads(Path(script_path).read_text("utf-8"))
    except OSError as e:
        return _fail("cannot read {}: {}".format(script_path, e), EXIT_IO, as_json)
    except json.JSONDecodeError as e:
        return _fail("script is not valid JSON: {}".format(e), EXIT_INVALID, as_json)

    buffers = []
    for blob in payload_bytes:
        rate, samples = decode_wav(blob)
        buffers.append(PcmBuffer(samples=samples, sample_rate=rate))

    session = Session(piece)
    timeline = [(0, session.selection, session.mix)]
    actions = script.get("actions", []) if isinstance(script, dict) else None
    if actions is None or not isinstance(actions, list):
        return _fail("script must be an object with an actions[] list", EXIT_INVALID, as_json)
    last_frame = 0
    for i, entry in enumerate(actions):
        try:
            if not isinstance(entry, dict):
                raise ValueError("entry must be an object")
            frame = entry.get("frame")
            if not isinstance(frame, int) or isinstance(frame, bool) or frame < 0:
                raise ValueError("frame must be a non-negative integer")
            if frame < last_frame:
                raise ValueError("frames must not decrease")
            action = wire.action_from_json(entry.get("action"))
        except ValueError as e:
            return _fail("actions[{}]: {}".format(i, e), EXIT_INVALID, as_json)
        last_frame = frame
        outcome = session.apply(action)
        if not isinstance(outcome, Accepted):
            return _fail(
                "actions[{}] at frame {} rejected: {}".format(i, frame, outcome.reason),
                EXIT_INVALID, as_json)
        if (session.selection, session.mix) != timeline[-1][1:]:
            state = (frame, session.selection, session.mix)
            if timeline[-1][0] == frame:
                timeline[-1] = state
            else:
                timeline.append(state)

    length = script.get("length_frames") if isinstance(script, dict) else None
    if length is None:
        length = max((len(b.samples) for b in buffers), default=0)
    if not isinstance(length, int) or isinstance(length, bool) or length < 0:
        return _fail("length_frames must be a non-negative integer", EXIT_INVALID, as_json)

    mix = render(piece, buffers, timeline, length)
    try:
        Path(out_path).write_bytes(encode_wav(mix.samples, mix.sample_rate))
    except OSError as e:
        return _fail("cannot write {}: {}".format(out_path, e), EXIT_IO, as_json)
    if not as_json:
        print("wrote {} ({} frames at {} Hz)".format(out_path, length, mix.sample_rate))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="slax",
        description="author, inspect, render, and serve interactive multi-stem containers",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a container from a project spec")
    p.add_argument("spec", help="JSON project file: manifest fields plus stems[]")
    p.add_argument("out", help="output .slax path")

    p = sub.add_parser("check", help="validate and lint a container")
    p.add_argument("container")

    p = sub.add_parser("inspect", help="print a container's manifest")
    p.add_argument("container")

    p = sub.add_parser("render", help="replay a script and export the mixdown")
    p.add_argument("container")
    p.add_argument("script")
    p.add_argument("out")

    p = sub.add_parser("serve", help="host a live listener session")
    p.add_argument("--file", required=True, help="container to load")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--ui", default=None, help="directory of static listener UI files")

    args = parser.parse_args(argv)
    if args.command == "build":
        return cmd_build(args.spec, args.out, args.json)
    if args.command == "check":
        return cmd_check(args.container, args.json)
    if args.command == "inspect":
        return cmd_inspect(args.container, args.json)
    if args.command == "render":
        return cmd_render(args.container, args.script, args.out, args.json)
    from .server import serve_container

    try:
        serve_container(args.file, args.bind, args.port, ui_dir=args.ui)
    except OSError as e:
        return _fail("cannot serve {}: {}".format(args.file, e), EXIT_IO, args.json)
    except container.ContainerError as e:
        return _fail(str(e), EXIT_INVALID, args.json)
    return EXIT_OK


def entrypoint():
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
