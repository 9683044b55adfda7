"""JSON wire encoding of listener actions and session events.

The same dialect as the container manifest (canonical JSON), shared by the
live server and the CLI's render scripts.
"""

from __future__ import annotations

from typing import Any

from .mixing import PinOutOfBounds
from .model import Infeasible, SlaxError
from .session import (
    Accepted,
    ListenerAction,
    Rejected,
    SetLevels,
    Session,
    ToggleTracks,
    TransportPause,
    TransportPlay,
    TransportSeek,
)


def action_to_json(action: ListenerAction) -> dict:
    if isinstance(action, ToggleTracks):
        return {"kind": "toggle", "tracks": [[t, v] for t, v in sorted(action.tracks.items())]}
    if isinstance(action, SetLevels):
        return {"kind": "set_levels", "levels": [[t, v] for t, v in sorted(action.levels.items())]}
    if isinstance(action, TransportPlay):
        return {"kind": "play"}
    if isinstance(action, TransportPause):
        return {"kind": "pause"}
    return {"kind": "seek", "frames": action.frames}


def _int(value: Any, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError("{} must be an integer".format(what))
    return value


def _pairs(obj: Any, key: str) -> list:
    raw = obj.get(key)
    if not isinstance(raw, list) or not raw:
        raise ValueError("{!r} must be a non-empty list of pairs".format(key))
    pairs = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2):
            raise ValueError("each {!r} entry must be a [track, value] pair".format(key))
        pairs.append(item)
    return pairs


def action_from_json(obj: Any) -> ListenerAction:
    """Parse an action payload; raises ValueError on anything malformed."""
    if not isinstance(obj, dict):
        raise ValueError("action must be an object")
    kind = obj.get("kind")
    if kind == "toggle":
        tracks = {}
        for t, v in _pairs(obj, "tracks"):
            if not isinstance(v, bool):
                raise ValueError("toggle values must be booleans")
            tracks[_int(t, "track id")] = v
        return ToggleTracks(tracks)
    if kind == "set_levels":
        levels = {}
        for t, v in _pairs(obj, "levels"):
            levels[_int(t, "track id")] = _int(v, "level")
        return SetLevels(levels)
    if kind == "play":
        return TransportPlay()
    if kind == "pause":
        return TransportPause()
    if kind == "seek":
        return TransportSeek(_int(obj.get("frames"), "frames"))
    raise ValueError("unknown action kind {!r}".format(kind))


def _reason_kind(reason: SlaxError) -> str:
    if isinstance(reason, Infeasible):
        return "infeasible"
    if isinstance(reason, PinOutOfBounds):
        return "pin_out_of_bounds"
    return "invalid_action"


def session_event(session: Session, outcome: Accepted, cause: str = "action") -> dict:
    return {
        "type": "event",
        "revision": outcome.revision,
        "cause": cause,
        "selection": list(session.selection),
        "mix": list(session.mix),
        "changes": {
            "selection": [[t, v] for t, v in outcome.selection_changes],
            "levels": [[t, old, new] for t, old, new in outcome.level_changes],
        },
    }


def hello_message(session: Session) -> dict:
    return {
        "type": "hello",
        "revision": session.revision,
        "cause": "initial",
        "selection": list(session.selection),
        "mix": list(session.mix),
        "changes": {"selection": [], "levels": []},
    }


def rejected_message(session: Session, outcome: Rejected) -> dict:
    return {
        "type": "rejected",
        "revision": session.revision,
        "reason": {"kind": _reason_kind(outcome.reason), "message": str(outcome.reason)},
    }


def error_message(code: str, message: str) -> dict:
    return {"type": "error", "code": code, "message": message}
