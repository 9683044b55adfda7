from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from slax.container import canonical_json, piece_to_manifest
from slax.server import create_app

from generators import (
    DRUMS_1,
    DRUMS_2,
    DRUMS_3,
    GUITAR_1,
    PIANO_2,
    nine_stem_payloads,
    nine_stem_piece,
)


@pytest.fixture(scope="module")
def loaded():
    piece = nine_stem_piece(selected=(PIANO_2, DRUMS_1))
    payloads = nine_stem_payloads(piece, frames=256)
    return piece, payloads, TestClient(create_app(piece, payloads))


def action(kind, **fields):
    return json.dumps({"type": "action", "action": {"kind": kind, **fields}})


class TestHttp:
    def test_healthz(self, loaded):
        assert loaded[2].get("/healthz").json() == {"status": "ok"}

    def test_piece_returns_manifest_and_stem_urls(self, loaded):
        piece, _, client = loaded
        doc = client.get("/piece").json()
        assert doc["manifest"] == json.loads(canonical_json(piece_to_manifest(piece)))
        assert len(doc["manifest"]["tracks"]) == 9
        assert len(doc["manifest"]["selection_constraints"]) == 3
        assert doc["manifest"]["group_tree"]["name"] == "band"
        assert doc["stems"] == ["/stems/{}".format(i) for i in range(9)]

    def test_empty_constraint_piece_lists_empty_arrays(self):
        piece = nine_stem_piece()
        piece = type(piece)(
            piece.title, piece.sample_rate, piece.tracks, piece.group_tree, (), ()
        )
        client = TestClient(create_app(piece, nine_stem_payloads(piece, frames=16)))
        doc = client.get("/piece").json()
        assert doc["manifest"]["selection_constraints"] == []
        assert doc["manifest"]["mix_constraints"] == []

    def test_stem_bytes_are_identical_to_the_container_payloads(self, loaded):
        _, payloads, client = loaded
        for i, payload in enumerate(payloads):
            response = client.get("/stems/{}".format(i))
            assert response.headers["content-type"] == "audio/wav"
            assert response.content == payload

    def test_unknown_stem_is_404(self, loaded):
        assert loaded[2].get("/stems/99").status_code == 404

    def test_before_load_everything_is_503(self):
        client = TestClient(create_app(None))
        assert client.get("/piece").status_code == 503
        assert client.get("/stems/0").status_code == 503


class TestWebSocket:
    def test_hello_carries_the_initial_state(self, loaded):
        _, _, client = loaded
        with client.websocket_connect("/session") as ws:
            hello = json.loads(ws.receive_text())
        assert hello["type"] == "hello"
        assert hello["cause"] == "initial"
        assert isinstance(hello["revision"], int)
        assert len(hello["selection"]) == 9
        assert len(hello["mix"]) == 9

    def test_accepted_action_broadcasts_to_every_client(self):
        piece = nine_stem_piece(selected=(PIANO_2, DRUMS_1))
        client = TestClient(create_app(piece, nine_stem_payloads(piece, frames=16)))
        with client.websocket_connect("/session") as a, \
                client.websocket_connect("/session") as b:
            a.receive_text()
            b.receive_text()
            a.send_text(action("toggle", tracks=[[GUITAR_1, True]]))
            event_a = json.loads(a.receive_text())
            event_b = json.loads(b.receive_text())
            assert event_a == event_b
            assert event_a["type"] == "event"
            assert event_a["cause"] == "action"
            assert [PIANO_2, False] in event_a["changes"]["selection"]
            assert event_a["selection"][GUITAR_1] is True

    def test_rejection_goes_only_to_the_sender(self):
        piece = nine_stem_piece(selected=(PIANO_2, DRUMS_1))
        client = TestClient(create_app(piece, nine_stem_payloads(piece, frames=16)))
        with client.websocket_connect("/session") as a, \
                client.websocket_connect("/session") as b:
            a.receive_text()
            b.receive_text()
            a.send_text(action(
                "toggle", tracks=[[DRUMS_1, False], [DRUMS_2, False], [DRUMS_3, False]]
            ))
            rejection = json.loads(a.receive_text())
            assert rejection["type"] == "rejected"
            assert rejection["reason"]["kind"] == "infeasible"
            # b sees nothing for the rejection; the next frame it receives
            # is the following accepted action
            a.send_text(action("set_levels", levels=[[0, 55]]))
            event_b = json.loads(b.receive_text())
            assert event_b["type"] == "event"
            assert event_b["mix"][0] == 55

    def test_malformed_messages_get_an_error_reply_and_keep_the_socket(self, loaded):
        _, _, client = loaded
        with client.websocket_connect("/session") as ws:
            ws.receive_text()
            ws.send_text("{}")
            reply = json.loads(ws.receive_text())
            assert reply["type"] == "error"
            assert reply["code"] == "BAD_ACTION"
            ws.send_text("this is not json")
            assert json.loads(ws.receive_text())["code"] == "BAD_ACTION"
            ws.send_text(action("toggle", tracks=[]))
            assert json.loads(ws.receive_text())["code"] == "BAD_ACTION"
            # socket still works
            ws.send_text(action("play"))
            assert json.loads(ws.receive_text())["type"] == "event"

    def test_revisions_increase_strictly_across_interleaved_clients(self):
        piece = nine_stem_piece(selected=(PIANO_2, DRUMS_1))
        client = TestClient(create_app(piece, nine_stem_payloads(piece, frames=16)))
        with client.websocket_connect("/session") as a, \
                client.websocket_connect("/session") as b:
            a.receive_text()
            b.receive_text()
            events_a, events_b = [], []
            for k in range(5):
                sender = a if k % 2 == 0 else b
                sender.send_text(action("toggle", tracks=[[GUITAR_1, k % 2 == 0]]))
                events_a.append(json.loads(a.receive_text()))
                events_b.append(json.loads(b.receive_text()))
            assert events_a == events_b
            revisions = [e["revision"] for e in events_a]
            assert revisions == sorted(revisions)
            assert len(set(revisions)) == len(revisions)
