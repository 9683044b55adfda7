"""The live session protocol, exercised in-process.

Two listener sockets join one shared session; an accepted action is
broadcast to both, a refused one only answers its sender.  The same
service runs standalone via ``slax serve --file demo.slax``.

Run:  python demos/05_live_session.py
"""

import json

from common import DRUMS_1, DRUMS_2, DRUMS_3, GUITAR_1, build_demo_piece, sine_stems
from fastapi.testclient import TestClient

from slax.server import create_app

piece = build_demo_piece(selected=(4, DRUMS_1))  # piano-2 and drums-1 playing
app = create_app(piece, sine_stems(piece))
client = TestClient(app)

doc = client.get("/piece").json()
print("loaded {!r}: {} stems, {} selection rules".format(
    doc["manifest"]["title"], len(doc["stems"]),
    len(doc["manifest"]["selection_constraints"])))


def act(ws, kind, **fields):
    ws.send_text(json.dumps({"type": "action", "action": {"kind": kind, **fields}}))


with client.websocket_connect("/session") as alice, \
        client.websocket_connect("/session") as bob:
    print("alice hello:", json.loads(alice.receive_text())["selection"])
    print("bob hello:  ", json.loads(bob.receive_text())["selection"])

    # alice starts guitar-1; piano-2 stops automatically and BOTH sockets
    # hear about it
    act(alice, "toggle", tracks=[[GUITAR_1, True]])
    event = json.loads(alice.receive_text())
    print("broadcast revision {} changes {}".format(event["revision"], event["changes"]))
    assert json.loads(bob.receive_text()) == event

    # bob tries to silence the drum group; only bob gets the refusal
    act(bob, "toggle", tracks=[[DRUMS_1, False], [DRUMS_2, False], [DRUMS_3, False]])
    refusal = json.loads(bob.receive_text())
    print("bob refused:", refusal["reason"]["message"])

    # the session is untouched: the next accepted action carries revision 2
    act(alice, "set_levels", levels=[[GUITAR_1, 55]])
    event = json.loads(bob.receive_text())
    print("next broadcast revision:", event["revision"], "mix[guitar-1] =", event["mix"][GUITAR_1])

print("\nstandalone:  slax serve --file demos/demo.slax --port 8000")
print("endpoints:   GET /piece   GET /stems/{i}   GET /healthz   WS /session")
