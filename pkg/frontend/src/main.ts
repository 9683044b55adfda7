// Bootstrap: fetch the piece, build the tree, load stems into the local
// mixer, mirror the shared session over the websocket.

import { StemMixer } from "./audio.js";
import { initialModel, markPending, reduceEvent, type ClientModel } from "./reducer.js";
import { SessionSocket, sessionUrl } from "./socket.js";
import { makeThrottle } from "./throttle.js";
import { TreeView } from "./tree.js";
import type { Action, PieceDoc } from "./types.js";

async function boot(): Promise<void> {
  const root = document.getElementById("app")!;
  const response = await fetch("/piece");
  if (!response.ok) {
    root.textContent = "no piece is loaded on the server";
    return;
  }
  const doc = (await response.json()) as PieceDoc;
  document.title = doc.manifest.title;

  let model: ClientModel = initialModel(doc.manifest);
  const mixer = new StemMixer();

  const sendAction = (action: Action) => {
    model = markPending(model);
    socket.sendAction(action);
    draw();
  };
  const sendLevel = makeThrottle<[number, number]>(([track, level]) => {
    sendAction({ kind: "set_levels", levels: [[track, level]] });
  });

  const tree = new TreeView(doc.manifest, {
    onToggle: (track, on) => sendAction({ kind: "toggle", tracks: [[track, on]] }),
    onLevel: (track, level) => sendLevel([track, level]),
  });

  const header = document.createElement("header");
  const title = document.createElement("h2");
  title.textContent = doc.manifest.title;
  const playButton = document.createElement("button");
  playButton.textContent = "play";
  playButton.addEventListener("click", () => {
    if (mixer.playing) {
      mixer.pause();
      playButton.textContent = "play";
      socket.sendAction({ kind: "pause" });
    } else {
      mixer.play();
      playButton.textContent = "pause";
      socket.sendAction({ kind: "play" });
    }
  });
  header.appendChild(title);
  header.appendChild(playButton);

  const notices = document.createElement("ul");
  notices.className = "notices";

  root.replaceChildren(header, tree.build(), notices);

  function draw(): void {
    tree.renderState(model.selection, model.mix, model.pending);
    mixer.applyState(model.selection, model.mix);
    notices.replaceChildren(...model.notices.map((notice) => {
      const item = document.createElement("li");
      item.className = `notice notice-${notice.kind}`;
      item.textContent = notice.text;
      return item;
    }));
  }

  const socket = new SessionSocket({
    url: sessionUrl(window.location),
    onMessage: (message) => {
      model = reduceEvent(model, message);
      draw();
    },
    onClose: () => {
      const item = document.createElement("li");
      item.className = "notice notice-error";
      item.textContent = "connection lost; reload to rejoin";
      notices.prepend(item);
    },
  });

  await mixer.load(doc.stems);
  draw();
}

void boot();
