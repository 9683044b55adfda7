// Group-tree rendering: exactly the manifest's tree, order preserved.
// Controls never flip themselves; renderState re-asserts the mirrored
// session state after every reducer step, which also reverts refused
// gestures.

import type { GroupTree, Manifest } from "./types.js";

export interface TrackCallbacks {
  onToggle(track: number, on: boolean): void;
  onLevel(track: number, level: number): void;
}

interface TrackControls {
  checkbox: HTMLInputElement;
  fader: HTMLInputElement;
  readout: HTMLElement;
  row: HTMLElement;
}

export class TreeView {
  private controls = new Map<number, TrackControls>();

  constructor(
    private manifest: Manifest,
    private callbacks: TrackCallbacks,
  ) {}

  build(): HTMLElement {
    return this.renderGroup(this.manifest.group_tree);
  }

  private renderGroup(node: GroupTree): HTMLElement {
    const section = document.createElement("section");
    section.className = "group";
    const title = document.createElement("h3");
    title.textContent = node.name;
    section.appendChild(title);
    const list = document.createElement("div");
    list.className = "group-children";
    for (const child of node.children) {
      list.appendChild(
        typeof child === "number" ? this.renderTrack(child) : this.renderGroup(child),
      );
    }
    section.appendChild(list);
    return section;
  }

  private renderTrack(track: number): HTMLElement {
    const info = this.manifest.tracks[track];
    const row = document.createElement("div");
    row.className = "track";

    const label = document.createElement("label");
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.addEventListener("change", () => {
      this.callbacks.onToggle(track, checkbox.checked);
    });
    label.appendChild(checkbox);
    label.appendChild(document.createTextNode(" " + (info?.name ?? `track ${track}`)));

    const fader = document.createElement("input");
    fader.type = "range";
    fader.min = String(info?.level_min ?? 0);
    fader.max = String(info?.level_max ?? 100);
    fader.addEventListener("input", () => {
      this.callbacks.onLevel(track, Number(fader.value));
    });

    const readout = document.createElement("span");
    readout.className = "level";

    row.appendChild(label);
    row.appendChild(fader);
    row.appendChild(readout);
    this.controls.set(track, { checkbox, fader, readout, row });
    return row;
  }

  renderState(selection: boolean[], mix: number[], pending: boolean): void {
    for (const [track, c] of this.controls) {
      c.checkbox.checked = selection[track] ?? false;
      c.fader.value = String(mix[track] ?? 0);
      c.readout.textContent = String(mix[track] ?? 0);
      c.row.classList.toggle("active", selection[track] ?? false);
      c.checkbox.disabled = pending;
    }
  }
}
