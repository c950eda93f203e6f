/** Wireframe pop-up: fetches the SVG and outlines the interacted component. */

import type { ApiClient } from "./api.js";
import type { InteractionInfo } from "./types.js";

export async function showWireframe(
  api: ApiClient,
  interaction: InteractionInfo,
  mount: HTMLElement = document.body,
): Promise<HTMLElement> {
  const backdrop = document.createElement("div");
  backdrop.className = "modal-backdrop";
  const box = document.createElement("div");
  box.className = "modal-box";
  const title = document.createElement("h3");
  title.textContent = interaction.description;
  const body = document.createElement("div");
  body.className = "modal-body";
  body.textContent = "loading…";
  const close = document.createElement("button");
  close.className = "modal-close";
  close.textContent = "Close";

  const dismiss = () => backdrop.remove();
  close.addEventListener("click", dismiss);
  backdrop.addEventListener("click", (event) => {
    if (event.target === backdrop) dismiss();
  });

  box.append(title, body, close);
  backdrop.append(box);
  mount.append(backdrop);

  if (!interaction.wireframeRef) {
    body.textContent = "No wireframe is available for this interaction.";
    return backdrop;
  }
  try {
    const svg = await api.fetchWireframe(interaction.wireframeRef, interaction.componentId);
    if (svg === null) {
      body.textContent = "Wireframe not found; the app model may have been re-uploaded.";
    } else {
      body.innerHTML = svg;
    }
  } catch (err) {
    body.textContent = `Could not load the wireframe: ${err instanceof Error ? err.message : err}`;
  }
  return backdrop;
}
