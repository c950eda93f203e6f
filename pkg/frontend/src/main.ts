/** DOM wiring for the authoring pane. */

import { ApiClient } from "./api.js";
import { EditorController, type Overlay } from "./editor.js";
import { showWireframe } from "./modal.js";
import type { Annotation } from "./types.js";

const KIND_TITLES: Record<string, string> = {
  HQ: "High quality",
  AS: "Ambiguous step",
  VM: "Vocabulary mismatch",
  MS: "Missing steps before this one",
};

function badge(kind: string): HTMLElement {
  const el = document.createElement("span");
  el.className = `badge badge-${kind}`;
  el.textContent = kind;
  el.title = KIND_TITLES[kind] ?? kind;
  return el;
}

function annotationDetails(api: ApiClient, annotation: Annotation): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "annotation-panel";
  const heading = document.createElement("strong");
  heading.textContent = KIND_TITLES[annotation.kind] ?? annotation.kind;
  panel.append(heading);

  if (annotation.kind === "HQ" && annotation.evidence.interaction) {
    const info = annotation.evidence.interaction;
    const link = document.createElement("button");
    link.className = "step-link";
    link.textContent = info.description;
    link.addEventListener("click", () => void showWireframe(api, info));
    panel.append(link);
  } else if (annotation.kind === "MS" && annotation.evidence.interactions) {
    const list = document.createElement("ol");
    for (const info of annotation.evidence.interactions) {
      const item = document.createElement("li");
      const link = document.createElement("button");
      link.className = "step-link";
      link.textContent = info.description;
      link.addEventListener("click", () => void showWireframe(api, info));
      item.append(link);
      list.append(item);
    }
    panel.append(list);
  } else if (annotation.kind === "AS") {
    const list = document.createElement("ul");
    for (const candidate of annotation.evidence.candidates ?? []) {
      const item = document.createElement("li");
      item.textContent =
        candidate.kind === "component"
          ? `component ${candidate.label || candidate.componentId}` +
            (candidate.score != null ? ` (score ${candidate.score.toFixed(2)})` : "")
          : `event ${candidate.event}`;
      list.append(item);
    }
    panel.append(list);
  } else if (annotation.kind === "VM") {
    const text = document.createElement("p");
    const values = annotation.evidence.values ?? {};
    text.textContent =
      "No app interaction matches: " +
      Object.entries(values)
        .map(([part, value]) => `${part} = ${value}`)
        .join(", ");
    panel.append(text);
  }
  return panel;
}

function renderAnnotated(
  api: ApiClient,
  controller: EditorController,
  view: HTMLElement,
): void {
  view.textContent = "";
  if (!controller.overlays.length) {
    view.textContent = controller.dirty
      ? "Edited since the last assessment; run it again for fresh feedback."
      : "No annotations yet.";
    return;
  }
  let cursor = 0;
  const draft = controller.draft;
  for (const overlay of controller.overlays) {
    const [start, end] = overlay.span;
    view.append(document.createTextNode(draft.slice(cursor, start)));
    view.append(sentenceSpan(api, overlay));
    cursor = end;
  }
  view.append(document.createTextNode(draft.slice(cursor)));
}

function sentenceSpan(api: ApiClient, overlay: Overlay): HTMLElement {
  const wrap = document.createElement("span");
  wrap.className = "sentence";
  const text = document.createElement("span");
  text.textContent = overlay.text;
  wrap.append(text);
  const details = document.createElement("span");
  details.className = "sentence-details";
  for (const entry of overlay.entries) {
    for (const annotation of entry.annotations) {
      const chip = badge(annotation.kind);
      const panel = annotationDetails(api, annotation);
      panel.hidden = true;
      chip.addEventListener("click", () => {
        panel.hidden = !panel.hidden;
      });
      details.append(chip, panel);
    }
  }
  wrap.append(details);
  return wrap;
}

export function boot(root: Document = document): void {
  const api = new ApiClient("");
  const controller = new EditorController(api);

  const appSelect = root.getElementById("app-select") as HTMLSelectElement;
  const textarea = root.getElementById("draft") as HTMLTextAreaElement;
  const assessButton = root.getElementById("assess") as HTMLButtonElement;
  const statusLine = root.getElementById("status") as HTMLElement;
  const view = root.getElementById("annotated") as HTMLElement;

  const refresh = () => {
    statusLine.textContent =
      controller.status === "error"
        ? `error: ${controller.errorMessage}`
        : controller.status;
    statusLine.className = `status status-${controller.status}`;
    assessButton.disabled = controller.status === "running";
    renderAnnotated(api, controller, view);
  };

  void api
    .listApps()
    .then((apps) => {
      for (const app of apps) {
        const option = document.createElement("option");
        option.value = app.appId;
        option.textContent = `${app.appName} (${app.screens} screens)`;
        appSelect.append(option);
      }
      controller.selectApp(appSelect.value || null);
    })
    .catch((err) => {
      statusLine.textContent = `error: could not list apps (${err.message})`;
    });

  appSelect.addEventListener("change", () => controller.selectApp(appSelect.value || null));
  textarea.addEventListener("input", () => {
    controller.setDraft(textarea.value);
    refresh();
  });
  assessButton.addEventListener("click", () => {
    controller.setDraft(textarea.value);
    refresh();
    void controller.runAssessment().then(refresh);
  });

  refresh();
}

if (typeof document !== "undefined" && document.getElementById("draft")) {
  boot(document);
}
