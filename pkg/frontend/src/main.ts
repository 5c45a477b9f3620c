/** Page wiring: DOM events in, controller signals out. */

import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";
import { legendStrings, rampColor, tooltipText, type StudyData } from "./heatmap.js";
import { renderHistory } from "./history.js";
import type { CommandMode, ExportFormat, RepairAttempt, SunStudyRequest } from "./types.js";
import { Viewer } from "./viewer.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

const serverInput = el<HTMLInputElement>("server-url");
const seedInput = el<HTMLInputElement>("seed");
const openButton = el<HTMLButtonElement>("open-session");
const sessionLabel = el<HTMLSpanElement>("session-label");
const revisionLabel = el<HTMLSpanElement>("revision-label");
const banner = el<HTMLDivElement>("banner");
const commandText = el<HTMLTextAreaElement>("command-text");
const modeSelect = el<HTMLSelectElement>("command-mode");
const submitButton = el<HTMLButtonElement>("submit-btn");
const undoButton = el<HTMLButtonElement>("undo-btn");
const attemptsPanel = el<HTMLDivElement>("attempts");
const historyList = el<HTMLOListElement>("history-list");
const detailsLine = el<HTMLDivElement>("details");
const legend = el<HTMLDivElement>("legend");
const legendBar = el<HTMLDivElement>("legend-bar");
const legendMin = el<HTMLSpanElement>("legend-min");
const legendMax = el<HTMLSpanElement>("legend-max");
const tooltip = el<HTMLDivElement>("tooltip");
const studyLat = el<HTMLInputElement>("study-lat");
const studyLon = el<HTMLInputElement>("study-lon");
const studyDate = el<HTMLInputElement>("study-date");
const studyInterval = el<HTMLInputElement>("study-interval");
const studyCell = el<HTMLInputElement>("study-cell");
const runStudyButton = el<HTMLButtonElement>("run-study");
const clearStudyButton = el<HTMLButtonElement>("clear-study");
const viewport = el<HTMLDivElement>("viewport");

const EXPORT_FORMATS: ExportFormat[] = ["obj", "stl", "macro"];

const viewer = new Viewer(viewport);
let controller: SessionController | null = null;
let currentStudy: StudyData | null = null;

function cssColor(rgb: [number, number, number]): string {
  const [r, g, b] = rgb.map((v) => Math.round(v * 255));
  return `rgb(${r}, ${g}, ${b})`;
}
legendBar.style.background =
  `linear-gradient(to right, ${cssColor(rampColor(0))}, ` +
  `${cssColor(rampColor(0.5))}, ${cssColor(rampColor(1))})`;

function message(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

function showBanner(text: string): void {
  banner.textContent = text;
  banner.hidden = false;
}

function renderAttempts(attempts: RepairAttempt[]): void {
  attemptsPanel.replaceChildren(
    ...attempts.map((attempt, i) => {
      const block = document.createElement("div");
      block.className = "attempt";
      const head = document.createElement("div");
      head.textContent = `attempt ${i + 1}: ${attempt.errors.join("; ")}`;
      const candidate = document.createElement("pre");
      candidate.textContent = attempt.candidate;
      block.append(head, candidate);
      return block;
    }),
  );
  attemptsPanel.hidden = attempts.length === 0;
}

function bind(c: SessionController, api: ApiClient): void {
  c.onSession.on((info) => {
    sessionLabel.textContent = `session ${info.session_id} (seed ${info.seed})`;
    for (const format of EXPORT_FORMATS) {
      el<HTMLAnchorElement>(`export-${format}`).href = api.exportUrl(info.session_id, format);
    }
  });
  c.onScene.on((envelope) => {
    viewer.setScene(envelope.scene);
    revisionLabel.textContent = `rev ${envelope.revision}`;
  });
  c.onHistory.on((history) => renderHistory(historyList, history.entries));
  c.onBusy.on((busy) => {
    submitButton.disabled = busy;
    undoButton.disabled = busy;
    runStudyButton.disabled = busy;
  });
  c.onError.on(showBanner);
  c.onAttempts.on(renderAttempts);
  c.onStudy.on((study) => {
    currentStudy = study;
    viewer.setOverlay(study === null ? null : study.payload);
    tooltip.hidden = true;
    if (study === null) {
      legend.hidden = true;
      return;
    }
    const { min, max } = legendStrings(study);
    legendMin.textContent = min;
    legendMax.textContent = max;
    legend.hidden = false;
  });
}

openButton.addEventListener("click", () => {
  banner.hidden = true;
  const api = new ApiClient(serverInput.value.trim());
  const c = new SessionController(api);
  bind(c, api);
  const seedText = seedInput.value.trim();
  c.open(seedText === "" ? undefined : Number(seedText))
    .then(() => {
      controller = c;
    })
    .catch((err) => showBanner(`could not open session: ${message(err)}`));
});

function run(action: (c: SessionController) => Promise<unknown>): void {
  if (controller === null) {
    showBanner("open a session first");
    return;
  }
  banner.hidden = true;
  attemptsPanel.hidden = true;
  action(controller).catch((err) => showBanner(message(err)));
}

submitButton.addEventListener("click", () => {
  const text = commandText.value;
  if (text.trim() === "") return;
  run((c) => c.submit(text, modeSelect.value as CommandMode));
});

undoButton.addEventListener("click", () => run((c) => c.undo()));

runStudyButton.addEventListener("click", () => {
  const req: SunStudyRequest = {};
  if (studyLat.value.trim() !== "") req.latitude_deg = Number(studyLat.value);
  if (studyLon.value.trim() !== "") req.longitude_deg = Number(studyLon.value);
  if (studyDate.value.trim() !== "") req.date = studyDate.value.trim();
  if (studyInterval.value.trim() !== "") req.interval_min = Number(studyInterval.value);
  if (studyCell.value.trim() !== "") req.cell_size_m = Number(studyCell.value);
  run((c) => c.runSunStudy(req));
});

clearStudyButton.addEventListener("click", () => controller?.clearStudy());

viewport.addEventListener("mousemove", (event) => {
  if (currentStudy !== null) {
    const cell = viewer.pickCell(event);
    if (cell !== null) {
      tooltip.textContent = tooltipText(currentStudy, cell.ix, cell.iy);
      tooltip.style.left = `${event.clientX + 14}px`;
      tooltip.style.top = `${event.clientY + 14}px`;
      tooltip.hidden = false;
      return;
    }
  }
  tooltip.hidden = true;
});

viewport.addEventListener("click", (event) => {
  const pick = viewer.pickObject(event);
  detailsLine.textContent =
    pick === null ? "" : `${pick.id}: ${pick.state}, ${pick.triangles} triangles`;
});
