// DOM wiring for the singularity workbench UI. All values shown in the
// value fields come from service responses; this file only moves strings
// between fetch results and elements.

import {
  ApiClient,
  PosePump,
  type AnalysisOut,
  type ApiError,
  type ApiResult,
  type EntitiesOut,
  type ReportOut,
} from "./api.js";
import {
  eulerToQuaternion,
  identityState,
  poseRequest,
  type PoseControlState,
} from "./pose.js";
import { DEFAULT_CAMERA, drawScene, type Camera } from "./render.js";
import {
  bannerVisible,
  checkLine,
  conditionLines,
  displayValues,
  errorLines,
  gaugeFraction,
  isStaleSession,
  parseEpsilon,
} from "./view.js";

const BUNDLED_ROBOTS = [
  { file: "gsp_3_3.json", title: "octahedral 3-3" },
  { file: "gsp_6_6.json", title: "general 6-6" },
  { file: "equivalent_screws_4dof.json", title: "concurrent screws" },
];

const POSE_DEBOUNCE_MS = 33; // ~30 Hz ceiling on pose posts

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setLines(node: HTMLElement, lines: string[]): void {
  node.textContent = "";
  for (const line of lines) {
    const div = document.createElement("div");
    div.textContent = line;
    node.appendChild(div);
  }
}

class App {
  private api = new ApiClient();
  private pump: PosePump;
  private camera: Camera = { ...DEFAULT_CAMERA };
  private controls: PoseControlState = identityState();
  private session: number | null = null;
  private robotDoc: unknown = null;
  private scene: EntitiesOut | null = null;
  private epsilon: number | null = null;
  private debounce: number | null = null;

  private canvas = el<HTMLCanvasElement>("schematic");
  private banner = el<HTMLDivElement>("banner");
  private stale = el<HTMLDivElement>("stale");
  private problems = el<HTMLDivElement>("problems");
  private conditionPanel = el<HTMLDivElement>("condition");
  private checksPanel = el<HTMLDivElement>("checks");
  private gaugeFill = el<HTMLDivElement>("gauge-fill");

  constructor() {
    this.pump = new PosePump(
      (req) => this.api.postPose(req),
      (_req, result) => this.onPoseResult(result),
    );
    this.wireControls();
    this.wireCanvas();
    void this.loadBundled(BUNDLED_ROBOTS[0].file);
  }

  // --- robot loading -------------------------------------------------------

  private async loadBundled(file: string): Promise<void> {
    const resp = await fetch(`robots/${file}`);
    await this.loadDoc(await resp.json());
  }

  private async loadDoc(doc: unknown): Promise<void> {
    this.robotDoc = doc;
    const autoReduce = el<HTMLInputElement>("auto-reduce").checked;
    const result = await this.api.loadRobot(doc, autoReduce);
    if (!result.ok) {
      this.showProblems(result.error);
      return;
    }
    this.showProblems(null);
    this.applyAnalysis(result.data);
  }

  private applyAnalysis(a: AnalysisOut): void {
    this.session = a.session;
    this.stale.hidden = true;
    el<HTMLDivElement>("robot-name").textContent =
      `${a.name} (${a.structure_class.name}, ${a.monomial_count} monomials)`;
    el<HTMLDivElement>("polynomial").textContent = a.polynomial;
    setLines(this.conditionPanel, conditionLines(a.condition));
    this.controls = identityState();
    this.syncSliders();
    this.pushPose();
  }

  private showProblems(error: ApiError | null): void {
    if (error === null) {
      this.problems.hidden = true;
      return;
    }
    this.problems.hidden = false;
    setLines(this.problems, errorLines(error));
  }

  // --- pose steering -------------------------------------------------------

  private wireControls(): void {
    const select = el<HTMLSelectElement>("robot-select");
    for (const r of BUNDLED_ROBOTS) {
      const opt = document.createElement("option");
      opt.value = r.file;
      opt.textContent = r.title;
      select.appendChild(opt);
    }
    select.addEventListener("change", () => void this.loadBundled(select.value));

    el<HTMLInputElement>("robot-file").addEventListener("change", (ev) => {
      const input = ev.target as HTMLInputElement;
      const file = input.files?.[0];
      if (!file) return;
      file.text().then((text) => {
        try {
          return this.loadDoc(JSON.parse(text));
        } catch {
          this.showProblems({ status: 0, detail: "file is not valid JSON" });
          return;
        }
      });
    });

    el<HTMLInputElement>("auto-reduce").addEventListener("change", () => {
      if (this.robotDoc !== null) void this.loadDoc(this.robotDoc);
    });

    for (const key of ["tx", "ty", "tz", "roll", "pitch", "yaw"] as const) {
      const slider = el<HTMLInputElement>(`slider-${key}`);
      slider.addEventListener("input", () => {
        this.controls[key] = Number(slider.value);
        el<HTMLSpanElement>(`value-${key}`).textContent = slider.value;
        this.updateQuaternionReadout();
        this.schedulePose();
      });
    }

    const eps = el<HTMLInputElement>("epsilon");
    eps.addEventListener("change", () => {
      const parsed = parseEpsilon(eps.value);
      if (parsed === null && eps.value.trim() !== "") {
        eps.classList.add("invalid");
        return;
      }
      eps.classList.remove("invalid");
      this.epsilon = parsed;
      this.pushPose();
    });

    el<HTMLButtonElement>("reload").addEventListener("click", () => {
      if (this.robotDoc !== null) void this.loadDoc(this.robotDoc);
    });
  }

  private schedulePose(): void {
    if (this.debounce !== null) window.clearTimeout(this.debounce);
    this.debounce = window.setTimeout(() => {
      this.debounce = null;
      this.pushPose();
    }, POSE_DEBOUNCE_MS);
  }

  private pushPose(): void {
    if (this.session === null) return;
    this.pump.push(
      poseRequest(this.controls, this.epsilon ?? undefined, this.session),
    );
  }

  private onPoseResult(result: ApiResult<ReportOut>): void {
    if (!result.ok) {
      if (isStaleSession(result.error)) this.stale.hidden = false;
      else this.showProblems(result.error);
      return;
    }
    this.showProblems(null);
    this.renderReport(result.data);
    void this.refreshEntities();
  }

  private renderReport(report: ReportOut): void {
    const display = displayValues(report);
    el<HTMLSpanElement>("raw-value").textContent = display.raw;
    el<HTMLSpanElement>("normalized-value").textContent = display.normalized;
    el<HTMLSpanElement>("epsilon-value").textContent = display.epsilon;
    this.banner.hidden = !bannerVisible(report);
    const fraction = gaugeFraction(report.normalized_measure, report.epsilon);
    this.gaugeFill.style.width = `${(fraction * 100).toFixed(1)}%`;
    this.gaugeFill.classList.toggle("hot", report.near_singular);
    setLines(this.checksPanel, report.checks.map(checkLine));
  }

  private async refreshEntities(): Promise<void> {
    const result = await this.api.entities();
    if (!result.ok) return;
    this.scene = result.data;
    this.redraw();
  }

  // --- schematic -----------------------------------------------------------

  private wireCanvas(): void {
    let dragging = false;
    let lastX = 0;
    let lastY = 0;
    this.canvas.addEventListener("pointerdown", (ev) => {
      dragging = true;
      lastX = ev.clientX;
      lastY = ev.clientY;
      this.canvas.setPointerCapture(ev.pointerId);
    });
    this.canvas.addEventListener("pointermove", (ev) => {
      if (!dragging) return;
      this.camera.yaw += (ev.clientX - lastX) * 0.01;
      this.camera.pitch = Math.max(
        -1.5,
        Math.min(1.5, this.camera.pitch + (ev.clientY - lastY) * 0.01),
      );
      lastX = ev.clientX;
      lastY = ev.clientY;
      this.redraw();
    });
    this.canvas.addEventListener("pointerup", () => {
      dragging = false;
    });
    this.canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const factor = ev.deltaY < 0 ? 1.1 : 1 / 1.1;
      this.camera.zoom = Math.max(0.2, Math.min(6, this.camera.zoom * factor));
      this.redraw();
    });
  }

  private redraw(): void {
    if (this.scene === null) return;
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    drawScene(ctx, this.canvas.width, this.canvas.height, this.scene, this.camera);
  }

  private syncSliders(): void {
    for (const key of ["tx", "ty", "tz", "roll", "pitch", "yaw"] as const) {
      const slider = el<HTMLInputElement>(`slider-${key}`);
      slider.value = String(this.controls[key]);
      el<HTMLSpanElement>(`value-${key}`).textContent = slider.value;
    }
    this.updateQuaternionReadout();
  }

  // recomputed on every slider change; requests use the same conversion
  private updateQuaternionReadout(): void {
    const q = eulerToQuaternion(this.controls.roll, this.controls.pitch, this.controls.yaw);
    el<HTMLSpanElement>("quaternion").textContent =
      q.map((v) => v.toFixed(4)).join(", ");
  }
}

window.addEventListener("DOMContentLoaded", () => {
  new App();
});
