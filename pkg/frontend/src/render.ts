// Canvas schematic of the robot: orthographic projection with a mouse-orbit
// camera. Projection math is exported separately so it can be unit tested
// without a canvas.

import type { EntitiesOut } from "./api.js";

export type Vec3 = [number, number, number];

export interface Camera {
  yaw: number; // radians, orbit about world z
  pitch: number; // radians, tilt toward top-down
  zoom: number;
}

export const DEFAULT_CAMERA: Camera = { yaw: -0.6, pitch: 0.45, zoom: 1 };

/** World point -> camera space: [right, up, depth]. World z maps to "up". */
export function viewTransform(p: Vec3, camera: Camera): Vec3 {
  const [x, y, z] = p;
  const cy = Math.cos(camera.yaw);
  const sy = Math.sin(camera.yaw);
  const rx = cy * x + sy * y;
  const ry = -sy * x + cy * y;
  const cp = Math.cos(camera.pitch);
  const sp = Math.sin(camera.pitch);
  const up = cp * z - sp * ry;
  const depth = sp * z + cp * ry;
  return [rx, up, depth];
}

export function fitScene(points: Vec3[]): { center: Vec3; radius: number } {
  if (points.length === 0) return { center: [0, 0, 0], radius: 1 };
  const lo = [Infinity, Infinity, Infinity];
  const hi = [-Infinity, -Infinity, -Infinity];
  for (const p of points) {
    for (let i = 0; i < 3; i++) {
      lo[i] = Math.min(lo[i], p[i]);
      hi[i] = Math.max(hi[i], p[i]);
    }
  }
  const center: Vec3 = [(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2, (lo[2] + hi[2]) / 2];
  let radius = 0;
  for (const p of points) {
    const d = Math.hypot(p[0] - center[0], p[1] - center[1], p[2] - center[2]);
    radius = Math.max(radius, d);
  }
  return { center, radius: radius || 1 };
}

export type Projector = (p: Vec3) => [number, number];

export function makeProjector(
  points: Vec3[],
  width: number,
  height: number,
  camera: Camera,
): Projector {
  const { center, radius } = fitScene(points);
  const scale = (0.42 * Math.min(width, height) * camera.zoom) / radius;
  return (p: Vec3) => {
    const [rx, up] = viewTransform(
      [p[0] - center[0], p[1] - center[1], p[2] - center[2]],
      camera,
    );
    return [width / 2 + rx * scale, height / 2 - up * scale];
  };
}

// ---------------------------------------------------------------------------
// drawing

const COLORS = {
  background: "#14171c",
  leg: "#5c6670",
  legEmphasis: "#ffd24d",
  baseAnchor: "#4dc6b8",
  platformAnchor: "#ef8354",
  planeFill: "rgba(77, 135, 222, 0.22)",
  planeEdge: "rgba(122, 168, 235, 0.8)",
  tetraEdge: "rgba(214, 188, 255, 0.85)",
  label: "#aab4bf",
};

function anchorPositions(scene: EntitiesOut): Map<string, Vec3> {
  const map = new Map<string, Vec3>();
  for (const a of scene.anchors) map.set(a.label, a.world as Vec3);
  return map;
}

function entityPoints(points: Record<string, number[]>, labels: string[]): Vec3[] {
  const out: Vec3[] = [];
  for (const label of labels) {
    const p = points[label];
    if (p) out.push(p as Vec3);
  }
  return out;
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  scene: EntitiesOut,
  camera: Camera,
): void {
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, width, height);

  const anchors = anchorPositions(scene);
  const cloud = [...anchors.values()];
  if (cloud.length === 0) return;
  const project = makeProjector(cloud, width, height, camera);

  // translucent plane fills go under everything else
  for (const e of scene.entities) {
    if (e.kind !== "plane") continue;
    const pts = entityPoints(e.points, e.labels);
    if (pts.length < 3) continue; // starred labels have no world point
    ctx.beginPath();
    pts.forEach((p, i) => {
      const [x, y] = project(p);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.closePath();
    ctx.fillStyle = COLORS.planeFill;
    ctx.fill();
    ctx.strokeStyle = COLORS.planeEdge;
    ctx.lineWidth = 1;
    ctx.stroke();
  }

  const emphasized = new Set<string>();
  for (const e of scene.entities) {
    if (e.kind === "line" && e.labels.length === 2) {
      emphasized.add([...e.labels].sort().join("|"));
    }
  }

  for (const leg of scene.legs) {
    const a = anchors.get(leg[0]);
    const b = anchors.get(leg[1]);
    if (!a || !b) continue;
    const hot = emphasized.has([...leg].sort().join("|"));
    const [x0, y0] = project(a);
    const [x1, y1] = project(b);
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.strokeStyle = hot ? COLORS.legEmphasis : COLORS.leg;
    ctx.lineWidth = hot ? 3 : 1.5;
    ctx.stroke();
  }

  // tetrahedra as wireframes over the legs
  ctx.strokeStyle = COLORS.tetraEdge;
  ctx.lineWidth = 1;
  for (const e of scene.entities) {
    if (e.kind !== "tetrahedron") continue;
    const pts = entityPoints(e.points, e.labels);
    for (let i = 0; i < pts.length; i++) {
      for (let j = i + 1; j < pts.length; j++) {
        const [x0, y0] = project(pts[i]);
        const [x1, y1] = project(pts[j]);
        ctx.beginPath();
        ctx.moveTo(x0, y0);
        ctx.lineTo(x1, y1);
        ctx.stroke();
      }
    }
  }

  ctx.font = "11px system-ui, sans-serif";
  for (const a of scene.anchors) {
    const [x, y] = project(a.world as Vec3);
    ctx.beginPath();
    ctx.arc(x, y, 3.5, 0, 2 * Math.PI);
    ctx.fillStyle = a.frame === "base" ? COLORS.baseAnchor : COLORS.platformAnchor;
    ctx.fill();
    ctx.fillStyle = COLORS.label;
    ctx.fillText(a.label, x + 6, y - 4);
  }
}
