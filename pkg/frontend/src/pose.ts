// Pose control state and Euler <-> quaternion conversion.
//
// Sliders hold XYZ intrinsic Euler angles in degrees (roll about x, pitch
// about the new y, yaw about the new z). The service only ever sees a unit
// quaternion (scalar part first), recomputed on every slider change.

export interface PoseControlState {
  tx: number;
  ty: number;
  tz: number;
  roll: number;
  pitch: number;
  yaw: number;
}

export type Quaternion = [number, number, number, number]; // w, x, y, z

export interface PoseRequest {
  translation: [number, number, number];
  quaternion: Quaternion;
  epsilon?: number;
  session?: number;
}

const DEG = Math.PI / 180;

function quatMultiply(a: Quaternion, b: Quaternion): Quaternion {
  const [aw, ax, ay, az] = a;
  const [bw, bx, by, bz] = b;
  return [
    aw * bw - ax * bx - ay * by - az * bz,
    aw * bx + ax * bw + ay * bz - az * by,
    aw * by - ax * bz + ay * bw + az * bx,
    aw * bz + ax * by - ay * bx + az * bw,
  ];
}

export function quatNorm(q: Quaternion): number {
  return Math.hypot(q[0], q[1], q[2], q[3]);
}

function normalize(q: Quaternion): Quaternion {
  const n = quatNorm(q);
  return [q[0] / n, q[1] / n, q[2] / n, q[3] / n];
}

export function eulerToQuaternion(rollDeg: number, pitchDeg: number, yawDeg: number): Quaternion {
  const r = (rollDeg * DEG) / 2;
  const p = (pitchDeg * DEG) / 2;
  const y = (yawDeg * DEG) / 2;
  const qx: Quaternion = [Math.cos(r), Math.sin(r), 0, 0];
  const qy: Quaternion = [Math.cos(p), 0, Math.sin(p), 0];
  const qz: Quaternion = [Math.cos(y), 0, 0, Math.sin(y)];
  // intrinsic XYZ: apply roll, then pitch, then yaw
  return normalize(quatMultiply(quatMultiply(qx, qy), qz));
}

export function quaternionToEuler(q: Quaternion): { roll: number; pitch: number; yaw: number } {
  const [w, x, y, z] = normalize(q);
  // rotation matrix entries needed for R = Rx * Ry * Rz
  const r02 = 2 * (x * z + w * y);
  const r12 = 2 * (y * z - w * x);
  const r22 = 1 - 2 * (x * x + y * y);
  const r00 = 1 - 2 * (y * y + z * z);
  const r01 = 2 * (x * y - w * z);
  const sinPitch = Math.max(-1, Math.min(1, r02));
  const pitch = Math.asin(sinPitch);
  let roll: number;
  let yaw: number;
  if (Math.abs(sinPitch) > 1 - 1e-9) {
    // gimbal lock: yaw is unrecoverable, fold it into roll
    const r10 = 2 * (x * y + w * z);
    const r11 = 1 - 2 * (x * x + z * z);
    roll = Math.atan2(r10, r11) * Math.sign(sinPitch);
    yaw = 0;
  } else {
    roll = Math.atan2(-r12, r22);
    yaw = Math.atan2(-r01, r00);
  }
  return { roll: roll / DEG, pitch: pitch / DEG, yaw: yaw / DEG };
}

export function poseRequest(state: PoseControlState, epsilon?: number, session?: number): PoseRequest {
  const req: PoseRequest = {
    translation: [state.tx, state.ty, state.tz],
    quaternion: eulerToQuaternion(state.roll, state.pitch, state.yaw),
  };
  if (epsilon !== undefined) req.epsilon = epsilon;
  if (session !== undefined) req.session = session;
  return req;
}

export function identityState(): PoseControlState {
  return { tx: 0, ty: 0, tz: 0, roll: 0, pitch: 0, yaw: 0 };
}
