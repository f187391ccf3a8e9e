import { describe, expect, it } from "vitest";

import {
  eulerToQuaternion,
  identityState,
  poseRequest,
  quaternionToEuler,
  quatNorm,
  type Quaternion,
} from "../src/pose.js";

const HALF = Math.SQRT1_2;

// deterministic PRNG so failures reproduce
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function expectQuatClose(a: Quaternion, b: Quaternion, tol = 1e-9): void {
  // q and -q are the same rotation
  const direct = Math.max(...a.map((v, i) => Math.abs(v - b[i])));
  const flipped = Math.max(...a.map((v, i) => Math.abs(v + b[i])));
  expect(Math.min(direct, flipped)).toBeLessThan(tol);
}

describe("eulerToQuaternion", () => {
  it("maps zero angles to the identity quaternion", () => {
    expect(eulerToQuaternion(0, 0, 0)).toEqual([1, 0, 0, 0]);
  });

  it("produces the expected quarter turns about each axis", () => {
    expectQuatClose(eulerToQuaternion(90, 0, 0), [HALF, HALF, 0, 0], 1e-12);
    expectQuatClose(eulerToQuaternion(0, 90, 0), [HALF, 0, HALF, 0], 1e-12);
    expectQuatClose(eulerToQuaternion(0, 0, 90), [HALF, 0, 0, HALF], 1e-12);
  });

  it("always returns a unit quaternion", () => {
    const rand = mulberry32(7);
    for (let i = 0; i < 200; i++) {
      const q = eulerToQuaternion(rand() * 360 - 180, rand() * 360 - 180, rand() * 360 - 180);
      expect(Math.abs(quatNorm(q) - 1)).toBeLessThan(1e-12);
    }
  });
});

describe("euler round trip", () => {
  it("reproduces grid angles to 1e-6 degrees away from gimbal lock", () => {
    const rolls = [-150, -60, 0, 45, 120];
    const pitches = [-80, -30, 0, 25, 75];
    const yaws = [-170, -10, 0, 90, 160];
    for (const roll of rolls) {
      for (const pitch of pitches) {
        for (const yaw of yaws) {
          const back = quaternionToEuler(eulerToQuaternion(roll, pitch, yaw));
          expect(Math.abs(back.roll - roll)).toBeLessThan(1e-6);
          expect(Math.abs(back.pitch - pitch)).toBeLessThan(1e-6);
          expect(Math.abs(back.yaw - yaw)).toBeLessThan(1e-6);
        }
      }
    }
  });

  it("reproduces random angles to 1e-6 degrees", () => {
    const rand = mulberry32(42);
    for (let i = 0; i < 300; i++) {
      const roll = rand() * 358 - 179;
      const pitch = rand() * 178 - 89; // stay away from the |pitch|=90 poles
      const yaw = rand() * 358 - 179;
      const back = quaternionToEuler(eulerToQuaternion(roll, pitch, yaw));
      expect(Math.abs(back.roll - roll)).toBeLessThan(1e-6);
      expect(Math.abs(back.pitch - pitch)).toBeLessThan(1e-6);
      expect(Math.abs(back.yaw - yaw)).toBeLessThan(1e-6);
    }
  });

  it("still names the same rotation at gimbal lock", () => {
    // at pitch 90 the roll/yaw split is ambiguous; the extracted angles must
    // encode the identical rotation even though they differ from the inputs
    const q = eulerToQuaternion(30, 90, 40);
    const back = quaternionToEuler(q);
    expect(Math.abs(back.pitch - 90)).toBeLessThan(1e-6);
    expectQuatClose(eulerToQuaternion(back.roll, back.pitch, back.yaw), q, 1e-7);
  });
});

describe("poseRequest", () => {
  it("carries translation and a freshly computed quaternion", () => {
    const state = { ...identityState(), tx: 0.5, tz: -0.25, yaw: 90 };
    const req = poseRequest(state);
    expect(req.translation).toEqual([0.5, 0, -0.25]);
    expectQuatClose(req.quaternion, [HALF, 0, 0, HALF], 1e-12);
  });

  it("omits epsilon and session unless provided", () => {
    const bare = poseRequest(identityState());
    expect("epsilon" in bare).toBe(false);
    expect("session" in bare).toBe(false);
    const full = poseRequest(identityState(), 1e-4, 3);
    expect(full.epsilon).toBe(1e-4);
    expect(full.session).toBe(3);
  });
});
