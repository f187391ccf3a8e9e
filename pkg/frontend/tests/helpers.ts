import { readFileSync } from "node:fs";

// Fixtures are recorded from a live service and the command-line evaluator
// against robots/equivalent_screws_4dof.json; see fixtures/README.md.

export function fixture(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");
}

export function fixtureJson<T>(name: string): T {
  return JSON.parse(fixture(name)) as T;
}
