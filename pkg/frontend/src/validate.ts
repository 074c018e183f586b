// Client-side weighing validation, mirroring the server's 422 reason
// codes so a blocked submission shows exactly what the server would say.

import type { LoadWire } from "./api.js";

export interface ValidationIssue {
  code: string;
  message: string;
}

export function validateWeighing(
  loads: LoadWire[],
  scales: number,
  coinLimit: number | null,
): ValidationIssue | null {
  if (loads.length !== scales) {
    return {
      code: "wrong-scale-count",
      message: `expected ${scales} scales, got ${loads.length}`,
    };
  }
  const seen = new Set<number>();
  for (let index = 0; index < loads.length; index += 1) {
    const { left, right } = loads[index];
    if (left.length !== right.length) {
      return {
        code: "pan-size-mismatch",
        message: `scale ${index}: ${left.length} v ${right.length} coins`,
      };
    }
    for (const coin of [...left, ...right]) {
      if (coin < 0 || (coinLimit !== null && coin >= coinLimit)) {
        return { code: "bad-coin-id", message: `coin id ${coin} out of range` };
      }
      if (seen.has(coin)) {
        return {
          code: "duplicate-coin",
          message: `coin ${coin} appears on more than one pan`,
        };
      }
      seen.add(coin);
    }
  }
  return null;
}
