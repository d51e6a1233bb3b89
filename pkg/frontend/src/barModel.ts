/**
 * Headless genre-bar model: a direct port of the backend's slider
 * semantics. Every operation here must stay behavior-identical to the
 * server's bar model for the same event sequence; the replay test in
 * __tests__/barModel.test.ts enforces that against recorded scripts.
 */

/** Drag positions snap to multiples of STEP (0.1%). */
export const STEP = 0.001;

export interface BarState {
  /** Genre proportions; nonnegative, summing to one. */
  readonly weights: readonly number[];
  /** K-1 handle positions: cumulative sums of the first K-1 weights. */
  readonly handles: readonly number[];
}

/** Snap a bar coordinate to the nearest STEP multiple (halves round up). */
export function quantize(position: number): number {
  return Math.floor(position * 1000 + 0.5) / 1000;
}

export function handlesFromWeights(weights: readonly number[]): number[] {
  // min() guards the last-ulp case where a rounding-up partial sum would
  // push a handle past the end of the bar.
  const handles: number[] = [];
  let acc = 0;
  for (let i = 0; i < weights.length - 1; i += 1) {
    acc = Math.min(acc + weights[i], 1);
    handles.push(acc);
  }
  return handles;
}

export function stateFromWeights(weights: readonly number[]): BarState {
  return { weights: [...weights], handles: handlesFromWeights(weights) };
}

export function weightsFromHandles(handles: readonly number[]): number[] {
  const bounds = [0, ...handles, 1];
  const weights: number[] = [];
  for (let i = 0; i + 1 < bounds.length; i += 1) {
    weights.push(bounds[i + 1] - bounds[i]);
  }
  return weights;
}

/**
 * Move one handle: quantize the target, clamp between the neighboring
 * handles (or the bar ends), re-derive the two adjacent weights. All other
 * components are untouched. Returns the same state object for a no-op.
 */
export function applyDrag(state: BarState, handleIndex: number, target: number): BarState {
  const k = state.weights.length;
  if (handleIndex < 0 || handleIndex > k - 2) {
    throw new RangeError(`handle index ${handleIndex} out of range for a ${k}-genre bar`);
  }
  const lower = handleIndex > 0 ? state.handles[handleIndex - 1] : 0;
  const upper = handleIndex < k - 2 ? state.handles[handleIndex + 1] : 1;
  const position = Math.min(Math.max(quantize(target), lower), upper);
  if (position === state.handles[handleIndex]) {
    return state;
  }
  const handles = [...state.handles];
  handles[handleIndex] = position;
  const weights = [...state.weights];
  weights[handleIndex] = position - lower;
  weights[handleIndex + 1] = upper - position;
  return { weights, handles };
}

/**
 * Apportion totalWidth pixels over the segments, largest remainder first.
 * Widths sum exactly to totalWidth and each deviates from the exact
 * proportion by at most one pixel. Ties go to the larger weight, then the
 * lower index.
 */
export function segmentPixelWidths(weights: readonly number[], totalWidth: number): number[] {
  const k = weights.length;
  if (totalWidth < k) {
    throw new RangeError(`total width ${totalWidth} smaller than segment count ${k}`);
  }
  const exact = weights.map((w) => w * totalWidth);
  const widths = exact.map((e) => Math.floor(e));
  let leftover = totalWidth - widths.reduce((a, b) => a + b, 0);
  const order = exact
    .map((e, i) => ({ remainder: e - widths[i], weight: weights[i], index: i }))
    .sort(
      (a, b) => b.remainder - a.remainder || b.weight - a.weight || a.index - b.index,
    );
  for (const entry of order) {
    if (leftover <= 0) break;
    widths[entry.index] += 1;
    leftover -= 1;
  }
  return widths;
}

/** Handle pixel positions: cumulative segment widths, so handles always sit
 * exactly on segment boundaries. */
export function handlePixelPositions(weights: readonly number[], totalWidth: number): number[] {
  const widths = segmentPixelWidths(weights, totalWidth);
  const positions: number[] = [];
  let acc = 0;
  for (let i = 0; i < widths.length - 1; i += 1) {
    acc += widths[i];
    positions.push(acc);
  }
  return positions;
}

/** One-decimal percentage, e.g. 0.6 -> "60.0%". */
export function percentText(weight: number): string {
  return `${(weight * 100).toFixed(1)}%`;
}
