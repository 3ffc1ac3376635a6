/* tslint:disable */
/* eslint-disable */

/**
 * Replicator trace rows `(t, y₁..y_d, gap)` flattened; `d = logits.len()`.
 */
export function replicator_trace(logits: Float64Array, y0: Float64Array, tol: number): Float64Array;

/**
 * Barycentric `(x, y)` pairs for the grid `(a, b) ∈ [-range, range]²`, row-major in `a`.
 */
export function three_class_grid(range: number, resolution: number, offset: number): Float64Array;

/**
 * RGBA pixels of the two-class gap field, row 0 at the top (`p = p_max`).
 */
export function two_class_gap_image(delta_min: number, delta_max: number, p_min: number, p_max: number, width: number, height: number): Uint8Array;

/**
 * `[gap, rank of ω_q at (r, Δ), α on the seam tangent ż = (1, −1)]` at one point.
 */
export function two_class_probe(delta: number, p: number, r: number): Float64Array;

/**
 * `(Δ, σ(Δ))` pairs along the seam.
 */
export function two_class_seam(delta_min: number, delta_max: number, samples: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly replicator_trace: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly three_class_grid: (a: number, b: number, c: number) => [number, number, number, number];
    readonly two_class_gap_image: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly two_class_probe: (a: number, b: number, c: number) => [number, number, number, number];
    readonly two_class_seam: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
