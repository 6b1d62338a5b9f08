/* tslint:disable */
/* eslint-disable */

/**
 * Relative errors of the first `samples / 2` Taylor coefficients of
 * `sqrt(1 - t)` recovered from `samples` points on the circle `|t| = step`.
 */
export function coefficient_errors(step: number, samples: number, extended: boolean): string;

/**
 * Sweep and radar on `x^2 - (t - p)(t - 1)` with the branch point `p`
 * planted at `re + i im`.
 */
export function planted_radar(re: number, im: number): string;

/**
 * `|R_{i,j} - 1|` on the ratios `c_n / c_{n+1}` of `sqrt(1 - t)` at
 * `n = 2, ..., 2^levels`.
 */
export function richardson_errors(levels: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly coefficient_errors: (a: number, b: number, c: number) => [number, number];
    readonly planted_radar: (a: number, b: number) => [number, number];
    readonly richardson_errors: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
