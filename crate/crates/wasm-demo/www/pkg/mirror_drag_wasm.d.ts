/* tslint:disable */
/* eslint-disable */

/**
 * Samples `n` points with `1 − β` log-spaced from `1 − beta_min` down to
 * `1 − beta_max`, so the curve resolves both the linear and the divergent end.
 *
 * Rows are `[β, f̂, f̂/P̂, 8β, 8β/(1−β)]`.
 */
export function drag_curve(beta_min: number, beta_max: number, n: number): Float64Array;

/**
 * Monte Carlo momentum density next to its closed form:
 * `[estimate, std_error, closed, E[μ] estimate, E[μ] std_error, E[μ] exact, f̂_kin]`.
 */
export function monte_carlo(beta_value: number, samples: number, seed: number): Float64Array;

/**
 * RK4 trajectory as `[τ, β, β_analytic]` triples, thinned to at most
 * `max_points` rows.
 */
export function trajectory(beta0: number, tau_end: number, step: number, max_points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly drag_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly monte_carlo: (a: number, b: number, c: number) => [number, number, number, number];
    readonly trajectory: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
