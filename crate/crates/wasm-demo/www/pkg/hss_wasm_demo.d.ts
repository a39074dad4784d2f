/* tslint:disable */
/* eslint-disable */

export function entropy_curve(q: number, w: number, points: number): string;

/**
 * Baseline versus construction rows for `kind` in {goppa, hermitian, gv-example}.
 */
export function rate_table(kind: string, dt: number, servers: string): string;

/**
 * Builds a scheme and runs `trials` seeded share/evaluate/reconstruct rounds.
 * `a`, `b` are (u, r) for Goppa and (q, k) for Hermitian and Reed-Solomon.
 */
export function run_demo(family: string, a: number, b: number, t: number, d: number, trials: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly entropy_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly rate_table: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly run_demo: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
