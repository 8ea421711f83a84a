/* tslint:disable */
/* eslint-disable */

/**
 * Intersection graph, component shapes and the checked prediction for a
 * matrix in the `.mat` format.
 */
export function classify_matrix(text: string): string;

/**
 * Applies one of `twist`, `dual`, `delete`, `contract`, `restrict` and
 * returns the result in the set-system format.
 */
export function transform(text: string, op: string, arg: string): string;

/**
 * Twist polynomial of a set system in `elements:`/`feasible:` form.
 */
export function twist_polynomial(text: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly classify_matrix: (a: number, b: number) => [number, number, number, number];
    readonly transform: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly twist_polynomial: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
