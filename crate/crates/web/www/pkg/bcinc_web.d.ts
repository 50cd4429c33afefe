/* tslint:disable */
/* eslint-disable */

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `[max_abs_error, mean_abs_error, max_rank_error]` against exact scores.
     */
    compare_exact(): Float64Array;
    edge_count(): number;
    /**
     * Flat `[u0, v0, u1, v1, ...]`.
     */
    edges(): Uint32Array;
    epsilon(): number;
    exact_scores(): Float64Array;
    /**
     * Inserts `count` random new edges as one batch. Returns how many sampled
     * paths had to be redrawn.
     */
    insert_random_edges(count: number): number;
    /**
     * Endpoints of the last inserted batch, flat like [`Demo::edges`].
     */
    last_inserted(): Uint32Array;
    /**
     * Generates the graph and runs the initial sampling.
     */
    constructor(nodes: number, weighted: boolean, seed: bigint, epsilon: number, delta: number);
    node_count(): number;
    sample_count(): number;
    scores(): Float64Array;
    top(k: number): Uint32Array;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly demo_compare_exact: (a: number) => [number, number, number, number];
    readonly demo_edge_count: (a: number) => number;
    readonly demo_edges: (a: number) => [number, number];
    readonly demo_epsilon: (a: number) => number;
    readonly demo_exact_scores: (a: number) => [number, number, number, number];
    readonly demo_insert_random_edges: (a: number, b: number) => [number, number, number];
    readonly demo_last_inserted: (a: number) => [number, number];
    readonly demo_new: (a: number, b: number, c: bigint, d: number, e: number) => [number, number, number];
    readonly demo_node_count: (a: number) => number;
    readonly demo_sample_count: (a: number) => number;
    readonly demo_scores: (a: number) => [number, number];
    readonly demo_top: (a: number, b: number) => [number, number];
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
