/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demo_free: (a: number, b: number) => void;
export const demo_compare_exact: (a: number) => [number, number, number, number];
export const demo_edge_count: (a: number) => number;
export const demo_edges: (a: number) => [number, number];
export const demo_epsilon: (a: number) => number;
export const demo_exact_scores: (a: number) => [number, number, number, number];
export const demo_insert_random_edges: (a: number, b: number) => [number, number, number];
export const demo_last_inserted: (a: number) => [number, number];
export const demo_new: (a: number, b: number, c: bigint, d: number, e: number) => [number, number, number];
export const demo_node_count: (a: number) => number;
export const demo_sample_count: (a: number) => number;
export const demo_scores: (a: number) => [number, number];
export const demo_top: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
