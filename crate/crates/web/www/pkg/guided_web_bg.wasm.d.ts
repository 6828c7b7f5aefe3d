/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const bruteForceCheck: (a: number, b: number, c: number, d: bigint, e: number) => [number, number, number, number];
export const compareAlgorithms: (a: number, b: number, c: number, d: bigint, e: number, f: number) => [number, number, number, number];
export const sweepSwitchTime: (a: number, b: number, c: number, d: bigint, e: number, f: number, g: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
