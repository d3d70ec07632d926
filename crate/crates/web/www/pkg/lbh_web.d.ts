/* tslint:disable */
/* eslint-disable */

export class CoefficientFit {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly scan_objective: Float64Array;
    readonly scan_s: Float64Array;
    objective: number;
    s_hat: number;
    sigma_harm: number;
    sigma_star: number;
}

export class Comparison {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly kinetic: Float64Array;
    readonly limit: Float64Array;
    readonly x: Float64Array;
    cells: number;
    iterations: number;
    l2_err: number;
}

export class Scaling {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    minus_half_slope: number;
    minus_one_slope: number;
    readonly eps: Float64Array;
    readonly minus_half: Float64Array;
    readonly minus_one: Float64Array;
    readonly satisfied: boolean;
}

/**
 * Kinetic density against the weak-star diffusion limit at one eps.
 */
export function compare_densities(kind: string, a: number, b: number, beta: number, eps: number, bump: boolean): Comparison;

/**
 * Best constant `s` such that the limit with coefficient `s` matches the kinetic density.
 */
export function fit_coefficient(kind: string, a: number, b: number, beta: number, eps: number): CoefficientFit;

/**
 * H^-1 and H^-1/2 norms of the relative coefficient deviation on (0, 2π), with log-log slopes.
 */
export function sobolev_scaling(kind: string, a: number, b: number, beta: number, eps: Float64Array): Scaling;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_coefficientfit_free: (a: number, b: number) => void;
    readonly __wbg_comparison_free: (a: number, b: number) => void;
    readonly __wbg_get_coefficientfit_objective: (a: number) => number;
    readonly __wbg_get_coefficientfit_s_hat: (a: number) => number;
    readonly __wbg_get_coefficientfit_sigma_harm: (a: number) => number;
    readonly __wbg_get_coefficientfit_sigma_star: (a: number) => number;
    readonly __wbg_get_comparison_cells: (a: number) => number;
    readonly __wbg_get_comparison_iterations: (a: number) => number;
    readonly __wbg_get_comparison_l2_err: (a: number) => number;
    readonly __wbg_get_scaling_minus_half_slope: (a: number) => number;
    readonly __wbg_get_scaling_minus_one_slope: (a: number) => number;
    readonly __wbg_scaling_free: (a: number, b: number) => void;
    readonly __wbg_set_coefficientfit_objective: (a: number, b: number) => void;
    readonly __wbg_set_coefficientfit_s_hat: (a: number, b: number) => void;
    readonly __wbg_set_coefficientfit_sigma_harm: (a: number, b: number) => void;
    readonly __wbg_set_coefficientfit_sigma_star: (a: number, b: number) => void;
    readonly __wbg_set_comparison_cells: (a: number, b: number) => void;
    readonly __wbg_set_comparison_iterations: (a: number, b: number) => void;
    readonly __wbg_set_comparison_l2_err: (a: number, b: number) => void;
    readonly __wbg_set_scaling_minus_half_slope: (a: number, b: number) => void;
    readonly __wbg_set_scaling_minus_one_slope: (a: number, b: number) => void;
    readonly coefficientfit_scan_objective: (a: number) => [number, number];
    readonly coefficientfit_scan_s: (a: number) => [number, number];
    readonly compare_densities: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly comparison_kinetic: (a: number) => [number, number];
    readonly comparison_limit: (a: number) => [number, number];
    readonly comparison_x: (a: number) => [number, number];
    readonly fit_coefficient: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly scaling_eps: (a: number) => [number, number];
    readonly scaling_minus_half: (a: number) => [number, number];
    readonly scaling_minus_one: (a: number) => [number, number];
    readonly scaling_satisfied: (a: number) => number;
    readonly sobolev_scaling: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
