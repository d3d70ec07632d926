/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_coefficientfit_free: (a: number, b: number) => void;
export const __wbg_comparison_free: (a: number, b: number) => void;
export const __wbg_get_coefficientfit_objective: (a: number) => number;
export const __wbg_get_coefficientfit_s_hat: (a: number) => number;
export const __wbg_get_coefficientfit_sigma_harm: (a: number) => number;
export const __wbg_get_coefficientfit_sigma_star: (a: number) => number;
export const __wbg_get_comparison_cells: (a: number) => number;
export const __wbg_get_comparison_iterations: (a: number) => number;
export const __wbg_get_comparison_l2_err: (a: number) => number;
export const __wbg_get_scaling_minus_half_slope: (a: number) => number;
export const __wbg_get_scaling_minus_one_slope: (a: number) => number;
export const __wbg_scaling_free: (a: number, b: number) => void;
export const __wbg_set_coefficientfit_objective: (a: number, b: number) => void;
export const __wbg_set_coefficientfit_s_hat: (a: number, b: number) => void;
export const __wbg_set_coefficientfit_sigma_harm: (a: number, b: number) => void;
export const __wbg_set_coefficientfit_sigma_star: (a: number, b: number) => void;
export const __wbg_set_comparison_cells: (a: number, b: number) => void;
export const __wbg_set_comparison_iterations: (a: number, b: number) => void;
export const __wbg_set_comparison_l2_err: (a: number, b: number) => void;
export const __wbg_set_scaling_minus_half_slope: (a: number, b: number) => void;
export const __wbg_set_scaling_minus_one_slope: (a: number, b: number) => void;
export const coefficientfit_scan_objective: (a: number) => [number, number];
export const coefficientfit_scan_s: (a: number) => [number, number];
export const compare_densities: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const comparison_kinetic: (a: number) => [number, number];
export const comparison_limit: (a: number) => [number, number];
export const comparison_x: (a: number) => [number, number];
export const fit_coefficient: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const scaling_eps: (a: number) => [number, number];
export const scaling_minus_half: (a: number) => [number, number];
export const scaling_minus_one: (a: number) => [number, number];
export const scaling_satisfied: (a: number) => number;
export const sobolev_scaling: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
