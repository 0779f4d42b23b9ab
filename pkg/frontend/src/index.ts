/** Thin host-language layer over the rsr CLI and its file formats.  Five
 *  operations: preprocess, multiply, save, load, bench. */

export { Handle, load, multiply, preprocess, save } from "./bindings.js";
export type { SpaceReport, Variant } from "./bindings.js";
export { bench, toCsv } from "./bench.js";
export type { BenchRecord } from "./bench.js";
export type { TernaryInput, TernaryView } from "./matrix.js";
export {
  FormatError,
  MismatchError,
  RsrError,
  TransportError,
  UsageError,
  ValidationError,
} from "./errors.js";
