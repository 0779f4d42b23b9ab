/** Typed errors so callers can tell bad input from a broken installation. */

export class RsrError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

/** Host-side rejection: wrong shape, dtype, or alphabet. */
export class ValidationError extends RsrError {}

/** The CLI rejected the arguments (exit code 2). */
export class UsageError extends RsrError {}

/** A file was missing, truncated, or malformed (exit code 3). */
export class FormatError extends RsrError {}

/** Verification or a pre-timing equality check failed (exit code 1). */
export class MismatchError extends RsrError {}

/** The rsr executable could not be run at all. */
export class TransportError extends RsrError {}
