#pragma once

/**
 * Command-line front end: build tables and triangulations, run
 * trajectories, verify every identity family, and render pictures, with
 * machine-readable JSON output throughout.
 *
 * Key design decisions.  Exit codes separate the two failure worlds: 2
 * for rejected input (malformed flags included), 1 for any verification
 * failure, 0 for success; stderr carries the first failing stream and
 * time.  All reports default to stdout and go to a file via --json /
 * --svg.  The default verification window is [-2 max p_a, 4r + 2 max
 * p_a], widened automatically for periodicity checks whose claimed
 * period needs a doubled cover beyond 4r (the odd-r punctured family).
 * Progress logging is opt-in through YSYS_LOG={info,debug} on stderr so
 * stdout stays parseable.
 */

namespace ysys {

int run_cli(int argc, const char* const* argv);

}  // namespace ysys
