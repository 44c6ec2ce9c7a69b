#pragma once

#include <iosfwd>
#include <string>

#include "imcf/profile_ode.hpp"

namespace imcf {

/// Shortest decimal text that reads back to the same double (%.17g).
std::string format_double(double x);

/// CSV with header `r,psi,V,Vprime` (V columns empty when not carried),
/// followed by a `#events direction=<forward|backward>` line and one row per
/// event. Non-terminal rows are `kind,r,psi[,eta1|eta2]`; the last row is the
/// termination: `BlowUpMinus,<r1>`, `BlowUpPlus,<r1>`, `HitPlusOne,<r>,<limit>`,
/// `HitMinusOne,<r>,<limit>` or `StepLimit,<r>`.
void write_trace_csv(std::ostream& out, const Trace& trace);

/// Inverse of write_trace_csv. Throws ParseError on malformed input.
Trace read_trace_csv(std::istream& in);

}  // namespace imcf
