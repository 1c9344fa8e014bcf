#pragma once

#include <iosfwd>

namespace tangles {

/// Full command-line front end.  Parses argv, dispatches to the library,
/// writes reports to `out` and problems to `err`, and returns the process
/// exit code:
///
///   0  everything checked out (laws hold, formula valid, witness passes,
///      tangle routes agree, dissection witness found)
///   1  an honest negative (law violated, formula falsified, countermodel
///      found, no dissection witness)
///   2  unusable invocation or input (bad flags, missing files, syntax
///      errors, bounds)
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

} // namespace tangles
