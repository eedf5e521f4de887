// Command-line front end. cli_main is the real entry point, parameterized on
// streams so tests can drive it in-process and capture output.
//
// Commands: stability, solve, asymptotics, oracle, validate.
// Exit codes: 0 success, 1 unstable/domain refusal, 2 bad input (flags or
// config), 3 numerical failure.
#pragma once

#include <ostream>

namespace gpsq {

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gpsq
