#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace qknot {

// Runs one CLI invocation. Returns the process exit status: 0 success,
// 1 validation error, 2 cap/limit truncation where the answer is unknown.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// angle spec: "pi/5", "2pi/7", "pi", or a plain number in radians -> e^{i angle}
std::complex<double> parse_unit_circle_point(const std::string& spec);

}  // namespace qknot
