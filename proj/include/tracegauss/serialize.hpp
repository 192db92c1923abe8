#pragma once
#include <string>
#include <vector>

#include "tracegauss/real.hpp"

namespace tracegauss::serialize {

// decimal string with explicit exponent; digits = 0 uses enough digits to
// round-trip the binary value exactly at the same precision
std::string to_decimal(const Real& x, int digits = 0);
Real from_decimal(const std::string& s, const PrecisionContext& pc);

std::string csv_escape(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

} // namespace tracegauss::serialize
