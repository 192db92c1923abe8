#include "tracegauss/real.hpp"

#include <cstdio>
#include <vector>

namespace tracegauss {

std::string Real::str(int digits) const {
    if (digits <= 0) {
        // enough decimal digits to round-trip the binary value
        digits = static_cast<int>(prec() * 0.30103) + 3;
    }
    std::vector<char> buf(digits + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data());
}

} // namespace tracegauss
