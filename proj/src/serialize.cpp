#include "tracegauss/serialize.hpp"

#include <sstream>

namespace tracegauss::serialize {

std::string to_decimal(const Real& x, int digits) { return x.str(digits); }

Real from_decimal(const std::string& s, const PrecisionContext& pc) {
    return Real(s.c_str(), static_cast<mpfr_prec_t>(pc.bits()));
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::ostringstream os;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(fields[i]);
    }
    os << '\n';
    return os.str();
}

} // namespace tracegauss::serialize
