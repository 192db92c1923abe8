#pragma once
#include <cmath>
#include <stdexcept>

namespace tracegauss {

// Working precision for every scalar operation. eps = 2^(guard - bits) is the
// contract tolerance handed to callers; actual rounding is at `bits`.
class PrecisionContext {
public:
    static constexpr int kMinBits = 128;
    static constexpr int kMinGuard = 32;

    PrecisionContext(int bits, int guard = kMinGuard) : bits_(bits), guard_(guard) {
        if (bits < kMinBits) throw std::invalid_argument("PrecisionContext: bits must be >= 128");
        if (guard < kMinGuard) throw std::invalid_argument("PrecisionContext: guard must be >= 32");
    }

    // Default policy for problem size n: quantities of order Gamma(n+2)^-2
    // keep >= 60 significant bits.
    static PrecisionContext for_problem_size(int n) {
        double nn = std::max(n, 2);
        int bits = static_cast<int>(std::ceil(4.0 * nn * std::log2(nn))) + 256;
        return PrecisionContext(std::max(bits, kMinBits));
    }

    int bits() const { return bits_; }
    int guard() const { return guard_; }
    // eps as a power of two: 2^(guard - bits), exact
    int eps_exponent() const { return guard_ - bits_; }

private:
    int bits_;
    int guard_;
};

} // namespace tracegauss
