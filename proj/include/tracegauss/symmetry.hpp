#pragma once
#include <stdexcept>
#include <string>

namespace tracegauss {

enum class GroupKind { OPlusEven, OMinusEven, OPlusOdd, OMinusOdd, Sp };

// One of the four (a,b) in {-1/2,+1/2}^2 eigenvalue-density classes, plus the
// concrete group realizing it (needed for sampling and eigenvalue counts;
// Sp(2n) and O(2n+2)^- share (a,b) = (+,+)).
struct SymmetryClass {
    int a2; // 2a
    int b2; // 2b
    int n;  // non-trivial eigenvalue (conjugate-pair) count
    GroupKind group;

    static SymmetryClass o_plus_even(int n) { return {-1, -1, n, GroupKind::OPlusEven}; }   // O(2n)^+
    static SymmetryClass o_minus_even(int n) { return {1, 1, n, GroupKind::OMinusEven}; }   // O(2n+2)^-
    static SymmetryClass o_minus_odd(int n) { return {-1, 1, n, GroupKind::OMinusOdd}; }    // O(2n+1)^-
    static SymmetryClass o_plus_odd(int n) { return {1, -1, n, GroupKind::OPlusOdd}; }      // O(2n+1)^+
    static SymmetryClass sp(int n) { return {1, 1, n, GroupKind::Sp}; }                     // Sp(2n)

    // matrix size
    int d_total() const {
        switch (group) {
            case GroupKind::OPlusEven: return 2 * n;
            case GroupKind::OMinusEven: return 2 * n + 2;
            case GroupKind::OPlusOdd:
            case GroupKind::OMinusOdd: return 2 * n + 1;
            case GroupKind::Sp: return 2 * n;
        }
        return 0;
    }

    // index offset of the kernel entries J_{j+k+offset}; also the parameter
    // "d" of the trace bounds, via d_eff = 2n + offset
    int offset() const {
        if (a2 < 0 && b2 < 0) return 0;
        if (a2 > 0 && b2 > 0) return 2;
        return 1;
    }
    int d_eff() const { return 2 * n + offset(); }

    // sign of the kernel entries: (+,-) and (+,+) carry -J
    int kernel_sign() const { return (a2 > 0) ? -1 : +1; }

    // E[sum of non-trivial eigenvalues] = b - a
    int mean_shift2() const { return b2 - a2; } // twice (b-a)

    // sum of deterministic +-1 eigenvalues of the m-th power
    int deterministic_trace(int m) const {
        switch (group) {
            case GroupKind::OPlusEven:
            case GroupKind::Sp: return 0;
            case GroupKind::OMinusEven: return 1 + ((m % 2 == 0) ? 1 : -1);
            case GroupKind::OPlusOdd: return 1;
            case GroupKind::OMinusOdd: return (m % 2 == 0) ? 1 : -1;
        }
        return 0;
    }

    std::string name() const {
        switch (group) {
            case GroupKind::OPlusEven: return "O+(" + std::to_string(2 * n) + ")";
            case GroupKind::OMinusEven: return "O-(" + std::to_string(2 * n + 2) + ")";
            case GroupKind::OPlusOdd: return "O+(" + std::to_string(2 * n + 1) + ")";
            case GroupKind::OMinusOdd: return "O-(" + std::to_string(2 * n + 1) + ")";
            case GroupKind::Sp: return "Sp(" + std::to_string(2 * n) + ")";
        }
        return "?";
    }
};

} // namespace tracegauss
