#pragma once

#include <cmath>
#include <string>

namespace causalgeo {

// Three-valued answer for certified numerical decisions.  Undecided means the
// computation landed inside the comparison band and refuses to pick a side.
enum class Trilean { No, Yes, Undecided };

inline std::string to_string(Trilean t) {
    switch (t) {
        case Trilean::No: return "no";
        case Trilean::Yes: return "yes";
        default: return "undecided";
    }
}

inline Trilean negate(Trilean t) {
    if (t == Trilean::Yes) return Trilean::No;
    if (t == Trilean::No) return Trilean::Yes;
    return Trilean::Undecided;
}

// Banded comparator.  Floating-point quantities are treated as carrying an
// uncertainty of width eps; comparisons whose operands land within the band
// return Undecided instead of silently choosing a side.
struct Tolerance {
    double eps = 1e-12;

    // Certified "a < b": Yes if a < b - eps, No if a > b + eps.
    Trilean less(double a, double b) const {
        if (a < b - eps) return Trilean::Yes;
        if (a > b + eps) return Trilean::No;
        return Trilean::Undecided;
    }

    // Certified "a > b".
    Trilean greater(double a, double b) const { return less(b, a); }

    // True when a and b are indistinguishable at this tolerance.  A band hit
    // is not a proof of equality; callers decide what the band means.
    bool band_equal(double a, double b) const { return std::fabs(a - b) <= eps; }
};

} // namespace causalgeo
