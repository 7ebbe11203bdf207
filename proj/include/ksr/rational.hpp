#ifndef KSR_RATIONAL_HPP
#define KSR_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace ksr {

// Exact rational scalar used by every polynomial routine. Floating point
// appears only in root localization and in the spectral (Eigen) code paths.
using Rat = mpq_class;

inline int sgn(const Rat& q) { return ::sgn(q); }

inline double to_double(const Rat& q) { return q.get_d(); }

// mpq_class(num, den) does not canonicalize; this does.
inline Rat make_rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "num/den", plain integers, and decimal literals ("-0.25" -> -1/4).
Rat rat_from_string(const std::string& s);

// Canonical "num/den" ("num" when den == 1); used by all JSON encoders.
std::string rat_to_string(const Rat& q);

// Nearest rational with denominator 2^bits; used when handing floating-point
// spectral data to the exact pipeline.
Rat rat_from_double(double x, unsigned bits = 31);

// Smallest rational r with r >= sqrt(q) and r^2 - q <= slack (q >= 0).
Rat rat_sqrt_upper(const Rat& q, const Rat& slack);

std::vector<std::string> rat_vec_to_strings(const std::vector<Rat>& v);

}  // namespace ksr

#endif
