#include "ksr/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "ksr/errors.hpp"

namespace ksr {

Rat rat_from_string(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw InvalidInputError("empty rational literal");

    auto dot = t.find('.');
    if (dot != std::string::npos) {
        if (t.find('/') != std::string::npos)
            throw InvalidInputError("rational literal mixes '.' and '/': " + s);
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        size_t frac_len = t.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw InvalidInputError("malformed decimal literal: " + s);
        mpz_class num, den(1);
        if (num.set_str(digits, 10) != 0)
            throw InvalidInputError("malformed decimal literal: " + s);
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat q(num, den);
        q.canonicalize();
        return q;
    }

    Rat q;
    if (q.set_str(t, 10) != 0) throw InvalidInputError("malformed rational literal: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw InvalidInputError("zero denominator: " + s);
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_double(double x, unsigned bits) {
    if (!std::isfinite(x)) throw InvalidInputError("cannot rationalize a non-finite value");
    mpz_class den(1);
    den <<= bits;
    mpq_class scaled(x);
    scaled *= den;
    mpz_class num;
    mpz_fdiv_q(num.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    // round-half-up on the remainder
    mpq_class rem = scaled - num;
    if (rem * 2 >= 1) num += 1;
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat rat_sqrt_upper(const Rat& q, const Rat& slack) {
    if (sgn(q) < 0) throw InvalidInputError("rat_sqrt_upper of a negative value");
    if (sgn(q) == 0) return Rat(0);
    if (sgn(slack) <= 0) throw InvalidInputError("rat_sqrt_upper needs positive slack");
    // bisect [lo, hi] with lo^2 <= q <= hi^2
    Rat lo(0), hi = q < 1 ? Rat(1) : q;
    while (hi * hi - q > slack) {
        Rat mid = (lo + hi) / 2;
        if (mid * mid >= q)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::vector<std::string> rat_vec_to_strings(const std::vector<Rat>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(rat_to_string(q));
    return out;
}

}  // namespace ksr
