#ifndef PFORGE_RAT_HPP
#define PFORGE_RAT_HPP

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace pforge {

// Exact rational scalar. mpq_class keeps the canonical form we rely on:
// gcd(|num|, den) = 1, den > 0, zero stored as 0/1.
using Rat = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_from_string(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0) throw Error("bad rational literal: " + text);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_one(const Rat& r) { return r == 1; }

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Floor of the integer value; only valid for integers that fit in long.
inline long to_long(const Rat& r) {
    if (!is_integer(r)) throw Error("rational is not an integer: " + to_string(r));
    if (!r.get_num().fits_slong_p()) throw Error("integer too large: " + to_string(r));
    return r.get_num().get_si();
}

inline Rat rat_pow(const Rat& base, unsigned exp) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    return out;
}

} // namespace pforge

#endif
