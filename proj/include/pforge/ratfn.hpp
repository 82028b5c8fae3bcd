#ifndef PFORGE_RATFN_HPP
#define PFORGE_RATFN_HPP

#include "pforge/poly.hpp"

#include <map>
#include <vector>

namespace pforge {

// Normalized quotient of two polynomials. Canonical form: gcd(num, den) = 1,
// den is a primitive integer polynomial with positive leading coefficient,
// so equality is structural.
//
// Alongside the expanded denominator a factor list is kept (product equals
// the denominator up to a positive scalar). Reduction runs factor by factor:
// once the numerator is coprime to every factor it is coprime to the product,
// so the canonical form never needs a gcd against the expanded denominator.
class RatFn {
public:
    using Factor = std::pair<Poly, unsigned>; // base, multiplicity

    RatFn() = default;
    RatFn(Poly num, Poly den);
    explicit RatFn(Poly num);

    // Builds num / prod(base^mult), cancelling factor by factor.
    static RatFn make_reduced(Poly num, std::vector<Factor> den_factors);

    static RatFn zero(const Chart& chart) { return RatFn(Poly::zero(chart)); }
    static RatFn constant(const Chart& chart, const Rat& v) {
        return RatFn(Poly::constant(chart, v));
    }
    static RatFn var(const Chart& chart, const std::string& symbol) {
        return RatFn(Poly::var(chart, symbol));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const std::vector<Factor>& den_factors() const { return den_factors_; }
    const Chart& chart() const { return num_.chart(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const;

    // Denominator constant: the value is a polynomial.
    bool is_polynomial() const { return den_.is_constant(); }
    // Denominator free of chart state variables (time/params may remain).
    bool is_state_polynomial() const { return den_.is_state_free(); }
    Poly as_poly() const;

    RatFn operator-() const;
    RatFn operator+(const RatFn& other) const;
    RatFn operator-(const RatFn& other) const;
    RatFn operator*(const RatFn& other) const;
    RatFn operator/(const RatFn& other) const;
    RatFn& operator+=(const RatFn& o) { *this = *this + o; return *this; }
    RatFn& operator-=(const RatFn& o) { *this = *this - o; return *this; }
    RatFn& operator*=(const RatFn& o) { *this = *this * o; return *this; }
    RatFn& operator/=(const RatFn& o) { *this = *this / o; return *this; }

    RatFn pow(long e) const;

    bool operator==(const RatFn& other) const {
        return num_ == other.num_ && den_ == other.den_;
    }
    bool operator!=(const RatFn& other) const { return !(*this == other); }

    RatFn diff(unsigned idx) const;
    RatFn diff(const std::string& symbol) const;

    RatFn substitute(const std::map<unsigned, RatFn>& bindings, const Chart& target) const;
    RatFn substitute_by_name(const std::map<std::string, RatFn>& bindings,
                             const Chart& target) const;
    RatFn eval_partial(const std::map<unsigned, Rat>& values) const;
    RatFn transport(const Chart& target,
                    const std::map<std::string, std::string>& rename = {}) const;

    Rat eval(const std::vector<Rat>& values) const;

private:
    Poly num_;
    Poly den_;
    std::vector<Factor> den_factors_; // product equals den_ exactly; empty means 1
};

// Poly evaluated at rational-function arguments.
RatFn substitute_poly(const Poly& p, const std::map<unsigned, RatFn>& bindings,
                      const Chart& target);

RatFn operator*(const Rat& s, const RatFn& f);
RatFn operator+(const Rat& s, const RatFn& f);
RatFn operator-(const Rat& s, const RatFn& f);

} // namespace pforge

#endif
