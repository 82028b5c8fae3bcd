#ifndef PFORGE_POLY_HPP
#define PFORGE_POLY_HPP

#include "pforge/chart.hpp"
#include "pforge/rat.hpp"

#include <map>
#include <optional>
#include <vector>

namespace pforge {

// Sparse monomial: (symbol index, exponent) pairs sorted by index, no zero
// exponents stored. Indices refer to one fixed Chart symbol list.
class Mono {
public:
    using Factors = std::vector<std::pair<unsigned, unsigned>>;

    Mono() = default;
    explicit Mono(Factors factors);

    static Mono one() { return Mono(); }
    static Mono var(unsigned idx, unsigned exp = 1);

    const Factors& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    unsigned total_degree() const { return degree_; }
    unsigned exponent(unsigned idx) const;

    Mono times(const Mono& other) const;
    std::optional<Mono> divide(const Mono& other) const;
    Mono gcd(const Mono& other) const;
    Mono pow(unsigned e) const;

    bool operator==(const Mono& other) const { return factors_ == other.factors_; }

private:
    Factors factors_;
    unsigned degree_ = 0;
};

// Graded lexicographic order over the chart's symbol order.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Sparse multivariate polynomial over Rat. Canonical form: no zero
// coefficients stored; equality is structural.
class Poly {
public:
    using Terms = std::map<Mono, Rat, MonoLess>;

    Poly() = default;
    explicit Poly(Chart chart) : chart_(std::move(chart)) {}

    static Poly zero(const Chart& chart) { return Poly(chart); }
    static Poly constant(const Chart& chart, const Rat& value);
    static Poly var(const Chart& chart, unsigned idx);
    static Poly var(const Chart& chart, const std::string& symbol);

    const Chart& chart() const { return chart_; }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;

    // True when no chart state variable occurs (time/params allowed).
    bool is_state_free() const;
    bool depends_on(unsigned idx) const;

    unsigned total_degree() const;
    unsigned degree_in(unsigned idx) const;
    // Max total degree counting state-variable exponents only.
    unsigned degree_in_vars() const;

    const Mono& leading_mono() const;
    const Rat& leading_coeff() const;
    Rat coeff(const Mono& m) const;

    Poly operator-() const;
    Poly operator+(const Poly& other) const;
    Poly operator-(const Poly& other) const;
    Poly operator*(const Poly& other) const;
    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Poly& other) { *this = *this * other; return *this; }

    Poly scaled(const Rat& factor) const;
    Poly times_mono(const Mono& m, const Rat& coeff) const;
    Poly pow(unsigned e) const;

    bool operator==(const Poly& other) const;
    bool operator!=(const Poly& other) const { return !(*this == other); }

    Poly diff(unsigned idx) const;

    // Substitute constants for a subset of symbols.
    Poly eval_partial(const std::map<unsigned, Rat>& values) const;
    // Full evaluation; `values` indexed by chart symbol position.
    Rat eval(const std::vector<Rat>& values) const;

    // Polynomial-valued substitution: every bound index is replaced by a
    // polynomial over `target`; unbound symbols must exist in `target` under
    // the same name.
    Poly substitute(const std::map<unsigned, Poly>& bindings, const Chart& target) const;

    // Re-express over a compatible chart, matching symbols by name (or via
    // the explicit rename map applied first).
    Poly transport(const Chart& target,
                   const std::map<std::string, std::string>& rename = {}) const;

    // Rational content: positive c with *this = c * (primitive integer poly).
    Rat content() const;
    Poly primitive_part() const;    // integer coefficients, positive leading coeff
    Mono monomial_content() const;  // componentwise min exponents

    // Exact division; nullopt when not divisible.
    static std::optional<Poly> try_divide(const Poly& num, const Poly& den);
    static Poly divide_exact(const Poly& num, const Poly& den);

    // gcd over Q[symbols], normalized to a primitive integer polynomial with
    // positive leading coefficient; includes the shared rational content.
    static Poly gcd(const Poly& a, const Poly& b);

    void add_term(const Mono& m, const Rat& coeff);
    void check_same_chart(const Poly& other) const;

private:
    Chart chart_;
    Terms terms_;
};

Poly operator*(const Rat& scalar, const Poly& p);
Poly operator+(const Rat& scalar, const Poly& p);
Poly operator-(const Rat& scalar, const Poly& p);
Poly operator+(const Poly& p, const Rat& scalar);
Poly operator-(const Poly& p, const Rat& scalar);

Rat rat_gcd(const Rat& a, const Rat& b);

} // namespace pforge

#endif
