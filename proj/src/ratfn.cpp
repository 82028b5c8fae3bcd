#include "pforge/ratfn.hpp"

#include <algorithm>

namespace pforge {

RatFn::RatFn(Poly num, Poly den) {
    num.check_same_chart(den);
    *this = make_reduced(std::move(num), {{std::move(den), 1}});
}

RatFn::RatFn(Poly num)
    : num_(std::move(num)), den_(Poly::constant(num_.chart(), Rat(1))) {}

namespace {

void push_factor(std::vector<RatFn::Factor>& list, Poly base, unsigned mult) {
    if (mult == 0) return;
    for (auto& [b, m] : list)
        if (b == base) { m += mult; return; }
    list.emplace_back(std::move(base), mult);
}

} // namespace

// Invariant maintained here and relied on by every operation: the product of
// den_factors_ (base^mult) equals den_ exactly (an empty list stands for 1).
RatFn RatFn::make_reduced(Poly num, std::vector<Factor> factors) {
    const Chart& chart = num.chart();
    for (const auto& [f, m] : factors)
        if (f.is_zero() && m > 0) throw Error("zero denominator");
    RatFn out;
    if (num.is_zero()) {
        out.den_ = Poly::constant(chart, Rat(1));
        out.num_ = std::move(num);
        return out;
    }
    Rat scalar(1);
    // group equal bases so each distinct factor is cancelled once
    std::vector<Factor> work;
    for (auto& [f, m] : factors) push_factor(work, std::move(f), m);
    std::vector<Factor> kept;
    for (std::size_t i = 0; i < work.size(); ++i) {
        Poly f = std::move(work[i].first);
        unsigned m = work[i].second;
        if (f.is_constant()) {
            Rat c = f.constant_value();
            for (unsigned r = 0; r < m; ++r) scalar *= c;
            continue;
        }
        while (m > 0) {
            if (auto q = Poly::try_divide(num, f)) { // full cancellation, common case
                num = std::move(*q);
                --m;
                continue;
            }
            Poly g = Poly::gcd(num, f);
            if (g.is_constant()) break;
            // partial cancellation: this copy splits as g * (f/g)
            num = Poly::divide_exact(num, g);
            work.emplace_back(Poly::divide_exact(f, g), 1u);
            --m;
        }
        if (m > 0) push_factor(kept, std::move(f), m);
    }
    if (sgn(scalar) == 0) throw Error("zero denominator");
    Poly den = Poly::constant(chart, scalar);
    for (const auto& [f, m] : kept) den *= f.pow(m);
    // canonical scaling: den primitive integer, positive lead
    Rat c = den.content();
    if (sgn(den.leading_coeff()) < 0) c = -c;
    if (c != 1) {
        Rat inv = Rat(1) / c;
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    Rat net = scalar / c;
    out.num_ = std::move(num);
    out.den_ = std::move(den);
    out.den_factors_ = std::move(kept);
    if (net != 1) out.den_factors_.emplace_back(Poly::constant(chart, net), 1u);
    return out;
}

Rat RatFn::constant_value() const {
    if (!is_constant()) throw Error("rational function is not constant");
    return num_.constant_value() / den_.constant_value();
}

Poly RatFn::as_poly() const {
    if (!is_polynomial())
        throw Error("rational function is not a polynomial");
    return num_.scaled(Rat(1) / den_.constant_value());
}

RatFn RatFn::operator-() const {
    RatFn out = *this;
    out.num_ = -out.num_;
    return out;
}

RatFn RatFn::operator+(const RatFn& other) const {
    if (is_polynomial() && other.is_polynomial())
        return RatFn(as_poly() + other.as_poly());
    if (den_ == other.den_) {
        Poly n = num_ + other.num_;
        if (n.is_zero()) return zero(chart());
        return make_reduced(std::move(n), den_factors_);
    }
    Poly n = num_ * other.den_ + other.num_ * den_;
    std::vector<Factor> factors = den_factors_;
    for (const auto& [f, m] : other.den_factors_) push_factor(factors, f, m);
    return make_reduced(std::move(n), std::move(factors));
}

RatFn RatFn::operator-(const RatFn& other) const { return *this + (-other); }

RatFn RatFn::operator*(const RatFn& other) const {
    if (is_polynomial() && other.is_polynomial())
        return RatFn(as_poly() * other.as_poly());
    std::vector<Factor> factors = den_factors_;
    for (const auto& [f, m] : other.den_factors_) push_factor(factors, f, m);
    return make_reduced(num_ * other.num_, std::move(factors));
}

RatFn RatFn::operator/(const RatFn& other) const {
    if (other.is_zero()) throw Error("division by zero rational function");
    std::vector<Factor> factors = den_factors_;
    push_factor(factors, other.num_, 1);
    return make_reduced(num_ * other.den_, std::move(factors));
}

RatFn RatFn::pow(long e) const {
    if (e == 0) return RatFn::constant(chart(), Rat(1));
    if (e < 0) {
        if (is_zero()) throw Error("negative power of zero");
        RatFn inv = RatFn::constant(chart(), Rat(1)) / *this;
        return inv.pow(-e);
    }
    // num and den are coprime, so powers stay coprime; den stays primitive
    RatFn out;
    out.num_ = num_.pow(static_cast<unsigned>(e));
    out.den_ = den_.pow(static_cast<unsigned>(e));
    out.den_factors_ = den_factors_;
    for (auto& [f, m] : out.den_factors_) m *= static_cast<unsigned>(e);
    return out;
}

RatFn RatFn::diff(unsigned idx) const {
    if (den_.is_constant())
        return RatFn(num_.diff(idx).scaled(Rat(1) / den_.constant_value()));
    if (!den_.depends_on(idx))
        return make_reduced(num_.diff(idx), den_factors_);
    // product rule over the stored factorization:
    // (num/den)' = (num' - num * sum_i m_i f_i'/f_i) / den
    Poly n = num_.diff(idx) * den_;
    for (const auto& [f, m] : den_factors_) {
        Poly fd = f.diff(idx);
        if (fd.is_zero()) continue;
        n -= num_ * fd * Poly::divide_exact(den_, f).scaled(Rat(static_cast<long>(m)));
    }
    std::vector<Factor> factors = den_factors_;
    for (auto& [f, m] : factors) m *= 2;
    return make_reduced(std::move(n), std::move(factors));
}

RatFn RatFn::diff(const std::string& symbol) const {
    return diff(static_cast<unsigned>(chart().index_of(symbol)));
}

// Works over one common denominator so normalization happens once:
// p(n_1/d_1, ...) = sum_terms c * prod n_i^{e_i} d_i^{E_i - e_i} / prod d_i^{E_i}
RatFn substitute_poly(const Poly& p, const std::map<unsigned, RatFn>& bindings,
                      const Chart& target) {
    const Chart& source = p.chart();
    std::map<unsigned, Poly> nums;
    std::map<unsigned, Poly> dens;        // only symbols with nonconstant denominator
    std::map<unsigned, unsigned> den_max; // E_i = degree of the symbol in p
    std::vector<RatFn::Factor> den_factors;
    for (unsigned idx = 0; idx < source.num_symbols(); ++idx) {
        if (!p.depends_on(idx)) continue;
        auto it = bindings.find(idx);
        if (it != bindings.end()) {
            if (it->second.is_polynomial()) {
                nums.emplace(idx, it->second.as_poly());
            } else {
                unsigned E = p.degree_in(idx);
                nums.emplace(idx, it->second.num());
                dens.emplace(idx, it->second.den());
                den_max.emplace(idx, E);
                for (const auto& [f, m] : it->second.den_factors())
                    push_factor(den_factors, f, m * E);
            }
        } else {
            auto pos = target.find(source.symbols()[idx]);
            if (!pos)
                throw Error("substitute: unbound symbol " + source.symbols()[idx] +
                            " missing from target chart");
            nums.emplace(idx, Poly::var(target, static_cast<unsigned>(*pos)));
        }
    }
    std::map<unsigned, std::vector<Poly>> num_pows, den_pows;
    auto power = [&](std::map<unsigned, std::vector<Poly>>& cache,
                     const std::map<unsigned, Poly>& base, unsigned idx,
                     unsigned e) -> const Poly& {
        auto& v = cache[idx];
        if (v.empty()) v.push_back(base.at(idx));
        while (v.size() < e) v.push_back(v.back() * v.front());
        return v[e - 1];
    };
    Poly acc(target);
    for (const auto& [m, c] : p.terms()) {
        Poly term = Poly::constant(target, c);
        for (const auto& [idx, e] : m.factors())
            if (nums.count(idx)) term *= power(num_pows, nums, idx, e);
        for (const auto& [idx, E] : den_max) {
            unsigned e = m.exponent(idx);
            if (E > e) term *= power(den_pows, dens, idx, E - e);
        }
        acc += term;
    }
    if (den_factors.empty()) return RatFn(std::move(acc));
    return RatFn::make_reduced(std::move(acc), std::move(den_factors));
}

RatFn RatFn::substitute(const std::map<unsigned, RatFn>& bindings, const Chart& target) const {
    RatFn n = substitute_poly(num_, bindings, target);
    if (den_.is_constant()) return n; // canonical constant denominator is 1
    bool den_touched = false;
    for (const auto& [idx, value] : bindings)
        if (den_.depends_on(idx)) { den_touched = true; break; }
    if (!den_touched) {
        // denominator passes through unchanged, keeping its factor list
        std::vector<Factor> factors = n.den_factors_;
        for (const auto& [f, m] : den_factors_)
            push_factor(factors, f.transport(target), m);
        return make_reduced(std::move(n.num_), std::move(factors));
    }
    RatFn d = substitute_poly(den_, bindings, target);
    if (d.is_zero())
        throw Error("substitution produced identically zero denominator");
    return n / d;
}

RatFn RatFn::substitute_by_name(const std::map<std::string, RatFn>& bindings,
                                const Chart& target) const {
    std::map<unsigned, RatFn> by_idx;
    for (const auto& [name, value] : bindings)
        by_idx.emplace(static_cast<unsigned>(chart().index_of(name)), value);
    return substitute(by_idx, target);
}

RatFn RatFn::eval_partial(const std::map<unsigned, Rat>& values) const {
    std::vector<Factor> factors;
    factors.reserve(den_factors_.size());
    for (const auto& [f, m] : den_factors_) factors.emplace_back(f.eval_partial(values), m);
    return make_reduced(num_.eval_partial(values), std::move(factors));
}

RatFn RatFn::transport(const Chart& target,
                       const std::map<std::string, std::string>& rename) const {
    RatFn out;
    out.num_ = num_.transport(target, rename);
    out.den_ = den_.transport(target, rename);
    out.den_factors_.reserve(den_factors_.size());
    for (const auto& [f, m] : den_factors_)
        out.den_factors_.emplace_back(f.transport(target, rename), m);
    return out;
}

Rat RatFn::eval(const std::vector<Rat>& values) const {
    Rat d = den_.eval(values);
    if (sgn(d) == 0) throw Error("evaluation at a pole of the denominator");
    return num_.eval(values) / d;
}

RatFn operator*(const Rat& s, const RatFn& f) {
    return RatFn::make_reduced(f.num().scaled(s), f.den_factors());
}
RatFn operator+(const Rat& s, const RatFn& f) {
    return RatFn::constant(f.chart(), s) + f;
}
RatFn operator-(const Rat& s, const RatFn& f) {
    return RatFn::constant(f.chart(), s) - f;
}

} // namespace pforge
