#include "pforge/poly.hpp"

#include <algorithm>
#include <sstream>

namespace pforge {

// ---------------------------------------------------------------- Mono

Mono::Mono(Factors factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].second == 0) throw Error("monomial with zero exponent");
        if (i > 0 && factors_[i].first == factors_[i - 1].first)
            throw Error("monomial with duplicate variable");
        degree_ += factors_[i].second;
    }
}

Mono Mono::var(unsigned idx, unsigned exp) {
    if (exp == 0) return Mono();
    return Mono(Factors{{idx, exp}});
}

unsigned Mono::exponent(unsigned idx) const {
    for (const auto& [i, e] : factors_)
        if (i == idx) return e;
    return 0;
}

Mono Mono::times(const Mono& other) const {
    Factors out;
    out.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin(), b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first))
            out.push_back(*a++);
        else if (a == factors_.end() || b->first < a->first)
            out.push_back(*b++);
        else {
            out.emplace_back(a->first, a->second + b->second);
            ++a; ++b;
        }
    }
    Mono m;
    m.factors_ = std::move(out);
    for (const auto& f : m.factors_) m.degree_ += f.second;
    return m;
}

std::optional<Mono> Mono::divide(const Mono& other) const {
    Factors out;
    auto a = factors_.begin();
    for (const auto& [i, e] : other.factors_) {
        while (a != factors_.end() && a->first < i) out.push_back(*a++);
        if (a == factors_.end() || a->first != i || a->second < e) return std::nullopt;
        if (a->second > e) out.emplace_back(i, a->second - e);
        ++a;
    }
    while (a != factors_.end()) out.push_back(*a++);
    Mono m;
    m.factors_ = std::move(out);
    for (const auto& f : m.factors_) m.degree_ += f.second;
    return m;
}

Mono Mono::gcd(const Mono& other) const {
    Factors out;
    for (const auto& [i, e] : factors_) {
        unsigned oe = other.exponent(i);
        if (oe > 0) out.emplace_back(i, std::min(e, oe));
    }
    Mono m;
    m.factors_ = std::move(out);
    for (const auto& f : m.factors_) m.degree_ += f.second;
    return m;
}

Mono Mono::pow(unsigned e) const {
    if (e == 0) return Mono();
    Mono m;
    m.factors_ = factors_;
    for (auto& f : m.factors_) f.second *= e;
    m.degree_ = degree_ * e;
    return m;
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    // lexicographic on exponent vectors; higher exponent on an earlier
    // variable means the larger monomial
    auto ia = a.factors().begin(), ib = b.factors().begin();
    while (ia != a.factors().end() && ib != b.factors().end()) {
        if (ia->first != ib->first) return ia->first > ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia; ++ib;
    }
    return false; // equal degree and equal prefix exhausting both: equal
}

// ---------------------------------------------------------------- Poly basics

Poly Poly::constant(const Chart& chart, const Rat& value) {
    Poly p(chart);
    if (sgn(value) != 0) p.terms_.emplace(Mono::one(), value);
    return p;
}

Poly Poly::var(const Chart& chart, unsigned idx) {
    if (idx >= chart.num_symbols()) throw Error("variable index out of range");
    Poly p(chart);
    p.terms_.emplace(Mono::var(idx), Rat(1));
    return p;
}

Poly Poly::var(const Chart& chart, const std::string& symbol) {
    return var(chart, static_cast<unsigned>(chart.index_of(symbol)));
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_.begin()->second;
}

bool Poly::is_state_free() const {
    for (const auto& [m, c] : terms_)
        for (const auto& [idx, e] : m.factors())
            if (chart_.is_state_var(idx)) return false;
    return true;
}

bool Poly::depends_on(unsigned idx) const {
    for (const auto& [m, c] : terms_)
        if (m.exponent(idx) > 0) return true;
    return false;
}

unsigned Poly::total_degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.total_degree();
}

unsigned Poly::degree_in(unsigned idx) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(idx));
    return d;
}

unsigned Poly::degree_in_vars() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (const auto& [idx, e] : m.factors())
            if (chart_.is_state_var(idx)) s += e;
        d = std::max(d, s);
    }
    return d;
}

const Mono& Poly::leading_mono() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading monomial");
    return terms_.rbegin()->first;
}

const Rat& Poly::leading_coeff() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading coefficient");
    return terms_.rbegin()->second;
}

Rat Poly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Mono& m, const Rat& coeff) {
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void Poly::check_same_chart(const Poly& other) const {
    if (!chart_.compatible(other.chart_))
        throw Error("chart mismatch: '" + chart_.name() + "' vs '" + other.chart_.name() + "'");
}

Poly Poly::operator-() const {
    Poly out(chart_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::operator+(const Poly& other) const {
    Poly out = *this;
    out += other;
    return out;
}

Poly Poly::operator-(const Poly& other) const {
    Poly out = *this;
    out -= other;
    return out;
}

Poly& Poly::operator+=(const Poly& other) {
    check_same_chart(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    check_same_chart(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator*(const Poly& other) const {
    check_same_chart(other);
    Poly out(chart_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_)
            out.add_term(ma.times(mb), ca * cb);
    return out;
}

Poly Poly::scaled(const Rat& factor) const {
    if (sgn(factor) == 0) return Poly(chart_);
    Poly out(chart_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
    return out;
}

Poly Poly::times_mono(const Mono& mono, const Rat& coeff) const {
    if (sgn(coeff) == 0) return Poly(chart_);
    Poly out(chart_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m.times(mono), c * coeff);
    return out;
}

Poly Poly::pow(unsigned e) const {
    Poly out = Poly::constant(chart_, Rat(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) out *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return out;
}

bool Poly::operator==(const Poly& other) const {
    if (!chart_.compatible(other.chart_)) return false;
    return terms_ == other.terms_;
}

Poly Poly::diff(unsigned idx) const {
    Poly out(chart_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exponent(idx);
        if (e == 0) continue;
        Mono reduced = *m.divide(Mono::var(idx));
        out.add_term(reduced, c * Rat(static_cast<long>(e)));
    }
    return out;
}

Poly Poly::eval_partial(const std::map<unsigned, Rat>& values) const {
    Poly out(chart_);
    for (const auto& [m, c] : terms_) {
        Rat factor = c;
        Mono::Factors keep;
        for (const auto& [idx, e] : m.factors()) {
            auto it = values.find(idx);
            if (it == values.end()) keep.emplace_back(idx, e);
            else factor *= rat_pow(it->second, e);
        }
        if (sgn(factor) != 0) out.add_term(Mono(std::move(keep)), factor);
    }
    return out;
}

Rat Poly::eval(const std::vector<Rat>& values) const {
    if (values.size() != chart_.num_symbols())
        throw Error("evaluation point has wrong dimension");
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
        Rat term = c;
        for (const auto& [idx, e] : m.factors()) term *= rat_pow(values[idx], e);
        acc += term;
    }
    return acc;
}

Poly Poly::substitute(const std::map<unsigned, Poly>& bindings, const Chart& target) const {
    // pass-through indices, matched by symbol name
    std::map<unsigned, unsigned> passthrough;
    for (unsigned idx = 0; idx < chart_.num_symbols(); ++idx) {
        if (bindings.count(idx)) continue;
        auto pos = target.find(chart_.symbols()[idx]);
        if (pos) passthrough[idx] = static_cast<unsigned>(*pos);
    }
    std::map<unsigned, std::vector<Poly>> powers; // cached successive powers
    auto power_of = [&](unsigned idx, unsigned e) -> const Poly& {
        auto& cache = powers[idx];
        if (cache.empty()) {
            auto it = bindings.find(idx);
            cache.push_back(it != bindings.end() ? it->second
                                                 : Poly::var(target, passthrough.at(idx)));
        }
        while (cache.size() < e) cache.push_back(cache.back() * cache.front());
        return cache[e - 1];
    };
    Poly out(target);
    for (const auto& [m, c] : terms_) {
        Poly term = Poly::constant(target, c);
        for (const auto& [idx, e] : m.factors()) {
            if (!bindings.count(idx) && !passthrough.count(idx))
                throw Error("substitute: unbound symbol " + chart_.symbols()[idx] +
                            " missing from target chart");
            term *= power_of(idx, e);
        }
        out += term;
    }
    return out;
}

Poly Poly::transport(const Chart& target, const std::map<std::string, std::string>& rename) const {
    Poly out(target);
    std::map<unsigned, unsigned> remap; // only symbols that occur
    auto remap_of = [&](unsigned idx) {
        auto it = remap.find(idx);
        if (it != remap.end()) return it->second;
        std::string name = chart_.symbols()[idx];
        auto rn = rename.find(name);
        if (rn != rename.end()) name = rn->second;
        auto pos = target.find(name);
        if (!pos) throw Error("transport: target chart lacks symbol " + name);
        remap.emplace(idx, static_cast<unsigned>(*pos));
        return static_cast<unsigned>(*pos);
    };
    for (const auto& [m, c] : terms_) {
        Mono::Factors fs;
        for (const auto& [idx, e] : m.factors()) fs.emplace_back(remap_of(idx), e);
        out.add_term(Mono(std::move(fs)), c);
    }
    return out;
}

// ---------------------------------------------------------------- content / division

Rat rat_gcd(const Rat& a, const Rat& b) {
    if (sgn(a) == 0) return abs(b);
    if (sgn(b) == 0) return abs(a);
    mpz_class num_gcd, den_lcm;
    mpz_gcd(num_gcd.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    Rat out(num_gcd, den_lcm);
    out.canonicalize();
    return out;
}

Rat Poly::content() const {
    Rat g(0);
    for (const auto& [m, c] : terms_) g = rat_gcd(g, c);
    return g;
}

Poly Poly::primitive_part() const {
    if (terms_.empty()) return *this;
    Rat c = content();
    if (sgn(leading_coeff()) < 0) c = -c;
    return scaled(Rat(1) / c);
}

Mono Poly::monomial_content() const {
    if (terms_.empty()) return Mono();
    auto it = terms_.begin();
    Mono g = it->first;
    for (++it; it != terms_.end() && !g.is_one(); ++it) g = g.gcd(it->first);
    return g;
}

std::optional<Poly> Poly::try_divide(const Poly& num, const Poly& den) {
    num.check_same_chart(den);
    if (den.is_zero()) throw Error("division by zero polynomial");
    if (num.is_zero()) return Poly(num.chart());
    if (den.is_constant()) return num.scaled(Rat(1) / den.constant_value());
    Poly quotient(num.chart());
    Poly rem = num;
    const Mono& lm_den = den.leading_mono();
    const Rat& lc_den = den.leading_coeff();
    while (!rem.is_zero()) {
        auto q_mono = rem.leading_mono().divide(lm_den);
        if (!q_mono) return std::nullopt;
        Rat q_coeff = rem.leading_coeff() / lc_den;
        quotient.add_term(*q_mono, q_coeff);
        rem -= den.times_mono(*q_mono, q_coeff);
    }
    return quotient;
}

Poly Poly::divide_exact(const Poly& num, const Poly& den) {
    auto q = try_divide(num, den);
    if (!q) throw Error("inexact polynomial division");
    return *q;
}

// ---------------------------------------------------------------- gcd

namespace {

// View of p as a univariate polynomial in symbol v: degree -> coefficient.
std::map<unsigned, Poly> collect_in(const Poly& p, unsigned v) {
    std::map<unsigned, Poly> out;
    for (const auto& [m, c] : p.terms()) {
        unsigned e = m.exponent(v);
        Mono rest = e > 0 ? *m.divide(Mono::var(v, e)) : m;
        auto [it, inserted] = out.emplace(e, Poly(p.chart()));
        it->second.add_term(rest, c);
    }
    return out;
}

Poly assemble_in(const std::map<unsigned, Poly>& coeffs, unsigned v, const Chart& chart) {
    Poly out(chart);
    for (const auto& [e, c] : coeffs) {
        for (const auto& [m, r] : c.terms()) out.add_term(m.times(Mono::var(v, e)), r);
    }
    return out;
}

unsigned degree_in_view(const std::map<unsigned, Poly>& coeffs) {
    unsigned d = 0;
    for (const auto& [e, c] : coeffs)
        if (!c.is_zero()) d = std::max(d, e);
    return d;
}

// gcd of all univariate coefficients (content with respect to v). Starts from
// the coefficients with the fewest terms so the chain hits a constant early.
Poly content_in(const std::map<unsigned, Poly>& coeffs, const Chart& chart) {
    std::vector<const Poly*> order;
    for (const auto& [e, c] : coeffs)
        if (!c.is_zero()) order.push_back(&c);
    std::sort(order.begin(), order.end(),
              [](const Poly* a, const Poly* b) { return a->term_count() < b->term_count(); });
    Poly g(chart);
    for (const Poly* c : order) {
        g = g.is_zero() ? *c : Poly::gcd(g, *c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

// Leading coefficient of p viewed as univariate in v (single pass).
Poly lead_coeff_in(const Poly& p, unsigned v) {
    unsigned d = p.degree_in(v);
    Poly out(p.chart());
    for (const auto& [m, c] : p.terms())
        if (m.exponent(v) == d) out.add_term(*m.divide(Mono::var(v, d)), c);
    return out;
}

// Pseudo-remainder of a by b in variable v, with the lc(b)^(da-db+1) premultiplier.
Poly prem_in(const Poly& a, const Poly& b, unsigned v) {
    unsigned db = b.degree_in(v);
    Poly lcb = collect_in(b, v).rbegin()->second;
    Poly r = a;
    long e = static_cast<long>(a.degree_in(v)) - static_cast<long>(db) + 1;
    while (!r.is_zero() && r.degree_in(v) >= db && e > 0) {
        auto rv = collect_in(r, v);
        unsigned dr = degree_in_view(rv);
        if (dr < db) break;
        Poly lcr = rv.rbegin()->second;
        Poly shift = Poly::var(r.chart(), v).pow(dr - db);
        r = r * lcb - lcr * shift * b;
        --e;
    }
    for (; e > 0; --e) r = r * lcb;
    return r;
}

} // namespace

namespace {

Poly divide_by_mono(const Poly& p, const Mono& m) {
    if (m.is_one()) return p;
    Poly out(p.chart());
    for (const auto& [mono, c] : p.terms()) {
        auto q = mono.divide(m);
        if (!q) throw Error("inexact monomial division");
        out.add_term(*q, c);
    }
    return out;
}

Poly positive_lead(const Poly& p) {
    if (p.is_zero()) return p;
    return sgn(p.leading_coeff()) < 0 ? -p : p;
}

} // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    a.check_same_chart(b);
    const Chart& chart = a.chart();
    if (a.is_zero()) return positive_lead(b);
    if (b.is_zero()) return positive_lead(a);

    Rat c = rat_gcd(a.content(), b.content());
    Poly A = a.primitive_part();
    Poly B = b.primitive_part();
    if (A.is_constant() || B.is_constant()) return Poly::constant(chart, c);

    Mono ma = A.monomial_content();
    Mono mb = B.monomial_content();
    Mono mg = ma.gcd(mb);
    A = divide_by_mono(A, ma);
    B = divide_by_mono(B, mb);

    auto finish = [&](const Poly& core) {
        Poly out = positive_lead(core.primitive_part()).times_mono(mg, c);
        return out;
    };

    if (A.is_constant() || B.is_constant()) return finish(Poly::constant(chart, Rat(1)));
    if (A == B) return finish(A);
    if (try_divide(B, A)) return finish(A);
    if (try_divide(A, B)) return finish(B);

    // Main variable: prefer one where the lower-degree side is led by a
    // constant (the pseudo-division then never multiplies the big side by a
    // polynomial), then the smallest minimum degree, then term frequency.
    std::vector<unsigned> count(chart.num_symbols(), 0);
    for (const auto& [m, coef] : A.terms())
        for (const auto& [idx, e] : m.factors()) ++count[idx];
    for (const auto& [m, coef] : B.terms())
        for (const auto& [idx, e] : m.factors()) ++count[idx];
    bool found = false;
    unsigned v = 0;
    std::tuple<int, unsigned, long> best_score{2, 0, 0};
    for (unsigned idx = 0; idx < chart.num_symbols(); ++idx) {
        unsigned da = A.degree_in(idx), db = B.degree_in(idx);
        if (da == 0 || db == 0) continue;
        const Poly& low = db <= da ? B : A;
        int lc_class = lead_coeff_in(low, idx).is_constant() ? 0 : 1;
        std::tuple<int, unsigned, long> score{lc_class, std::min(da, db),
                                              -static_cast<long>(count[idx])};
        if (!found || score < best_score) { best_score = score; v = idx; found = true; }
    }
    if (!found) return finish(Poly::constant(chart, Rat(1))); // no shared variable

    // content part: gcd(A, B) = gcd(cont_v A, cont_v B) * gcd_v(pp A, pp B);
    // start with the cheaper side, and skip the other when it is constant
    const Poly& small = A.term_count() <= B.term_count() ? A : B;
    const Poly& large = A.term_count() <= B.term_count() ? B : A;
    Poly cont_small = content_in(collect_in(small, v), chart);
    Poly cv = cont_small.is_constant()
                  ? Poly::constant(chart, Rat(1))
                  : gcd(cont_small, content_in(collect_in(large, v), chart));

    // subresultant polynomial remainder sequence (inputs need not be
    // primitive; the primitive part of the last remainder is taken below)
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
    Poly g = Poly::constant(chart, Rat(1));
    Poly h = Poly::constant(chart, Rat(1));
    while (true) {
        unsigned da = A.degree_in(v), db = B.degree_in(v);
        unsigned delta = da - db;
        Poly R = prem_in(A, B, v);
        if (R.is_zero()) break;
        if (R.degree_in(v) == 0) {
            B = Poly::constant(chart, Rat(1));
            break;
        }
        A = B;
        Poly divisor = g * h.pow(delta);
        B = divide_exact(R, divisor);
        g = lead_coeff_in(A, v);
        if (delta > 0) h = divide_exact(g.pow(delta), h.pow(delta - 1));
    }
    if (B.is_constant()) return finish(cv);
    Poly ppB = divide_exact(B, content_in(collect_in(B, v), chart));
    return finish(cv * ppB);
}

} // namespace pforge
