#include "pforge/hamsys.hpp"
#include "pforge/parser.hpp"

namespace pforge {

PoissonStructure::PoissonStructure(Chart chart, std::vector<Entry> entries)
    : chart_(std::move(chart)), entries_(std::move(entries)) {
    for (const auto& e : entries_) {
        if (e.i >= e.j || e.j >= chart_.dim())
            throw Error("poisson structure entry indices out of order");
        if (!e.value.chart().compatible(chart_))
            throw Error("poisson structure entry over wrong chart");
    }
}

PoissonStructure PoissonStructure::canonical(const CanonicalPairing& pairing) {
    std::vector<Entry> entries;
    for (const auto& [qi, pi] : pairing.pairs) {
        // {p, q} = +1
        if (pi < qi) entries.push_back({pi, qi, RatFn::constant(pairing.chart, Rat(1))});
        else entries.push_back({qi, pi, RatFn::constant(pairing.chart, Rat(-1))});
    }
    return PoissonStructure(pairing.chart, std::move(entries));
}

RatFn PoissonStructure::bracket(const RatFn& F, const RatFn& G) const {
    if (!F.chart().compatible(chart_) || !G.chart().compatible(chart_))
        throw Error("chart mismatch in poisson bracket");
    RatFn acc = RatFn::zero(chart_);
    for (const auto& e : entries_) {
        RatFn fi = F.diff(e.i), fj = F.diff(e.j);
        RatFn gi = G.diff(e.i), gj = G.diff(e.j);
        acc += e.value * (fi * gj - fj * gi);
    }
    return acc;
}

RatFn poisson_bracket(const RatFn& F, const RatFn& G, const CanonicalPairing& pairing) {
    return PoissonStructure::canonical(pairing).bracket(F, G);
}

RatFn first_integral_residual(const VectorField& V, const RatFn& F) {
    return lie_derivative(V, F);
}

long WeightVector::weight_of(const Chart& chart, unsigned idx) const {
    auto it = weights.find(chart.symbols()[idx]);
    if (it == weights.end())
        throw Error("missing weight for symbol " + chart.symbols()[idx]);
    return it->second;
}

QuasiHomogeneity check_quasi_homogeneous(const Poly& p, const WeightVector& w) {
    QuasiHomogeneity out;
    if (p.is_zero()) {
        out.zero = true;
        return out;
    }
    std::optional<long> common;
    std::vector<std::pair<std::string, long>> all;
    bool mismatch = false;
    for (const auto& [m, c] : p.terms()) {
        long deg = 0;
        for (const auto& [idx, e] : m.factors())
            deg += w.weight_of(p.chart(), idx) * static_cast<long>(e);
        Poly term(p.chart());
        term.add_term(m, c);
        all.emplace_back(format(term), deg);
        if (!common) common = deg;
        else if (*common != deg) mismatch = true;
    }
    if (!mismatch) out.degree = common;
    else out.offending = std::move(all);
    return out;
}

Poly jet_total_derivative(const Poly& p, const std::vector<std::string>& chain) {
    const Chart& chart = p.chart();
    Poly acc = Poly::zero(chart);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        unsigned idx = static_cast<unsigned>(chart.index_of(chain[k]));
        Poly d = p.diff(idx);
        if (d.is_zero()) continue;
        acc += d * Poly::var(chart, chain[k + 1]);
    }
    if (!chain.empty()) {
        unsigned last = static_cast<unsigned>(chart.index_of(chain.back()));
        if (!p.diff(last).is_zero())
            throw Error("total derivative needs a successor for " + chain.back());
    }
    return acc;
}

} // namespace pforge
