#include "pforge/weyl.hpp"
#include "pforge/parser.hpp"

#include <sstream>

namespace pforge {

RatFn BacklundMap::flipped_coeff() const {
    const Chart& chart = underlying.source();
    return coeff.substitute(underlying.param_action().bindings_over(chart), chart);
}

RatFn lie_series(const Poly& f, const RatFn& coeff, const RatFn& g,
                 const PoissonStructure& poisson, unsigned max_terms) {
    const Chart& chart = poisson.chart();
    RatFn ff(f);
    RatFn acc = g;
    RatFn bracketed = g;
    RatFn ratio = coeff / ff;
    RatFn power = RatFn::constant(chart, Rat(1));
    Rat factorial(1);
    for (unsigned k = 1; k <= max_terms; ++k) {
        bracketed = poisson.bracket(ff, bracketed);
        if (bracketed.is_zero()) return acc;
        power *= ratio;
        factorial *= Rat(static_cast<long>(k));
        acc += (Rat(1) / factorial) * (power * bracketed);
    }
    throw Error("lie series did not terminate within " + std::to_string(max_terms) + " terms");
}

RatFn apply_backlund(const BacklundMap& S, const RatFn& g, bool inverse) {
    return lie_series(S.divisor, inverse ? S.flipped_coeff() : S.coeff, g, S.poisson);
}

BacklundMap make_backlund(const std::string& name, const Chart& chart,
                          std::vector<RatFn> forward, const ParamAction& action,
                          Poly divisor, RatFn coeff, PoissonStructure poisson) {
    for (unsigned idx = 0; idx < chart.num_symbols(); ++idx)
        if (chart.is_param(idx) && divisor.depends_on(idx))
            throw Error("backlund map '" + name + "': divisor must not involve parameters");
    // the generators are involutions: the variable inverse is the forward map
    // with shifted parameters
    auto bind = action.bindings_over(chart);
    std::vector<RatFn> inverse;
    inverse.reserve(forward.size());
    for (const auto& f : forward) inverse.push_back(f.substitute(bind, chart));
    BacklundMap out{name,
                    BirationalMap::unchecked(name, chart, chart, std::move(forward),
                                             std::move(inverse), action),
                    std::move(divisor), std::move(coeff), std::move(poisson)};
    // roundtrip through the series: applying the inverse substitution to each
    // forward component must give back the coordinates
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        RatFn back = apply_backlund(out, out.underlying.forward()[i], true);
        if (back != RatFn::var(chart, chart.vars()[i]))
            throw Error("backlund map '" + name + "': inverse does not invert " +
                        chart.vars()[i] + " (got " + format(back) + ")");
    }
    return out;
}

BacklundMap generate_backlund_from_series(const std::string& name, const Poly& f,
                                          const RatFn& coeff, const PoissonStructure& poisson,
                                          const ParamAction& action, unsigned max_terms) {
    const Chart& chart = poisson.chart();
    std::vector<RatFn> forward;
    forward.reserve(chart.dim());
    for (std::size_t i = 0; i < chart.dim(); ++i)
        forward.push_back(lie_series(f, coeff, RatFn::var(chart, chart.vars()[i]),
                                     poisson, max_terms));
    return make_backlund(name, chart, std::move(forward), action, f, coeff, poisson);
}

bool ParameterLattice::preserved_by(const ParamAction& action) const {
    if (action.params() != params) return false;
    // c^T A = c^T and c^T b = 0, checked on the origin and the basis vectors
    const std::size_t n = params.size();
    auto relation_value = [&](const std::vector<Rat>& p) {
        Rat v(0);
        for (std::size_t i = 0; i < n; ++i) v += coefficients[i] * p[i];
        return v;
    };
    std::vector<Rat> origin(n, Rat(0));
    if (sgn(relation_value(action.apply(origin))) != 0) return false;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rat> e(n, Rat(0));
        e[j] = Rat(1);
        if (relation_value(action.apply(e)) != coefficients[j]) return false;
    }
    return true;
}

std::map<unsigned, RatFn> ParameterLattice::elimination_bindings(const Chart& chart) const {
    if (params.empty()) return {};
    const std::size_t last = params.size() - 1;
    if (sgn(coefficients[last]) == 0)
        throw Error("lattice relation does not involve the last parameter");
    RatFn expr = RatFn::constant(chart, constant / coefficients[last]);
    for (std::size_t i = 0; i < last; ++i)
        expr -= (coefficients[i] / coefficients[last]) * RatFn::var(chart, params[i]);
    return {{static_cast<unsigned>(chart.index_of(params[last])), expr}};
}

std::string ParameterLattice::text() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (sgn(coefficients[i]) == 0) continue;
        if (!first) out << (sgn(coefficients[i]) > 0 ? "+" : "");
        Rat c = coefficients[i];
        if (c == 1) out << params[i];
        else if (c == -1) out << "-" << params[i];
        else out << to_string(c) << "*" << params[i];
        first = false;
    }
    out << "=" << to_string(constant);
    return out.str();
}

VectorField pushforward_backlund(const VectorField& V, const BacklundMap& S) {
    const Chart& chart = V.chart();
    if (!chart.compatible(S.underlying.source()))
        throw Error("pushforward_backlund: field not over the map chart");
    auto time_idx = V.flow_time_index();
    std::vector<RatFn> comps;
    comps.reserve(chart.dim());
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        RatFn total = RatFn::zero(chart);
        for (std::size_t j = 0; j < chart.dim(); ++j) {
            RatFn d = S.underlying.forward()[i].diff(static_cast<unsigned>(j));
            if (!d.is_zero()) total += d * V.component(j);
        }
        if (time_idx) total += S.underlying.forward()[i].diff(*time_idx);
        comps.push_back(apply_backlund(S, total, true));
    }
    std::optional<std::string> ft;
    if (V.has_flow_time()) ft = V.flow_time();
    return VectorField(chart, std::move(comps), ft);
}

SymmetryResult verify_symmetry(const BacklundMap& S, const VectorField& V,
                               const std::optional<ParameterLattice>& lattice) {
    const Chart& chart = V.chart();
    VectorField pushed = pushforward_backlund(V, S);
    auto param_bind = S.underlying.param_action().bindings_over(chart);
    std::optional<std::map<unsigned, RatFn>> lattice_bind;
    if (lattice) lattice_bind = lattice->elimination_bindings(chart);
    SymmetryResult out;
    out.invariant = true;
    std::vector<RatFn> diff;
    for (std::size_t i = 0; i < V.dim(); ++i) {
        RatFn expected = V.component(i).substitute(param_bind, chart);
        RatFn d = pushed.component(i) - expected;
        if (lattice_bind && !d.is_zero()) d = d.substitute(*lattice_bind, chart);
        if (!d.is_zero()) out.invariant = false;
        diff.push_back(std::move(d));
    }
    if (!out.invariant) out.difference = VectorField(chart, std::move(diff),
                                                     V.has_flow_time()
                                                         ? std::optional(V.flow_time())
                                                         : std::nullopt);
    return out;
}

bool check_involution(const BacklundMap& S) {
    const Chart& chart = S.underlying.source();
    if (!S.underlying.param_action().after(S.underlying.param_action()).is_identity())
        return false;
    // apply the flipped map to the coordinates, then this map to the result
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        RatFn once = S.underlying.inverse()[i]; // forward with shifted parameters
        RatFn twice = apply_backlund(S, once, false);
        if (twice != RatFn::var(chart, chart.vars()[i])) return false;
    }
    return true;
}

namespace {

VectorField apply_lattice(VectorField field, const std::optional<ParameterLattice>& lattice) {
    if (!lattice) return field;
    auto bind = lattice->elimination_bindings(field.chart());
    std::vector<RatFn> comps;
    comps.reserve(field.dim());
    for (const auto& c : field.components())
        comps.push_back(c.substitute(bind, field.chart()));
    std::optional<std::string> ft;
    if (field.has_flow_time()) ft = field.flow_time();
    return VectorField(field.chart(), std::move(comps), ft);
}

HolomorphyResult check_field_polynomial(VectorField pushed) {
    HolomorphyResult out;
    out.polynomial = true;
    for (std::size_t i = 0; i < pushed.dim(); ++i) {
        if (!pushed.component(i).is_state_polynomial()) {
            out.polynomial = false;
            out.offending = pushed.chart().vars()[i] + "' = " + format(pushed.component(i));
            break;
        }
    }
    out.transformed_field = std::move(pushed);
    return out;
}

} // namespace

HolomorphyResult verify_holomorphy(const HamiltonianSystem& H, const BirationalMap& chart_map,
                                   const RatFn& correction,
                                   const std::optional<ParameterLattice>& lattice) {
    VectorField field = hamiltonian_field(H);
    HolomorphyResult out =
        check_field_polynomial(apply_lattice(pushforward(field, chart_map), lattice));
    RatFn transformed = chart_map.push_expression(H.hamiltonian() - correction);
    if (lattice)
        transformed = transformed.substitute(
            lattice->elimination_bindings(chart_map.target()), chart_map.target());
    if (!transformed.is_state_polynomial()) {
        out.polynomial = false;
        out.offending = "H: " + format(transformed);
    }
    out.transformed_hamiltonian = std::move(transformed);
    return out;
}

HolomorphyResult verify_field_holomorphy(const VectorField& V, const BirationalMap& chart_map,
                                         const std::optional<ParameterLattice>& lattice) {
    return check_field_polynomial(apply_lattice(pushforward(V, chart_map), lattice));
}

bool invariant_divisor_check(const VectorField& V, const Poly& divisor,
                             const std::map<std::string, Rat>& binding) {
    RatFn lie = lie_derivative(V, RatFn(divisor));
    std::map<unsigned, Rat> by_idx;
    for (const auto& [name, v] : binding)
        by_idx.emplace(static_cast<unsigned>(V.chart().index_of(name)), v);
    RatFn bound = lie.eval_partial(by_idx);
    if (bound.is_zero()) return true;
    if (!bound.is_polynomial()) return false;
    Poly divisor_bound = divisor.eval_partial(by_idx);
    if (divisor_bound.is_zero()) return false;
    return Poly::try_divide(bound.as_poly(), divisor_bound).has_value();
}

} // namespace pforge
