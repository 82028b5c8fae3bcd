#include "pforge/vectorfield.hpp"

namespace pforge {

VectorField::VectorField(Chart chart, std::vector<RatFn> components,
                         std::optional<std::string> flow_time)
    : chart_(std::move(chart)), components_(std::move(components)),
      flow_time_(std::move(flow_time)) {
    if (components_.size() != chart_.dim())
        throw Error("vector field component count does not match chart dimension");
    for (const auto& c : components_)
        if (!c.chart().compatible(chart_))
            throw Error("vector field component over wrong chart");
    if (!flow_time_ && chart_.has_time()) flow_time_ = chart_.time_var();
    if (flow_time_) chart_.index_of(*flow_time_);
}

const RatFn& VectorField::component(const std::string& var) const {
    for (std::size_t i = 0; i < chart_.dim(); ++i)
        if (chart_.vars()[i] == var) return components_[i];
    throw Error("no component for variable " + var);
}

const std::string& VectorField::flow_time() const {
    if (!flow_time_) throw Error("vector field has no flow time");
    return *flow_time_;
}

std::optional<unsigned> VectorField::flow_time_index() const {
    if (!flow_time_) return std::nullopt;
    return static_cast<unsigned>(chart_.index_of(*flow_time_));
}

VectorField VectorField::with_param_values(const std::map<std::string, Rat>& values) const {
    std::map<unsigned, Rat> by_idx;
    for (const auto& [name, v] : values)
        by_idx.emplace(static_cast<unsigned>(chart_.index_of(name)), v);
    std::vector<RatFn> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_) comps.push_back(c.eval_partial(by_idx));
    return VectorField(chart_, std::move(comps), flow_time_);
}

RatFn lie_derivative(const VectorField& V, const RatFn& f) {
    if (!f.chart().compatible(V.chart())) throw Error("chart mismatch in lie_derivative");
    RatFn acc = RatFn::zero(V.chart());
    if (auto ti = V.flow_time_index()) acc = f.diff(*ti);
    for (std::size_t i = 0; i < V.dim(); ++i)
        acc += f.diff(static_cast<unsigned>(i)) * V.component(i);
    return acc;
}

VectorField lie_bracket(const VectorField& V, const VectorField& W) {
    if (!V.chart().compatible(W.chart())) throw Error("chart mismatch in lie_bracket");
    std::vector<RatFn> comps;
    comps.reserve(V.dim());
    for (std::size_t i = 0; i < V.dim(); ++i) {
        RatFn acc = RatFn::zero(V.chart());
        for (std::size_t j = 0; j < V.dim(); ++j) {
            acc += W.component(i).diff(static_cast<unsigned>(j)) * V.component(j);
            acc -= V.component(i).diff(static_cast<unsigned>(j)) * W.component(j);
        }
        // explicit time coupling: d/dt W_i - d/ds V_i
        if (auto ti = V.flow_time_index()) acc += W.component(i).diff(*ti);
        if (auto si = W.flow_time_index()) acc -= V.component(i).diff(*si);
        comps.push_back(acc);
    }
    return VectorField(V.chart(), std::move(comps), V.has_flow_time()
                                                        ? std::optional(V.flow_time())
                                                        : std::nullopt);
}

CanonicalPairing CanonicalPairing::standard(
    const Chart& chart, const std::vector<std::pair<std::string, std::string>>& qp) {
    CanonicalPairing pairing;
    pairing.chart = chart;
    std::vector<bool> used(chart.dim(), false);
    for (const auto& [q, p] : qp) {
        unsigned qi = static_cast<unsigned>(chart.index_of(q));
        unsigned pi = static_cast<unsigned>(chart.index_of(p));
        if (!chart.is_state_var(qi) || !chart.is_state_var(pi))
            throw Error("pairing must use state variables");
        if (used[qi] || used[pi] || qi == pi) throw Error("pairing indices must be distinct");
        used[qi] = used[pi] = true;
        pairing.pairs.emplace_back(qi, pi);
    }
    return pairing;
}

HamiltonianSystem::HamiltonianSystem(CanonicalPairing pairing, RatFn hamiltonian,
                                     std::optional<std::string> flow_time)
    : pairing_(std::move(pairing)), hamiltonian_(std::move(hamiltonian)),
      flow_time_(std::move(flow_time)) {
    if (!hamiltonian_.chart().compatible(pairing_.chart))
        throw Error("hamiltonian over wrong chart");
    if (!flow_time_ && pairing_.chart.has_time()) flow_time_ = pairing_.chart.time_var();
}

VectorField hamiltonian_field(const HamiltonianSystem& system) {
    const Chart& chart = system.chart();
    std::vector<RatFn> comps(chart.dim(), RatFn::zero(chart));
    for (const auto& [qi, pi] : system.pairing().pairs) {
        comps[qi] = system.hamiltonian().diff(pi);
        comps[pi] = -system.hamiltonian().diff(qi);
    }
    return VectorField(chart, std::move(comps), system.flow_time());
}

TwoTimeSystem::TwoTimeSystem(VectorField field_t, VectorField field_s)
    : field_t_(std::move(field_t)), field_s_(std::move(field_s)) {
    if (!field_t_.chart().compatible(field_s_.chart()))
        throw Error("two-time system: flows over different charts");
}

std::optional<RatFn> TwoTimeSystem::compatibility_defect() const {
    VectorField bracket = lie_bracket(field_t_, field_s_);
    for (const auto& c : bracket.components())
        if (!c.is_zero()) return c;
    return std::nullopt;
}

} // namespace pforge
