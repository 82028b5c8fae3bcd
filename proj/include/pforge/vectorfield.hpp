#ifndef PFORGE_VECTORFIELD_HPP
#define PFORGE_VECTORFIELD_HPP

#include "pforge/ratfn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pforge {

// One rational component per chart state variable; flows with respect to
// `flow_time` (a chart time symbol) when present.
class VectorField {
public:
    VectorField() = default;
    VectorField(Chart chart, std::vector<RatFn> components,
                std::optional<std::string> flow_time = std::nullopt);

    const Chart& chart() const { return chart_; }
    const std::vector<RatFn>& components() const { return components_; }
    const RatFn& component(std::size_t i) const { return components_.at(i); }
    const RatFn& component(const std::string& var) const;
    std::size_t dim() const { return components_.size(); }

    bool has_flow_time() const { return flow_time_.has_value(); }
    const std::string& flow_time() const;
    std::optional<unsigned> flow_time_index() const;

    VectorField with_param_values(const std::map<std::string, Rat>& values) const;

    bool operator==(const VectorField& other) const {
        return chart_.compatible(other.chart_) && components_ == other.components_;
    }

private:
    Chart chart_;
    std::vector<RatFn> components_;
    std::optional<std::string> flow_time_;
};

// Lie derivative of f along V (includes the explicit flow-time derivative).
RatFn lie_derivative(const VectorField& V, const RatFn& f);

// Commutator [V, W]; both fields over one chart.
VectorField lie_bracket(const VectorField& V, const VectorField& W);

// Canonical conjugate pairing (q_i, p_i) into a chart's state variables.
struct CanonicalPairing {
    Chart chart;
    std::vector<std::pair<unsigned, unsigned>> pairs; // (q index, p index)

    static CanonicalPairing standard(const Chart& chart,
                                     const std::vector<std::pair<std::string, std::string>>& qp);
};

class HamiltonianSystem {
public:
    HamiltonianSystem() = default;
    HamiltonianSystem(CanonicalPairing pairing, RatFn hamiltonian,
                      std::optional<std::string> flow_time = std::nullopt);

    const Chart& chart() const { return pairing_.chart; }
    const CanonicalPairing& pairing() const { return pairing_; }
    const RatFn& hamiltonian() const { return hamiltonian_; }
    const std::optional<std::string>& flow_time() const { return flow_time_; }

private:
    CanonicalPairing pairing_;
    RatFn hamiltonian_;
    std::optional<std::string> flow_time_;
};

// dq_i/dt = dH/dp_i, dp_i/dt = -dH/dq_i.
VectorField hamiltonian_field(const HamiltonianSystem& system);

// Pair of flows over one chart (independent times t and s).
class TwoTimeSystem {
public:
    TwoTimeSystem() = default;
    TwoTimeSystem(VectorField field_t, VectorField field_s);

    const Chart& chart() const { return field_t_.chart(); }
    const VectorField& field_t() const { return field_t_; }
    const VectorField& field_s() const { return field_s_; }

    // Commuting flows: [X_t, X_s] plus the explicit cross time derivatives
    // vanish. Returns the first nonzero component when they do not.
    std::optional<RatFn> compatibility_defect() const;

private:
    VectorField field_t_;
    VectorField field_s_;
};

} // namespace pforge

#endif
