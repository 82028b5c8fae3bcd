#ifndef PFORGE_BIRATIONAL_HPP
#define PFORGE_BIRATIONAL_HPP

#include "pforge/vectorfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pforge {

// Affine action on an ordered parameter vector: params -> matrix*params + offset.
class ParamAction {
public:
    ParamAction() = default;
    ParamAction(std::vector<std::string> params, std::vector<std::vector<Rat>> matrix,
                std::vector<Rat> offset);

    static ParamAction identity(std::vector<std::string> params = {});

    const std::vector<std::string>& params() const { return params_; }
    bool is_identity() const;

    std::vector<Rat> apply(const std::vector<Rat>& values) const;
    // this after first: x -> this(first(x))
    ParamAction after(const ParamAction& first) const;

    // Substitution bindings param symbol -> affine expression, over `chart`.
    std::map<unsigned, RatFn> bindings_over(const Chart& chart) const;
    RatFn expression_for(const std::string& param, const Chart& chart) const;

    bool operator==(const ParamAction& other) const;

private:
    std::vector<std::string> params_;
    std::vector<std::vector<Rat>> matrix_;
    std::vector<Rat> offset_;
};

// Two-sided rational coordinate change. Forward/inverse are verified to
// compose to the identity at construction. Parameters enter the expressions
// symbolically; param_action records how a transformation shifts them (used
// by the symmetry machinery, identity for plain chart changes).
class BirationalMap {
public:
    BirationalMap() = default;
    BirationalMap(std::string name, Chart source, Chart target,
                  std::vector<RatFn> forward, std::vector<RatFn> inverse,
                  ParamAction param_action = ParamAction::identity());

    static BirationalMap identity(const Chart& chart);

    // Skips the construction-time roundtrip verification; the caller is
    // responsible for checking the two sides by other exact means.
    static BirationalMap unchecked(std::string name, Chart source, Chart target,
                                   std::vector<RatFn> forward, std::vector<RatFn> inverse,
                                   ParamAction param_action);

    const std::string& name() const { return name_; }
    const Chart& source() const { return source_; }
    const Chart& target() const { return target_; }
    const std::vector<RatFn>& forward() const { return forward_; }
    const std::vector<RatFn>& inverse() const { return inverse_; }
    const RatFn& forward_for(const std::string& target_var) const;
    const ParamAction& param_action() const { return param_action_; }

    std::map<unsigned, RatFn> forward_bindings() const;  // source vars bound, over target... see impl
    std::map<unsigned, RatFn> inverse_bindings() const;

    // Expression over source -> expression over target (composes with inverse).
    RatFn push_expression(const RatFn& f) const;
    // Expression over target -> expression over source.
    RatFn pull_expression(const RatFn& f) const;

    BirationalMap inverse_map() const;

    // Jacobian matrix d(forward_i)/d(source var j) and its determinant.
    std::vector<std::vector<RatFn>> jacobian() const;
    RatFn jacobian_det() const;

private:
    std::string name_;
    Chart source_, target_;
    std::vector<RatFn> forward_, inverse_;
    ParamAction param_action_;
    void verify_roundtrip() const;
};

VectorField pushforward(const VectorField& V, const BirationalMap& M);

BirationalMap compose(const BirationalMap& A, const BirationalMap& B);

struct ConjugationResult {
    bool equal = false;
    std::optional<VectorField> difference; // over M.target when comparable
    std::string note;
};

ConjugationResult verify_conjugation(const VectorField& A, const BirationalMap& M,
                                     const VectorField& B);

// Inverts a triangular forward substitution (each step linear or a single
// reciprocal in one remaining unknown). Throws when the structure is not
// triangular or a step is not invertible.
std::vector<RatFn> triangular_invert(const Chart& source, const Chart& target,
                                     const std::vector<RatFn>& forward);

BirationalMap make_triangular_map(const std::string& name, const Chart& source,
                                  const Chart& target, const std::vector<std::string>& exprs);

RatFn determinant(std::vector<std::vector<RatFn>> m);

} // namespace pforge

#endif
