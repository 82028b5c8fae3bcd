#ifndef PFORGE_WEYL_HPP
#define PFORGE_WEYL_HPP

#include "pforge/birational.hpp"
#include "pforge/hamsys.hpp"

namespace pforge {

// Birational symmetry shifting parameters. The map is the exponential of the
// derivation (coeff/divisor){divisor, .}, so composing with it is done by
// applying that series (which keeps every denominator a power of the
// divisor) instead of generic substitution.
struct BacklundMap {
    std::string name;
    BirationalMap underlying; // source chart == target chart
    Poly divisor;             // generator f_i
    RatFn coeff;              // Lie-series coefficient in the parameters
    PoissonStructure poisson;

    // coeff after this map's own parameter action: the series coefficient of
    // the inverse substitution.
    RatFn flipped_coeff() const;
};

// g + (c/f){f,g} + (1/2!)(c/f)^2{f,{f,g}} + ... ; the nested bracket must
// vanish within max_terms steps.
RatFn lie_series(const Poly& f, const RatFn& coeff, const RatFn& g,
                 const PoissonStructure& poisson, unsigned max_terms = 24);

// The substitution homomorphism g -> g(S(x)) (or its inverse).
RatFn apply_backlund(const BacklundMap& S, const RatFn& g, bool inverse = false);

// Builds a BacklundMap from explicitly given component formulas. The inverse
// is the forward map with shifted parameters; construction verifies by the
// series that the two sides compose to the identity.
BacklundMap make_backlund(const std::string& name, const Chart& chart,
                          std::vector<RatFn> forward, const ParamAction& action,
                          Poly divisor, RatFn coeff, PoissonStructure poisson);

BacklundMap generate_backlund_from_series(const std::string& name, const Poly& f,
                                          const RatFn& coeff, const PoissonStructure& poisson,
                                          const ParamAction& action,
                                          unsigned max_terms = 24);

// Affine constraint sum_i c_i * param_i = constant.
struct ParameterLattice {
    std::vector<std::string> params;
    std::vector<Rat> coefficients;
    Rat constant;

    bool preserved_by(const ParamAction& action) const;
    // Substitution eliminating the last parameter via the relation.
    std::map<unsigned, RatFn> elimination_bindings(const Chart& chart) const;
    std::string text() const;
};

struct SymmetryResult {
    bool invariant = false;
    std::optional<VectorField> difference;
};

// pushforward(V, S) equals V with parameters replaced by S's param action.
SymmetryResult verify_symmetry(const BacklundMap& S, const VectorField& V,
                               const std::optional<ParameterLattice>& lattice = std::nullopt);

// Pushforward of a field through the transformation, computed by the series.
VectorField pushforward_backlund(const VectorField& V, const BacklundMap& S);

bool check_involution(const BacklundMap& S);

struct HolomorphyResult {
    bool polynomial = false;
    std::optional<VectorField> transformed_field;
    std::optional<RatFn> transformed_hamiltonian;
    std::string offending; // formatted non-polynomial component when it fails
};

// Transforms the induced field (and H - correction) through the chart map and
// checks everything stays polynomial in the new state variables. When a
// parameter lattice is given its relation is substituted first (the papers
// state the holomorphy conditions under the standing parameter relation).
HolomorphyResult verify_holomorphy(const HamiltonianSystem& H, const BirationalMap& chart_map,
                                   const RatFn& correction,
                                   const std::optional<ParameterLattice>& lattice = std::nullopt);

// Field-only variant for non-Hamiltonian systems.
HolomorphyResult verify_field_holomorphy(const VectorField& V, const BirationalMap& chart_map,
                                         const std::optional<ParameterLattice>& lattice = std::nullopt);

// Under the parameter binding, the Lie derivative of the divisor along V is
// divisible by the divisor.
bool invariant_divisor_check(const VectorField& V, const Poly& divisor,
                             const std::map<std::string, Rat>& binding);

} // namespace pforge

#endif
