#ifndef PFORGE_HAMSYS_HPP
#define PFORGE_HAMSYS_HPP

#include "pforge/vectorfield.hpp"

#include <variant>

namespace pforge {

// Poisson structure as the coordinate bracket table pi_ij = {x_i, x_j}
// (i < j). The canonical pairing uses the convention {p, q} = +1, which is
// what every transformation formula here depends on.
class PoissonStructure {
public:
    struct Entry {
        unsigned i, j; // i < j
        RatFn value;   // {x_i, x_j}
    };

    PoissonStructure() = default;
    PoissonStructure(Chart chart, std::vector<Entry> entries);

    static PoissonStructure canonical(const CanonicalPairing& pairing);

    const Chart& chart() const { return chart_; }
    const std::vector<Entry>& entries() const { return entries_; }

    RatFn bracket(const RatFn& F, const RatFn& G) const;

private:
    Chart chart_;
    std::vector<Entry> entries_;
};

// {F, G} = sum_i dF/dp_i dG/dq_i - dF/dq_i dG/dp_i.
RatFn poisson_bracket(const RatFn& F, const RatFn& G, const CanonicalPairing& pairing);

// dF/d(flow time) + sum_i dF/dx_i V_i; zero exactly when F is a first integral.
RatFn first_integral_residual(const VectorField& V, const RatFn& F);

// Weighted-degree assignment on chart symbols.
struct WeightVector {
    std::map<std::string, long> weights;
    long weight_of(const Chart& chart, unsigned idx) const;
};

struct QuasiHomogeneity {
    bool zero = false;            // zero polynomial: any degree
    std::optional<long> degree;   // set when all monomials agree
    std::vector<std::pair<std::string, long>> offending; // monomial text, its degree
    bool homogeneous() const { return zero || degree.has_value(); }
};

QuasiHomogeneity check_quasi_homogeneous(const Poly& p, const WeightVector& w);

// Formal total derivative on a jet chart: each symbol in `chain` maps to its
// successor; all other symbols are constants.
Poly jet_total_derivative(const Poly& p, const std::vector<std::string>& chain);

} // namespace pforge

#endif
