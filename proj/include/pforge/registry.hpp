#ifndef PFORGE_REGISTRY_HPP
#define PFORGE_REGISTRY_HPP

#include "pforge/weyl.hpp"

#include <map>
#include <string>
#include <vector>

namespace pforge {

// Immutable catalogue of every chart, system, Hamiltonian, transformation and
// expression the verification suites refer to by name.
class Registry {
public:
    static const Registry& instance();

    struct EntryInfo {
        std::string name;
        std::string kind;    // chart | field | hamiltonian | two-time | map | backlund | expression
        std::string summary; // dimension / relation notes for listings
    };

    const Chart& chart(const std::string& name) const;
    const VectorField& field(const std::string& name) const;
    const HamiltonianSystem& hamiltonian(const std::string& name) const;
    const TwoTimeSystem& two_time(const std::string& name) const;
    const BirationalMap& map(const std::string& name) const;
    const BacklundMap& backlund(const std::string& name) const;
    const RatFn& expression(const std::string& name) const;
    const PoissonStructure& poisson(const std::string& name) const;

    bool contains(const std::string& name) const;
    // Kind of an entry; throws with near-matches listed for unknown names.
    std::string kind_of(const std::string& name) const;
    std::vector<EntryInfo> list() const;

    // Declared first integrals for trajectory drift reports.
    std::vector<std::pair<std::string, RatFn>> invariants_of(const std::string& system) const;
    std::optional<ParameterLattice> lattice_of(const std::string& system) const;

    // Systems the integrator front end accepts.
    struct FlowInfo {
        std::string name;
        VectorField field;
        std::vector<std::string> params;
    };
    FlowInfo flow(const std::string& system, const std::string& which_time = "t") const;

    Registry(const Registry&) = delete;
    Registry& operator=(const Registry&) = delete;

private:
    Registry();

    template <typename T>
    const T& fetch(const std::map<std::string, T>& table, const std::string& name,
                   const std::string& kind) const;
    [[noreturn]] void unknown(const std::string& name) const;

    std::map<std::string, Chart> charts_;
    std::map<std::string, VectorField> fields_;
    std::map<std::string, HamiltonianSystem> hamiltonians_;
    std::map<std::string, TwoTimeSystem> two_times_;
    std::map<std::string, BirationalMap> maps_;
    std::map<std::string, BacklundMap> backlunds_;
    std::map<std::string, RatFn> expressions_;
    std::map<std::string, PoissonStructure> poissons_;
    std::map<std::string, ParameterLattice> lattices_;
    std::vector<EntryInfo> order_;
};

// Pushes the two-flow system through the autonomous reduction map, producing
// the concrete flow components (including the three the closed form leaves
// unnamed).
TwoTimeSystem derive_A4(const Registry& registry);

} // namespace pforge

#endif
