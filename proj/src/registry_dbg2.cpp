#include "pforge/registry.hpp"
#include "pforge/parser.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdio>

namespace pforge {

namespace {

Rat R(long n, long d = 1) { return rat(n, d); }

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

BacklundMap make_backlund(const std::string& name, const Chart& chart,
                          std::vector<RatFn> forward, const ParamAction& action,
                          Poly divisor, RatFn coeff) {
    // the generators are involutions: the variable inverse is the forward map
    // with shifted parameters
    auto bind = action.bindings_over(chart);
    std::vector<RatFn> inverse;
    inverse.reserve(forward.size());
    for (const auto& f : forward) inverse.push_back(f.substitute(bind, chart));
    return BacklundMap{name,
                       BirationalMap(name, chart, chart, std::move(forward),
                                     std::move(inverse), action),
                       std::move(divisor), std::move(coeff)};
}

BirationalMap triangular(const std::string& name, const Chart& source, const Chart& target,
                         std::vector<RatFn> forward) {
    std::vector<RatFn> inverse = triangular_invert(source, target, forward);
    return BirationalMap(name, source, target, std::move(forward), std::move(inverse),
                         ParamAction::identity(source.params()));
}

} // namespace

const Registry& Registry::instance() {
    static Registry registry;
    return registry;
}

template <typename T>
const T& Registry::fetch(const std::map<std::string, T>& table, const std::string& name,
                         const std::string& kind) const {
    auto it = table.find(name);
    if (it == table.end()) {
        if (contains(name))
            throw Error("registry entry '" + name + "' is not a " + kind +
                        " (it is a " + kind_of(name) + ")");
        unknown(name);
    }
    return it->second;
}

void Registry::unknown(const std::string& name) const {
    std::string msg = "unknown registry entry '" + name + "'";
    std::vector<std::pair<std::size_t, std::string>> near;
    for (const auto& e : order_) {
        std::size_t d = edit_distance(name, e.name);
        if (d <= 3 || e.name.find(name) != std::string::npos) near.emplace_back(d, e.name);
    }
    std::sort(near.begin(), near.end());
    if (!near.empty()) {
        msg += "; near matches:";
        for (std::size_t i = 0; i < near.size() && i < 5; ++i) msg += " " + near[i].second;
    }
    throw Error(msg);
}

const Chart& Registry::chart(const std::string& n) const { return fetch(charts_, n, "chart"); }
const VectorField& Registry::field(const std::string& n) const { return fetch(fields_, n, "field"); }
const HamiltonianSystem& Registry::hamiltonian(const std::string& n) const {
    return fetch(hamiltonians_, n, "hamiltonian system");
}
const TwoTimeSystem& Registry::two_time(const std::string& n) const {
    return fetch(two_times_, n, "two-time system");
}
const BirationalMap& Registry::map(const std::string& n) const { return fetch(maps_, n, "map"); }
const BacklundMap& Registry::backlund(const std::string& n) const {
    return fetch(backlunds_, n, "backlund transformation");
}
const RatFn& Registry::expression(const std::string& n) const {
    return fetch(expressions_, n, "expression");
}
const PoissonStructure& Registry::poisson(const std::string& n) const {
    return fetch(poissons_, n, "poisson structure");
}

bool Registry::contains(const std::string& name) const {
    for (const auto& e : order_)
        if (e.name == name) return true;
    return false;
}

std::string Registry::kind_of(const std::string& name) const {
    for (const auto& e : order_)
        if (e.name == name) return e.kind;
    unknown(name);
}

std::vector<Registry::EntryInfo> Registry::list() const { return order_; }

std::vector<std::pair<std::string, RatFn>> Registry::invariants_of(const std::string& system) const {
    std::vector<std::pair<std::string, RatFn>> out;
    if (system == "sys11") out.emplace_back("first_integral", expression("sys11.first_integral"));
    if (system == "A1") {
        out.emplace_back("K1", hamiltonian("K1").hamiltonian());
        out.emplace_back("K2", hamiltonian("K2").hamiltonian());
    }
    return out;
}

std::optional<ParameterLattice> Registry::lattice_of(const std::string& system) const {
    auto it = lattices_.find(system);
    if (it == lattices_.end()) return std::nullopt;
    return it->second;
}

Registry::FlowInfo Registry::flow(const std::string& system, const std::string& which_time) const {
    auto params_of = [](const Chart& c) { return c.params(); };
    if (two_times_.count(system)) {
        const TwoTimeSystem& tt = two_times_.at(system);
        if (which_time == "t") return {system + ".t", tt.field_t(), params_of(tt.chart())};
        if (which_time == "s") return {system + ".s", tt.field_s(), params_of(tt.chart())};
        throw Error("two-time system '" + system + "' has flows t and s, not " + which_time);
    }
    if (fields_.count(system)) {
        const VectorField& f = fields_.at(system);
        return {system, f, params_of(f.chart())};
    }
    if (hamiltonians_.count(system)) {
        const HamiltonianSystem& h = hamiltonians_.at(system);
        return {system, hamiltonian_field(h), params_of(h.chart())};
    }
    unknown(system);
}

TwoTimeSystem derive_A4(const Registry& registry) {
    const TwoTimeSystem& a1 = registry.two_time("A1");
    const BirationalMap& m = registry.map("mapA3");
    return TwoTimeSystem(pushforward(a1.field_t(), m), pushforward(a1.field_s(), m));
}

Registry::Registry() {
    auto note = [&](const std::string& name, const std::string& kind,
                    const std::string& summary) {
        order_.push_back({name, kind, summary});
    };

    // ----------------------------------------------------------------- charts
    Chart eq1c("chart.eq1", {"x", "y", "z", "w"}, {"t"}, {"alpha"});
    Chart qp("chart.qp", {"q1", "p1", "q2", "p2"}, {"t"}, {"alpha"});
    Chart pii("chart.pii", {"x", "y"}, {"t"}, {"alpha"});
    Chart piiqp("chart.pii.qp", {"q", "p"}, {"t"}, {"alpha"});
    Chart sym("chart.sym", {"x", "y", "z", "w", "q"}, {"t"}, {"a0", "a1"});
    Chart a1c("chart.a1", {"q1", "p1", "q2", "p2"}, {"t", "s"}, {"a0", "a1"});
    Chart a4c("chart.a4", {"x", "y", "z", "w"}, {"t", "s"}, {"a0", "a1"});
    Chart jet("chart.jet", {"u", "u_t", "u_tt", "u_ttt", "u_tttt"}, {}, {"a0"});
    Chart hol0("chart.hol0", {"x0", "y0", "z0", "w0"}, {"t"}, {"alpha"});
    Chart hol1("chart.hol1", {"x1", "y1", "z1", "w1"}, {"t"}, {"alpha"});
    Chart s70("chart.sym.hol0", {"x0", "y0", "z0", "w0", "q0"}, {"t"}, {"a0", "a1"});
    Chart s71("chart.sym.hol1", {"x1", "y1", "z1", "w1", "q1"}, {"t"}, {"a0", "a1"});
    Chart a1h0("chart.a1.hol0", {"x0", "y0", "z0", "w0"}, {"t", "s"}, {"a0", "a1"});
    Chart a1h1("chart.a1.hol1", {"x1", "y1", "z1", "w1"}, {"t", "s"}, {"a0", "a1"});
    Chart k5c("chart.k5", {"x", "y"}, {}, {"alpha"});
    Chart hi5c("chart.hi5", {"z", "w"}, {"t"}, {});

    for (const Chart* c : {&eq1c, &qp, &pii, &piiqp, &sym, &a1c, &a4c, &jet, &hol0, &hol1,
                           &s70, &s71, &a1h0, &a1h1, &k5c, &hi5c}) {
        charts_.emplace(c->name(), *c);
        note(c->name(), "chart", "dim " + std::to_string(c->dim()));
    }

    auto v = [](const Chart& c, const char* n) { return RatFn::var(c, n); };
    auto k = [](const Chart& c, long num, long den = 1) {
        return RatFn::constant(c, rat(num, den));
    };

    // ------------------------------------------------- quartic equation, map, H
    {
        RatFn x = v(eq1c, "x"), y = v(eq1c, "y"), z = v(eq1c, "z"), w = v(eq1c, "w");
        RatFn t = v(eq1c, "t"), alpha = v(eq1c, "alpha");
        VectorField eq1(eq1c,
                        {y, z, w,
                         k(eq1c, -5) * y * z + k(eq1c, 5) * x.pow(2) * z +
                             k(eq1c, 5) * x * y.pow(2) - x.pow(5) + t * x + alpha});
        fields_.emplace("eq1.firstorder", eq1);
        note("eq1.firstorder", "field", "dim 4");

        // symplectic reduction of the fourth-order equation
        std::vector<RatFn> fwd = {
            -x,
            -(w - k(eq1c, 1, 2) * x.pow(4) - x.pow(2) * y + k(eq1c, 3, 2) * y.pow(2) +
              k(eq1c, 2) * x * z + k(eq1c, 1, 2) * t),
            -(z + k(eq1c, 2) * x * y),
            -(y + x.pow(2))};
        fprintf(stderr, "building map at line %d\n", __LINE__); maps_.emplace("map2", triangular("map2", eq1c, qp, std::move(fwd)));
        note("map2", "map", "chart.eq1 -> chart.qp");
    }
    {
        RatFn q1 = v(qp, "q1"), p1 = v(qp, "p1"), q2 = v(qp, "q2"), p2 = v(qp, "p2");
        RatFn t = v(qp, "t"), alpha = v(qp, "alpha");
        RatFn H = q1.pow(2) * p1 + (k(qp, 1, 2) + alpha) * q1 - k(qp, 1, 6) * p2.pow(3) +
                  k(qp, 1, 2) * t * p2 - k(qp, 1, 2) * q2.pow(2) + p1 * p2;
        CanonicalPairing pairing =
            CanonicalPairing::standard(qp, {{"q1", "p1"}, {"q2", "p2"}});
        hamiltonians_.emplace("H4", HamiltonianSystem(pairing, H));
        note("H4", "hamiltonian", "dim 4");
        poissons_.emplace("qp", PoissonStructure::canonical(pairing));
        note("qp", "poisson", "canonical, {p,q}=1");

        VectorField sys3(qp, {q1.pow(2) + p2,
                              k(qp, -2) * q1 * p1 - alpha - k(qp, 1, 2),
                              k(qp, -1, 2) * p2.pow(2) + p1 + k(qp, 1, 2) * t,
                              q2});
        fields_.emplace("sys3", sys3);
        note("sys3", "field", "dim 4");

        RatFn f0 = p1;
        RatFn f1 = p1 + k(qp, 3) * q1 * q2 - k(qp, 3, 2) * (p2.pow(2) - t);
        expressions_.emplace("f0", f0);
        expressions_.emplace("f1", f1);
        note("f0", "expression", "invariant divisor");
        note("f1", "expression", "invariant divisor");

        // generator s0 and its parameter reflection
        ParamAction s0_act({"alpha"}, {{R(-1)}}, {R(-1)});
        fprintf(stderr, "building backlund at line %d\n", __LINE__); backlunds_.emplace(
            "s0.sys3",
            make_backlund("s0.sys3", qp,
                          {q1 + (alpha + k(qp, 1, 2)) / f0, p1, q2, p2}, s0_act,
                          f0.as_poly(), alpha + k(qp, 1, 2)));
        note("s0.sys3", "backlund", "alpha -> -1-alpha");

        ParamAction s1_act({"alpha"}, {{R(-1)}}, {R(2)});
        RatFn am1 = alpha - k(qp, 1);
        fprintf(stderr, "building backlund at line %d\n", __LINE__); backlunds_.emplace(
            "s1.sys3",
            make_backlund(
                "s1.sys3", qp,
                {q1 + (k(qp, 2) - k(qp, 2) * alpha) / f1,
                 p1 + k(qp, 6) * q2 * am1 / f1 + k(qp, 18) * p2 * am1.pow(2) / f1.pow(2) +
                     k(qp, 36) * q1 * am1.pow(3) / f1.pow(3) -
                     k(qp, 18) * am1.pow(4) / f1.pow(4),
                 q2 + k(qp, 6) * p2 * am1 / f1 + k(qp, 18) * q1 * am1.pow(2) / f1.pow(2) -
                     k(qp, 12) * am1.pow(3) / f1.pow(3),
                 p2 + k(qp, 6) * q1 * am1 / f1 - k(qp, 6) * am1.pow(2) / f1.pow(2)},
                s1_act, f1.num(), k(qp, 2) - k(qp, 2) * alpha));
        note("s1.sys3", "backlund", "alpha -> 2-alpha");

        // holomorphy charts
        fprintf(stderr, "building map at line %d\n", __LINE__); maps_.emplace("r0", triangular("r0", qp, hol0,
                                       {k(qp, 1) / q1,
                                        -(f0 * q1 + alpha + k(qp, 1, 2)) * q1, q2, p2}));
        note("r0", "map", "chart.qp -> chart.hol0");
        fprintf(stderr, "building map at line %d\n", __LINE__); maps_.emplace("r1",
                      triangular("r1", qp, hol1,
                                 {k(qp, 1) / q1,
                                  -(f1 * q1 - k(qp, 2) * (alpha - k(qp, 1))) * q1,
                                  q2 + k(qp, 3) * q1.pow(3) + k(qp, 3) * q1 * p2,
                                  p2 + k(qp, 3, 2) * q1.pow(2)}));
        note("r1", "map", "chart.qp -> chart.hol1");
    }

    // ----------------------------------------------------------- Painleve II
    {
        RatFn x = v(pii, "x"), y = v(pii, "y"), t = v(pii, "t"), alpha = v(pii, "alpha");
        fields_.emplace("PII.firstorder",
                        VectorField(pii, {y, k(pii, 2) * x.pow(3) + t * x + alpha}));
        note("PII.firstorder", "field", "dim 2");

        RatFn q = v(piiqp, "q"), p = v(piiqp, "p"), t2 = v(piiqp, "t"),
              al = v(piiqp, "alpha");
        RatFn HII = q.pow(2) * p + k(piiqp, 1, 2) * p.pow(2) + k(piiqp, 1, 2) * t2 * p -
                    (al - k(piiqp, 1, 2)) * q;
        CanonicalPairing pr = CanonicalPairing::standard(piiqp, {{"q", "p"}});
        hamiltonians_.emplace("PII", HamiltonianSystem(pr, HII));
        hamiltonians_.emplace("HII", HamiltonianSystem(pr, HII));
        note("PII", "hamiltonian", "dim 2");
        note("HII", "hamiltonian", "dim 2");
        poissons_.emplace("pii.qp", PoissonStructure::canonical(pr));
        note("pii.qp", "poisson", "canonical, {p,q}=1");
    }

    // ------------------------------------------------------ building blocks (5)
    {
        RatFn x = v(k5c, "x"), y = v(k5c, "y"), alpha = v(k5c, "alpha");
        hamiltonians_.emplace(
            "K.eq5",
            HamiltonianSystem(CanonicalPairing::standard(k5c, {{"x", "y"}}),
                              x.pow(2) * y + (k(k5c, 1, 2) + alpha) * x));
        note("K.eq5", "hamiltonian", "dim 2");
        RatFn z = v(hi5c, "z"), w = v(hi5c, "w"), t = v(hi5c, "t");
        expressions_.emplace("HI.eq5", -k(hi5c, 1, 6) * w.pow(3) + k(hi5c, 1, 2) * t * w -
                                           k(hi5c, 1, 2) * z.pow(2));
        note("HI.eq5", "expression", "Painleve I hamiltonian");
    }

    // ------------------------------------------------------- symmetric 5d form
    {
        RatFn x = v(sym, "x"), y = v(sym, "y"), z = v(sym, "z"), w = v(sym, "w"),
              q = v(sym, "q");
        RatFn t = v(sym, "t"), a0 = v(sym, "a0"), a1 = v(sym, "a1");

        // dx/dt carries -3*a0, forced by the s0/s1 symmetry, the first
        // integral and the reduction; the -(3/2)*a0 variant is kept as an
        // expression for the erratum report
        VectorField sys11(sym, {-k(sym, 2) * x * z - k(sym, 3) * a0,
                                y * z + k(sym, 3, 2) * a1,
                                z.pow(2) + q,
                                -z * w + k(sym, 2, 3) * x + k(sym, 1, 3) * y,
                                w});
        fields_.emplace("sys11", sys11);
        note("sys11", "field", "dim 5, relation 2*a0+a1=1");
        expressions_.emplace("sys11.printed.dx_dt",
                             -k(sym, 2) * x * z - k(sym, 3, 2) * a0);
        note("sys11.printed.dx_dt", "expression", "printed variant of the x component");

        RatFn F = y - x - k(sym, 3) * z * w + k(sym, 3, 2) * q.pow(2) - k(sym, 3, 2) * t;
        expressions_.emplace("sys11.first_integral", F);
        note("sys11.first_integral", "expression", "first integral of sys11");

        lattices_.emplace("sys11",
                          ParameterLattice{{"a0", "a1"}, {R(2), R(1)}, R(1)});

        // bracket table induced by the reduction to canonical coordinates
        unsigned ix = 0, iy = 1, iz = 2, iw = 3, iq = 4;
        poissons_.emplace(
            "sym", PoissonStructure(
                       sym, {{ix, iy, k(sym, 3) * w},
                             {ix, iz, k(sym, 1)},
                             {iy, iz, k(sym, 1)},
                             {iy, iw, -k(sym, 3) * q},
                             {iy, iq, -k(sym, 3) * z},
                             {iw, iq, -k(sym, 1)}}));
        note("sym", "poisson", "induced bracket on the symmetric chart");

        ParamAction s0_act({"a0", "a1"}, {{R(-1), R(0)}, {R(4), R(1)}}, {R(0), R(0)});
        fprintf(stderr, "building backlund at line %d\n", __LINE__); backlunds_.emplace(
            "s0.sys11",
            make_backlund("s0.sys11", sym,
                          {x, y + k(sym, 9) * a0 * w / x, z + k(sym, 3) * a0 / x, w, q},
                          s0_act, x.num(), k(sym, 3) * a0));
        note("s0.sys11", "backlund", "(a0,a1) -> (-a0,a1+4a0)");

        ParamAction s1_act({"a0", "a1"}, {{R(1), R(1)}, {R(0), R(-1)}}, {R(0), R(0)});
        fprintf(stderr, "building backlund at line %d\n", __LINE__); backlunds_.emplace(
            "s1.sys11",
            make_backlund(
                "s1.sys11", sym,
                {x - k(sym, 9) * a1 * w / y + k(sym, 81, 2) * a1.pow(2) * q / y.pow(2) -
                     k(sym, 243, 2) * a1.pow(3) * z / y.pow(3) -
                     k(sym, 729, 8) * a1.pow(4) / y.pow(4),
                 y, z + k(sym, 3) * a1 / y,
                 w - k(sym, 9) * a1 * q / y + k(sym, 81, 2) * a1.pow(2) * z / y.pow(2) +
                     k(sym, 81, 2) * a1.pow(3) / y.pow(3),
                 q - k(sym, 9) * a1 * z / y - k(sym, 27, 2) * a1.pow(2) / y.pow(2)},
                s1_act, y.num(), k(sym, 3) * a1));
        note("s1.sys11", "backlund", "(a0,a1) -> (a0+a1,-a1)");

        fprintf(stderr, "building map at line %d\n", __LINE__); maps_.emplace("chart7.0",
                      triangular("chart7.0", sym, s70,
                                 {-(x * z + k(sym, 3) * a0) * z, y / z, k(sym, 1) / z,
                                  (w - y / (k(sym, 3) * z)) * z, q}));
        note("chart7.0", "map", "chart.sym -> chart.sym.hol0");
        fprintf(stderr, "building map at line %d\n", __LINE__); maps_.emplace(
            "chart7.1",
            triangular("chart7.1", sym, s71,
                       {x + k(sym, 3) * z * w + k(sym, 9, 2) * z.pow(2) * q +
                            k(sym, 27, 8) * z.pow(4),
                        -(y * z + k(sym, 3) * a1) * z, k(sym, 1) / z,
                        w + k(sym, 3) * z * q + k(sym, 3) * z.pow(3),
                        q + k(sym, 3, 2) * z.pow(2)}));
        note("chart7.1", "map", "chart.sym -> chart.sym.hol1");
    }

    // --------------------------------------------------------- autonomous pair
    {
        RatFn q1 = v(a1c, "q1"), p1 = v(a1c, "p1"), q2 = v(a1c, "q2"), p2 = v(a1c, "p2");
        RatFn a0 = v(a1c, "a0"), a1 = v(a1c, "a1");
        CanonicalPairing pairing =
            CanonicalPairing::standard(a1c, {{"q1", "p1"}, {"q2", "p2"}});
        poissons_.emplace("a1", PoissonStructure::canonical(pairing));
        note("a1", "poisson", "canonical, {p,q}=1");

        RatFn K1 = q1.pow(2) * p1 + k(a1c, 3) * a0 * q1 - k(a1c, 1, 2) * q2.pow(2) -
                   k(a1c, 1, 6) * p2.pow(3) + p1 * p2;
        RatFn K2 = k(a1c, 1, 9) * p1.pow(3) - k(a1c, 3, 2) * a0 * q2 * p2.pow(2) +
                   k(a1c, 3) * a0.pow(2) * p2 + a0 * p1 * q2 +
                   k(a1c, 3) * a0 * q1 * q2.pow(2) - k(a1c, 1, 3) * p1.pow(2) * p2.pow(2) +
                   k(a1c, 2, 3) * q1 * p1.pow(2) * q2 + k(a1c, 1, 4) * p1 * p2.pow(4) +
                   q1.pow(2) * p1 * q2.pow(2) - q1 * p1 * q2 * p2.pow(2);
        hamiltonians_.emplace("K1", HamiltonianSystem(pairing, K1, "t"));
        hamiltonians_.emplace("K2", HamiltonianSystem(pairing, K2, "s"));
        note("K1", "hamiltonian", "dim 4, flow t");
        note("K2", "hamiltonian", "dim 4, flow s");

        fprintf(stderr, "building two-time at line %d\n", __LINE__); two_times_.emplace("A1",
                           TwoTimeSystem(hamiltonian_field(hamiltonians_.at("K1")),
                                         hamiltonian_field(hamiltonians_.at("K2"))));
        note("A1", "two-time", "two-time, relation 2*a0+a1=0");
        lattices_.emplace("A1", ParameterLattice{{"a0", "a1"}, {R(2), R(1)}, R(0)});

        fprintf(stderr, "building map at line %d\n", __LINE__); maps_.emplace(
            "mapA3",
            triangular("mapA3", a1c, a4c,
                       {-q1, -p2 - q1.pow(2),
                        -q2 - k(a1c, 2) * q1 * p2 - k(a1c, 2) * q1.pow(3),
                        -p1 - k(a1c, 2) * q1 * q2 - k(a1c, 3, 2) * p2.pow(2) -
                            k(a1c, 8) * q1.pow(2) * p2 - k(a1c, 6) * q1.pow(4)}));
        note("mapA3", "map", "chart.a1 -> chart.a4");

        RatFn f0 = p1;
        RatFn f1 = p1 - k(a1c, 3, 2) * p2.pow(2) + k(a1c, 3) * q1 * q2;
        expressions_.emplace("f0.A1", f0);
        expressions_.emplace("f1.A1", f1);
        note("f0.A1", "expression", "invariant divisor");
        note("f1.A1", "expression", "invariant divisor");

        ParamAction s0_act({"a0", "a1"}, {{R(-1), R(0)}, {R(4), R(1)}}, {R(0), R(0)});
        fprintf(stderr, "building backlund at line %d\n", __LINE__); backlunds_.emplace("s0.A1",
                           make_backlund("s0.A1", a1c,
                                         {q1 + k(a1c, 3) * a0 / p1, p1, q2, p2}, s0_act,
                                         f0.num(), k(a1c, 3) * a0));
        note("s0.A1", "backlund", "(a0,a1) -> (-a0,a1+4a0)");

        ParamAction s1_act({"a0", "a1"}, {{R(1), R(1)}, {R(0), R(-1)}}, {R(0), R(0)});
        RatFn D = k(a1c, 3) * p2.pow(2) - k(a1c, 2) * p1 - k(a1c, 6) * q1 * q2; // = -2 f1
        fprintf(stderr, "building backlund at line %d\n", __LINE__); backlunds_.emplace(
            "s1.A1",
            make_backlund(
                "s1.A1", a1c,
                {q1 - k(a1c, 6) * a1 / D,
                 p1 + k(a1c, 18) * a1 * q2 / D + k(a1c, 162) * a1.pow(2) * p2 / D.pow(2) +
                     k(a1c, 972) * a1.pow(3) * q1 / D.pow(3) -
                     k(a1c, 1458) * a1.pow(4) / D.pow(4),
                 q2 + k(a1c, 18) * a1 * p2 / D + k(a1c, 162) * a1.pow(2) * q1 / D.pow(2) -
                     k(a1c, 324) * a1.pow(3) / D.pow(3),
                 p2 + k(a1c, 18) * a1 * q1 / D - k(a1c, 54) * a1.pow(2) / D.pow(2)},
                s1_act, f1.num(), k(a1c, 3) * a1));
        note("s1.A1", "backlund", "(a0,a1) -> (a0+a1,-a1)");

        fprintf(stderr, "building map at line %d\n", __LINE__); maps_.emplace("R0", triangular("R0", a1c, a1h0,
                                       {k(a1c, 1) / q1, -(q1 * f0 + k(a1c, 3) * a0) * q1,
                                        q2, p2}));
        note("R0", "map", "chart.a1 -> chart.a1.hol0");
        fprintf(stderr, "building map at line %d\n", __LINE__); maps_.emplace("R1",
                      triangular("R1", a1c, a1h1,
                                 {k(a1c, 1) / q1, -(q1 * f1 + k(a1c, 3) * a1) * q1,
                                  q2 + k(a1c, 3) * q1 * p2 + k(a1c, 3) * q1.pow(3),
                                  p2 + k(a1c, 3, 2) * q1.pow(2)}));
        note("R1", "map", "chart.a1 -> chart.a1.hol1");
    }

    // printed components of the pushed-forward pair, for exact cross-checks
    {
        RatFn x = v(a4c, "x"), y = v(a4c, "y"), z = v(a4c, "z"), w = v(a4c, "w");
        RatFn a0 = v(a4c, "a0");
        expressions_.emplace(
            "A4.printed.dx_ds",
            -k(a4c, 1, 3) * w.pow(2) - k(a4c, 1, 3) * x.pow(4) * w +
                k(a4c, 3) * a0 * x * y + k(a4c, 2) * x.pow(2) * y * w +
                k(a4c, 2, 3) * x.pow(6) * y - k(a4c, 5, 3) * y.pow(2) * w -
                k(a4c, 10, 3) * x.pow(4) * y.pow(2) + k(a4c, 14, 3) * x.pow(2) * y.pow(3) -
                k(a4c, 2) * y.pow(4) + a0 * z - k(a4c, 1, 3) * x.pow(5) * z +
                k(a4c, 2, 3) * x.pow(3) * y * z - k(a4c, 1, 3) * x * y.pow(2) * z +
                k(a4c, 1, 3) * x.pow(2) * z.pow(2));
        note("A4.printed.dx_ds", "expression", "printed s-flow x component");
        expressions_.emplace("A4.printed.dw_dt",
                             k(a4c, 5) * x.pow(2) * z - x.pow(5) + k(a4c, 5) * x * y.pow(2) -
                                 k(a4c, 5) * y * z + k(a4c, 3) * a0);
        note("A4.printed.dw_dt", "expression", "printed t-flow w component");
    }

    fprintf(stderr, "building two-time at line %d\n", __LINE__); two_times_.emplace("A4", derive_A4(*this));
    note("A4", "two-time", "two-time, derived flows on chart.a4");

    // ------------------------------------------------------------ jet algebra
    {
        RatFn u = v(jet, "u"), ut = v(jet, "u_t"), utt = v(jet, "u_tt"),
              uttt = v(jet, "u_ttt");
        RatFn a0 = v(jet, "a0");
        expressions_.emplace("A5.eq1",
                             k(jet, 5) * u.pow(2) * utt - u.pow(5) +
                                 k(jet, 5) * u * ut.pow(2) - k(jet, 5) * ut * utt +
                                 k(jet, 3) * a0);
        note("A5.eq1", "expression", "autonomous quartic flow, jet form");
        expressions_.emplace(
            "A5.eq2",
            -k(jet, 1, 3) * uttt.pow(2) - k(jet, 1, 3) * u.pow(4) * uttt +
                k(jet, 3) * a0 * u * ut + k(jet, 2) * u.pow(2) * ut * uttt +
                k(jet, 2, 3) * u.pow(6) * ut - k(jet, 5, 3) * ut.pow(2) * uttt -
                k(jet, 10, 3) * u.pow(4) * ut.pow(2) + k(jet, 14, 3) * u.pow(2) * ut.pow(3) -
                k(jet, 2) * ut.pow(4) + a0 * utt - k(jet, 1, 3) * u.pow(5) * utt +
                k(jet, 2, 3) * u.pow(3) * ut * utt - k(jet, 1, 3) * u * ut.pow(2) * utt +
                k(jet, 1, 3) * u.pow(2) * utt.pow(2));
        note("A5.eq2", "expression", "s-flow of u, jet form");
        expressions_.emplace("A6.eq1",
                             -k(jet, 5) * (ut - u.pow(2)) * uttt - k(jet, 5) * utt.pow(2) +
                                 k(jet, 20) * u * ut * utt + k(jet, 5) * ut.pow(3) -
                                 k(jet, 5) * u.pow(4) * ut);
        note("A6.eq1", "expression", "t-derived quartic flow, jet form");
        // fifth-order soliton equation reduced to the (u,t) jet: subscripts
        // renamed and the extra flow term dropped
        expressions_.emplace("mSK.reduced",
                             -k(jet, 5) * (ut - u.pow(2)) * uttt -
                                 k(jet, 5) * utt.pow(2) + k(jet, 20) * u * ut * utt +
                                 k(jet, 5) * ut.pow(3) - k(jet, 5) * u.pow(4) * ut);
        note("mSK.reduced", "expression", "modified Sawada-Kotera reduction");
    }
}

} // namespace pforge
