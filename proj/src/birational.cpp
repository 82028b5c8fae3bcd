#include "pforge/birational.hpp"
#include "pforge/parser.hpp"

#include <algorithm>
#include <set>

namespace pforge {

// ---------------------------------------------------------------- ParamAction

ParamAction::ParamAction(std::vector<std::string> params,
                         std::vector<std::vector<Rat>> matrix, std::vector<Rat> offset)
    : params_(std::move(params)), matrix_(std::move(matrix)), offset_(std::move(offset)) {
    const std::size_t n = params_.size();
    if (matrix_.size() != n || offset_.size() != n)
        throw Error("param action dimensions do not match");
    for (const auto& row : matrix_)
        if (row.size() != n) throw Error("param action matrix is not square");
}

ParamAction ParamAction::identity(std::vector<std::string> params) {
    const std::size_t n = params.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Rat(1);
    return ParamAction(std::move(params), std::move(m), std::vector<Rat>(n, Rat(0)));
}

bool ParamAction::is_identity() const {
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (sgn(offset_[i]) != 0) return false;
        for (std::size_t j = 0; j < params_.size(); ++j)
            if (matrix_[i][j] != Rat(i == j ? 1 : 0)) return false;
    }
    return true;
}

std::vector<Rat> ParamAction::apply(const std::vector<Rat>& values) const {
    if (values.size() != params_.size()) throw Error("param action applied to wrong arity");
    std::vector<Rat> out(params_.size(), Rat(0));
    for (std::size_t i = 0; i < params_.size(); ++i) {
        out[i] = offset_[i];
        for (std::size_t j = 0; j < params_.size(); ++j) out[i] += matrix_[i][j] * values[j];
    }
    return out;
}

ParamAction ParamAction::after(const ParamAction& first) const {
    if (params_ != first.params_) throw Error("param actions over different parameter lists");
    const std::size_t n = params_.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> b = offset_;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) m[i][j] += matrix_[i][k] * first.matrix_[k][j];
            b[i] += matrix_[i][j] * first.offset_[j];
        }
    return ParamAction(params_, std::move(m), std::move(b));
}

std::map<unsigned, RatFn> ParamAction::bindings_over(const Chart& chart) const {
    std::map<unsigned, RatFn> out;
    for (std::size_t i = 0; i < params_.size(); ++i) {
        RatFn e = RatFn::constant(chart, offset_[i]);
        for (std::size_t j = 0; j < params_.size(); ++j)
            if (sgn(matrix_[i][j]) != 0)
                e += matrix_[i][j] * RatFn::var(chart, params_[j]);
        out.emplace(static_cast<unsigned>(chart.index_of(params_[i])), e);
    }
    return out;
}

RatFn ParamAction::expression_for(const std::string& param, const Chart& chart) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
        if (params_[i] == param) {
            RatFn e = RatFn::constant(chart, offset_[i]);
            for (std::size_t j = 0; j < params_.size(); ++j)
                if (sgn(matrix_[i][j]) != 0)
                    e += matrix_[i][j] * RatFn::var(chart, params_[j]);
            return e;
        }
    throw Error("param action has no parameter " + param);
}

bool ParamAction::operator==(const ParamAction& other) const {
    return params_ == other.params_ && matrix_ == other.matrix_ && offset_ == other.offset_;
}

// ---------------------------------------------------------------- BirationalMap

BirationalMap::BirationalMap(std::string name, Chart source, Chart target,
                             std::vector<RatFn> forward, std::vector<RatFn> inverse,
                             ParamAction param_action)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)),
      forward_(std::move(forward)), inverse_(std::move(inverse)),
      param_action_(std::move(param_action)) {
    if (forward_.size() != target_.dim())
        throw Error("map '" + name_ + "': forward arity != target dimension");
    if (inverse_.size() != source_.dim())
        throw Error("map '" + name_ + "': inverse arity != source dimension");
    for (const auto& f : forward_)
        if (!f.chart().compatible(source_)) throw Error("map '" + name_ + "': forward expression over wrong chart");
    for (const auto& f : inverse_)
        if (!f.chart().compatible(target_)) throw Error("map '" + name_ + "': inverse expression over wrong chart");
    verify_roundtrip();
}

BirationalMap BirationalMap::identity(const Chart& chart) {
    std::vector<RatFn> vars;
    for (std::size_t i = 0; i < chart.dim(); ++i)
        vars.push_back(RatFn::var(chart, chart.vars()[i]));
    return BirationalMap("id", chart, chart, vars, vars,
                         ParamAction::identity(chart.params()));
}

BirationalMap BirationalMap::unchecked(std::string name, Chart source, Chart target,
                                       std::vector<RatFn> forward, std::vector<RatFn> inverse,
                                       ParamAction param_action) {
    BirationalMap out;
    out.name_ = std::move(name);
    out.source_ = std::move(source);
    out.target_ = std::move(target);
    out.forward_ = std::move(forward);
    out.inverse_ = std::move(inverse);
    out.param_action_ = std::move(param_action);
    if (out.forward_.size() != out.target_.dim() || out.inverse_.size() != out.source_.dim())
        throw Error("map '" + out.name_ + "': arity mismatch");
    return out;
}

void BirationalMap::verify_roundtrip() const {
    // forward after inverse: target variables reproduce themselves
    auto inv_bind = inverse_bindings();
    for (std::size_t i = 0; i < target_.dim(); ++i) {
        RatFn composed = forward_[i].substitute(inv_bind, target_);
        if (composed != RatFn::var(target_, target_.vars()[i]))
            throw Error("map '" + name_ + "': forward∘inverse != id on " + target_.vars()[i] +
                        " (got " + format(composed) + ")");
    }
    auto fwd_bind = forward_bindings();
    for (std::size_t j = 0; j < source_.dim(); ++j) {
        RatFn composed = inverse_[j].substitute(fwd_bind, source_);
        if (composed != RatFn::var(source_, source_.vars()[j]))
            throw Error("map '" + name_ + "': inverse∘forward != id on " + source_.vars()[j] +
                        " (got " + format(composed) + ")");
    }
}

const RatFn& BirationalMap::forward_for(const std::string& target_var) const {
    for (std::size_t i = 0; i < target_.dim(); ++i)
        if (target_.vars()[i] == target_var) return forward_[i];
    throw Error("map '" + name_ + "' has no target variable " + target_var);
}

// Bindings substituting target state variables by forward expressions; the
// substitution target is the source chart.
std::map<unsigned, RatFn> BirationalMap::forward_bindings() const {
    std::map<unsigned, RatFn> out;
    for (std::size_t i = 0; i < target_.dim(); ++i)
        out.emplace(static_cast<unsigned>(i), forward_[i]);
    return out;
}

std::map<unsigned, RatFn> BirationalMap::inverse_bindings() const {
    std::map<unsigned, RatFn> out;
    for (std::size_t j = 0; j < source_.dim(); ++j)
        out.emplace(static_cast<unsigned>(j), inverse_[j]);
    return out;
}

RatFn BirationalMap::push_expression(const RatFn& f) const {
    if (!f.chart().compatible(source_)) throw Error("push_expression: expression over wrong chart");
    return f.substitute(inverse_bindings(), target_);
}

RatFn BirationalMap::pull_expression(const RatFn& f) const {
    if (!f.chart().compatible(target_)) throw Error("pull_expression: expression over wrong chart");
    return f.substitute(forward_bindings(), source_);
}

BirationalMap BirationalMap::inverse_map() const {
    if (!param_action_.is_identity())
        throw Error("inverse_map: only plain coordinate maps can be flipped");
    return BirationalMap(name_ + "^-1", target_, source_, inverse_, forward_, param_action_);
}

std::vector<std::vector<RatFn>> BirationalMap::jacobian() const {
    std::vector<std::vector<RatFn>> out;
    out.reserve(target_.dim());
    for (std::size_t i = 0; i < target_.dim(); ++i) {
        std::vector<RatFn> row;
        row.reserve(source_.dim());
        for (std::size_t j = 0; j < source_.dim(); ++j)
            row.push_back(forward_[i].diff(static_cast<unsigned>(j)));
        out.push_back(std::move(row));
    }
    return out;
}

RatFn determinant(std::vector<std::vector<RatFn>> m) {
    const std::size_t n = m.size();
    if (n == 0) throw Error("determinant of empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant of non-square matrix");
    if (n == 1) return m[0][0];
    // expansion along the row with the most zeros
    std::size_t best_row = 0, best_zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t z = 0;
        for (const auto& e : m[i]) if (e.is_zero()) ++z;
        if (z > best_zeros) { best_zeros = z; best_row = i; }
    }
    const Chart& chart = m[0][0].chart();
    RatFn acc = RatFn::zero(chart);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[best_row][j].is_zero()) continue;
        std::vector<std::vector<RatFn>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == best_row) continue;
            std::vector<RatFn> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        RatFn term = m[best_row][j] * determinant(std::move(minor));
        if ((best_row + j) % 2 == 0) acc += term;
        else acc -= term;
    }
    return acc;
}

RatFn BirationalMap::jacobian_det() const {
    if (source_.dim() != target_.dim())
        throw Error("jacobian determinant needs equal dimensions");
    return determinant(jacobian());
}

// ---------------------------------------------------------------- pushforward / compose

VectorField pushforward(const VectorField& V, const BirationalMap& M) {
    if (!V.chart().compatible(M.source()))
        throw Error("pushforward: field not over the map source");
    auto inv_bind = M.inverse_bindings();
    std::vector<RatFn> comps;
    comps.reserve(M.target().dim());
    auto time_idx = V.flow_time_index();
    for (std::size_t i = 0; i < M.target().dim(); ++i) {
        RatFn total = RatFn::zero(M.source());
        for (std::size_t j = 0; j < M.source().dim(); ++j) {
            RatFn d = M.forward()[i].diff(static_cast<unsigned>(j));
            if (!d.is_zero()) total += d * V.component(j);
        }
        if (time_idx) total += M.forward()[i].diff(*time_idx);
        comps.push_back(total.substitute(inv_bind, M.target()));
    }
    std::optional<std::string> ft;
    if (V.has_flow_time()) ft = V.flow_time();
    return VectorField(M.target(), std::move(comps), ft);
}

BirationalMap compose(const BirationalMap& A, const BirationalMap& B) {
    if (!A.target().compatible(B.source()))
        throw Error("compose: intermediate charts do not match");
    bool params_move = !A.param_action().is_identity() || !B.param_action().is_identity();

    // forward: x -> B(A(x)), with B's parameters already shifted by A's action
    std::map<unsigned, RatFn> fwd_bind = A.forward_bindings();
    if (params_move) {
        for (const auto& p : A.param_action().params()) {
            unsigned idx = static_cast<unsigned>(B.source().index_of(p));
            fwd_bind[idx] = A.param_action().expression_for(p, A.source());
        }
    }
    std::vector<RatFn> fwd;
    fwd.reserve(B.target().dim());
    for (const auto& f : B.forward()) fwd.push_back(f.substitute(fwd_bind, A.source()));

    // inverse: z -> A^{-1}(B^{-1}(z)), B's inverse rewritten in source-side params
    std::map<unsigned, RatFn> inv_bind;
    for (std::size_t k = 0; k < B.source().dim(); ++k) {
        RatFn binv = B.inverse()[k];
        if (params_move) {
            std::map<unsigned, RatFn> pb;
            for (const auto& p : A.param_action().params()) {
                unsigned idx = static_cast<unsigned>(B.target().index_of(p));
                pb[idx] = A.param_action().expression_for(p, B.target());
            }
            binv = binv.substitute(pb, B.target());
        }
        inv_bind.emplace(static_cast<unsigned>(k), binv);
    }
    std::vector<RatFn> inv;
    inv.reserve(A.source().dim());
    for (const auto& g : A.inverse()) inv.push_back(g.substitute(inv_bind, B.target()));

    ParamAction action = params_move ? B.param_action().after(A.param_action())
                                     : ParamAction::identity(A.source().params());
    return BirationalMap(A.name() + ";" + B.name(), A.source(), B.target(),
                         std::move(fwd), std::move(inv), std::move(action));
}

ConjugationResult verify_conjugation(const VectorField& A, const BirationalMap& M,
                                     const VectorField& B) {
    ConjugationResult out;
    if (!A.chart().compatible(M.source())) {
        out.note = "field is not over the map source (dimension or chart mismatch)";
        return out;
    }
    if (!B.chart().compatible(M.target())) {
        out.note = "comparison field is not over the map target (dimension or chart mismatch)";
        return out;
    }
    VectorField pushed = pushforward(A, M);
    std::vector<RatFn> diff;
    bool equal = true;
    for (std::size_t i = 0; i < pushed.dim(); ++i) {
        RatFn d = pushed.component(i) - B.component(i);
        if (!d.is_zero()) equal = false;
        diff.push_back(std::move(d));
    }
    out.equal = equal;
    if (!equal) out.difference = VectorField(M.target(), std::move(diff));
    return out;
}

// ---------------------------------------------------------------- triangular inversion

std::vector<RatFn> triangular_invert(const Chart& source, const Chart& target,
                                     const std::vector<RatFn>& forward) {
    if (forward.size() != target.dim())
        throw Error("triangular_invert: arity mismatch");
    // merged chart holding both variable sets
    std::vector<std::string> vars = source.vars();
    for (const auto& v : target.vars()) {
        if (std::find(vars.begin(), vars.end(), v) != vars.end())
            throw Error("triangular_invert: source and target share variable name " + v);
        vars.push_back(v);
    }
    Chart merged("merge:" + source.name() + ":" + target.name(), vars, source.times(),
                 source.params());

    std::vector<RatFn> equations; // target_i - forward_i = 0 over merged
    for (std::size_t i = 0; i < target.dim(); ++i)
        equations.push_back(RatFn::var(merged, target.vars()[i]) -
                            forward[i].transport(merged));

    std::map<unsigned, RatFn> known; // merged source var index -> target-only expression
    std::vector<bool> used(equations.size(), false);
    std::size_t solved = 0;
    while (solved < source.dim()) {
        bool progress = false;
        for (std::size_t j = 0; j < equations.size(); ++j) {
            if (used[j]) continue;
            RatFn e = known.empty() ? equations[j] : equations[j].substitute(known, merged);
            // unknown source variables occurring in the equation
            std::vector<unsigned> unknowns;
            for (unsigned idx = 0; idx < source.dim(); ++idx)
                if (!known.count(idx) &&
                    (e.num().depends_on(idx) || e.den().depends_on(idx)))
                    unknowns.push_back(idx);
            if (unknowns.empty()) { used[j] = true; continue; }
            if (unknowns.size() != 1) continue;
            unsigned u = unknowns[0];
            const Poly& N = e.num();
            if (N.degree_in(u) != 1) continue; // not linear in the unknown
            Poly A = N.diff(u);
            if (A.depends_on(u))
                throw Error("triangular_invert: step not linear in " +
                            source.vars()[u]);
            Poly B = N - A * Poly::var(merged, u);
            RatFn solution(-B, A);
            known.emplace(u, solution);
            used[j] = true;
            ++solved;
            progress = true;
        }
        if (!progress)
            throw Error("triangular_invert: forward map is not triangular");
    }
    std::vector<RatFn> inverse;
    inverse.reserve(source.dim());
    for (unsigned idx = 0; idx < source.dim(); ++idx)
        inverse.push_back(known.at(idx).transport(target));
    return inverse;
}

BirationalMap make_triangular_map(const std::string& name, const Chart& source,
                                  const Chart& target, const std::vector<std::string>& exprs) {
    std::vector<RatFn> forward;
    forward.reserve(exprs.size());
    for (const auto& text : exprs) forward.push_back(parse(text, source));
    std::vector<RatFn> inverse = triangular_invert(source, target, forward);
    return BirationalMap(name, source, target, std::move(forward), std::move(inverse),
                         ParamAction::identity(source.params()));
}

} // namespace pforge
