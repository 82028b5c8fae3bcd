#ifndef PFORGE_CHART_HPP
#define PFORGE_CHART_HPP

#include "pforge/rat.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pforge {

// Coordinate context for every expression: ordered state variables, optional
// time symbols (one for ordinary flows, two for a pair of commuting flows)
// and parameter symbols. Polynomials index into the combined symbol list
// [vars..., times..., params...].
class Chart {
public:
    Chart() = default;
    Chart(std::string name,
          std::vector<std::string> vars,
          std::vector<std::string> times = {},
          std::vector<std::string> params = {})
        : data_(std::make_shared<Data>(Data{std::move(name), std::move(vars),
                                            std::move(times), std::move(params), {}})) {
        auto& d = const_cast<Data&>(*data_);
        if (d.vars.empty()) throw Error("chart needs at least one variable");
        d.symbols = d.vars;
        d.symbols.insert(d.symbols.end(), d.times.begin(), d.times.end());
        d.symbols.insert(d.symbols.end(), d.params.begin(), d.params.end());
        for (std::size_t i = 0; i < d.symbols.size(); ++i)
            for (std::size_t j = i + 1; j < d.symbols.size(); ++j)
                if (d.symbols[i] == d.symbols[j])
                    throw Error("chart '" + d.name + "': duplicate symbol " + d.symbols[i]);
    }

    const std::string& name() const { return data_->name; }
    const std::vector<std::string>& vars() const { return data_->vars; }
    const std::vector<std::string>& times() const { return data_->times; }
    const std::vector<std::string>& params() const { return data_->params; }
    const std::vector<std::string>& symbols() const { return data_->symbols; }

    std::size_t dim() const { return data_->vars.size(); }
    std::size_t num_symbols() const { return data_->symbols.size(); }

    bool has_time() const { return !data_->times.empty(); }
    const std::string& time_var() const {
        if (!has_time()) throw Error("chart '" + name() + "' has no time variable");
        return data_->times.front();
    }

    std::optional<std::size_t> find(const std::string& symbol) const {
        for (std::size_t i = 0; i < data_->symbols.size(); ++i)
            if (data_->symbols[i] == symbol) return i;
        return std::nullopt;
    }
    std::size_t index_of(const std::string& symbol) const {
        auto i = find(symbol);
        if (!i) throw Error("chart '" + name() + "' has no symbol " + symbol);
        return *i;
    }

    bool is_state_var(std::size_t idx) const { return idx < data_->vars.size(); }
    bool is_time(std::size_t idx) const {
        return idx >= data_->vars.size() && idx < data_->vars.size() + data_->times.size();
    }
    bool is_param(std::size_t idx) const {
        return idx >= data_->vars.size() + data_->times.size() && idx < num_symbols();
    }

    // Two charts are interchangeable when their symbol lists agree.
    bool compatible(const Chart& other) const {
        return data_ == other.data_ ||
               (data_->symbols == other.data_->symbols &&
                data_->vars.size() == other.data_->vars.size() &&
                data_->times.size() == other.data_->times.size());
    }

    bool valid() const { return data_ != nullptr; }

private:
    struct Data {
        std::string name;
        std::vector<std::string> vars;
        std::vector<std::string> times;
        std::vector<std::string> params;
        std::vector<std::string> symbols;
    };
    std::shared_ptr<const Data> data_;
};

} // namespace pforge

#endif
