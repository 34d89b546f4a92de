#include "renormlab/scaling_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "renormlab/error.hpp"

namespace rlab {

double ScalingBiFactor::boundary_distance() const
{
    return std::min({s0, s1, (1 - s0 - s1) / std::sqrt(2.0)});
}

ScalingData ScalingData::constant(ScalingBiFactor b)
{
    ScalingData d;
    d.rule_ = Rule::Constant;
    d.cycle_ = {b};
    return d;
}

ScalingData ScalingData::periodic(std::vector<ScalingBiFactor> cycle)
{
    if (cycle.empty()) throw Error(ErrorKind::ImproperScalingData, "empty period");
    ScalingData d;
    d.rule_ = Rule::Periodic;
    d.cycle_ = std::move(cycle);
    return d;
}

ScalingData ScalingData::symbol_driven(std::vector<int> word, std::vector<ScalingBiFactor> values,
                                       ScalingBiFactor tail)
{
    if (word.size() != values.size()) throw Error(ErrorKind::Domain, "word and values differ in length");
    ScalingData d;
    d.rule_ = Rule::SymbolDriven;
    d.word_ = std::move(word);
    d.values_ = std::move(values);
    d.tail_ = tail;
    return d;
}

ScalingData ScalingData::with_prefix(std::vector<ScalingBiFactor> prefix) const
{
    ScalingData d = *this;
    for (std::size_t i = prefix.size(); i < d.prefix_.size(); ++i) prefix.push_back(d.prefix_[i]);
    d.prefix_ = std::move(prefix);
    return d;
}

ScalingBiFactor ScalingData::at(int n) const
{
    if (n < 1) throw Error(ErrorKind::Domain, "scaling data is indexed from 1");
    const std::size_t i = static_cast<std::size_t>(n - 1);
    if (i < prefix_.size()) return prefix_[i];
    switch (rule_) {
    case Rule::Constant: return cycle_[0];
    case Rule::Periodic: return cycle_[(i + offset_) % cycle_.size()];
    case Rule::SymbolDriven: return i < values_.size() ? values_[i] : tail_;
    }
    return cycle_[0];
}

ScalingData ScalingData::shifted(int n) const
{
    if (n < 0) throw Error(ErrorKind::Domain, "shift must be non-negative");
    ScalingData d = *this;
    const std::size_t k = static_cast<std::size_t>(n);
    const std::size_t from_prefix = std::min(k, d.prefix_.size());
    d.prefix_.erase(d.prefix_.begin(), d.prefix_.begin() + static_cast<std::ptrdiff_t>(from_prefix));
    const std::size_t rest = k - from_prefix;
    if (rest == 0) return d;
    switch (rule_) {
    case Rule::Constant: break;
    case Rule::Periodic:
        // normalize so the stored cycle starts at the current phase
        d.offset_ = (d.offset_ + rest) % d.cycle_.size();
        std::rotate(d.cycle_.begin(), d.cycle_.begin() + static_cast<std::ptrdiff_t>(d.offset_), d.cycle_.end());
        d.offset_ = 0;
        break;
    case Rule::SymbolDriven: {
        const std::size_t drop = std::min(rest, d.word_.size());
        d.word_.erase(d.word_.begin(), d.word_.begin() + static_cast<std::ptrdiff_t>(drop));
        d.values_.erase(d.values_.begin(), d.values_.begin() + static_cast<std::ptrdiff_t>(drop));
        break;
    }
    }
    return d;
}

std::string ScalingData::describe() const
{
    std::ostringstream os;
    os.precision(17);
    auto bf = [&](const ScalingBiFactor& b) { os << "(" << b.s0 << "," << b.s1 << ")"; };
    switch (rule_) {
    case Rule::Constant:
        os << "constant";
        bf(cycle_[0]);
        break;
    case Rule::Periodic:
        os << "periodic[";
        for (std::size_t i = 0; i < cycle_.size(); ++i) {
            if (i) os << ",";
            bf(cycle_[i]);
        }
        os << "]";
        break;
    case Rule::SymbolDriven:
        os << "symbols[";
        for (int s : word_) os << s;
        os << "]";
        break;
    }
    if (!prefix_.empty()) os << "+prefix" << prefix_.size();
    return os.str();
}

double ScalingData::properness_margin(int levels) const
{
    double m = 1.0;
    for (int n = 1; n <= levels; ++n) m = std::min(m, at(n).boundary_distance());
    return m;
}

} // namespace rlab
