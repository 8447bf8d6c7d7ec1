#include "mdep/source.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mdep/error.hpp"
#include "mdep/rng.hpp"

namespace mdep {

namespace {
constexpr double kProbabilitySumTolerance = 1e-12;
}

Source Source::finite(std::vector<Atom> atoms) {
    require(!atoms.empty(), "finite source needs at least one atom");
    Source s;
    s.kind_ = SourceKind::finite_discrete;
    double total = 0.0;
    bool exact = true;
    Rational exact_total = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        require(std::isfinite(a.value), "atom " + std::to_string(i) + ": value must be finite");
        require(a.probability > 0.0 && a.probability <= 1.0,
                "atom " + std::to_string(i) + ": probability must lie in (0,1]");
        total += a.probability;
        if (a.exact_probability) {
            exact_total += *a.exact_probability;
        } else {
            exact = false;
        }
    }
    require(std::abs(total - 1.0) <= kProbabilitySumTolerance,
            "atom probabilities must sum to 1 (got " + std::to_string(total) + ")");
    s.exact_ = exact && exact_total == 1;

    s.lookup_.reserve(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) s.lookup_.emplace_back(atoms[i].value, i);
    std::sort(s.lookup_.begin(), s.lookup_.end());
    for (std::size_t i = 1; i < s.lookup_.size(); ++i) {
        require(s.lookup_[i].first != s.lookup_[i - 1].first, "atom values must be pairwise distinct");
    }

    double running = 0.0;
    for (const Atom& a : atoms) {
        running += a.probability;
        s.cumulative_.push_back(running);
    }
    s.atoms_ = std::move(atoms);
    return s;
}

Source Source::finite(std::span<const double> values, std::span<const double> probabilities) {
    require(values.size() == probabilities.size(), "values and probabilities differ in length");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < values.size(); ++i) atoms.push_back({values[i], probabilities[i], std::nullopt});
    return finite(std::move(atoms));
}

Source Source::uniform() {
    Source s;
    s.kind_ = SourceKind::continuous_uniform;
    s.name_ = "uniform(0,1)";
    return s;
}

Source Source::composite(std::vector<Component> components) {
    require(!components.empty(), "composite source needs at least one component");
    Source s;
    s.kind_ = SourceKind::composite;
    s.components_ = std::move(components);
    return s;
}

Source Source::countable(std::string name, std::function<double(std::int64_t)> pmf,
                         std::function<std::int64_t(std::mt19937_64&)> sampler) {
    require(static_cast<bool>(pmf) && static_cast<bool>(sampler), "countable source needs pmf and sampler");
    Source s;
    s.kind_ = SourceKind::countable;
    s.name_ = std::move(name);
    s.pmf_ = std::move(pmf);
    s.sampler_ = std::move(sampler);
    return s;
}

std::optional<std::size_t> Source::index_of(double value) const {
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(value, std::size_t{0}));
    if (it == lookup_.end() || it->first != value) return std::nullopt;
    return it->second;
}

bool Source::contains(std::span<const double> value) const {
    if (value.size() != dimension()) return false;
    switch (kind_) {
        case SourceKind::finite_discrete:
            return index_of(value[0]).has_value();
        case SourceKind::continuous_uniform:
            return value[0] > 0.0 && value[0] < 1.0;
        case SourceKind::composite:
            for (std::size_t i = 0; i < components_.size(); ++i) {
                if (!std::isfinite(value[i])) return false;
                if (components_[i] == Component::uniform && !(value[i] > 0.0 && value[i] < 1.0)) return false;
            }
            return true;
        case SourceKind::countable: {
            const double v = value[0];
            if (v < 0.0 || v != std::floor(v) || v > 9.0e15) return false;
            return pmf_(static_cast<std::int64_t>(v)) > 0.0;
        }
    }
    return false;
}

std::size_t Source::draw(std::mt19937_64& eng, std::span<double> out) const {
    switch (kind_) {
        case SourceKind::finite_discrete: {
            const double u = uniform01(eng);
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
            std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
            if (idx >= atoms_.size()) idx = atoms_.size() - 1;
            out[0] = atoms_[idx].value;
            return idx;
        }
        case SourceKind::continuous_uniform:
            out[0] = uniform01(eng);
            return 0;
        case SourceKind::composite:
            for (std::size_t i = 0; i < components_.size(); ++i) {
                out[i] = components_[i] == Component::uniform ? uniform01(eng) : standard_normal(eng);
            }
            return 0;
        case SourceKind::countable:
            out[0] = static_cast<double>(sampler_(eng));
            return 0;
    }
    return 0;
}

std::string Source::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case SourceKind::finite_discrete:
            os << "finite-discrete{";
            for (std::size_t i = 0; i < atoms_.size(); ++i) {
                if (i) os << ", ";
                os << atoms_[i].value << ":" << atoms_[i].probability;
            }
            os << "}";
            break;
        case SourceKind::continuous_uniform:
            os << "continuous-uniform";
            break;
        case SourceKind::composite:
            os << "composite(";
            for (std::size_t i = 0; i < components_.size(); ++i) {
                if (i) os << ",";
                os << (components_[i] == Component::uniform ? "uniform" : "normal");
            }
            os << ")";
            break;
        case SourceKind::countable:
            os << "countable(" << name_ << ")";
            break;
    }
    return os.str();
}

}  // namespace mdep
