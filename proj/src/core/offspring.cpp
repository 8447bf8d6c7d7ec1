#include "mdep/offspring.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <json.hpp>

#include "mdep/error.hpp"
#include "mdep/rng.hpp"

namespace mdep {

namespace {

constexpr double kCriticalTolerance = 1e-9;
/// Presets keep this many CDF entries for inversion; past them the tail is walked.
constexpr std::size_t kPresetTable = 64;

double poisson1_pmf(std::int64_t k) {
    if (k < 0) return 0.0;
    return std::exp(-1.0 - std::lgamma(static_cast<double>(k) + 1.0));
}

double geom_half_pmf(std::int64_t k) {
    if (k < 0) return 0.0;
    return std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(k + 1, 2000)));
}

}  // namespace

OffspringDistribution OffspringDistribution::from_probabilities(std::vector<double> p) {
    require(!p.empty(), "offspring law needs at least p_0");
    double total = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        require(std::isfinite(p[k]) && p[k] >= 0.0 && p[k] <= 1.0,
                "offspring p_" + std::to_string(k) + " must lie in [0,1]");
        total += p[k];
    }
    require(std::abs(total - 1.0) <= 1e-12, "offspring probabilities must sum to 1");
    while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    OffspringDistribution d;
    d.p_ = std::move(p);
    d.finish();
    return d;
}

OffspringDistribution OffspringDistribution::from_rationals(std::vector<Rational> p) {
    require(!p.empty(), "offspring law needs at least p_0");
    Rational total = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        require(p[k] >= 0 && p[k] <= 1, "offspring p_" + std::to_string(k) + " must lie in [0,1]");
        total += p[k];
    }
    require(total == 1, "exact offspring probabilities must sum to exactly 1");
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    OffspringDistribution d;
    for (const Rational& q : p) d.p_.push_back(to_double(q));
    d.exact_p_ = std::move(p);
    d.finish();
    return d;
}

OffspringDistribution OffspringDistribution::preset(std::string_view name, std::size_t truncation) {
    OffspringDistribution d;
    d.preset_ = true;
    d.truncation_ = truncation;
    if (name == "poisson1") {
        d.name_ = "poisson1";
        d.variance_ = 1.0;
    } else if (name == "geom-half") {
        d.name_ = "geom-half";
        d.variance_ = 2.0;
    } else {
        fail(ErrorKind::invalid_argument, "unknown offspring preset '" + std::string(name) +
                                              "' (expected poisson1 or geom-half)");
    }
    d.mean_ = 1.0;
    double running = 0.0;
    for (std::size_t k = 0; k < kPresetTable; ++k) {
        running += d.pmf(static_cast<std::int64_t>(k));
        d.cdf_.push_back(running);
    }
    if (truncation > 0) {
        double kept = 0.0;
        for (std::size_t k = 0; k <= truncation; ++k) {
            d.p_.push_back(d.pmf(static_cast<std::int64_t>(k)));
            kept += d.p_.back();
        }
        for (double& q : d.p_) q /= kept;
        double tail = 0.0;
        for (std::size_t k = truncation + 1; k < truncation + 200; ++k) tail += d.pmf(static_cast<std::int64_t>(k));
        d.tail_ = tail;
    }
    return d;
}

void OffspringDistribution::finish() {
    double mean = 0.0;
    double second = 0.0;
    double running = 0.0;
    for (std::size_t k = 0; k < p_.size(); ++k) {
        const double kk = static_cast<double>(k);
        mean += kk * p_[k];
        second += kk * kk * p_[k];
        running += p_[k];
        cdf_.push_back(running);
    }
    cdf_.back() = 1.0;
    if (std::abs(mean - 1.0) > kCriticalTolerance) {
        fail(ErrorKind::domain, "offspring law must be critical (mean 1), got mean " + std::to_string(mean));
    }
    if (!(p_[0] > 0.0)) fail(ErrorKind::domain, "offspring law needs p_0 > 0");
    mean_ = mean;
    variance_ = second - mean * mean;
    name_ = "explicit";
}

OffspringDistribution OffspringDistribution::parse(std::string_view text, std::optional<std::size_t> truncate_override) {
    const std::string trimmed = [&] {
        auto b = text.find_first_not_of(" \t\r\n");
        auto e = text.find_last_not_of(" \t\r\n");
        return b == std::string_view::npos ? std::string() : std::string(text.substr(b, e - b + 1));
    }();
    if (trimmed == "poisson1" || trimmed == "geom-half") {
        return preset(trimmed, truncate_override.value_or(kDefaultTruncation));
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(trimmed);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::parse, std::string("offspring: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorKind::parse, "offspring: expected a JSON object or a preset name");
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) fail(ErrorKind::parse, "offspring.preset: expected a string");
        std::size_t truncation = kDefaultTruncation;
        if (j.contains("truncate")) {
            if (!j["truncate"].is_number_unsigned()) {
                fail(ErrorKind::parse, "offspring.truncate: expected a nonnegative integer");
            }
            truncation = j["truncate"].get<std::size_t>();
        }
        return preset(j["preset"].get<std::string>(), truncate_override.value_or(truncation));
    }
    if (!j.contains("p") || !j["p"].is_array()) {
        fail(ErrorKind::parse, "offspring: expected field \"p\" (array) or \"preset\"");
    }
    const auto& arr = j["p"];
    bool any_string = false;
    for (const auto& v : arr) any_string = any_string || v.is_string();
    if (any_string) {
        std::vector<Rational> p;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const auto& v = arr[k];
            if (v.is_string()) {
                p.push_back(parse_rational(v.get<std::string>()));
            } else if (v.is_number_integer()) {
                p.push_back(Rational(v.get<std::int64_t>()));
            } else {
                fail(ErrorKind::parse, "offspring.p[" + std::to_string(k) +
                                           "]: mix of exact and decimal entries; write every entry as \"p/q\"");
            }
        }
        return from_rationals(std::move(p));
    }
    std::vector<double> p;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        if (!arr[k].is_number()) fail(ErrorKind::parse, "offspring.p[" + std::to_string(k) + "]: expected a number");
        p.push_back(arr[k].get<double>());
    }
    return from_probabilities(std::move(p));
}

double OffspringDistribution::pmf(std::int64_t k) const {
    if (k < 0) return 0.0;
    if (preset_) return name_ == "poisson1" ? poisson1_pmf(k) : geom_half_pmf(k);
    return static_cast<std::size_t>(k) < p_.size() ? p_[static_cast<std::size_t>(k)] : 0.0;
}

double OffspringDistribution::truncated_mass() const { return preset_ && truncation_ > 0 ? tail_ : 0.0; }

const std::vector<double>& OffspringDistribution::probabilities() const {
    if (!has_finite_support()) {
        fail(ErrorKind::unsupported, "offspring law " + name_ +
                                         " has infinite support and no truncation; exact computation unavailable");
    }
    return p_;
}

std::vector<std::int64_t> OffspringDistribution::support() const {
    const auto& p = probabilities();
    std::vector<std::int64_t> s;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > 0.0) s.push_back(static_cast<std::int64_t>(k));
    }
    return s;
}

std::vector<std::int64_t> OffspringDistribution::positive_support() const {
    auto s = support();
    s.erase(std::remove(s.begin(), s.end(), 0), s.end());
    return s;
}

std::int64_t OffspringDistribution::sample(std::mt19937_64& eng) const {
    const double u = uniform01(eng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it != cdf_.end()) return static_cast<std::int64_t>(it - cdf_.begin());
    // preset tail beyond the table
    std::int64_t k = static_cast<std::int64_t>(cdf_.size());
    double running = cdf_.back();
    while (true) {
        const double q = pmf(k);
        running += q;
        if (u < running || q == 0.0) return k;
        ++k;
    }
}

SourcePtr OffspringDistribution::exact_source() const {
    const auto& p = probabilities();
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > 0.0) {
            Atom a{static_cast<double>(k), p[k], std::nullopt};
            if (exact_p_) a.exact_probability = (*exact_p_)[k];
            atoms.push_back(a);
        }
    }
    return std::make_shared<const Source>(Source::finite(std::move(atoms)));
}

SourcePtr OffspringDistribution::sampling_source() const {
    if (!preset_) return exact_source();
    auto self = std::make_shared<const OffspringDistribution>(*this);
    return std::make_shared<const Source>(Source::countable(
        name_, [self](std::int64_t k) { return self->pmf(k); },
        [self](std::mt19937_64& eng) { return self->sample(eng); }));
}

}  // namespace mdep
