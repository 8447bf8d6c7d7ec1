#include "mdep/factor_io.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "mdep/catalog.hpp"
#include "mdep/error.hpp"

namespace mdep {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
    fail(ErrorKind::parse, path + ": " + msg);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) field_error(path.empty() ? key : path + "." + key, "unknown field");
    }
}

/// Number or "p/q" string; the rational is set only for exact input.
struct Entry {
    double value = 0.0;
    std::optional<Rational> exact;
    bool decimal = false;
};

Entry read_entry(const json& v, const std::string& path) {
    Entry e;
    if (v.is_string()) {
        try {
            e.exact = parse_rational(v.get<std::string>());
        } catch (const Error& err) {
            field_error(path, err.what());
        }
        e.value = to_double(*e.exact);
    } else if (v.is_number_integer()) {
        e.value = static_cast<double>(v.get<std::int64_t>());
        e.exact = Rational(v.get<std::int64_t>());
    } else if (v.is_number()) {
        e.value = v.get<double>();
        e.decimal = true;
    } else {
        field_error(path, "expected a number or a \"p/q\" string");
    }
    if (!std::isfinite(e.value)) field_error(path, "value must be finite");
    return e;
}

SourcePtr read_source(const json& src) {
    if (!src.is_object()) field_error("source", "expected an object");
    reject_unknown(src, "source", {"kind", "atoms"});
    if (!src.contains("kind") || !src["kind"].is_string()) field_error("source.kind", "expected a string");
    const std::string kind = src["kind"].get<std::string>();
    if (kind != "finite-discrete") {
        field_error("source.kind", "expected \"finite-discrete\" (continuous factors come from the catalog)");
    }
    if (!src.contains("atoms") || !src["atoms"].is_array() || src["atoms"].empty()) {
        field_error("source.atoms", "expected a nonempty array");
    }
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < src["atoms"].size(); ++i) {
        const std::string path = "source.atoms[" + std::to_string(i) + "]";
        const json& a = src["atoms"][i];
        if (!a.is_object()) field_error(path, "expected an object with \"value\" and \"p\"");
        reject_unknown(a, path, {"value", "p"});
        if (!a.contains("value") || !a["value"].is_number()) field_error(path + ".value", "expected a number");
        if (!a.contains("p")) field_error(path + ".p", "missing");
        const Entry p = read_entry(a["p"], path + ".p");
        atoms.push_back({a["value"].get<double>(), p.value, p.exact});
    }
    try {
        return std::make_shared<const Source>(Source::finite(std::move(atoms)));
    } catch (const Error& err) {
        field_error("source", err.what());
    }
}

std::string locate(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

BlockFactor parse_factor(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
        std::string what = e.what();
        if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
        fail(ErrorKind::parse, "line " + locate(text, at) + ": " + what);
    }
    if (!doc.is_object()) field_error("(root)", "expected an object");
    if (doc.contains("catalog")) {
        reject_unknown(doc, "", {"catalog"});
        if (!doc["catalog"].is_string()) field_error("catalog", "expected a string");
        try {
            return catalog_factor(doc["catalog"].get<std::string>());
        } catch (const Error& err) {
            field_error("catalog", err.what());
        }
    }
    reject_unknown(doc, "", {"source", "ell", "table", "name"});
    if (!doc.contains("source")) field_error("source", "missing");
    SourcePtr source = read_source(doc["source"]);
    if (!doc.contains("ell") || !doc["ell"].is_number_unsigned() || doc["ell"].get<std::size_t>() == 0) {
        field_error("ell", "expected a positive integer");
    }
    const std::size_t ell = doc["ell"].get<std::size_t>();
    if (!doc.contains("table") || !doc["table"].is_array()) field_error("table", "expected an array");
    const json& t = doc["table"];
    const auto expected = checked_power(source->alphabet_size(), ell);
    if (!expected || t.size() != *expected) {
        field_error("table", "expected alphabet^ell = " + std::to_string(source->alphabet_size()) + "^" +
                                 std::to_string(ell) + " entries, got " + std::to_string(t.size()));
    }
    std::vector<double> table;
    std::vector<Rational> exact;
    bool any_string = false;
    bool any_decimal = false;
    table.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Entry e = read_entry(t[i], "table[" + std::to_string(i) + "]");
        any_string = any_string || t[i].is_string();
        any_decimal = any_decimal || e.decimal;
        table.push_back(e.value);
        if (e.exact) exact.push_back(*e.exact);
    }
    if (any_string && any_decimal) {
        field_error("table", "mixes \"p/q\" strings with decimal numbers; write every non-integer as \"p/q\"");
    }
    std::string name = "table";
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) field_error("name", "expected a string");
        name = doc["name"].get<std::string>();
    }
    std::optional<std::vector<Rational>> exact_table;
    if (any_string) exact_table = std::move(exact);
    return BlockFactor::from_table(std::move(source), ell, std::move(table), std::move(exact_table), name);
}

BlockFactor load_factor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::invalid_argument, "cannot open factor file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_factor(buf.str());
    } catch (const Error& err) {
        fail(err.kind(), path + ": " + err.what());
    }
}

std::string factor_to_json(const BlockFactor& factor) {
    if (!factor.source().is_finite() || !factor.has_table()) {
        fail(ErrorKind::unsupported, "only tabulated finite factors serialize to a factor file");
    }
    json atoms = json::array();
    for (const Atom& a : factor.source().atoms()) {
        json p = a.exact_probability ? json(to_string(*a.exact_probability)) : json(a.probability);
        atoms.push_back({{"value", a.value}, {"p", p}});
    }
    json table = json::array();
    for (std::size_t i = 0; i < factor.table().size(); ++i) {
        if (factor.exact_table()) {
            table.push_back(to_string((*factor.exact_table())[i]));
        } else {
            table.push_back(factor.table()[i]);
        }
    }
    json doc = {{"name", factor.traits().name},
                {"source", {{"kind", "finite-discrete"}, {"atoms", atoms}}},
                {"ell", factor.ell()},
                {"table", table}};
    return doc.dump(2) + "\n";
}

}  // namespace mdep
