#include "mdep/catalog.hpp"

#include <cmath>

#include "mdep/bst.hpp"
#include "mdep/error.hpp"

namespace mdep {

SourcePtr uniform_source() {
    static const SourcePtr source = std::make_shared<const Source>(Source::uniform());
    return source;
}

BlockFactor identity_factor() {
    return BlockFactor::from_function(uniform_source(), 1, [](std::span<const double> w) { return w[0]; },
                                      {.name = "identity", .locally_constant = false, .mean = 0.5});
}

BlockFactor difference_factor() {
    return BlockFactor::from_function(uniform_source(), 2, [](std::span<const double> w) { return w[1] - w[0]; },
                                      {.name = "difference", .locally_constant = false, .mean = 0.0});
}

BlockFactor product_factor() {
    return BlockFactor::from_function(uniform_source(), 2, [](std::span<const double> w) { return w[0] * w[1]; },
                                      {.name = "product", .locally_constant = false, .mean = 0.25});
}

BlockFactor rn_example_factor() {
    static const SourcePtr source =
        std::make_shared<const Source>(Source::composite({Component::uniform, Component::normal}));
    // window = (U_{k-1}, N_{k-1}, U_k, N_k, U_{k+1}, N_{k+1})
    auto f = [](std::span<const double> w) {
        auto sign = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); };
        const double y_prev = sign(w[0] - w[2]) * std::abs(w[1]);
        const double y_curr = sign(w[2] - w[4]) * std::abs(w[3]);
        return y_curr - y_prev;
    };
    return BlockFactor::from_function(source, 3, f, {.name = "rn-example", .locally_constant = false, .mean = 0.0});
}

BlockFactor catalog_factor(std::string_view name) {
    if (name == "identity") return identity_factor();
    if (name == "difference") return difference_factor();
    if (name == "product") return product_factor();
    if (name == "rn-example") return rn_example_factor();
    if (name.starts_with("bst:")) return bst_fringe_factor(BinaryTree::parse(name.substr(4)));
    fail(ErrorKind::invalid_argument, "unknown catalog factor '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
    return {"identity", "difference", "product", "rn-example", "bst:<preorder code>"};
}

}  // namespace mdep
