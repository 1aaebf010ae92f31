#include "gssf/smooth_map.hpp"

namespace gssf {

const MultiArray& JetResult::partial(const std::vector<int>& alpha) const {
    auto it = partials.find(alpha);
    if (it == partials.end()) throw Error(ErrorKind::UnsupportedOrder, "partial not present in jet");
    return it->second;
}

JetResult eval_jet(const SmoothMap& map, std::span<const double> point, int order, std::vector<std::size_t> shape) {
    if (order < 0 || order > kMaxDerivativeOrder) {
        throw Error(ErrorKind::UnsupportedOrder, "derivative order " + std::to_string(order) + " exceeds " +
                                                     std::to_string(kMaxDerivativeOrder));
    }
    if (shape.empty()) shape = {static_cast<std::size_t>(map.codomain_dim())};

    auto vars = jet_variables(point, order);
    auto y = map(std::span<const J1>(vars));
    for (const auto& yi : y) {
        if (!all_finite(yi)) throw Error(ErrorKind::NumericDomain, "map evaluation is not finite");
    }

    JetResult out;
    out.order = order;
    std::vector<double> value(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) value[i] = y[i].value();
    out.value = MultiArray(shape, std::move(value));

    auto layout = jet_layout(static_cast<int>(point.size()), order);
    for (std::size_t idx = 1; idx < layout->size(); ++idx) {
        const auto& alpha = layout->alpha[idx];
        std::vector<double> comps(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) comps[i] = y[i].partial(alpha);
        out.partials.emplace(alpha, MultiArray(shape, std::move(comps)));
    }
    return out;
}

}  // namespace gssf
