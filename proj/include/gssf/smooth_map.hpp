#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gssf/error.hpp"
#include "gssf/jet.hpp"
#include "gssf/multi_array.hpp"

namespace gssf {

inline constexpr int kMaxDerivativeOrder = 4;

/// A smooth map R^domain -> R^codomain that can be evaluated on plain reals and
/// on (nested) jets. Build it from a generic callable taking
/// `std::span<const T>` and returning `std::vector<T>`.
class SmoothMap {
public:
    SmoothMap() = default;

    template <class F>
    static SmoothMap make(int domain_dim, int codomain_dim, F f) {
        SmoothMap m;
        m.domain_dim_ = domain_dim;
        m.codomain_dim_ = codomain_dim;
        m.real_ = [f](std::span<const double> x) { return f(x); };
        m.jet1_ = [f](std::span<const J1> x) { return f(x); };
        m.jet2_ = [f](std::span<const J2> x) { return f(x); };
        return m;
    }

    int domain_dim() const noexcept { return domain_dim_; }
    int codomain_dim() const noexcept { return codomain_dim_; }
    explicit operator bool() const noexcept { return static_cast<bool>(real_); }

    template <class T>
    std::vector<T> operator()(std::span<const T> x) const {
        if (static_cast<int>(x.size()) != domain_dim_) {
            throw Error(ErrorKind::Shape, "point has length " + std::to_string(x.size()) + ", map expects " +
                                              std::to_string(domain_dim_));
        }
        std::vector<T> y;
        if constexpr (std::is_same_v<T, double>) {
            y = real_(x);
        } else if constexpr (std::is_same_v<T, J1>) {
            y = jet1_(x);
        } else {
            static_assert(std::is_same_v<T, J2>, "unsupported scalar type");
            y = jet2_(x);
        }
        if (static_cast<int>(y.size()) != codomain_dim_) {
            throw Error(ErrorKind::Shape, "map returned " + std::to_string(y.size()) + " components, expected " +
                                              std::to_string(codomain_dim_));
        }
        return y;
    }

    template <class T>
    std::vector<T> operator()(const std::vector<T>& x) const {
        return (*this)(std::span<const T>(x));
    }

private:
    int domain_dim_ = 0;
    int codomain_dim_ = 0;
    std::function<std::vector<double>(std::span<const double>)> real_;
    std::function<std::vector<J1>(std::span<const J1>)> jet1_;
    std::function<std::vector<J2>(std::span<const J2>)> jet2_;
};

/// Value and all partial derivatives up to `order` of a map at a point.
/// Partials are keyed by the multi-index of derivative counts per variable.
struct JetResult {
    int order = 0;
    MultiArray value;
    std::map<std::vector<int>, MultiArray> partials;

    const MultiArray& partial(const std::vector<int>& alpha) const;
};

/// `shape` reshapes the codomain (e.g. {m, m} for matrix-valued maps); empty
/// means a flat vector.
JetResult eval_jet(const SmoothMap& map, std::span<const double> point, int order,
                   std::vector<std::size_t> shape = {});

}  // namespace gssf
