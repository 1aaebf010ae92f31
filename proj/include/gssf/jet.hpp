#pragma once

// Truncated multivariate Taylor arithmetic.
//
// A Jet<S> holds the Taylor coefficients c_alpha = (d^alpha f)(x0) / alpha! of a
// function of `nvars` variables up to total degree `order`, with coefficients of
// type S. Nesting (Jet<Jet<double>>) gives derivatives with respect to two
// independent sets of variables, e.g. ambient chart coordinates on the outside
// and submanifold parameters on the inside.
//
// Coefficients are stored in graded order (degree 0, then 1, ...), so the layout
// of a lower order is a prefix of the layout of a higher order with the same
// number of variables. Mixed-order operands therefore combine at the lower
// order without copying.

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

#include "gssf/error.hpp"

namespace gssf {

struct JetLayout {
    struct Product {
        int lhs, rhs, out;
    };
    struct DerivTerm {
        int src, dst;
        double factor;
    };

    int nvars = 0;
    int order = 0;
    std::vector<std::vector<int>> alpha;
    std::vector<int> degree;
    std::vector<double> alpha_factorial;
    std::vector<Product> products;
    std::vector<std::vector<DerivTerm>> deriv;  // per variable, dst indexes the order-1 layout

    std::size_t size() const noexcept { return alpha.size(); }
    /// Position of a multi-index, or -1 when its degree exceeds the order.
    int index_of(std::span<const int> a) const;
};

/// Shared immutable layout for (nvars, order). Cached per thread.
std::shared_ptr<const JetLayout> jet_layout(int nvars, int order);

template <class S>
class Jet;

inline double value_of(double x) noexcept { return x; }
template <class S>
double value_of(const Jet<S>& x) {
    return value_of(x.value());
}

inline bool all_finite(double x) noexcept { return std::isfinite(x); }
template <class S>
bool all_finite(const Jet<S>& x) {
    for (const auto& c : x.coefficients()) {
        if (!all_finite(c)) return false;
    }
    return true;
}

inline double recip(double x) { return 1.0 / x; }

template <class S>
class Jet {
public:
    using coefficient_type = S;

    Jet() : c_{S(0.0)} {}
    Jet(double v)
        requires(!std::is_same_v<S, double>)
        : c_{S(v)} {}
    Jet(const S& v) : c_{v} {}
    Jet(std::shared_ptr<const JetLayout> layout, std::vector<S> coeffs)
        : layout_(std::move(layout)), c_(std::move(coeffs)) {
        if (!layout_ || c_.size() != layout_->size()) {
            throw Error(ErrorKind::Shape, "jet coefficient count does not match layout");
        }
    }

    static Jet variable(std::shared_ptr<const JetLayout> layout, const S& value, int var) {
        std::vector<S> c(layout->size(), S(0.0));
        c[0] = value;
        if (layout->order >= 1) c[1 + var] = S(1.0);
        return Jet(std::move(layout), std::move(c));
    }

    bool is_constant() const noexcept { return layout_ == nullptr; }
    const std::shared_ptr<const JetLayout>& layout() const noexcept { return layout_; }
    int order() const noexcept { return layout_ ? layout_->order : 0; }
    int nvars() const noexcept { return layout_ ? layout_->nvars : 0; }

    const S& value() const noexcept { return c_[0]; }
    std::span<const S> coefficients() const noexcept { return c_; }

    /// Taylor coefficient for a multi-index; zero beyond the stored order.
    S coefficient(std::span<const int> alpha) const {
        if (!layout_) {
            for (int a : alpha) {
                if (a != 0) return S(0.0);
            }
            return c_[0];
        }
        int idx = layout_->index_of(alpha);
        return idx < 0 ? S(0.0) : c_[static_cast<std::size_t>(idx)];
    }

    /// Partial derivative d^alpha at the expansion point.
    S partial(std::span<const int> alpha) const {
        double fact = 1.0;
        for (int a : alpha) {
            for (int t = 2; t <= a; ++t) fact *= t;
        }
        return coefficient(alpha) * fact;
    }

    /// d/dx_var as a jet of one lower order.
    Jet derivative(int var) const {
        if (!layout_) return Jet(S(0.0));
        if (layout_->order == 0) {
            throw Error(ErrorKind::UnsupportedOrder, "cannot differentiate an order-0 jet");
        }
        auto lower = jet_layout(layout_->nvars, layout_->order - 1);
        std::vector<S> out(lower->size(), S(0.0));
        for (const auto& t : layout_->deriv[static_cast<std::size_t>(var)]) {
            out[static_cast<std::size_t>(t.dst)] += c_[static_cast<std::size_t>(t.src)] * t.factor;
        }
        return Jet(std::move(lower), std::move(out));
    }

    Jet truncated(int order) const {
        if (!layout_ || order >= layout_->order) return *this;
        auto lower = jet_layout(layout_->nvars, order);
        return Jet(lower, std::vector<S>(c_.begin(), c_.begin() + static_cast<long>(lower->size())));
    }

    Jet operator-() const {
        Jet out = *this;
        for (auto& c : out.c_) c = -c;
        return out;
    }

    Jet& operator+=(const Jet& b) { return *this = *this + b; }
    Jet& operator-=(const Jet& b) { return *this = *this - b; }
    Jet& operator*=(const Jet& b) { return *this = *this * b; }
    Jet& operator/=(const Jet& b) { return *this = *this / b; }

    friend Jet operator+(const Jet& a, const Jet& b) {
        if (a.is_constant()) {
            Jet out = b;
            out.c_[0] = out.c_[0] + a.c_[0];
            return out;
        }
        if (b.is_constant()) {
            Jet out = a;
            out.c_[0] = out.c_[0] + b.c_[0];
            return out;
        }
        auto layout = common_layout(a, b);
        std::vector<S> out(layout->size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c_[i] + b.c_[i];
        return Jet(std::move(layout), std::move(out));
    }

    friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        if (a.is_constant()) return b.scaled(a.c_[0]);
        if (b.is_constant()) return a.scaled(b.c_[0]);
        auto layout = common_layout(a, b);
        std::vector<S> out(layout->size(), S(0.0));
        for (const auto& p : layout->products) {
            out[static_cast<std::size_t>(p.out)] +=
                a.c_[static_cast<std::size_t>(p.lhs)] * b.c_[static_cast<std::size_t>(p.rhs)];
        }
        return Jet(std::move(layout), std::move(out));
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.is_constant()) return a.scaled(recip(b.c_[0]));
        return a * recip(b);
    }

    /// Applies f(x0 + d) = sum_n coeffs[n] d^n with d nilpotent of degree order+1.
    /// `series(x0, order)` must return the scaled derivatives f^(n)(x0)/n!.
    template <class Series>
    Jet compose(Series&& series) const {
        auto coeffs = series(c_[0], order());
        if (!layout_) return Jet(coeffs[0]);
        Jet delta = *this;
        delta.c_[0] = S(0.0);
        Jet out(coeffs[0]);
        Jet power = delta;
        for (int n = 1; n <= layout_->order; ++n) {
            out = out + power.scaled(coeffs[static_cast<std::size_t>(n)]);
            if (n < layout_->order) power = power * delta;
        }
        return out;
    }

private:
    Jet scaled(const S& s) const {
        Jet out = *this;
        for (auto& c : out.c_) c = c * s;
        return out;
    }

    static std::shared_ptr<const JetLayout> common_layout(const Jet& a, const Jet& b) {
        if (a.layout_ == b.layout_) return a.layout_;
        if (a.layout_->nvars != b.layout_->nvars) {
            throw Error(ErrorKind::Shape, "jets over different variable sets cannot be combined");
        }
        return a.layout_->order <= b.layout_->order ? a.layout_ : b.layout_;
    }

    std::shared_ptr<const JetLayout> layout_;
    std::vector<S> c_;
};

template <class S>
Jet<S> recip(const Jet<S>& x) {
    return x.compose([](const S& x0, int order) {
        std::vector<S> f(static_cast<std::size_t>(order) + 1);
        S r = recip(x0);
        S p = r;
        for (int n = 0; n <= order; ++n) {
            f[static_cast<std::size_t>(n)] = (n % 2 == 0) ? p : -p;
            p = p * r;
        }
        return f;
    });
}

template <class S>
Jet<S> sin(const Jet<S>& x) {
    return x.compose([](const S& x0, int order) {
        using std::sin;
        using std::cos;
        S s = sin(x0), c = cos(x0);
        std::vector<S> f(static_cast<std::size_t>(order) + 1);
        double fact = 1.0;
        for (int n = 0; n <= order; ++n) {
            if (n > 0) fact *= n;
            const S& d = (n % 2 == 0) ? s : c;
            f[static_cast<std::size_t>(n)] = (n % 4 < 2 ? d : -d) * (1.0 / fact);
        }
        return f;
    });
}

template <class S>
Jet<S> cos(const Jet<S>& x) {
    return x.compose([](const S& x0, int order) {
        using std::sin;
        using std::cos;
        S s = sin(x0), c = cos(x0);
        std::vector<S> f(static_cast<std::size_t>(order) + 1);
        double fact = 1.0;
        for (int n = 0; n <= order; ++n) {
            if (n > 0) fact *= n;
            const S& d = (n % 2 == 0) ? c : s;
            bool negative = (n % 4 == 1) || (n % 4 == 2);
            f[static_cast<std::size_t>(n)] = (negative ? -d : d) * (1.0 / fact);
        }
        return f;
    });
}

template <class S>
Jet<S> exp(const Jet<S>& x) {
    return x.compose([](const S& x0, int order) {
        using std::exp;
        S e = exp(x0);
        std::vector<S> f(static_cast<std::size_t>(order) + 1);
        double fact = 1.0;
        for (int n = 0; n <= order; ++n) {
            if (n > 0) fact *= n;
            f[static_cast<std::size_t>(n)] = e * (1.0 / fact);
        }
        return f;
    });
}

template <class S>
Jet<S> log(const Jet<S>& x) {
    return x.compose([](const S& x0, int order) {
        using std::log;
        std::vector<S> f(static_cast<std::size_t>(order) + 1);
        f[0] = log(x0);
        S r = recip(x0);
        S p = r;
        for (int n = 1; n <= order; ++n) {
            f[static_cast<std::size_t>(n)] = p * ((n % 2 == 1 ? 1.0 : -1.0) / n);
            p = p * r;
        }
        return f;
    });
}

template <class S>
Jet<S> sqrt(const Jet<S>& x) {
    return x.compose([](const S& x0, int order) {
        using std::sqrt;
        std::vector<S> f(static_cast<std::size_t>(order) + 1);
        S s = sqrt(x0);
        S r = recip(x0);
        S p = s;
        double binom = 1.0;  // binomial(1/2, n)
        for (int n = 0; n <= order; ++n) {
            if (n > 0) {
                binom *= (0.5 - (n - 1)) / n;
                p = p * r;
            }
            f[static_cast<std::size_t>(n)] = p * binom;
        }
        return f;
    });
}

using J1 = Jet<double>;
using J2 = Jet<J1>;

/// Seeds `point` as the variables of a fresh jet of the given order.
template <class S>
std::vector<Jet<S>> jet_variables(std::span<const S> point, int order) {
    auto layout = jet_layout(static_cast<int>(point.size()), order);
    std::vector<Jet<S>> out;
    out.reserve(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        out.push_back(Jet<S>::variable(layout, point[i], static_cast<int>(i)));
    }
    return out;
}

}  // namespace gssf
