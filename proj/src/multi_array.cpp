#include "gssf/multi_array.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "gssf/error.hpp"

namespace gssf {

namespace {

std::size_t product(const std::vector<std::size_t>& shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

void check_same_shape(const MultiArray& a, const MultiArray& b) {
    if (a.shape() != b.shape()) {
        throw Error(ErrorKind::Shape, "operands have different shapes");
    }
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnsupportedOrder: return "unsupported-order";
        case ErrorKind::NumericDomain: return "numeric-domain";
        case ErrorKind::Shape: return "shape";
        case ErrorKind::DegenerateFrame: return "degenerate-frame";
        case ErrorKind::DegenerateMetric: return "degenerate-metric";
        case ErrorKind::Dimension: return "dimension";
        case ErrorKind::FitDegenerate: return "fit-degenerate";
        case ErrorKind::NotAGssf: return "not-a-gssf";
        case ErrorKind::ImmersionDegenerate: return "immersion-degenerate";
        case ErrorKind::InsufficientSamples: return "insufficient-samples";
        case ErrorKind::ClassificationMismatch: return "classification-mismatch";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::NotFound: return "not-found";
        case ErrorKind::Usage: return "usage";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

MultiArray::MultiArray(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), data_(product(shape_), fill) {
    for (auto s : shape_) {
        if (s == 0) throw Error(ErrorKind::Shape, "shape entries must be positive");
    }
}

MultiArray::MultiArray(std::vector<std::size_t> shape, std::vector<double> components)
    : shape_(std::move(shape)), data_(std::move(components)) {
    for (auto s : shape_) {
        if (s == 0) throw Error(ErrorKind::Shape, "shape entries must be positive");
    }
    if (data_.size() != product(shape_)) {
        throw Error(ErrorKind::Shape, "component count " + std::to_string(data_.size()) +
                                          " does not match shape product " +
                                          std::to_string(product(shape_)));
    }
}

MultiArray MultiArray::identity(std::size_t n) {
    MultiArray out({n, n});
    for (std::size_t i = 0; i < n; ++i) out.at({i, i}) = 1.0;
    return out;
}

std::size_t MultiArray::offset(std::span<const std::size_t> idx) const {
    if (idx.size() != shape_.size()) throw Error(ErrorKind::Shape, "index rank mismatch");
    std::size_t off = 0;
    for (std::size_t d = 0; d < idx.size(); ++d) {
        if (idx[d] >= shape_[d]) throw Error(ErrorKind::Shape, "index out of range");
        off = off * shape_[d] + idx[d];
    }
    return off;
}

double MultiArray::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double MultiArray::frobenius() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

void MultiArray::require_finite(const char* what) const {
    for (double v : data_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::NumericDomain, std::string(what) + " is not finite");
    }
}

MultiArray operator-(const MultiArray& a, const MultiArray& b) {
    check_same_shape(a, b);
    MultiArray out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

MultiArray operator+(const MultiArray& a, const MultiArray& b) {
    check_same_shape(a, b);
    MultiArray out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

MultiArray operator*(double s, const MultiArray& a) {
    MultiArray out = a;
    for (auto& v : out.components()) v *= s;
    return out;
}

MultiArray contract(const MultiArray& a, std::size_t i, std::size_t j) {
    const auto& shape = a.shape();
    if (i == j || i >= shape.size() || j >= shape.size()) {
        throw Error(ErrorKind::Shape, "contraction indices must be distinct and in range");
    }
    if (shape[i] != shape[j]) throw Error(ErrorKind::Shape, "contracted dimensions differ");

    std::vector<std::size_t> out_shape;
    for (std::size_t d = 0; d < shape.size(); ++d) {
        if (d != i && d != j) out_shape.push_back(shape[d]);
    }
    MultiArray out = out_shape.empty() ? MultiArray::scalar(0.0) : MultiArray(out_shape);

    std::vector<std::size_t> idx(shape.size(), 0);
    for (std::size_t flat = 0; flat < a.size(); ++flat) {
        // decode flat index
        std::size_t rem = flat;
        for (std::size_t d = shape.size(); d-- > 0;) {
            idx[d] = rem % shape[d];
            rem /= shape[d];
        }
        if (idx[i] != idx[j]) continue;
        std::size_t off = 0;
        for (std::size_t d = 0; d < shape.size(); ++d) {
            if (d == i || d == j) continue;
            off = off * shape[d] + idx[d];
        }
        out[off] += a[flat];
    }
    return out;
}

}  // namespace gssf
