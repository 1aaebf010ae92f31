#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gssf {

/// Dense real array with a row-major multi-index layout.
class MultiArray {
public:
    MultiArray() = default;
    explicit MultiArray(std::vector<std::size_t> shape, double fill = 0.0);
    MultiArray(std::vector<std::size_t> shape, std::vector<double> components);

    static MultiArray scalar(double v) { return MultiArray({}, {v}); }
    static MultiArray identity(std::size_t n);

    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t rank() const noexcept { return shape_.size(); }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<const double> components() const noexcept { return data_; }
    std::span<double> components() noexcept { return data_; }

    double& operator[](std::size_t flat) { return data_[flat]; }
    double operator[](std::size_t flat) const { return data_[flat]; }

    double& at(std::initializer_list<std::size_t> idx) { return data_[offset(idx)]; }
    double at(std::initializer_list<std::size_t> idx) const { return data_[offset(idx)]; }
    double& at(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
    double at(std::span<const std::size_t> idx) const { return data_[offset(idx)]; }

    std::size_t offset(std::initializer_list<std::size_t> idx) const {
        return offset(std::span<const std::size_t>(idx.begin(), idx.size()));
    }
    std::size_t offset(std::span<const std::size_t> idx) const;

    /// Largest absolute component; 0 for an empty array.
    double max_abs() const;
    double frobenius() const;

    /// Throws NumericDomain if any component is NaN or infinite.
    void require_finite(const char* what) const;

    friend MultiArray operator-(const MultiArray& a, const MultiArray& b);
    friend MultiArray operator+(const MultiArray& a, const MultiArray& b);
    friend MultiArray operator*(double s, const MultiArray& a);

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

/// Sum over the paired indices i and j; the result has rank two less.
MultiArray contract(const MultiArray& a, std::size_t i, std::size_t j);

}  // namespace gssf
