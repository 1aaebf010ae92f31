#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gssf {

enum class ErrorKind {
    UnsupportedOrder,
    NumericDomain,
    Shape,
    DegenerateFrame,
    DegenerateMetric,
    Dimension,
    FitDegenerate,
    NotAGssf,
    ImmersionDegenerate,
    InsufficientSamples,
    ClassificationMismatch,
    Precondition,
    NotFound,
    Usage,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the coefficient fit when the basis-tensor Gram matrix is singular.
class FitDegenerateError : public Error {
public:
    FitDegenerateError(const std::string& what, std::vector<double> gram)
        : Error(ErrorKind::FitDegenerate, what), gram_(std::move(gram)) {}

    /// Row-major 3x3 Gram matrix of the basis tensors.
    const std::vector<double>& gram() const noexcept { return gram_; }

private:
    std::vector<double> gram_;
};

}  // namespace gssf
