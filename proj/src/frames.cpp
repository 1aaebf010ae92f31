#include "gssf/frames.hpp"

namespace gssf {

Frames orthonormal_frames(const MultiArray& metric, const std::vector<std::vector<double>>& tangent_vectors) {
    if (metric.rank() != 2 || metric.shape()[0] != metric.shape()[1]) {
        throw Error(ErrorKind::Shape, "metric must be a square matrix");
    }
    const int m = static_cast<int>(metric.shape()[0]);
    linalg::check_metric(metric.components(), m);
    for (const auto& v : tangent_vectors) {
        if (static_cast<int>(v.size()) != m) throw Error(ErrorKind::Shape, "tangent vector has wrong length");
    }
    return orthonormal_frames<double>(metric.components(), tangent_vectors);
}

}  // namespace gssf
