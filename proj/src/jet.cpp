#include "gssf/jet.hpp"

#include <map>
#include <utility>

namespace gssf {

namespace {

// All multi-indices of total degree d over n variables, first variable descending.
void enumerate_degree(int n, int d, std::vector<int>& cur, int var, std::vector<std::vector<int>>& out) {
    if (var == n - 1) {
        cur[static_cast<std::size_t>(var)] = d;
        out.push_back(cur);
        return;
    }
    for (int a = d; a >= 0; --a) {
        cur[static_cast<std::size_t>(var)] = a;
        enumerate_degree(n, d - a, cur, var + 1, out);
    }
    cur[static_cast<std::size_t>(var)] = 0;
}

std::shared_ptr<const JetLayout> build_layout(int nvars, int order) {
    auto layout = std::make_shared<JetLayout>();
    layout->nvars = nvars;
    layout->order = order;
    if (nvars == 0) {
        layout->alpha.push_back({});
        layout->degree.push_back(0);
        layout->alpha_factorial.push_back(1.0);
        layout->products.push_back({0, 0, 0});
        return layout;
    }
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    for (int d = 0; d <= order; ++d) {
        std::vector<std::vector<int>> level;
        enumerate_degree(nvars, d, cur, 0, level);
        for (auto& a : level) {
            double fact = 1.0;
            for (int ai : a) {
                for (int t = 2; t <= ai; ++t) fact *= t;
            }
            layout->alpha.push_back(std::move(a));
            layout->degree.push_back(d);
            layout->alpha_factorial.push_back(fact);
        }
    }
    const int n = static_cast<int>(layout->alpha.size());
    std::vector<int> sum(static_cast<std::size_t>(nvars));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (layout->degree[static_cast<std::size_t>(i)] + layout->degree[static_cast<std::size_t>(j)] > order) {
                continue;
            }
            for (int v = 0; v < nvars; ++v) {
                sum[static_cast<std::size_t>(v)] = layout->alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] +
                                                   layout->alpha[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)];
            }
            layout->products.push_back({i, j, layout->index_of(sum)});
        }
    }
    layout->deriv.resize(static_cast<std::size_t>(nvars));
    std::vector<int> lowered(static_cast<std::size_t>(nvars));
    for (int i = 0; i < n; ++i) {
        const auto& a = layout->alpha[static_cast<std::size_t>(i)];
        for (int v = 0; v < nvars; ++v) {
            if (a[static_cast<std::size_t>(v)] == 0) continue;
            lowered = a;
            lowered[static_cast<std::size_t>(v)] -= 1;
            layout->deriv[static_cast<std::size_t>(v)].push_back(
                {i, layout->index_of(lowered), static_cast<double>(a[static_cast<std::size_t>(v)])});
        }
    }
    return layout;
}

}  // namespace

int JetLayout::index_of(std::span<const int> a) const {
    if (static_cast<int>(a.size()) != nvars) return -1;
    int deg = 0;
    for (int ai : a) deg += ai;
    if (deg > order) return -1;
    // Graded blocks are small; a linear scan within the degree block is enough.
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (degree[i] != deg) continue;
        bool same = true;
        for (std::size_t v = 0; v < a.size(); ++v) {
            if (alpha[i][v] != a[v]) {
                same = false;
                break;
            }
        }
        if (same) return static_cast<int>(i);
    }
    return -1;
}

std::shared_ptr<const JetLayout> jet_layout(int nvars, int order) {
    if (nvars < 0 || order < 0) throw Error(ErrorKind::Shape, "jet layout needs non-negative sizes");
    thread_local std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
    auto key = std::make_pair(nvars, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto layout = build_layout(nvars, order);
    cache.emplace(key, layout);
    return layout;
}

}  // namespace gssf
