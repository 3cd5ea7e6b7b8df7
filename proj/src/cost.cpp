#include "ctsp/cost.hpp"

#include <cmath>
#include <limits>

namespace ctsp {

namespace {
// Above this size the cached table would cost more memory than it is worth.
constexpr int kCacheMaxN = 3000;
} // namespace

CostEvaluator::CostEvaluator(std::shared_ptr<const Instance> src, std::int64_t penalty)
    : src_(std::move(src)), penalty_(penalty), n_(src_->n) {
    if (n_ > kCacheMaxN) return;
    const std::int64_t worst = max_distance(*src_) + penalty_;
    if (worst > std::numeric_limits<std::int32_t>::max()) return;

    auto table = std::make_shared<std::vector<std::int32_t>>(
        static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0);
    for (int i = 1; i <= n_; ++i) {
        for (int j = i + 1; j <= n_; ++j) {
            const auto c = static_cast<std::int32_t>(compute(i, j));
            (*table)[static_cast<std::size_t>(i) * (n_ + 1) + j] = c;
            (*table)[static_cast<std::size_t>(j) * (n_ + 1) + i] = c;
        }
    }
    cache_ = std::move(table);
}

std::int64_t CostEvaluator::compute(int i, int j) const {
    std::int64_t base;
    if (src_->kind == DistanceKind::ExplicitMatrix) {
        base = src_->weight_at(i, j);
    } else {
        const double dx = src_->coords[i].x - src_->coords[j].x;
        const double dy = src_->coords[i].y - src_->coords[j].y;
        base = std::llround(std::sqrt(dx * dx + dy * dy));
    }
    return cross_cluster(i, j) ? base + penalty_ : base;
}

CostEvaluator CostEvaluator::plain(const Instance& inst) {
    return plain(std::make_shared<const Instance>(inst));
}

CostEvaluator CostEvaluator::plain(std::shared_ptr<const Instance> inst) {
    return CostEvaluator(std::move(inst), 0);
}

CostEvaluator CostEvaluator::transformed(const Instance& inst, std::int64_t big_m) {
    return transformed(std::make_shared<const Instance>(inst), big_m);
}

CostEvaluator CostEvaluator::transformed(std::shared_ptr<const Instance> inst,
                                         std::int64_t big_m) {
    return CostEvaluator(std::move(inst), big_m);
}

} // namespace ctsp
