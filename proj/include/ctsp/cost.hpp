#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <vector>

#include "ctsp/instance.hpp"

namespace ctsp {

/// Fast pairwise-cost view over an instance, optionally with the big-M
/// inter-cluster penalty folded in. Cheap to copy and safe to share across
/// threads. For small instances the full cost table is cached; otherwise
/// costs are computed on the fly so 25k-vertex instances never materialize
/// an n x n matrix.
class CostEvaluator {
public:
    CostEvaluator() = default;

    static CostEvaluator plain(const Instance& inst);
    static CostEvaluator plain(std::shared_ptr<const Instance> inst);
    static CostEvaluator transformed(const Instance& inst, std::int64_t big_m);
    static CostEvaluator transformed(std::shared_ptr<const Instance> inst,
                                     std::int64_t big_m);

    int n() const { return n_; }
    std::int64_t penalty() const { return penalty_; }
    const Instance& source() const { return *src_; }
    std::shared_ptr<const Instance> source_ptr() const { return src_; }

    bool cross_cluster(int i, int j) const {
        return src_->cluster_of[i] != src_->cluster_of[j];
    }

    std::int64_t operator()(int i, int j) const {
        assert(i != j && i >= 1 && j >= 1 && i <= n_ && j <= n_);
        if (cache_)
            return (*cache_)[static_cast<std::size_t>(i) * (n_ + 1) + j];
        return compute(i, j);
    }

private:
    CostEvaluator(std::shared_ptr<const Instance> src, std::int64_t penalty);

    std::int64_t compute(int i, int j) const;

    std::shared_ptr<const Instance> src_;
    std::shared_ptr<const std::vector<std::int32_t>> cache_;
    std::int64_t penalty_ = 0;
    int n_ = 0;
};

} // namespace ctsp
