// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>

#include "prs/protocol.hpp"

// Proportional reward splitting over a finalized chain, plus the standalone
// share-weight calculator used by pool-style weight/reward accounting.

namespace prs {

enum class ObjectKind { Block, Uncle, Workshare };

inline const char* to_string(ObjectKind k) {
    switch (k) {
        case ObjectKind::Block: return "block";
        case ObjectKind::Uncle: return "uncle";
        case ObjectKind::Workshare: return "workshare";
    }
    return "?";
}

// One reward-eligible object. `height` is the height the object competes at:
// a canonical block's own height, or referenced height + 1 for uncles and
// workshares. The recency window is measured on the referenced height, so
// publishedAt - height lies in [0, recencyWindow - 1].
struct EligibleObject {
    ObjectKind kind;
    std::int64_t height;
    int work;
    std::int32_t owner;
    std::int64_t publishedAt;
};

// Gathers every reward-eligible object of the chain, bucketed by height.
// Window checks are re-derived here rather than trusted from validation so
// the allocator is safe on hand-built chains.
inline std::map<std::int64_t, std::vector<EligibleObject>> gather_eligible(
    const Chain& chain, const ProtocolConfig& cfg) {
    std::map<std::int64_t, std::vector<EligibleObject>> byHeight;
    struct Ref {
        std::int64_t height;
        int forkDepth;
        bool canonical;
        bool blockGrade;
    };
    std::unordered_map<std::uint64_t, Ref> refs;
    refs[Chain::genesis_block(cfg.kappaBits)->hash.value] = Ref{0, 0, true, true};

    chain.for_each([&](std::int64_t h, const WorkObjectPtr& b) {
        if (h == 0) return;  // genesis earns nothing
        refs[b->hash.value] = Ref{h, 0, true, true};
        byHeight[h].push_back(EligibleObject{ObjectKind::Block, h, b->workBits(), b->minerId, h});
        for (const auto& s : b->shareList) {
            auto it = refs.find(s->header.parentRef);
            if (it == refs.end()) continue;
            const Ref& ref = it->second;
            const std::int64_t refHeight = ref.height;
            if (refHeight < h - cfg.recencyWindow || refHeight > h - 1) continue;
            const bool blockGrade = s->workBits() > cfg.blockThreshold;
            const int depth = ref.canonical ? 1 : ref.forkDepth + 1;
            if (blockGrade) {
                if (depth > cfg.forkWindow) continue;
                refs[s->hash.value] = Ref{refHeight + 1, depth, false, true};
            } else if (!ref.blockGrade) {
                continue;  // workshares must reference a block or uncle
            }
            byHeight[refHeight + 1].push_back(EligibleObject{
                blockGrade ? ObjectKind::Uncle : ObjectKind::Workshare, refHeight + 1,
                s->workBits(), s->minerId, h});
        }
    });
    return byHeight;
}

namespace detail {

inline void split_pot(const std::vector<EligibleObject>& objs, double rewardTotal,
                      bool exactRational, std::map<std::int32_t, double>& out) {
    long long total = 0;
    for (const auto& o : objs) total += o.work;
    if (total <= 0) throw std::domain_error("degenerate height: no work to reward");
    if (exactRational) {
        // Work values are small integers, so per-party fractions stay exact
        // until the final conversion.
        std::map<std::int32_t, long long> perPartyWork;
        for (const auto& o : objs) perPartyWork[o.owner] += o.work;
        for (const auto& [party, w] : perPartyWork)
            out[party] += rewardTotal * (static_cast<double>(w) / static_cast<double>(total));
    } else {
        for (const auto& o : objs)
            out[o.owner] += rewardTotal * static_cast<double>(o.work) / static_cast<double>(total);
    }
}

}  // namespace detail

// Splits one height's pot among its eligible objects, proportionally to
// intrinsic work. The chain must have reached the finalization point
// (height + recencyWindow blocks in total).
inline std::map<std::int32_t, double> allocate_height(const Chain& chain, std::int64_t h,
                                                      double rewardTotal,
                                                      const ProtocolConfig& cfg,
                                                      bool exactRational = false) {
    if (rewardTotal <= 0.0) throw std::domain_error("rewardTotal must be positive");
    auto byHeight = gather_eligible(chain, cfg);
    auto it = byHeight.find(h);
    if (it == byHeight.end()) throw std::domain_error("degenerate height: no eligible objects");
    std::map<std::int32_t, double> out;
    detail::split_pot(it->second, rewardTotal, exactRational, out);
    return out;
}

struct RewardAllocation {
    std::map<std::int32_t, double> perParty;
    std::map<std::int64_t, std::map<std::int32_t, double>> perHeight;
    double totalDistributed = 0.0;
    std::int64_t finalizedHeights = 0;
};

// Applies the per-height split to every finalized height: those h with
// h + recencyWindow <= block count, i.e. every possible publication of an
// object at h is already on chain.
inline RewardAllocation allocate_all(const Chain& chain, double perHeightReward,
                                     const ProtocolConfig& cfg, bool exactRational = false) {
    RewardAllocation alloc;
    auto byHeight = gather_eligible(chain, cfg);
    const std::int64_t lastFinalized = chain.tip_height() + 1 - cfg.recencyWindow;
    for (auto& [h, objs] : byHeight) {
        if (h < 1 || h > lastFinalized) continue;
        auto& heightMap = alloc.perHeight[h];
        detail::split_pot(objs, perHeightReward, exactRational, heightMap);
        for (const auto& [party, amount] : heightMap) {
            alloc.perParty[party] += amount;
            alloc.totalDistributed += amount;
        }
        alloc.finalizedHeights += 1;
    }
    return alloc;
}

// ---------------------------------------------------------------------------
// Standalone share weight/reward calculator (pool-style accounting, never
// wired into fork choice).

// Bits of work of a share relative to the block target: -log2(T / powHash).
inline double legacy_share_bits(double target, double powHash) {
    if (!(target > 0.0) || !(powHash > 0.0))
        throw std::domain_error("target and powHash must be positive");
    return -std::log2(target / powHash);
}

// Weight contributed by a share with b bits at reference distance d.
inline double legacy_share_weight(double b, int d) {
    if (b < 0.0 || d < 0) throw std::domain_error("b and d must be nonnegative");
    return std::exp2(-b) * std::exp2(-(static_cast<double>(d) + 1.0));
}

// Total block weight: base weight plus all share contributions.
inline double legacy_block_weight(double blockWeight, std::span<const double> shareWeights) {
    return std::accumulate(shareWeights.begin(), shareWeights.end(), blockWeight);
}

// Reward for one share out of the block reward, proportional to its weight.
inline double legacy_share_reward(double blockReward, double shareWeight, double totalWeight) {
    if (!(totalWeight > 0.0)) throw std::domain_error("total weight must be positive");
    return blockReward * shareWeight / totalWeight;
}

inline double legacy_block_reward(double k, double difficulty) { return k * difficulty; }

}  // namespace prs
