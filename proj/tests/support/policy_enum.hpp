// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "prs/mdp.hpp"

// Exhaustive enumeration of stationary deterministic policies for small
// truncations. Shares the transition model (step / feasible_actions) with the
// solver under test but optimizes by brute force: every distinct policy,
// restricted to the states it can actually reach, is evaluated exactly via
// the long-run occupancy of its Markov chain.

namespace prs::testsupport {

class PolicyEnumerator {
public:
    explicit PolicyEnumerator(const mdp::MdpConfig& cfg) : cfg_(cfg) {}

    struct Result {
        double bestRatio = 0.0;
        long long policiesEvaluated = 0;
    };

    Result run() {
        assignment_.clear();
        best_ = 0.0;
        count_ = 0;
        dfs();
        return Result{best_, count_};
    }

private:
    using State = mdp::MdpState;
    using Action = mdp::Action;

    const mdp::MdpConfig& cfg_;
    std::unordered_map<State, Action, mdp::MdpStateHash> assignment_;
    double best_ = 0.0;
    long long count_ = 0;

    const std::vector<mdp::TransitionEntry>& transitions(const State& s, const Action& a) {
        const auto key = std::make_pair(s, a);
        auto it = transCache_.find(key);
        if (it != transCache_.end()) return it->second;
        return transCache_.emplace(key, mdp::step(s, a, cfg_)).first->second;
    }

    struct PairHash {
        std::size_t operator()(const std::pair<State, Action>& p) const {
            std::size_t h = mdp::MdpStateHash{}(p.first);
            return h * 1315423911u ^ (static_cast<std::size_t>(p.second.kind) << 8) ^
                   static_cast<std::size_t>(p.second.k);
        }
    };
    struct PairEq {
        bool operator()(const std::pair<State, Action>& a,
                        const std::pair<State, Action>& b) const {
            return a.first == b.first && a.second == b.second;
        }
    };
    std::unordered_map<std::pair<State, Action>, std::vector<mdp::TransitionEntry>, PairHash,
                       PairEq>
        transCache_;

    // Walks the states reachable under the partial assignment; returns the
    // first unassigned one, or nullopt when the policy is closed.
    std::optional<State> find_unassigned(std::vector<State>* closure = nullptr) {
        std::vector<State> queue{mdp::initial_state()};
        std::unordered_set<State, mdp::MdpStateHash> seen{queue[0]};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            State s = queue[i];
            auto it = assignment_.find(s);
            if (it == assignment_.end()) return s;
            for (const auto& t : transitions(s, it->second)) {
                if (seen.insert(t.next).second) queue.push_back(t.next);
            }
        }
        if (closure) *closure = std::move(queue);
        return std::nullopt;
    }

    void dfs() {
        std::vector<State> closure;
        auto open = find_unassigned(&closure);
        if (!open) {
            evaluate(closure);
            return;
        }
        for (const auto& a : mdp::feasible_actions(*open, cfg_)) {
            assignment_[*open] = a;
            dfs();
        }
        assignment_.erase(*open);
    }

    // Long-run adversarial reward fraction of the closed policy, from the
    // Cesaro-limit occupancy of its chain (damped power iteration handles
    // periodic and multichain cases alike).
    void evaluate(const std::vector<State>& states) {
        const std::size_t n = states.size();
        std::unordered_map<State, int, mdp::MdpStateHash> id;
        for (std::size_t i = 0; i < n; ++i) id[states[i]] = static_cast<int>(i);

        struct Arc {
            int from, to;
            double p;
        };
        std::vector<Arc> arcs;
        std::vector<double> ra(n, 0.0), rh(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& t : transitions(states[i], assignment_.at(states[i]))) {
                arcs.push_back(Arc{static_cast<int>(i), id.at(t.next), t.probability});
                ra[i] += t.probability * t.rewardAdversary;
                rh[i] += t.probability * t.rewardHonest;
            }
        }

        std::vector<double> mu(n, 0.0), nxt(n, 0.0);
        mu[0] = 1.0;  // initial state is states[0] by construction
        for (int iter = 0; iter < 6000; ++iter) {
            std::fill(nxt.begin(), nxt.end(), 0.0);
            for (const auto& a : arcs) nxt[a.to] += mu[a.from] * a.p;
            double diff = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                nxt[i] = 0.5 * nxt[i] + 0.5 * mu[i];
                diff += std::abs(nxt[i] - mu[i]);
            }
            mu.swap(nxt);
            if (diff < 1e-13) break;
        }

        double rateA = 0.0, rateH = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rateA += mu[i] * ra[i];
            rateH += mu[i] * rh[i];
        }
        const double total = rateA + rateH;
        const double ratio = total > 0.0 ? rateA / total : 0.0;
        best_ = std::max(best_, ratio);
        count_ += 1;
    }
};

}  // namespace prs::testsupport
