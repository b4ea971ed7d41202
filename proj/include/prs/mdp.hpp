// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

// Adversarial-strategy MDPs for four reward mechanisms, with solvers for the
// three security metrics: incentive compatibility (optimal relative reward),
// subversion gain, and censorship susceptibility.

namespace prs::mdp {

enum class Mechanism { Bitcoin, FruitChains, RewardSplitting, ProportionalSplitting };

inline const char* to_string(Mechanism m) {
    switch (m) {
        case Mechanism::Bitcoin: return "bitcoin";
        case Mechanism::FruitChains: return "fruitchains";
        case Mechanism::RewardSplitting: return "rs";
        case Mechanism::ProportionalSplitting: return "prs";
    }
    return "?";
}

enum class Fork : std::uint8_t { Active = 0, CLast = 1, ALast = 2 };

// State of the withholding game. `history` is a bitmask over the trailing run
// of attacker blocks on the main chain: bit (d-1) set means a contested
// height sits at distance d from the tip, its honest competitor still
// publishable. Bits only live at distances 1..omega-1.
struct MdpState {
    int privateLen = 0;
    int publicLen = 0;
    Fork fork = Fork::ALast;
    std::uint32_t history = 0;

    friend bool operator==(const MdpState& a, const MdpState& b) {
        return a.privateLen == b.privateLen && a.publicLen == b.publicLen && a.fork == b.fork &&
               a.history == b.history;
    }
};

struct MdpStateHash {
    std::size_t operator()(const MdpState& s) const {
        std::uint64_t x = (static_cast<std::uint64_t>(s.privateLen) << 48) ^
                          (static_cast<std::uint64_t>(s.publicLen) << 32) ^
                          (static_cast<std::uint64_t>(s.fork) << 30) ^ s.history;
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

enum class ActionKind : std::uint8_t { Adopt, Wait, Match, Override };

struct Action {
    ActionKind kind = ActionKind::Wait;
    int k = 0;  // Override only: publish publicLen + k blocks

    friend bool operator==(const Action& a, const Action& b) {
        return a.kind == b.kind && a.k == b.k;
    }
};

struct MdpConfig {
    double alpha = 0.1;           // adversary power fraction
    double gammaNet = 0.5;        // honest miners siding with a matched fork
    int omega = 6;                // object eligibility window (heights)
    int forkWindow = 6;           // fork eligibility window (depth)
    int maxFork = 12;             // truncation bound on both chain lengths
    double dsValue = 3.0;         // double-spend bounty per orphaned block
    int confDepth = 6;            // confirmations needed before the bounty pays
    Mechanism mechanism = Mechanism::ProportionalSplitting;
    double fruitRatio = 1.0;      // FruitChains: fruits carried per block
    double prsShareOverride = -1.0;  // test hook; < 0 means use alpha

    double prsShare() const { return prsShareOverride >= 0.0 ? prsShareOverride : alpha; }
    int histWidth() const {
        return mechanism == Mechanism::Bitcoin ? 0 : std::max(0, omega - 1);
    }

    void validate() const {
        if (!(alpha >= 0.0) || alpha >= 0.5) throw std::invalid_argument("alpha must be in [0,0.5)");
        if (gammaNet < 0.0 || gammaNet > 1.0) throw std::invalid_argument("gammaNet must be in [0,1]");
        if (omega < 1) throw std::invalid_argument("omega must be >= 1");
        if (forkWindow < 1) throw std::invalid_argument("forkWindow must be >= 1");
        if (maxFork < 2) throw std::invalid_argument("maxFork must be >= 2");
        if (confDepth < 1) throw std::invalid_argument("confDepth must be >= 1");
        if (omega > 21) throw std::invalid_argument("omega too large for the history encoding");
    }
};

struct TransitionEntry {
    double probability = 0.0;
    MdpState next;
    double rewardAdversary = 0.0;
    double rewardHonest = 0.0;
    double dsBonus = 0.0;       // double-spend bounty, excluded from relative reward
    int heightsFinalized = 0;   // main-chain heights whose pot settled
};

struct InfeasibleAction : std::logic_error {
    using std::logic_error::logic_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Feasible actions. Wait (and Match, whose private branch keeps growing) are
// suppressed at the truncation boundary so the race is forced to resolve.

inline std::vector<Action> feasible_actions(const MdpState& s, const MdpConfig& cfg) {
    std::vector<Action> out;
    out.push_back(Action{ActionKind::Adopt, 0});
    const bool atBound = s.privateLen >= cfg.maxFork || s.publicLen >= cfg.maxFork;
    if (!atBound) out.push_back(Action{ActionKind::Wait, 0});
    if (!atBound && s.fork == Fork::CLast && s.publicLen >= 1 && s.privateLen >= s.publicLen)
        out.push_back(Action{ActionKind::Match, 0});
    for (int k = 1; s.privateLen >= s.publicLen + k; ++k)
        out.push_back(Action{ActionKind::Override, k});
    return out;
}

namespace detail {

struct Settlement {
    double adv = 0.0;
    double hon = 0.0;
    double bonus = 0.0;
    int heights = 0;
    std::uint32_t hist = 0;
};

inline std::uint32_t hist_mask(const MdpConfig& cfg) {
    const int w = cfg.histWidth();
    return w >= 32 ? 0xffffffffu : ((1u << w) - 1u);
}

// Pot award for a contested height that stayed inside both windows.
inline void award_split(const MdpConfig& cfg, Settlement& st, bool adversaryCanonical) {
    switch (cfg.mechanism) {
        case Mechanism::Bitcoin:
            (adversaryCanonical ? st.adv : st.hon) += 1.0;
            break;
        case Mechanism::RewardSplitting:
            st.adv += 0.5;
            st.hon += 0.5;
            break;
        case Mechanism::ProportionalSplitting:
            st.adv += cfg.prsShare();
            st.hon += 1.0 - cfg.prsShare();
            break;
        case Mechanism::FruitChains:
            // Fruit rewards are handled at the call sites (per-fruit, not a
            // shared pot).
            break;
    }
}

// Adopt: the public chain joins the main chain. Pending competitors become
// publishable again; the adversary's orphaned blocks earn their share where
// the windows allow.
inline Settlement settle_adopt(const MdpState& s, const MdpConfig& cfg) {
    Settlement st;
    const int a = s.privateLen;
    const int c = s.publicLen;
    const bool fc = cfg.mechanism == Mechanism::FruitChains;

    if (c >= 1) {
        st.heights = c;
        // Pending contested heights: the first public block references them,
        // always within the window (distance d settles at gap d+1 <= omega).
        for (int d = 1; d <= cfg.histWidth(); ++d) {
            if (!(s.history & (1u << (d - 1)))) continue;
            if (fc)
                st.hon += cfg.fruitRatio;
            else
                award_split(cfg, st, /*adversaryCanonical=*/true);
        }
        st.hist = 0;
        // Honest canonical heights, with the adversary's fork blocks as
        // competitors where both windows allow.
        for (int j = 1; j <= c; ++j) {
            const bool contested = j <= a;
            const bool inRecency = (c + 1 - j) <= cfg.omega;
            if (fc) {
                st.hon += cfg.fruitRatio;
                if (contested && inRecency) st.adv += cfg.fruitRatio;
                continue;
            }
            if (contested && j <= cfg.forkWindow && inRecency)
                award_split(cfg, st, /*adversaryCanonical=*/false);
            else
                st.hon += 1.0;
        }
    } else {
        st.hist = s.history;  // no honest block arrives; nothing to reference
    }
    // Orphaned private blocks past the public tip compete at heights the
    // chain has not reached yet; they earn a proportional share when inside
    // the fork window, nothing otherwise.
    for (int j = c + 1; j <= a; ++j) {
        if (fc) {
            st.adv += cfg.fruitRatio;
            continue;
        }
        if (j > cfg.forkWindow) continue;
        switch (cfg.mechanism) {
            case Mechanism::Bitcoin: break;
            case Mechanism::RewardSplitting: st.adv += 0.5; break;
            case Mechanism::ProportionalSplitting: st.adv += cfg.prsShare(); break;
            case Mechanism::FruitChains: break;
        }
    }
    return st;
}

// Override(k): the adversary publishes publicLen + k blocks. The orphaned
// honest blocks stay publishable (pending bits) while inside the recency
// window; heights pushed fully out pay the adversary in full.
inline Settlement settle_override(const MdpState& s, int k, const MdpConfig& cfg) {
    Settlement st;
    const int c = s.publicLen;
    const int placed = c + k;
    const bool fc = cfg.mechanism == Mechanism::FruitChains;
    st.heights = placed;

    std::uint32_t hist = 0;
    // Age the previously pending heights by the newly placed blocks.
    for (int d = 1; d <= cfg.histWidth(); ++d) {
        if (!(s.history & (1u << (d - 1)))) continue;
        const int aged = d + placed;
        if (aged <= cfg.omega - 1) {
            hist |= 1u << (aged - 1);
        } else if (!fc) {
            st.adv += 1.0;  // competitor pushed out: full pot to the attacker
        }
        // FruitChains: the expired honest fruit is simply destroyed.
    }
    // Newly contested heights. The fork window penalizes the forking side:
    // it gates the attacker's own orphans (see settle_adopt), while the
    // overridden honest blocks stay claimable for as long as the recency
    // window allows.
    for (int j = 1; j <= c; ++j) {
        const int dist = placed - j;
        if (fc) {
            st.adv += cfg.fruitRatio;  // attacker fruit rides its block
            if (dist <= cfg.omega - 1) hist |= 1u << (dist - 1);
            continue;
        }
        if (dist <= cfg.omega - 1)
            hist |= 1u << (dist - 1);
        else
            st.adv += 1.0;
    }
    // Uncontested freshly placed heights.
    for (int j = c + 1; j <= placed; ++j) st.adv += fc ? cfg.fruitRatio : 1.0;

    if (c >= cfg.confDepth) st.bonus = cfg.dsValue;
    st.hist = hist & hist_mask(cfg);
    return st;
}

// A matched fork resolved in the attacker's favour: the published prefix joins
// the main chain and the extending honest block references every competitor
// still inside the windows.
inline Settlement settle_match_win(const MdpState& s, const MdpConfig& cfg) {
    Settlement st;
    const int c = s.publicLen;
    const bool fc = cfg.mechanism == Mechanism::FruitChains;
    st.heights = c;
    st.hist = 0;

    for (int d = 1; d <= cfg.histWidth(); ++d) {
        if (!(s.history & (1u << (d - 1)))) continue;
        const bool inRecency = (d + c + 1) <= cfg.omega;
        if (fc) {
            if (inRecency) st.hon += cfg.fruitRatio;
        } else if (inRecency) {
            award_split(cfg, st, /*adversaryCanonical=*/true);
        } else {
            st.adv += 1.0;
        }
    }
    for (int j = 1; j <= c; ++j) {
        const bool inRecency = (c + 1 - j) <= cfg.omega;
        if (fc) {
            st.adv += cfg.fruitRatio;
            if (inRecency) st.hon += cfg.fruitRatio;
            continue;
        }
        if (inRecency)
            award_split(cfg, st, /*adversaryCanonical=*/true);
        else
            st.adv += 1.0;
    }
    return st;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One action: list of (probability, next state, settled rewards).

inline std::vector<TransitionEntry> step(const MdpState& s, const Action& a,
                                         const MdpConfig& cfg) {
    const auto feasible = feasible_actions(s, cfg);
    if (std::find(feasible.begin(), feasible.end(), a) == feasible.end())
        throw InfeasibleAction("action infeasible in this state");

    const double alpha = cfg.alpha;
    const double gamma = cfg.gammaNet;
    std::vector<TransitionEntry> out;

    auto push = [&](double p, MdpState next, const detail::Settlement& st) {
        if (p <= 0.0) return;
        TransitionEntry e;
        e.probability = p;
        e.next = next;
        e.rewardAdversary = st.adv;
        e.rewardHonest = st.hon;
        e.dsBonus = st.bonus;
        e.heightsFinalized = st.heights;
        out.push_back(e);
    };

    const detail::Settlement none{};
    switch (a.kind) {
        case ActionKind::Wait: {
            if (s.fork != Fork::Active) {
                push(alpha, MdpState{s.privateLen + 1, s.publicLen, Fork::ALast, s.history}, none);
                push(1.0 - alpha, MdpState{s.privateLen, s.publicLen + 1, Fork::CLast, s.history},
                     none);
            } else {
                push(alpha, MdpState{s.privateLen + 1, s.publicLen, Fork::Active, s.history}, none);
                const auto st = detail::settle_match_win(s, cfg);
                push((1.0 - alpha) * gamma,
                     MdpState{s.privateLen - s.publicLen, 1, Fork::CLast, 0}, st);
                push((1.0 - alpha) * (1.0 - gamma),
                     MdpState{s.privateLen, s.publicLen + 1, Fork::CLast, s.history}, none);
            }
            break;
        }
        case ActionKind::Adopt: {
            const auto st = detail::settle_adopt(s, cfg);
            push(alpha, MdpState{1, 0, Fork::ALast, st.hist}, st);
            push(1.0 - alpha, MdpState{0, 1, Fork::CLast, st.hist}, st);
            break;
        }
        case ActionKind::Override: {
            const auto st = detail::settle_override(s, a.k, cfg);
            const int rest = s.privateLen - s.publicLen - a.k;
            push(alpha, MdpState{rest + 1, 0, Fork::ALast, st.hist}, st);
            push(1.0 - alpha, MdpState{rest, 1, Fork::CLast, st.hist}, st);
            break;
        }
        case ActionKind::Match: {
            push(alpha, MdpState{s.privateLen + 1, s.publicLen, Fork::Active, s.history}, none);
            const auto st = detail::settle_match_win(s, cfg);
            push((1.0 - alpha) * gamma, MdpState{s.privateLen - s.publicLen, 1, Fork::CLast, 0},
                 st);
            push((1.0 - alpha) * (1.0 - gamma),
                 MdpState{s.privateLen, s.publicLen + 1, Fork::CLast, s.history}, none);
            break;
        }
    }
    return out;
}

inline MdpState initial_state() { return MdpState{0, 0, Fork::ALast, 0}; }

// ---------------------------------------------------------------------------
// Dense model over the reachable state space.

struct BuiltModel {
    struct Trans {
        int next;
        double p, ra, rh, bonus;
    };
    struct ActionRow {
        Action action;
        int begin, end;  // range into trans
    };
    struct StateRow {
        MdpState state;
        int begin, end;  // range into actions
    };

    std::vector<StateRow> states;
    std::vector<ActionRow> actions;
    std::vector<Trans> trans;
    std::unordered_map<MdpState, int, MdpStateHash> index;

    double maxTransitionReward() const {
        double m = 0.0;
        for (const auto& t : trans) m = std::max(m, t.ra + t.bonus);
        return m;
    }
};

inline BuiltModel build_model(const MdpConfig& cfg) {
    cfg.validate();
    BuiltModel m;
    std::deque<MdpState> frontier;
    auto intern = [&](const MdpState& s) {
        auto it = m.index.find(s);
        if (it != m.index.end()) return it->second;
        const int id = static_cast<int>(m.states.size());
        m.index.emplace(s, id);
        m.states.push_back(BuiltModel::StateRow{s, 0, 0});
        frontier.push_back(s);
        return id;
    };
    intern(initial_state());
    // First pass: discover states.
    while (!frontier.empty()) {
        MdpState s = frontier.front();
        frontier.pop_front();
        for (const auto& a : feasible_actions(s, cfg))
            for (const auto& t : step(s, a, cfg)) intern(t.next);
    }
    // Second pass: lay out transitions densely.
    for (std::size_t i = 0; i < m.states.size(); ++i) {
        auto& row = m.states[i];
        row.begin = static_cast<int>(m.actions.size());
        for (const auto& a : feasible_actions(row.state, cfg)) {
            BuiltModel::ActionRow ar;
            ar.action = a;
            ar.begin = static_cast<int>(m.trans.size());
            for (const auto& t : step(row.state, a, cfg)) {
                m.trans.push_back(BuiltModel::Trans{m.index.at(t.next), t.probability,
                                                    t.rewardAdversary, t.rewardHonest, t.dsBonus});
            }
            ar.end = static_cast<int>(m.trans.size());
            m.actions.push_back(ar);
        }
        row.end = static_cast<int>(m.actions.size());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Average-reward solver: relative value iteration with span stopping, used as
// a sign probe inside the binary searches. The instantaneous reward of a
// transition is cra*ra + crh*rh + cb*bonus + c0.

struct ProbeWeights {
    double cra = 0.0, crh = 0.0, cb = 0.0, c0 = 0.0;
};

// Fixes an action per state; empty means optimize over all feasible actions.
using PolicySelector = std::function<Action(const MdpState&)>;

struct ProbeResult {
    double gainLow = 0.0, gainHigh = 0.0;
    int sweeps = 0;
    double gain() const { return 0.5 * (gainLow + gainHigh); }
};

struct SolverOptions {
    double spanTol = 1e-7;
    int maxSweeps = 200000;
};

inline ProbeResult probe_average_reward(const BuiltModel& m, const ProbeWeights& w,
                                        std::vector<double>& value, const SolverOptions& opt,
                                        const PolicySelector& policy = {}) {
    const std::size_t n = m.states.size();
    if (value.size() != n) value.assign(n, 0.0);
    std::vector<double> next(n, 0.0);

    // Pre-resolve the policy's action row per state, if any.
    std::vector<int> fixedRow;
    if (policy) {
        fixedRow.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = m.states[i];
            Action want = policy(row.state);
            int found = -1;
            for (int ai = row.begin; ai < row.end; ++ai)
                if (m.actions[ai].action == want) found = ai;
            if (found < 0) throw InfeasibleAction("policy picked an infeasible action");
            fixedRow[i] = found;
        }
    }

    ProbeResult res;
    for (int sweep = 0; sweep < opt.maxSweeps; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = m.states[i];
            double best = -1e300;
            const int aBegin = policy ? fixedRow[i] : row.begin;
            const int aEnd = policy ? fixedRow[i] + 1 : row.end;
            for (int ai = aBegin; ai < aEnd; ++ai) {
                const auto& ar = m.actions[ai];
                double q = 0.0;
                for (int ti = ar.begin; ti < ar.end; ++ti) {
                    const auto& t = m.trans[ti];
                    q += t.p * (w.cra * t.ra + w.crh * t.rh + w.cb * t.bonus + value[t.next]);
                }
                q += w.c0;
                if (q > best) best = q;
            }
            next[i] = best;
        }
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = next[i] - value[i];
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        const double anchor = next[0];
        for (std::size_t i = 0; i < n; ++i) value[i] = next[i] - anchor;
        res.sweeps = sweep + 1;
        res.gainLow = lo;
        res.gainHigh = hi;
        const double span = hi - lo;
        if (span < opt.spanTol) return res;
        // Early exit once the sign is unambiguous; the binary searches only
        // need the sign of the optimal gain.
        if (lo > 0.0 || hi < 0.0) {
            if (span < 1e-3) return res;
        }
    }
    throw SolverError("value iteration did not converge within the sweep cap");
}

struct SolveResult {
    double value = 0.0;
    int probeCount = 0;
    int totalSweeps = 0;
};

// Maximum achievable relative reward r_a / (r_a + r_h), by binary search on
// rho with transformed instantaneous reward (1-rho)*ra - rho*rh.
inline SolveResult optimal_relative_reward(const MdpConfig& cfg, double tol,
                                           const PolicySelector& policy = {},
                                           const SolverOptions& opt = {}) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const BuiltModel m = build_model(cfg);
    std::vector<double> value;
    SolveResult res;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        ProbeWeights w{1.0 - mid, -mid, 0.0, 0.0};
        const auto probe = probe_average_reward(m, w, value, opt, policy);
        res.probeCount += 1;
        res.totalSweeps += probe.sweeps;
        if (probe.gain() >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    res.value = 0.5 * (lo + hi);
    return res;
}

// The always-publish policy: release every block immediately, adopt anything
// longer. Evaluates to the fair share alpha under every mechanism.
inline PolicySelector honest_policy() {
    return [](const MdpState& s) {
        if (s.privateLen > s.publicLen) return Action{ActionKind::Override, s.privateLen - s.publicLen};
        if (s.publicLen >= 1) return Action{ActionKind::Adopt, 0};
        return Action{ActionKind::Wait, 0};
    };
}

inline SolveResult honest_relative_reward(const MdpConfig& cfg, double tol,
                                          const SolverOptions& opt = {}) {
    return optimal_relative_reward(cfg, tol, honest_policy(), opt);
}

// Time-averaged extra profit of the optimal attack, double-spend bounty
// included, over the honest baseline alpha. Time is counted in mining events
// (one per transition).
inline SolveResult subversion_gain(const MdpConfig& cfg, double tol,
                                   const SolverOptions& opt = {}) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const BuiltModel m = build_model(cfg);
    std::vector<double> value;
    SolveResult res;
    double lo = 0.0, hi = m.maxTransitionReward() + 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        ProbeWeights w{1.0, 0.0, 1.0, -mid};
        const auto probe = probe_average_reward(m, w, value, opt);
        res.probeCount += 1;
        res.totalSweeps += probe.sweeps;
        if (probe.gain() >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    res.value = std::max(0.0, 0.5 * (lo + hi) - cfg.alpha);
    return res;
}

// Maximum fraction of honest income the attacker can destroy: one minus the
// minimum achievable honest reward rate over the honest potential (1-alpha).
inline SolveResult censorship_susceptibility(const MdpConfig& cfg, double tol,
                                             const SolverOptions& opt = {}) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const BuiltModel m = build_model(cfg);
    std::vector<double> value;
    SolveResult res;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        // Probes the sign of max_pi avg(mid - rh): positive iff some policy
        // pushes the honest rate below mid.
        ProbeWeights w{0.0, -1.0, 0.0, mid};
        const auto probe = probe_average_reward(m, w, value, opt);
        res.probeCount += 1;
        res.totalSweeps += probe.sweeps;
        if (probe.gain() >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    const double minHonestRate = 0.5 * (lo + hi);
    const double potential = 1.0 - cfg.alpha;
    double frac = potential > 0.0 ? (potential - minHonestRate) / potential : 0.0;
    res.value = std::clamp(frac, 0.0, 1.0);
    return res;
}

// ---------------------------------------------------------------------------
// Metric sweeps.

enum class Metric { IncentiveCompatibility, SubversionGain, CensorshipSusceptibility };

inline const char* to_string(Metric m) {
    switch (m) {
        case Metric::IncentiveCompatibility: return "incentive";
        case Metric::SubversionGain: return "subversion";
        case Metric::CensorshipSusceptibility: return "censorship";
    }
    return "?";
}

struct CurvePoint {
    Mechanism mechanism;
    Metric metric;
    double alpha, gamma;
    int omega, wfork;
    double value;
    int solverIterations;
};

inline std::vector<CurvePoint> sweep(Metric metric, Mechanism mechanism,
                                     const std::vector<double>& alphaGrid, MdpConfig cfg,
                                     double tol = 1e-4, const SolverOptions& opt = {}) {
    if (alphaGrid.empty()) throw std::invalid_argument("alpha grid must be nonempty");
    cfg.mechanism = mechanism;
    std::vector<CurvePoint> out;
    for (double a : alphaGrid) {
        cfg.alpha = a;
        SolveResult r;
        switch (metric) {
            case Metric::IncentiveCompatibility: r = optimal_relative_reward(cfg, tol, {}, opt); break;
            case Metric::SubversionGain: r = subversion_gain(cfg, tol, opt); break;
            case Metric::CensorshipSusceptibility: r = censorship_susceptibility(cfg, tol, opt); break;
        }
        out.push_back(CurvePoint{mechanism, metric, a, cfg.gammaNet, cfg.omega, cfg.forkWindow,
                                 r.value, r.totalSweeps});
    }
    return out;
}

}  // namespace prs::mdp
