// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "prs/core.hpp"

// Validity predicates, the per-round mining loop, heaviest-chain selection and
// ledger extraction.

namespace prs {

// ---------------------------------------------------------------------------
// Chain: immutable, structurally shared list of blocks starting at genesis.

class Chain {
    struct Node {
        WorkObjectPtr block;
        std::shared_ptr<const Node> parent;
        std::int64_t height = 0;      // genesis at height 0
        std::uint64_t totalWork = 0;  // summed intrinsic work, genesis excluded
        std::uint64_t records = 0;    // blocks + shareList entries, cumulative

        ~Node() {
            // Unwind long parent chains iteratively; the default recursive
            // destruction overflows the stack on desk-scale chains.
            auto p = std::move(parent);
            while (p && p.use_count() == 1) {
                auto next = std::move(const_cast<Node&>(*p).parent);
                p.reset();
                p = std::move(next);
            }
        }
    };

    std::shared_ptr<const Node> tip_;

    explicit Chain(std::shared_ptr<const Node> tip) : tip_(std::move(tip)) {}

public:
    Chain() = default;

    static WorkObjectPtr genesis_block(int kappa = 64) {
        static const auto make = [](int k) {
            auto g = std::make_shared<WorkObject>();
            g->header.nonce = 0;
            g->hash = HashValue{detail::mask_bits(0x67656e65736973ULL, k), k};
            g->minerId = -1;
            g->mintRound = 0;
            return WorkObjectPtr(g);
        };
        return make(kappa);
    }

    static Chain genesis(int kappa = 64) {
        auto node = std::make_shared<Node>();
        node->block = genesis_block(kappa);
        node->height = 0;
        node->totalWork = 0;
        node->records = 0;
        return Chain(std::move(node));
    }

    bool empty() const { return tip_ == nullptr; }
    const WorkObject& tip() const { return *tip_->block; }
    WorkObjectPtr tip_ptr() const { return tip_->block; }
    std::int64_t tip_height() const { return tip_->height; }
    std::uint64_t total_work() const { return tip_->totalWork; }
    std::uint64_t record_count() const { return tip_->records; }

    Chain extend(WorkObjectPtr block) const {
        auto node = std::make_shared<Node>();
        node->height = tip_->height + 1;
        node->totalWork = tip_->totalWork + static_cast<std::uint64_t>(block->workBits());
        node->records = tip_->records + 1 + block->shareList.size();
        node->block = std::move(block);
        node->parent = tip_;
        return Chain(std::move(node));
    }

    // Walks from the tip; O(tip_height - h).
    WorkObjectPtr at(std::int64_t h) const {
        const Node* n = tip_.get();
        while (n && n->height > h) n = n->parent.get();
        if (!n || n->height != h) return nullptr;
        return n->block;
    }

    // Applies fn to every block from genesis to tip.
    void for_each(const std::function<void(std::int64_t, const WorkObjectPtr&)>& fn) const {
        std::vector<const Node*> stack;
        for (const Node* n = tip_.get(); n; n = n->parent.get()) stack.push_back(n);
        for (auto it = stack.rbegin(); it != stack.rend(); ++it)
            fn((*it)->height, (*it)->block);
    }

    bool same_tip(const Chain& other) const { return tip_ == other.tip_; }

    // Height of the deepest block shared with `other`.
    std::int64_t common_height(const Chain& other) const {
        const Node* a = tip_.get();
        const Node* b = other.tip_.get();
        while (a->height > b->height) a = a->parent.get();
        while (b->height > a->height) b = b->parent.get();
        while (a != b) {
            a = a->parent.get();
            b = b->parent.get();
        }
        return a->height;
    }
};

// ---------------------------------------------------------------------------
// Chain index: O(1) resolution of hashes to canonical blocks and published
// share-list entries, plus the transaction id set. Maintained incrementally
// by the harness; rebuildable from scratch for standalone validation.

enum class EntryKind { CanonicalBlock, PublishedUncle, PublishedWorkshare };

struct IndexEntry {
    WorkObjectPtr object;
    EntryKind kind;
    std::int64_t height = 0;            // canonical height, or parent height + 1
    std::int64_t containingHeight = 0;  // for published entries
    int forkDepth = 0;                  // 0 for canonical blocks
};

class ChainIndex {
    std::unordered_map<std::uint64_t, IndexEntry> byHash_;
    std::unordered_set<std::uint64_t> txIds_;
    Chain chain_;

    void add_block(std::int64_t height, const WorkObjectPtr& b, const ProtocolConfig& cfg) {
        byHash_[b->hash.value] = IndexEntry{b, EntryKind::CanonicalBlock, height, height, 0};
        for (const auto& tx : b->txList) txIds_.insert(tx.payload);
        for (const auto& s : b->shareList) {
            const bool blockGrade = s->workBits() > cfg.blockThreshold;
            auto parent = byHash_.find(s->header.parentRef);
            std::int64_t objHeight =
                parent == byHash_.end() ? height : parent->second.height + 1;
            int depth = 0;
            if (blockGrade && parent != byHash_.end())
                depth = parent->second.kind == EntryKind::CanonicalBlock
                            ? 1
                            : parent->second.forkDepth + 1;
            byHash_[s->hash.value] = IndexEntry{
                s, blockGrade ? EntryKind::PublishedUncle : EntryKind::PublishedWorkshare,
                objHeight, height, depth};
        }
    }

    void remove_block(const WorkObjectPtr& b) {
        for (const auto& tx : b->txList) txIds_.erase(tx.payload);
        for (const auto& s : b->shareList) byHash_.erase(s->hash.value);
        byHash_.erase(b->hash.value);
    }

public:
    ChainIndex() = default;

    static ChainIndex build(const Chain& chain, const ProtocolConfig& cfg) {
        ChainIndex idx;
        idx.chain_ = chain;
        chain.for_each([&](std::int64_t h, const WorkObjectPtr& b) { idx.add_block(h, b, cfg); });
        return idx;
    }

    // Re-points the index at `next`, removing the abandoned suffix and adding
    // the new one. Cheap when the chains share most of their structure.
    void advance_to(const Chain& next, const ProtocolConfig& cfg) {
        if (chain_.empty()) {
            *this = build(next, cfg);
            return;
        }
        if (next.same_tip(chain_)) return;
        const std::int64_t common = chain_.common_height(next);
        for (std::int64_t h = chain_.tip_height(); h > common; --h) remove_block(chain_.at(h));
        std::vector<std::pair<std::int64_t, WorkObjectPtr>> added;
        {
            Chain walk = next;
            // Collect next's blocks above `common` (tip first), then add in order.
            const auto tipH = next.tip_height();
            for (std::int64_t h = common + 1; h <= tipH; ++h) added.emplace_back(h, next.at(h));
        }
        for (auto& [h, b] : added) add_block(h, b, cfg);
        chain_ = next;
    }

    const Chain& chain() const { return chain_; }
    bool contains(std::uint64_t hash) const { return byHash_.count(hash) > 0; }
    const IndexEntry* find(std::uint64_t hash) const {
        auto it = byHash_.find(hash);
        return it == byHash_.end() ? nullptr : &it->second;
    }
    bool contains_tx(std::uint64_t payload) const { return txIds_.count(payload) > 0; }
};

// ---------------------------------------------------------------------------
// Validity predicates. Each failed rule is reported as a distinct violation.

enum class Violation {
    BadTxDigest,
    BadShareDigest,
    DanglingRef,
    InsufficientWork,
    DuplicateObject,
    Stale,
    ForkTooDeep,
    AlreadyCanonical,
    InvalidTx,
    InvalidShare,
};

inline const char* to_string(Violation v) {
    switch (v) {
        case Violation::BadTxDigest: return "BAD_TX_DIGEST";
        case Violation::BadShareDigest: return "BAD_SHARE_DIGEST";
        case Violation::DanglingRef: return "DANGLING_REF";
        case Violation::InsufficientWork: return "INSUFFICIENT_WORK";
        case Violation::DuplicateObject: return "DUPLICATE_OBJECT";
        case Violation::Stale: return "STALE";
        case Violation::ForkTooDeep: return "FORK_TOO_DEEP";
        case Violation::AlreadyCanonical: return "ALREADY_CANONICAL";
        case Violation::InvalidTx: return "INVALID_TX";
        case Violation::InvalidShare: return "INVALID_SHARE";
    }
    return "UNKNOWN";
}

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(Violation v) const {
        return std::find(violations.begin(), violations.end(), v) != violations.end();
    }
};

// Uncle validity w.r.t. the chain described by `idx`, as if included in the
// shareList of the block at `containingHeight`.
inline ValidationResult validate_uncle(const WorkObject& u, const ChainIndex& idx,
                                       std::int64_t containingHeight, const ProtocolConfig& cfg) {
    ValidationResult r;
    if (u.workBits() <= cfg.blockThreshold) r.violations.push_back(Violation::InsufficientWork);

    const IndexEntry* self = idx.find(u.hash.value);
    if (self) {
        if (self->kind == EntryKind::CanonicalBlock)
            r.violations.push_back(Violation::AlreadyCanonical);
        else if (self->containingHeight != containingHeight)
            r.violations.push_back(Violation::DuplicateObject);
    }

    // Walk the ancestry until it lands on a canonical block; the number of
    // hops is the fork depth and must stay within the fork window.
    const IndexEntry* parent = idx.find(u.header.parentRef);
    if (!parent) {
        r.violations.push_back(Violation::DanglingRef);
        return r;
    }
    std::int64_t height = parent->height + 1;
    int depth = 1;
    const IndexEntry* hop = parent;
    while (hop->kind != EntryKind::CanonicalBlock) {
        if (hop->kind == EntryKind::PublishedWorkshare) {
            r.violations.push_back(Violation::DanglingRef);
            return r;
        }
        hop = idx.find(hop->object->header.parentRef);
        if (!hop) {
            r.violations.push_back(Violation::DanglingRef);
            return r;
        }
        ++depth;
        if (depth > cfg.forkWindow) break;
    }
    if (depth > cfg.forkWindow) r.violations.push_back(Violation::ForkTooDeep);

    // Recency: the referenced tip height must lie within the window.
    const std::int64_t refHeight = height - 1;
    if (refHeight < containingHeight - cfg.recencyWindow || refHeight > containingHeight - 1)
        r.violations.push_back(Violation::Stale);
    return r;
}

// Workshare validity: the reference must resolve to a valid block or
// published uncle within the recency window.
inline ValidationResult validate_workshare(const WorkObject& ws, const ChainIndex& idx,
                                           std::int64_t containingHeight,
                                           const ProtocolConfig& cfg) {
    ValidationResult r;
    if (ws.workBits() <= cfg.shareThreshold) r.violations.push_back(Violation::InsufficientWork);

    const IndexEntry* self = idx.find(ws.hash.value);
    if (self && self->containingHeight != containingHeight)
        r.violations.push_back(Violation::DuplicateObject);

    const IndexEntry* ref = idx.find(ws.header.parentRef);
    if (!ref) {
        r.violations.push_back(Violation::DanglingRef);
        return r;
    }
    if (ref->kind == EntryKind::PublishedWorkshare) {
        r.violations.push_back(Violation::DanglingRef);
        return r;
    }
    const std::int64_t refHeight = ref->height;
    if (refHeight < containingHeight - cfg.recencyWindow || refHeight > containingHeight - 1)
        r.violations.push_back(Violation::Stale);
    return r;
}

// Block validity w.r.t. the prefix ending at its parent. `idx` must describe
// the chain the block extends.
inline ValidationResult validate_block(const WorkObject& b, const ChainIndex& idx,
                                       const ProtocolConfig& cfg) {
    ValidationResult r;
    if (b.workBits() <= cfg.blockThreshold) r.violations.push_back(Violation::InsufficientWork);
    if (!(digest_tx_list(b.txList, cfg.kappaBits) == b.header.txDigest))
        r.violations.push_back(Violation::BadTxDigest);
    if (!(digest_share_list(b.shareList, cfg.kappaBits) == b.header.shareDigest))
        r.violations.push_back(Violation::BadShareDigest);

    const IndexEntry* parent = idx.find(b.header.parentRef);
    if (!parent || parent->kind != EntryKind::CanonicalBlock) {
        r.violations.push_back(Violation::DanglingRef);
        return r;
    }
    const std::int64_t height = parent->height + 1;

    if (idx.contains(b.hash.value)) r.violations.push_back(Violation::DuplicateObject);

    // Transaction validity: payload ids unique within the block and w.r.t.
    // the chain.
    std::unordered_set<std::uint64_t> seen;
    for (const auto& tx : b.txList) {
        if (idx.contains_tx(tx.payload) || !seen.insert(tx.payload).second) {
            r.violations.push_back(Violation::InvalidTx);
            break;
        }
    }

    // Every shareList entry must be a valid workshare or uncle, and no work
    // object may appear in the chain twice.
    std::unordered_set<std::uint64_t> inBlock;
    for (const auto& s : b.shareList) {
        if (idx.contains(s->hash.value) || !inBlock.insert(s->hash.value).second) {
            r.violations.push_back(Violation::DuplicateObject);
            break;
        }
    }
    for (const auto& s : b.shareList) {
        const bool blockGrade = s->workBits() > cfg.blockThreshold;
        ValidationResult sub = blockGrade ? validate_uncle(*s, idx, height, cfg)
                                          : validate_workshare(*s, idx, height, cfg);
        if (!sub.ok()) {
            r.violations.push_back(Violation::InvalidShare);
            break;
        }
    }
    return r;
}

// Full-chain validation: genesis anchor plus per-block validity over growing
// prefixes. Quadratic in chain length; the harness caches verdicts per block.
inline bool validate_chain(const Chain& chain, const ProtocolConfig& cfg) {
    Chain prefix = Chain::genesis(cfg.kappaBits);
    if (!(chain.at(0) && chain.at(0)->hash == prefix.tip().hash)) return false;
    ChainIndex idx = ChainIndex::build(prefix, cfg);
    const std::int64_t tipH = chain.tip_height();
    for (std::int64_t h = 1; h <= tipH; ++h) {
        WorkObjectPtr b = chain.at(h);
        if (!b) return false;
        if (b->header.parentRef != prefix.tip().hash.value) return false;
        if (!validate_block(*b, idx, cfg).ok()) return false;
        prefix = prefix.extend(b);
        idx.advance_to(prefix, cfg);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Heaviest-chain selection. Candidates that fail validation are skipped; ties
// keep the earlier candidate, so callers list the local chain first.

inline Chain maxvalid(const std::vector<Chain>& candidates, const ProtocolConfig& cfg,
                      const std::function<bool(const Chain&)>& validator = {}) {
    const Chain* best = nullptr;
    for (const auto& c : candidates) {
        if (c.empty()) continue;
        const bool valid = validator ? validator(c) : validate_chain(c, cfg);
        if (!valid) continue;
        if (!best || c.total_work() > best->total_work()) best = &c;
    }
    assert(best != nullptr && "candidate set must contain a valid chain");
    return *best;
}

// ---------------------------------------------------------------------------
// Mempool sanitization: keeps exactly the objects that would validate if
// published in the next block. Drops, never fails.

struct SanitizedInput {
    std::vector<Transaction> txList;
    std::vector<WorkObjectPtr> shareList;
};

inline SanitizedInput sanitize(const std::vector<Transaction>& mempoolTx,
                               const std::vector<WorkObjectPtr>& mempoolShares,
                               const ChainIndex& idx, const ProtocolConfig& cfg) {
    SanitizedInput out;
    const std::int64_t nextHeight = idx.chain().tip_height() + 1;
    std::unordered_set<std::uint64_t> seenTx;
    for (const auto& tx : mempoolTx) {
        if (idx.contains_tx(tx.payload)) continue;
        if (!seenTx.insert(tx.payload).second) continue;
        out.txList.push_back(tx);
    }
    std::unordered_set<std::uint64_t> seenShares;
    for (const auto& s : mempoolShares) {
        if (idx.contains(s->hash.value)) continue;  // already published or canonical
        if (!seenShares.insert(s->hash.value).second) continue;
        const bool blockGrade = s->workBits() > cfg.blockThreshold;
        ValidationResult v = blockGrade ? validate_uncle(*s, idx, nextHeight, cfg)
                                        : validate_workshare(*s, idx, nextHeight, cfg);
        if (v.ok()) out.shareList.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Per-round mining loop.

struct PartyState {
    Chain chain;
    ChainIndex index;
    std::vector<Transaction> mempoolTx;
    std::vector<WorkObjectPtr> mempoolShares;
    std::int64_t round = 0;
};

struct Inbox {
    std::vector<Chain> chains;
    std::vector<WorkObjectPtr> objects;
};

struct Outbox {
    Chain chain;
    std::vector<WorkObjectPtr> newShares;
    std::vector<WorkObjectPtr> newBlocks;
};

// Result of one oracle query; the draw function lets the harness substitute a
// thinned sampler for the plain uniform oracle.
using OracleDraw = std::function<HashValue(const WorkObjectHeader&, int queryIndex)>;

inline OracleDraw uniform_oracle_draw(std::uint64_t seed, std::int32_t party, std::int64_t round,
                                      int kappa) {
    return [=](const WorkObjectHeader& h, int qi) {
        return oracle_query(OracleQueryKey{seed, party, round, qi}, h, kappa);
    };
}

// Runs one activation: adopt the heaviest valid chain, then exhaust all q
// queries. Every workshare-grade hit enters the working share list at once,
// so a share minted this round can ride a block minted the same round; every
// block-grade hit extends the local chain and mining continues on the new tip.
inline Outbox execute_round(PartyState& st, const Inbox& inbox, const OracleDraw& draw,
                            const ProtocolConfig& cfg, std::int32_t minerId,
                            const std::function<bool(const Chain&)>& validator = {},
                            const SanitizedInput* presanitized = nullptr) {
    std::vector<Chain> candidates;
    candidates.push_back(st.chain);
    for (const auto& c : inbox.chains) candidates.push_back(c);
    Chain adopted = maxvalid(candidates, cfg, validator);
    if (!adopted.same_tip(st.chain)) {
        st.chain = adopted;
    }
    st.index.advance_to(st.chain, cfg);
    for (const auto& o : inbox.objects) st.mempoolShares.push_back(o);

    SanitizedInput input =
        presanitized ? *presanitized : sanitize(st.mempoolTx, st.mempoolShares, st.index, cfg);

    Outbox out;
    std::vector<Transaction> txList = input.txList;
    std::vector<WorkObjectPtr> shareList = input.shareList;
    HashValue txDigest = digest_tx_list(txList, cfg.kappaBits);
    HashValue shareDigest = digest_share_list(shareList, cfg.kappaBits);
    std::uint64_t nonce = detail::mix2(st.chain.tip().hash.value, static_cast<std::uint64_t>(st.round));

    int queries = 0;
    for (int qi = 0; qi < cfg.queriesPerRound; ++qi, ++queries) {
        WorkObjectHeader header;
        header.txDigest = txDigest;
        header.shareDigest = shareDigest;
        header.parentRef = st.chain.tip().hash.value;
        if (st.chain.tip_height() >= cfg.kappaSafety)
            header.stableRef = st.chain.at(st.chain.tip_height() - cfg.kappaSafety)->hash.value;
        header.nonce = nonce++;

        HashValue h = draw(header, qi);
        const WorkClass cls = classify(intrinsic_work(h), cfg);
        if (cls == WorkClass::None) continue;

        if (cls == WorkClass::WorkshareAndBlock) {
            auto block = std::make_shared<WorkObject>();
            block->header = header;
            block->hash = h;
            block->txList = txList;
            block->shareList = shareList;
            block->minerId = minerId;
            block->mintRound = st.round;
            st.chain = st.chain.extend(block);
            st.index.advance_to(st.chain, cfg);
            out.newBlocks.push_back(block);

            // Mining continues on the fresh tip: re-sanitize so published
            // objects drop out of the working lists.
            SanitizedInput re = sanitize(st.mempoolTx, st.mempoolShares, st.index, cfg);
            txList = re.txList;
            shareList = re.shareList;
        } else {
            auto share = std::make_shared<WorkObject>();
            share->header = header;
            share->hash = h;
            share->minerId = minerId;
            share->mintRound = st.round;
            shareList.push_back(share);
            st.mempoolShares.push_back(share);
            out.newShares.push_back(share);
        }
        txDigest = digest_tx_list(txList, cfg.kappaBits);
        shareDigest = digest_share_list(shareList, cfg.kappaBits);
    }
    assert(queries == cfg.queriesPerRound);

    out.chain = st.chain;
    st.round += 1;
    return out;
}

// ---------------------------------------------------------------------------
// Ledger extraction: transactions of the stable prefix in block order, then
// intra-block order. Returns an empty ledger when nothing is stable yet.

inline std::vector<Transaction> extract_ledger(const Chain& chain, int kappaSafety) {
    std::vector<Transaction> ledger;
    const std::int64_t stableTip = chain.tip_height() - kappaSafety;
    if (stableTip < 0) return ledger;
    chain.for_each([&](std::int64_t h, const WorkObjectPtr& b) {
        if (h > stableTip) return;
        for (const auto& tx : b->txList) ledger.push_back(tx);
    });
    return ledger;
}

}  // namespace prs
