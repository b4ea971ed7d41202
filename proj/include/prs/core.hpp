// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Core data model: simulated random-oracle hashing, intrinsic work, and the
// unified work-object format shared by blocks, uncles and workshares.

namespace prs {

// ---------------------------------------------------------------------------
// Hashes and intrinsic work

struct HashValue {
    std::uint64_t value = 0;
    int kappa = 64;  // bit-width of the oracle output, value < 2^kappa

    friend bool operator==(const HashValue& a, const HashValue& b) {
        return a.value == b.value && a.kappa == b.kappa;
    }
};

// Number of leading zero bits of a hash: kappa - floor(log2(value)).
// Total on purpose: value 0 maps to the maximum work kappa.
inline int intrinsic_work(const HashValue& h) {
    if (h.value == 0) return h.kappa;
    return h.kappa - std::bit_width(h.value) + 1;
}

enum class WorkClass { None, WorkshareOnly, WorkshareAndBlock };

// ---------------------------------------------------------------------------
// Protocol parameters

struct ProtocolConfig {
    int kappaBits = 64;       // oracle output width
    int blockThreshold = 12;  // minimum work (strict >) for a block
    int shareThreshold = 6;   // minimum work (strict >) for a workshare
    int recencyWindow = 17;   // max height distance between a referenced block
                              // and the block that publishes the object
    int forkWindow = 6;       // max fork depth at which references stay valid
    int kappaSafety = 6;      // stable-prefix depth (ledger + deep reference)
    int partyCount = 2;
    double adversaryFraction = 0.0;
    int queriesPerRound = 8;
    int networkDelay = 1;
    double blockProb = 1.0 / 1024.0;  // per-query block success probability
    double shareProb = 1.0 / 16.0;    // per-query workshare success probability

    void validate() const {
        if (kappaBits < 1 || kappaBits > 64) throw std::invalid_argument("kappaBits must be in [1,64]");
        if (shareThreshold > blockThreshold)
            throw std::invalid_argument("shareThreshold must not exceed blockThreshold");
        if (blockThreshold < 0 || blockThreshold >= kappaBits)
            throw std::invalid_argument("blockThreshold out of range");
        if (recencyWindow < 1) throw std::invalid_argument("recencyWindow must be >= 1");
        if (forkWindow < 1) throw std::invalid_argument("forkWindow must be >= 1");
        if (kappaSafety < 1) throw std::invalid_argument("kappaSafety must be >= 1");
        if (partyCount < 1) throw std::invalid_argument("partyCount must be >= 1");
        if (adversaryFraction < 0.0 || adversaryFraction >= 1.0)
            throw std::invalid_argument("adversaryFraction must be in [0,1)");
        if (queriesPerRound < 1) throw std::invalid_argument("queriesPerRound must be >= 1");
        if (networkDelay < 1) throw std::invalid_argument("networkDelay must be >= 1");
        if (!(blockProb > 0.0) || blockProb > 1.0) throw std::invalid_argument("blockProb must be in (0,1]");
        if (!(shareProb > 0.0) || shareProb > 1.0) throw std::invalid_argument("shareProb must be in (0,1]");
        if (blockProb > shareProb) throw std::invalid_argument("blockProb must not exceed shareProb");
    }
};

inline WorkClass classify(int workBits, const ProtocolConfig& cfg) {
    if (workBits > cfg.blockThreshold) return WorkClass::WorkshareAndBlock;
    if (workBits > cfg.shareThreshold) return WorkClass::WorkshareOnly;
    return WorkClass::None;
}

// ---------------------------------------------------------------------------
// Work objects

struct Transaction {
    std::uint64_t payload = 0;  // opaque payload id; validity = uniqueness

    friend bool operator==(const Transaction& a, const Transaction& b) {
        return a.payload == b.payload;
    }
};

struct WorkObjectHeader {
    HashValue txDigest;
    HashValue shareDigest;
    std::uint64_t parentRef = 0;               // hash of the referenced block
    std::optional<std::uint64_t> stableRef;    // hash of the block kappaSafety deep
    std::uint64_t nonce = 0;
};

struct WorkObject;
using WorkObjectPtr = std::shared_ptr<const WorkObject>;

// A work object may act as a block, a workshare, and/or an uncle, depending on
// its intrinsic work and where it sits relative to a chain. Workshares carry
// only the header (their payload lists are dropped when the object is kept as
// a share).
struct WorkObject {
    WorkObjectHeader header;
    HashValue hash;
    std::vector<Transaction> txList;
    std::vector<WorkObjectPtr> shareList;
    std::int32_t minerId = -1;
    std::int64_t mintRound = 0;

    int workBits() const { return intrinsic_work(hash); }
};

// ---------------------------------------------------------------------------
// Deterministic mixing (simulation stand-in for a hash function)

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9ddfea08eb382d69ULL * b));
}

inline std::uint64_t mask_bits(std::uint64_t v, int bits) {
    if (bits >= 64) return v;
    return v & ((std::uint64_t{1} << bits) - 1);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Digest of ordered byte strings (realizes d(.)). Order sensitive; callers
// that need an order-insensitive digest canonicalize first (see
// digest_share_list).

inline HashValue digest(const std::vector<std::string_view>& items, int kappa = 64) {
    // Fixed sentinel for the empty list.
    std::uint64_t acc = 0x6c62272e07bb0142ULL;
    for (const auto& it : items) {
        acc = detail::mix2(acc, it.size());
        for (unsigned char c : it) acc = (acc ^ c) * 0x100000001b3ULL;
        acc = detail::splitmix64(acc);
    }
    return HashValue{detail::mask_bits(acc, kappa), kappa};
}

inline HashValue digest_tx_list(const std::vector<Transaction>& txs, int kappa = 64) {
    std::uint64_t acc = 0x8a2f3b5c9d1e0774ULL;
    for (const auto& tx : txs) acc = detail::mix2(acc, tx.payload);
    return HashValue{detail::mask_bits(acc, kappa), kappa};
}

// Share lists are digested order-insensitively: members sorted by hash first.
inline HashValue digest_share_list(const std::vector<WorkObjectPtr>& shares, int kappa = 64) {
    std::vector<std::uint64_t> hs;
    hs.reserve(shares.size());
    for (const auto& s : shares) hs.push_back(s->hash.value);
    std::sort(hs.begin(), hs.end());
    std::uint64_t acc = 0x51f0e9b7a3c86d25ULL;
    for (auto h : hs) acc = detail::mix2(acc, h);
    return HashValue{detail::mask_bits(acc, kappa), kappa};
}

inline HashValue digest_header(const WorkObjectHeader& h, int kappa = 64) {
    std::uint64_t acc = detail::mix2(h.txDigest.value, h.shareDigest.value);
    acc = detail::mix2(acc, h.parentRef);
    acc = detail::mix2(acc, h.stableRef.value_or(0x415a31ULL));
    acc = detail::mix2(acc, h.nonce);
    return HashValue{detail::mask_bits(acc, kappa), kappa};
}

// ---------------------------------------------------------------------------
// Random oracle. Counter-based PRF keyed by (seed, party, round, queryIndex)
// and mixed with the header digest, so replaying an execution reproduces
// every hash bit-exactly while distinct headers stay independent.

struct OracleQueryKey {
    std::uint64_t seed = 0;
    std::int32_t party = 0;
    std::int64_t round = 0;
    std::int32_t queryIndex = 0;
};

inline HashValue oracle_query(const OracleQueryKey& key, const WorkObjectHeader& header,
                              int kappa = 64) {
    std::uint64_t acc = detail::splitmix64(key.seed);
    acc = detail::mix2(acc, static_cast<std::uint64_t>(static_cast<std::uint32_t>(key.party)) + 1);
    acc = detail::mix2(acc, static_cast<std::uint64_t>(key.round) + 1);
    acc = detail::mix2(acc, static_cast<std::uint64_t>(static_cast<std::uint32_t>(key.queryIndex)) + 1);
    acc = detail::mix2(acc, digest_header(header, 64).value);
    return HashValue{detail::mask_bits(acc, kappa), kappa};
}

}  // namespace prs
