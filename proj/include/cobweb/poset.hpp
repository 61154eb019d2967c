#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cobweb/fseq.hpp"

namespace cobweb {

// Upper bounds on materialized universes. Exceeding one is a ResourceError.
struct Caps {
    std::uint64_t chains = 100'000;
    std::uint64_t placements = 1'000'000;
    std::uint64_t nodes = 100'000'000;
};

using Slot = std::uint32_t;

struct Vertex {
    std::size_t level = 0;
    Slot slot = 0;
    auto operator<=>(const Vertex&) const = default;
};

// One slot per level, bottom to top.
using MaxChain = std::vector<Slot>;

// The finite sub-poset <Phi_k -> Phi_n>: levels k..n, level j holding j_F
// anonymous slots, consecutive levels completely joined.
class Layer {
public:
    const FSeq& seq() const { return seq_; }
    std::size_t k() const { return k_; }
    std::size_t n() const { return n_; }
    std::size_t levels() const { return sizes_.size(); }
    const std::vector<std::uint64_t>& sizes() const { return sizes_; }
    const BigInt& chain_count() const { return chain_count_; }

    // 1_F .. m_F for m = levels(): the level sizes of the prime poset P_m.
    std::vector<BigInt> prime_sizes() const;

private:
    friend Layer build_layer(const FSeq& seq, std::size_t k, std::size_t n);
    Layer(FSeq seq, std::size_t k, std::size_t n, std::vector<std::uint64_t> sizes, BigInt chains);

    FSeq seq_;
    std::size_t k_;
    std::size_t n_;
    std::vector<std::uint64_t> sizes_;
    BigInt chain_count_;
};

// Throws PreconditionError on k < 1, k > n, a zero-size level or a level too
// large to address with 32-bit slots.
Layer build_layer(const FSeq& seq, std::size_t k, std::size_t n);

// A copy of sigma P_m: one sorted slot subset per level. Two placements are the
// same block iff their subset families are equal.
struct BlockPlacement {
    std::vector<std::vector<Slot>> subsets;

    std::vector<std::uint64_t> size_assignment() const;
    std::uint64_t chain_count() const;
    auto operator<=>(const BlockPlacement&) const = default;
};

struct Tiling {
    Layer layer;
    std::vector<BlockPlacement> blocks;

    // Sorts blocks lexicographically; tilings with equal block sets compare equal afterwards.
    void canonicalize();
};

// Mixed-radix ranking of maximal chains; rank order is lexicographic order.
class ChainIndex {
public:
    explicit ChainIndex(const std::vector<std::uint64_t>& sizes);
    std::uint64_t rank(const MaxChain& chain) const;
    MaxChain unrank(std::uint64_t rank) const;
    std::uint64_t size() const { return total_; }

    // Visits the ranks of every chain in the Cartesian product of the subsets.
    void for_each_rank(const BlockPlacement& block, const std::function<void(std::uint64_t)>& fn) const;

private:
    std::vector<std::uint64_t> sizes_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t total_ = 1;
};

// chain_count as a native integer, or ResourceError when above caps.chains.
std::uint64_t checked_chain_universe(const Layer& layer, const Caps& caps);

void for_each_chain(const Layer& layer, const Caps& caps, const std::function<void(const MaxChain&)>& fn);
std::vector<MaxChain> enumerate_chains(const Layer& layer, const Caps& caps = {});

// Number of distinct placements, without materializing them.
BigInt count_placements(const Layer& layer);

// Size assignments in lexicographic order, then slot subsets in lexicographic
// order, level 0 outermost.
void for_each_placement(const Layer& layer, const Caps& caps,
                        const std::function<void(const BlockPlacement&)>& fn);
std::vector<BlockPlacement> enumerate_placements(const Layer& layer, const Caps& caps = {});

std::string to_dot(const Layer& layer, const std::optional<Tiling>& tiling = std::nullopt);

}  // namespace cobweb
