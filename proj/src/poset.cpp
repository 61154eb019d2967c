#include "cobweb/poset.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "cobweb/errors.hpp"

namespace cobweb {

Layer::Layer(FSeq seq, std::size_t k, std::size_t n, std::vector<std::uint64_t> sizes, BigInt chains)
    : seq_(std::move(seq)), k_(k), n_(n), sizes_(std::move(sizes)), chain_count_(std::move(chains)) {}

std::vector<BigInt> Layer::prime_sizes() const { return seq_.terms(1, levels()); }

Layer build_layer(const FSeq& seq, std::size_t k, std::size_t n) {
    if (k < 1) throw PreconditionError("layer bottom level must be >= 1, got k=" + std::to_string(k));
    if (k > n)
        throw PreconditionError("layer needs k <= n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
    std::vector<std::uint64_t> sizes;
    BigInt chains = 1;
    for (std::size_t j = k; j <= n; ++j) {
        const BigInt t = seq.term(j);
        if (t == 0) throw PreconditionError("level " + std::to_string(j) + " of the layer has no vertices");
        if (t > std::numeric_limits<Slot>::max())
            throw PreconditionError("level " + std::to_string(j) + " has " + t.get_str() +
                                    " vertices, more than a slot index can address");
        sizes.push_back(t.get_ui());
        chains *= t;
    }
    return Layer(seq, k, n, std::move(sizes), std::move(chains));
}

std::vector<std::uint64_t> BlockPlacement::size_assignment() const {
    std::vector<std::uint64_t> out;
    out.reserve(subsets.size());
    for (const auto& s : subsets) out.push_back(s.size());
    return out;
}

std::uint64_t BlockPlacement::chain_count() const {
    std::uint64_t c = 1;
    for (const auto& s : subsets) c *= s.size();
    return c;
}

void Tiling::canonicalize() {
    for (auto& b : blocks)
        for (auto& s : b.subsets) std::sort(s.begin(), s.end());
    std::sort(blocks.begin(), blocks.end());
}

ChainIndex::ChainIndex(const std::vector<std::uint64_t>& sizes) : sizes_(sizes), strides_(sizes.size()) {
    for (std::size_t i = sizes.size(); i-- > 0;) {
        strides_[i] = total_;
        total_ *= sizes[i];
    }
}

std::uint64_t ChainIndex::rank(const MaxChain& chain) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) r += chain[i] * strides_[i];
    return r;
}

MaxChain ChainIndex::unrank(std::uint64_t rank) const {
    MaxChain chain(sizes_.size());
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        chain[i] = static_cast<Slot>(rank / strides_[i]);
        rank %= strides_[i];
    }
    return chain;
}

void ChainIndex::for_each_rank(const BlockPlacement& block, const std::function<void(std::uint64_t)>& fn) const {
    const std::size_t m = block.subsets.size();
    if (m == 0) return;
    for (const auto& s : block.subsets)
        if (s.empty()) return;
    std::vector<std::size_t> pos(m, 0);
    while (true) {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < m; ++i) r += block.subsets[i][pos[i]] * strides_[i];
        fn(r);
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (++pos[i] < block.subsets[i].size()) break;
            pos[i] = 0;
            if (i == 0) return;
        }
    }
}

std::uint64_t checked_chain_universe(const Layer& layer, const Caps& caps) {
    if (layer.chain_count() > caps.chains)
        throw ResourceError("cap-chains", caps.chains,
                            "layer <" + std::to_string(layer.k()) + ".." + std::to_string(layer.n()) + "> has " +
                                layer.chain_count().get_str() + " maximal chains");
    return layer.chain_count().get_ui();
}

void for_each_chain(const Layer& layer, const Caps& caps, const std::function<void(const MaxChain&)>& fn) {
    const std::uint64_t total = checked_chain_universe(layer, caps);
    const ChainIndex index(layer.sizes());
    for (std::uint64_t r = 0; r < total; ++r) fn(index.unrank(r));
}

std::vector<MaxChain> enumerate_chains(const Layer& layer, const Caps& caps) {
    std::vector<MaxChain> out;
    for_each_chain(layer, caps, [&](const MaxChain& c) { out.push_back(c); });
    return out;
}

namespace {

// Distinct level orders of the prime size multiset that fit the layer.
std::vector<std::vector<std::uint64_t>> fitting_assignments(const Layer& layer) {
    const auto& sizes = layer.sizes();
    const std::uint64_t widest = *std::max_element(sizes.begin(), sizes.end());
    std::vector<std::uint64_t> prime;
    for (const auto& p : layer.prime_sizes()) {
        if (p < 1 || p > widest) return {};
        prime.push_back(p.get_ui());
    }
    std::sort(prime.begin(), prime.end());
    std::vector<std::vector<std::uint64_t>> out;
    do {
        bool fits = true;
        for (std::size_t i = 0; i < prime.size() && fits; ++i) fits = prime[i] <= sizes[i];
        if (fits) out.push_back(prime);
    } while (std::next_permutation(prime.begin(), prime.end()));
    return out;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Lexicographic k-subsets of {0..n-1}; returns false after the last one.
bool next_combination(std::vector<Slot>& comb, std::uint64_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

BigInt count_placements(const Layer& layer) {
    BigInt total = 0;
    for (const auto& a : fitting_assignments(layer)) {
        BigInt c = 1;
        for (std::size_t i = 0; i < a.size(); ++i) c *= binomial(layer.sizes()[i], a[i]);
        total += c;
    }
    return total;
}

void for_each_placement(const Layer& layer, const Caps& caps,
                        const std::function<void(const BlockPlacement&)>& fn) {
    const BigInt total = count_placements(layer);
    if (total > caps.placements)
        throw ResourceError("cap-placements", caps.placements,
                            "layer <" + std::to_string(layer.k()) + ".." + std::to_string(layer.n()) + "> has " +
                                total.get_str() + " block placements");
    const auto& sizes = layer.sizes();
    const std::size_t m = sizes.size();
    for (const auto& a : fitting_assignments(layer)) {
        BlockPlacement block;
        block.subsets.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            block.subsets[i].resize(a[i]);
            for (std::size_t j = 0; j < a[i]; ++j) block.subsets[i][j] = static_cast<Slot>(j);
        }
        while (true) {
            fn(block);
            std::size_t i = m;
            bool advanced = false;
            while (i > 0) {
                --i;
                if (next_combination(block.subsets[i], sizes[i])) {
                    advanced = true;
                    break;
                }
                for (std::size_t j = 0; j < a[i]; ++j) block.subsets[i][j] = static_cast<Slot>(j);
            }
            if (!advanced) break;
        }
    }
}

std::vector<BlockPlacement> enumerate_placements(const Layer& layer, const Caps& caps) {
    std::vector<BlockPlacement> out;
    for_each_placement(layer, caps, [&](const BlockPlacement& b) { out.push_back(b); });
    return out;
}

namespace {

constexpr const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
                                    "#a65628", "#f781bf", "#999999", "#66c2a5", "#fc8d62"};

std::string vertex_id(std::size_t level, Slot slot) {
    return "v" + std::to_string(level) + "_" + std::to_string(slot);
}

}  // namespace

std::string to_dot(const Layer& layer, const std::optional<Tiling>& tiling) {
    std::ostringstream out;
    out << "digraph cobweb {\n";
    out << "  rankdir=BT;\n";
    out << "  label=\"" << layer.seq().label() << " <Phi_" << layer.k() << " -> Phi_" << layer.n() << ">\";\n";
    out << "  node [shape=circle, label=\"\", width=0.2];\n";
    const auto& sizes = layer.sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        out << "  { rank=same;\n";
        for (Slot s = 0; s < sizes[i]; ++s) out << "    " << vertex_id(layer.k() + i, s) << ";\n";
        out << "  }\n";
    }
    if (!tiling) {
        for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
            for (Slot a = 0; a < sizes[i]; ++a)
                for (Slot b = 0; b < sizes[i + 1]; ++b)
                    out << "  " << vertex_id(layer.k() + i, a) << " -> " << vertex_id(layer.k() + i + 1, b)
                        << ";\n";
    } else {
        constexpr std::size_t palette_size = sizeof(kPalette) / sizeof(kPalette[0]);
        for (std::size_t bi = 0; bi < tiling->blocks.size(); ++bi) {
            const auto& block = tiling->blocks[bi];
            const char* color = kPalette[bi % palette_size];
            out << "  // block " << bi << "\n";
            for (std::size_t i = 0; i + 1 < block.subsets.size(); ++i)
                for (Slot a : block.subsets[i])
                    for (Slot b : block.subsets[i + 1])
                        out << "  " << vertex_id(layer.k() + i, a) << " -> " << vertex_id(layer.k() + i + 1, b)
                            << " [color=\"" << color << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace cobweb
