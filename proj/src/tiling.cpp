#include "cobweb/tiling.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "cobweb/errors.hpp"
#include "cobweb/exact_cover.hpp"

namespace cobweb {

std::string to_string(Recurrence r) { return r == Recurrence::Natural ? "natural" : "fibonacci"; }

std::string to_string(Violation::Clause c) {
    switch (c) {
        case Violation::Clause::BadBlock: return "bad-block";
        case Violation::Clause::SharedChain: return "shared-chain";
        case Violation::Clause::UncoveredChain: return "uncovered-chain";
        case Violation::Clause::BlockCount: return "block-count";
    }
    return "?";
}

std::string to_string(CounterKind kind) {
    switch (kind) {
        case CounterKind::FNomial: return "fnomial";
        case CounterKind::SN: return "sn";
        case CounterKind::SF: return "sf";
        case CounterKind::StirlingBound: return "stirling";
    }
    return "?";
}

namespace {

BigInt binomial(const BigInt& n, unsigned long k) {
    BigInt r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

BigInt factorial(const BigInt& n) {
    if (!n.fits_ulong_p() || n > 1'000'000)
        throw PreconditionError("factorial argument " + n.get_str() + " is out of range");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n.get_ui());
    return r;
}

BigInt power(const BigInt& base, const BigInt& exp) {
    if (!exp.fits_ulong_p()) throw PreconditionError("exponent " + exp.get_str() + " is out of range");
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
    return r;
}

// Number of ways to cut a set of groups*size elements into `groups`
// unlabeled groups of `size`.
BigInt unordered_groupings(const BigInt& groups, const BigInt& size) {
    return factorial(groups * size) / (power(factorial(size), groups) * factorial(groups));
}

std::uint64_t small(const BigInt& v, const char* what) {
    if (v < 0 || v > std::numeric_limits<Slot>::max())
        throw PreconditionError(std::string(what) + " " + v.get_str() + " does not fit a slot index");
    return v.get_ui();
}

void require_identity(Recurrence rec, const FSeq& seq, std::size_t n) {
    const IdentityReport r = rec == Recurrence::Natural ? check_identity_1(seq, n) : check_identity_2(seq, n);
    if (r.holds()) return;
    const auto& w = *r.witness;
    throw PreconditionError(std::string(rec == Recurrence::Natural ? "identity n_F = m_F + k_F"
                                                                  : "identity n_F = (k+1)_F m_F + (m-1)_F k_F") +
                            " fails at m=" + std::to_string(w.m) + " k=" + std::to_string(w.k) + ": " +
                            w.lhs.get_str() + " != " + w.rhs.get_str());
}

// Blocks in window coordinates: one list of positions per level, bottom to
// top, positions local to that level.
using LocalBlock = std::vector<std::vector<Slot>>;
using LocalTiling = std::vector<LocalBlock>;

struct Split {
    std::uint64_t top = 0;
    std::uint64_t cap_size = 0;
    std::uint64_t cap_groups = 0;
    std::uint64_t move_size = 0;
    std::uint64_t move_groups = 0;
};

// Plain-data view of a window <Phi_lo -> Phi_hi> used by the recursion.
class Window {
public:
    Window(Recurrence rec, const FSeq& seq) : rec_(rec), seq_(seq) {}

    Recurrence recurrence() const { return rec_; }

    std::vector<std::uint64_t> sizes(std::size_t lo, std::size_t hi) const {
        std::vector<std::uint64_t> out;
        for (std::size_t j = lo; j <= hi; ++j) out.push_back(small(seq_.term(j), "level size"));
        return out;
    }

    bool single_chain_blocks(std::size_t m) const { return f_factorial(seq_, m) == 1; }

    std::uint64_t unit() const { return small(seq_.term(1), "1_F"); }

    Split split(std::size_t lo, std::size_t hi) const {
        const std::size_t m = hi - lo + 1;
        const std::size_t k = lo - 1;
        Split s;
        s.top = small(seq_.term(hi), "level size");
        s.cap_size = small(seq_.term(m), "m_F");
        s.move_size = small(seq_.term(k), "k_F");
        if (rec_ == Recurrence::Natural) {
            s.cap_groups = 1;
            s.move_groups = 1;
        } else {
            s.cap_groups = small(seq_.term(k + 1), "(k+1)_F");
            s.move_groups = small(seq_.term(m - 1), "(m-1)_F");
        }
        if (s.cap_groups * s.cap_size + s.move_groups * s.move_size != s.top)
            throw PreconditionError("level " + std::to_string(hi) + " of size " + std::to_string(s.top) +
                                    " does not split as " + std::to_string(s.cap_groups) + "*" +
                                    std::to_string(s.cap_size) + " + " + std::to_string(s.move_groups) + "*" +
                                    std::to_string(s.move_size));
        return s;
    }

    // Prime window: one block covering every level.
    LocalTiling prime(std::size_t lo, std::size_t hi) const {
        LocalBlock block;
        for (std::uint64_t size : sizes(lo, hi)) {
            std::vector<Slot> all(size);
            std::iota(all.begin(), all.end(), Slot{0});
            block.push_back(std::move(all));
        }
        return {block};
    }

    // One level cut into consecutive groups of 1_F.
    LocalTiling single_level(std::size_t level) const {
        const std::uint64_t size = small(seq_.term(level), "level size");
        const std::uint64_t unit_size = unit();
        if (unit_size == 0 || size % unit_size != 0)
            throw PreconditionError("level " + std::to_string(level) + " of size " + std::to_string(size) +
                                    " is not a multiple of 1_F = " + std::to_string(unit_size));
        LocalTiling out;
        for (std::uint64_t start = 0; start < size; start += unit_size) {
            std::vector<Slot> group(unit_size);
            std::iota(group.begin(), group.end(), static_cast<Slot>(start));
            out.push_back({group});
        }
        return out;
    }

private:
    Recurrence rec_;
    FSeq seq_;
};

void add_capped(const LocalTiling& lower, const std::vector<Slot>& group, LocalTiling& out) {
    for (const auto& b : lower) {
        LocalBlock nb = b;
        nb.push_back(group);
        out.push_back(std::move(nb));
    }
}

// `moved` tiles <Phi_{lo-1} -> Phi_{hi-1}> whose bottom level stands for the
// group; its bottom subsets become top-level subsets of the group.
void add_moved(const LocalTiling& moved, const std::vector<Slot>& group, LocalTiling& out) {
    for (const auto& b : moved) {
        LocalBlock nb(b.begin() + 1, b.end());
        std::vector<Slot> top;
        top.reserve(b.front().size());
        for (Slot p : b.front()) top.push_back(group[p]);
        std::sort(top.begin(), top.end());
        nb.push_back(std::move(top));
        out.push_back(std::move(nb));
    }
}

std::vector<std::vector<Slot>> cut_groups(const std::vector<Slot>& positions, std::size_t offset,
                                          std::uint64_t groups, std::uint64_t size) {
    std::vector<std::vector<Slot>> out;
    for (std::uint64_t g = 0; g < groups; ++g) {
        std::vector<Slot> group(positions.begin() + offset + g * size, positions.begin() + offset + (g + 1) * size);
        std::sort(group.begin(), group.end());
        out.push_back(std::move(group));
    }
    return out;
}

class SingleTiler {
public:
    SingleTiler(const Window& window, const CprtaPolicy& policy) : window_(window), policy_(policy), rng_(policy.seed) {}

    LocalTiling tile(std::size_t lo, std::size_t hi, Construction* stats = nullptr) {
        const bool memoize = policy_.mode == CprtaMode::DeterministicFirst;
        std::vector<std::uint64_t> key;
        if (memoize) {
            key = window_.sizes(lo, hi);
            if (auto it = memo_.find(key); it != memo_.end() && stats == nullptr) return it->second;
        }
        LocalTiling out;
        if (lo == 1) {
            out = window_.prime(lo, hi);
        } else if (lo == hi) {
            out = window_.single_level(lo);
        } else {
            const Split s = window_.split(lo, hi);
            std::vector<Slot> positions(s.top);
            std::iota(positions.begin(), positions.end(), Slot{0});
            if (policy_.mode == CprtaMode::SeededRandom) std::shuffle(positions.begin(), positions.end(), rng_);
            const auto capped = cut_groups(positions, 0, s.cap_groups, s.cap_size);
            const auto moved = cut_groups(positions, s.cap_groups * s.cap_size, s.move_groups, s.move_size);
            for (const auto& g : capped) add_capped(tile(lo, hi - 1), g, out);
            const std::size_t after_capped = out.size();
            for (const auto& g : moved) add_moved(tile(lo - 1, hi - 1), g, out);
            if (stats) {
                stats->capped_blocks = after_capped;
                stats->moved_blocks = out.size() - after_capped;
            }
        }
        if (memoize) memo_.emplace(std::move(key), out);
        return out;
    }

private:
    const Window& window_;
    CprtaPolicy policy_;
    std::mt19937_64 rng_;
    std::map<std::vector<std::uint64_t>, LocalTiling> memo_;
};

Tiling to_tiling(const Layer& layer, LocalTiling blocks) {
    Tiling t{layer, {}};
    t.blocks.reserve(blocks.size());
    for (auto& b : blocks) t.blocks.push_back(BlockPlacement{std::move(b)});
    t.canonicalize();
    return t;
}

// Lexicographic k-subsets of {0..n-1}.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Unordered partitions of `elems` into groups of `size`, each group holding
// the smallest element not yet placed.
void for_each_grouping(const std::vector<Slot>& elems, std::uint64_t size, std::vector<std::vector<Slot>>& acc,
                       const std::function<void(const std::vector<std::vector<Slot>>&)>& fn) {
    if (elems.empty()) {
        fn(acc);
        return;
    }
    const Slot first = elems.front();
    const std::vector<Slot> rest(elems.begin() + 1, elems.end());
    std::vector<std::size_t> comb(size - 1);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    do {
        std::vector<Slot> group{first};
        std::vector<Slot> remaining;
        std::size_t ci = 0;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (ci < comb.size() && comb[ci] == i) {
                group.push_back(rest[i]);
                ++ci;
            } else {
                remaining.push_back(rest[i]);
            }
        }
        acc.push_back(std::move(group));
        for_each_grouping(remaining, size, acc, fn);
        acc.pop_back();
    } while (size > 1 && next_combination(comb, rest.size()));
}

// Visits every typed split of {0..top-1}: a set of cap groups and a set of
// move groups, unordered within each type.
void for_each_split(const Split& s,
                    const std::function<void(const std::vector<std::vector<Slot>>&,
                                             const std::vector<std::vector<Slot>>&)>& fn) {
    const std::size_t cap_total = s.cap_groups * s.cap_size;
    std::vector<std::size_t> chosen(cap_total);
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    do {
        std::vector<Slot> cap_elems, move_elems;
        std::size_t ci = 0;
        for (std::size_t p = 0; p < s.top; ++p) {
            if (ci < chosen.size() && chosen[ci] == p) {
                cap_elems.push_back(static_cast<Slot>(p));
                ++ci;
            } else {
                move_elems.push_back(static_cast<Slot>(p));
            }
        }
        std::vector<std::vector<Slot>> cap_acc;
        for_each_grouping(cap_elems, s.cap_size, cap_acc, [&](const std::vector<std::vector<Slot>>& caps) {
            std::vector<std::vector<Slot>> move_acc;
            for_each_grouping(move_elems, s.move_size, move_acc,
                              [&](const std::vector<std::vector<Slot>>& moves) { fn(caps, moves); });
        });
    } while (cap_total > 0 && next_combination(chosen, s.top));
}

// Cartesian product of `slots` picks from `choices` options.
void for_each_tuple(std::size_t slots, std::size_t choices,
                    const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (choices == 0 && slots > 0) return;
    std::vector<std::size_t> idx(slots, 0);
    while (true) {
        fn(idx);
        std::size_t i = slots;
        while (i > 0) {
            --i;
            if (++idx[i] < choices) break;
            idx[i] = 0;
            if (i == 0) return;
        }
        if (slots == 0) return;
    }
}

class ChoiceEnumerator {
public:
    explicit ChoiceEnumerator(const Window& window) : window_(window) {}

    bool is_base(std::size_t lo, std::size_t hi) const {
        return lo == 1 || lo == hi || window_.single_chain_blocks(hi - lo + 1);
    }

    // Every leaf tiling of window (lo, hi). Memoized by window rather than
    // shape so the leaf multiset matches choice_tree_size exactly.
    const std::vector<LocalTiling>& all(std::size_t lo, std::size_t hi) {
        const auto key = std::make_pair(lo, hi);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<LocalTiling> out;
        visit(lo, hi, [&](LocalTiling t) { out.push_back(std::move(t)); });
        return memo_.emplace(key, std::move(out)).first->second;
    }

    void visit(std::size_t lo, std::size_t hi, const std::function<void(LocalTiling)>& fn) {
        if (is_base(lo, hi)) {
            CprtaPolicy first;
            SingleTiler tiler(window_, first);
            fn(tiler.tile(lo, hi));
            return;
        }
        const Split s = window_.split(lo, hi);
        const auto& capped_subs = all(lo, hi - 1);
        const auto& moved_subs = all(lo - 1, hi - 1);
        for_each_split(s, [&](const std::vector<std::vector<Slot>>& caps,
                              const std::vector<std::vector<Slot>>& moves) {
            for_each_tuple(caps.size(), capped_subs.size(), [&](const std::vector<std::size_t>& ci) {
                for_each_tuple(moves.size(), moved_subs.size(), [&](const std::vector<std::size_t>& mi) {
                    LocalTiling t;
                    for (std::size_t g = 0; g < caps.size(); ++g) add_capped(capped_subs[ci[g]], caps[g], t);
                    for (std::size_t g = 0; g < moves.size(); ++g) add_moved(moved_subs[mi[g]], moves[g], t);
                    fn(std::move(t));
                });
            });
        });
    }

private:
    const Window& window_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<LocalTiling>> memo_;
};

BigInt choice_leaves(const Window& window, const FSeq& seq, std::size_t lo, std::size_t hi,
                     std::map<std::pair<std::size_t, std::size_t>, BigInt>& memo) {
    if (lo == 1 || lo == hi || window.single_chain_blocks(hi - lo + 1)) return 1;
    if (auto it = memo.find({lo, hi}); it != memo.end()) return it->second;
    const Split s = window.split(lo, hi);
    const BigInt groupings = binomial(BigInt(static_cast<unsigned long>(s.top)), s.cap_groups * s.cap_size) *
                             unordered_groupings(BigInt(static_cast<unsigned long>(s.cap_groups)),
                                                 BigInt(static_cast<unsigned long>(s.cap_size))) *
                             unordered_groupings(BigInt(static_cast<unsigned long>(s.move_groups)),
                                                 BigInt(static_cast<unsigned long>(s.move_size)));
    const BigInt capped = choice_leaves(window, seq, lo, hi - 1, memo);
    const BigInt moved = choice_leaves(window, seq, lo - 1, hi - 1, memo);
    BigInt v = groupings * power(capped, BigInt(static_cast<unsigned long>(s.cap_groups))) *
               power(moved, BigInt(static_cast<unsigned long>(s.move_groups)));
    memo.emplace(std::make_pair(lo, hi), v);
    return v;
}

}  // namespace

Construction construct_tiling(Recurrence rec, const FSeq& seq, std::size_t k, std::size_t n,
                              const CprtaPolicy& policy, const Caps& caps) {
    if (policy.mode == CprtaMode::EnumerateAll)
        throw PreconditionError("enumerate-all-choices yields a stream; use for_each_choice");
    const Layer layer = build_layer(seq, k, n);
    checked_chain_universe(layer, caps);
    require_identity(rec, seq, n);
    const Window window(rec, seq);
    SingleTiler tiler(window, policy);
    Construction c{Tiling{layer, {}}, 0, 0};
    c.tiling = to_tiling(layer, tiler.tile(k, n, &c));
    return c;
}

Tiling cprta1_tile(const FSeq& seq, std::size_t k, std::size_t n, const CprtaPolicy& policy, const Caps& caps) {
    return construct_tiling(Recurrence::Natural, seq, k, n, policy, caps).tiling;
}

Tiling cprta1_fib_tile(const FSeq& seq, std::size_t k, std::size_t n, const CprtaPolicy& policy,
                       const Caps& caps) {
    return construct_tiling(Recurrence::Fibonacci, seq, k, n, policy, caps).tiling;
}

BigInt choice_tree_size(Recurrence rec, const FSeq& seq, std::size_t k, std::size_t n) {
    build_layer(seq, k, n);
    require_identity(rec, seq, n);
    const Window window(rec, seq);
    std::map<std::pair<std::size_t, std::size_t>, BigInt> memo;
    return choice_leaves(window, seq, k, n, memo);
}

void for_each_choice(Recurrence rec, const FSeq& seq, std::size_t k, std::size_t n, const Caps& caps,
                     const std::function<void(const Tiling&)>& fn) {
    const Layer layer = build_layer(seq, k, n);
    checked_chain_universe(layer, caps);
    const BigInt leaves = choice_tree_size(rec, seq, k, n);
    if (leaves > caps.placements)
        throw ResourceError("cap-placements", caps.placements,
                            "choice tree of <" + std::to_string(k) + ".." + std::to_string(n) + "> has " +
                                leaves.get_str() + " leaves");
    const Window window(rec, seq);
    ChoiceEnumerator enumerator(window);
    enumerator.visit(k, n, [&](LocalTiling t) { fn(to_tiling(layer, std::move(t))); });
}

VerifyReport verify_tiling(const Tiling& tiling, const Caps& caps) {
    const Layer& layer = tiling.layer;
    const std::size_t m = layer.levels();
    const auto& sizes = layer.sizes();
    VerifyReport report;

    std::vector<BigInt> prime = layer.prime_sizes();
    std::sort(prime.begin(), prime.end());

    for (std::size_t bi = 0; bi < tiling.blocks.size(); ++bi) {
        const auto& block = tiling.blocks[bi];
        auto bad = [&](const std::string& why) {
            report.violation = Violation{Violation::Clause::BadBlock, "block " + std::to_string(bi) + ": " + why,
                                         std::nullopt, bi, std::nullopt};
        };
        if (block.subsets.size() != m) {
            bad("has " + std::to_string(block.subsets.size()) + " levels, layer has " + std::to_string(m));
            return report;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const auto& s = block.subsets[i];
            if (s.empty()) {
                bad("empty subset on level " + std::to_string(layer.k() + i));
                return report;
            }
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (s[j] >= sizes[i] || (j > 0 && s[j] <= s[j - 1])) {
                    bad("subset on level " + std::to_string(layer.k() + i) +
                        " is not a sorted set of slots below " + std::to_string(sizes[i]));
                    return report;
                }
            }
        }
        std::vector<BigInt> got;
        for (auto sz : block.size_assignment()) got.emplace_back(static_cast<unsigned long>(sz));
        std::sort(got.begin(), got.end());
        if (got != prime) {
            std::string sizes_text;
            for (auto sz : block.size_assignment()) sizes_text += (sizes_text.empty() ? "" : ",") + std::to_string(sz);
            bad("level sizes (" + sizes_text + ") are not a permutation of 1_F..m_F");
            return report;
        }
    }

    const std::uint64_t total = checked_chain_universe(layer, caps);
    const ChainIndex index(sizes);
    constexpr std::uint32_t kFree = UINT32_MAX;
    std::vector<std::uint32_t> owner(total, kFree);
    for (std::size_t bi = 0; bi < tiling.blocks.size() && !report.violation; ++bi) {
        index.for_each_rank(tiling.blocks[bi], [&](std::uint64_t r) {
            if (report.violation) return;
            if (owner[r] != kFree) {
                report.violation = Violation{Violation::Clause::SharedChain,
                                             "blocks " + std::to_string(owner[r]) + " and " + std::to_string(bi) +
                                                 " share a maximal chain",
                                             index.unrank(r), owner[r], bi};
                return;
            }
            owner[r] = static_cast<std::uint32_t>(bi);
        });
    }
    if (report.violation) return report;

    for (std::uint64_t r = 0; r < total; ++r) {
        if (owner[r] == kFree) {
            report.violation =
                Violation{Violation::Clause::UncoveredChain, "a maximal chain is covered by no block",
                          index.unrank(r), std::nullopt, std::nullopt};
            return report;
        }
    }

    const FNomial expected = fnomial(layer.seq(), layer.n(), m);
    if (!expected.is_integer || expected.value != static_cast<unsigned long>(tiling.blocks.size())) {
        report.violation = Violation{Violation::Clause::BlockCount,
                                     std::to_string(tiling.blocks.size()) + " blocks, F-nomial is " +
                                         to_string(expected.value),
                                     std::nullopt, std::nullopt, std::nullopt};
    }
    return report;
}

EnumerationResult enumerate_tilings(const Layer& layer, const EnumerateOptions& options) {
    const std::uint64_t total = checked_chain_universe(layer, options.caps);
    const ChainIndex index(layer.sizes());
    std::vector<BlockPlacement> placements;
    std::vector<std::vector<std::uint32_t>> rows;
    for_each_placement(layer, options.caps, [&](const BlockPlacement& b) {
        std::vector<std::uint32_t> row;
        index.for_each_rank(b, [&](std::uint64_t r) { row.push_back(static_cast<std::uint32_t>(r)); });
        placements.push_back(b);
        rows.push_back(std::move(row));
    });

    const ExactCover problem(total, std::move(rows));
    ExactCover::Options eo;
    eo.workers = options.workers;
    eo.collect_limit = options.limit;
    eo.node_cap = options.caps.nodes;
    const ExactCover::Result r = problem.solve(eo);

    EnumerationResult out;
    out.count = r.count;
    out.nodes = r.nodes;
    out.truncated = r.truncated;
    for (const auto& sol : r.solutions) {
        Tiling t{layer, {}};
        for (std::size_t oi : sol) t.blocks.push_back(placements[oi]);
        t.canonicalize();
        out.tilings.push_back(std::move(t));
    }
    std::sort(out.tilings.begin(), out.tilings.end(),
              [](const Tiling& a, const Tiling& b) { return a.blocks < b.blocks; });
    return out;
}

namespace {

void require_cell(const FSeq& seq, std::size_t n, std::size_t k) {
    if (k < 1 || k > n)
        throw PreconditionError("counter needs 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    for (std::size_t j = 1; j <= n; ++j)
        if (seq.term(j) < 1) throw PreconditionError("term " + std::to_string(j) + " is zero");
}

using CellMemo = std::map<std::pair<std::size_t, std::size_t>, BigInt>;

BigInt sn_rec(const FSeq& seq, std::size_t n, std::size_t k, CellMemo& memo) {
    if (k == n || k == 1) return 1;
    if (auto it = memo.find({n, k}); it != memo.end()) return it->second;
    const std::size_t m = n - k + 1;
    const BigInt mf = seq.term(m);
    if (!mf.fits_ulong_p()) throw PreconditionError("m_F = " + mf.get_str() + " is out of range");
    BigInt v = binomial(seq.term(n), mf.get_ui()) * sn_rec(seq, n - 1, k, memo) * sn_rec(seq, n - 1, k - 1, memo);
    memo.emplace(std::make_pair(n, k), v);
    return v;
}

BigInt sf_printed_rec(const FSeq& seq, std::size_t n, std::size_t k, CellMemo& memo) {
    if (k == n || k + 1 == n || k == 1) return 1;
    if (auto it = memo.find({n, k}); it != memo.end()) return it->second;
    const std::size_t m = n - k + 1;
    const BigInt kappa = seq.term(k);
    const BigInt mu = seq.term(m - 1);
    const BigInt top = seq.term(n);
    const BigInt mf = seq.term(m);
    const BigInt kf = seq.term(k - 1);
    if (kappa * mf + mu * kf != top)
        throw PreconditionError("S_F cell (" + std::to_string(n) + "," + std::to_string(k) + "): kappa*m_F + mu*(k-1)_F = " +
                                BigInt(kappa * mf + mu * kf).get_str() + " != n_F = " + top.get_str());
    const BigInt num = factorial(top);
    const BigInt den = power(factorial(mf), kappa) * power(factorial(kf), mu);
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw PreconditionError("S_F cell (" + std::to_string(n) + "," + std::to_string(k) +
                                "): multinomial is not an integer");
    BigInt v = (num / den) * sf_printed_rec(seq, n - 1, k, memo) * sf_printed_rec(seq, n - 1, k - 1, memo);
    memo.emplace(std::make_pair(n, k), v);
    return v;
}

}  // namespace

BigInt count_sn(const FSeq& seq, std::size_t n, std::size_t k) {
    require_cell(seq, n, k);
    require_identity(Recurrence::Natural, seq, n);
    CellMemo memo;
    return sn_rec(seq, n, k, memo);
}

BigInt count_sf(const FSeq& seq, std::size_t n, std::size_t k, SfMode mode) {
    require_cell(seq, n, k);
    require_identity(Recurrence::Fibonacci, seq, n);
    if (mode == SfMode::Printed) {
        CellMemo memo;
        return sf_printed_rec(seq, n, k, memo);
    }
    return choice_tree_size(Recurrence::Fibonacci, seq, k, n);
}

BigInt stirling_lambda(const BigInt& eta, const BigInt& kappa, const BigInt& lam) {
    if (eta < 0 || kappa < 0 || lam < 0) throw PreconditionError("stirling_lambda arguments must be nonnegative");
    if (eta != kappa * lam) return 0;
    // eta = lam = 0: the formula gives 1/kappa!, an integer only for kappa <= 1.
    if (lam == 0) return kappa <= 1 ? 1 : 0;
    return factorial(eta) / (factorial(kappa) * power(factorial(lam), kappa));
}

UpperBound sn_upper_bound_check(const FSeq& seq, std::size_t n, std::size_t k) {
    UpperBound b;
    b.lhs = count_sn(seq, n, k);
    const std::size_t m = n - k + 1;
    b.lambda = f_factorial(seq, m);
    b.eta = falling(seq, n, m);
    const FNomial kappa = fnomial(seq, n, k - 1);
    if (!kappa.is_integer)
        throw PreconditionError("kappa = F-nomial(" + std::to_string(n) + "," + std::to_string(k - 1) +
                                ") = " + to_string(kappa.value) + " is not an integer");
    b.kappa = kappa.value.get_num();
    b.rhs = stirling_lambda(b.eta, b.kappa, b.lambda);
    b.holds = b.lhs <= b.rhs;
    return b;
}

bool Triangle::has_errors() const {
    for (const auto& row : rows)
        for (const auto& c : row)
            if (!c.value) return true;
    return false;
}

Triangle triangle(const FSeq& seq, CounterKind kind, std::size_t rows, const TriangleOptions& options) {
    if (rows > kMaxTriangleRows)
        throw ResourceError("rows", kMaxTriangleRows, "triangle with " + std::to_string(rows) + " rows requested");
    Triangle t;
    t.kind = kind;

    // Row n of an S_N / S_F table needs the identity on 1..n.
    std::size_t identity_ok_below = rows + 1;
    if (kind == CounterKind::SN || kind == CounterKind::SF) {
        const auto r = kind == CounterKind::SF ? check_identity_2(seq, rows) : check_identity_1(seq, rows);
        if (!r.holds()) identity_ok_below = r.witness->m + r.witness->k;
    }
    CellMemo memo;
    const Window fib_window(Recurrence::Fibonacci, seq);
    std::map<std::pair<std::size_t, std::size_t>, BigInt> leaves_memo;

    for (std::size_t n = 1; n <= rows; ++n) {
        std::vector<TriangleCell> row;
        const std::size_t first_k = kind == CounterKind::FNomial && options.include_k0 ? 0 : 1;
        for (std::size_t k = first_k; k <= n; ++k) {
            TriangleCell cell{n, k, std::nullopt, {}};
            try {
                if ((kind == CounterKind::SN || kind == CounterKind::SF) && n >= identity_ok_below)
                    throw PreconditionError("sequence fails the recurrence identity at n=" +
                                            std::to_string(identity_ok_below));
                switch (kind) {
                    case CounterKind::FNomial: {
                        const FNomial f = fnomial(seq, n, k);
                        if (!f.is_integer) throw PreconditionError("non-integer " + to_string(f.value));
                        cell.value = f.value.get_num();
                        break;
                    }
                    case CounterKind::SN:
                        require_cell(seq, n, k);
                        cell.value = sn_rec(seq, n, k, memo);
                        break;
                    case CounterKind::SF:
                        require_cell(seq, n, k);
                        cell.value = options.sf_mode == SfMode::Printed ? sf_printed_rec(seq, n, k, memo)
                                                                      : choice_leaves(fib_window, seq, k, n, leaves_memo);
                        break;
                    case CounterKind::StirlingBound: {
                        const std::size_t m = n - k + 1;
                        const FNomial kappa = fnomial(seq, n, k - 1);
                        if (!kappa.is_integer) throw PreconditionError("non-integer kappa " + to_string(kappa.value));
                        cell.value = stirling_lambda(falling(seq, n, m), kappa.value.get_num(), f_factorial(seq, m));
                        break;
                    }
                }
            } catch (const std::exception& e) {
                cell.value.reset();
                cell.error = e.what();
            }
            row.push_back(std::move(cell));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string render_csv(const Triangle& t) {
    std::ostringstream out;
    out << "n,k,value\n";
    for (const auto& row : t.rows)
        for (const auto& c : row) {
            out << c.n << "," << c.k << ",";
            if (c.value) {
                out << c.value->get_str();
            } else {
                std::string e = c.error;
                std::replace(e.begin(), e.end(), ',', ';');
                std::replace(e.begin(), e.end(), '\n', ' ');
                out << "ERR:" << e;
            }
            out << "\n";
        }
    return out.str();
}

std::string render_text(const Triangle& t) {
    std::size_t width = 1;
    std::size_t longest = 0;
    for (const auto& row : t.rows) {
        longest = std::max(longest, row.size());
        for (const auto& c : row) width = std::max(width, c.value ? c.value->get_str().size() : std::size_t{3});
    }
    std::ostringstream out;
    for (const auto& row : t.rows) {
        out << std::string((longest - row.size()) * (width + 1) / 2, ' ');
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << std::setw(static_cast<int>(width)) << (row[i].value ? row[i].value->get_str() : "ERR");
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace cobweb
