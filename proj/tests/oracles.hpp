#pragma once

// Reference computations for the tests. They deliberately share no code with
// the library: native integers, brute force, bitsets.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (std::uint64_t i = 0; i <= n; ++i) {
        t[i][0] = 1;
        for (std::uint64_t j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j < i ? t[i - 1][j] : 0);
    }
    return t[n][k];
}

// F_1 = F_2 = 1.
inline std::uint64_t fib(std::size_t n) {
    std::uint64_t a = 0, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

inline std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

// Partitions of {0..eta-1} into blocks that all have size lam, by restricted
// growth strings.
inline std::uint64_t equal_block_partitions(unsigned eta, unsigned kappa, unsigned lam) {
    if (eta == 0) return kappa == 0 ? 1 : 0;
    std::uint64_t count = 0;
    std::vector<unsigned> sizes;
    std::function<void(unsigned)> go = [&](unsigned i) {
        if (i == eta) {
            if (sizes.size() != kappa) return;
            for (unsigned s : sizes)
                if (s != lam) return;
            ++count;
            return;
        }
        for (std::size_t b = 0; b < sizes.size(); ++b) {
            if (sizes[b] == lam) continue;
            ++sizes[b];
            go(i + 1);
            --sizes[b];
        }
        if (sizes.size() < kappa && lam > 0) {
            sizes.push_back(1);
            go(i + 1);
            sizes.pop_back();
        }
    };
    go(0);
    return count;
}

// p if n is a power of the prime p, else 1.
inline std::uint64_t prime_power_base(std::uint64_t n) {
    if (n < 2) return 1;
    std::uint64_t p = 2;
    while (n % p != 0) ++p;
    while (n % p == 0) n /= p;
    return n == 1 ? p : 1;
}

// Number of tilings of a layer with the given level sizes by blocks whose level
// sizes are a permutation of prime. Chains are ranked in mixed radix, level 0
// most significant. Fine for up to 1024 chains and levels of at most 16 slots.
class BruteTiler {
public:
    using Set = std::bitset<1024>;

    BruteTiler(std::vector<unsigned> sizes, std::vector<unsigned> prime) : sizes_(std::move(sizes)) {
        total_ = 1;
        for (unsigned s : sizes_) total_ *= s;
        std::sort(prime.begin(), prime.end());
        do {
            bool fits = true;
            for (std::size_t i = 0; i < prime.size(); ++i) fits = fits && prime[i] <= sizes_[i];
            if (fits) add_blocks(prime);
        } while (std::next_permutation(prime.begin(), prime.end()));
    }

    std::size_t block_count() const { return blocks_.size(); }

    std::uint64_t count() const {
        if (total_ > 1024) return 0;
        Set covered;
        return search(covered);
    }

private:
    void add_blocks(const std::vector<unsigned>& assignment) {
        std::vector<std::vector<unsigned>> masks(sizes_.size());
        for (std::size_t i = 0; i < sizes_.size(); ++i)
            for (unsigned m = 0; m < (1u << sizes_[i]); ++m)
                if (static_cast<unsigned>(__builtin_popcount(m)) == assignment[i]) masks[i].push_back(m);
        std::vector<unsigned> pick(sizes_.size());
        std::function<void(std::size_t)> go = [&](std::size_t lvl) {
            if (lvl == sizes_.size()) {
                Set s;
                mark(pick, 0, 0, s);
                blocks_.push_back(s);
                return;
            }
            for (unsigned m : masks[lvl]) {
                pick[lvl] = m;
                go(lvl + 1);
            }
        };
        go(0);
    }

    void mark(const std::vector<unsigned>& pick, std::size_t lvl, unsigned rank, Set& s) const {
        if (lvl == sizes_.size()) {
            s.set(rank);
            return;
        }
        for (unsigned slot = 0; slot < sizes_[lvl]; ++slot)
            if (pick[lvl] >> slot & 1u) mark(pick, lvl + 1, rank * sizes_[lvl] + slot, s);
    }

    std::uint64_t search(Set& covered) const {
        std::size_t first = 0;
        while (first < total_ && covered.test(first)) ++first;
        if (first == total_) return 1;
        std::uint64_t n = 0;
        for (const auto& b : blocks_) {
            if (!b.test(first) || (b & covered).any()) continue;
            covered |= b;
            n += search(covered);
            covered &= ~b;
        }
        return n;
    }

    std::vector<unsigned> sizes_;
    std::size_t total_ = 1;
    std::vector<Set> blocks_;
};

}  // namespace oracle
