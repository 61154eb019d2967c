#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cobweb/fseq.hpp"
#include "cobweb/poset.hpp"

namespace cobweb {

// Which additive law the recursive tiler splits the top level by.
//   Natural:   n_F = m_F + k_F                         (one group of each)
//   Fibonacci: n_F = (k+1)_F m_F + (m-1)_F k_F         (kappa and mu groups)
enum class Recurrence { Natural, Fibonacci };

std::string to_string(Recurrence r);

enum class CprtaMode { DeterministicFirst, SeededRandom, EnumerateAll };

struct CprtaPolicy {
    CprtaMode mode = CprtaMode::DeterministicFirst;
    std::uint64_t seed = 0;
};

// A constructed tiling plus how its blocks split at the top level: blocks
// capped by a top-level group of m_F slots versus blocks whose top-level
// slots were moved below the layer.
struct Construction {
    Tiling tiling;
    std::uint64_t capped_blocks = 0;
    std::uint64_t moved_blocks = 0;
};

// Layer <Phi_k -> Phi_n> is tiled by sigma P_m blocks, m = n - k + 1. Throws
// PreconditionError when the sequence violates the recurrence's identity on
// 1..n (the message names the witness) and ResourceError when the layer's
// chain universe exceeds caps.chains. EnumerateAll is rejected here; use
// for_each_choice.
Construction construct_tiling(Recurrence rec, const FSeq& seq, std::size_t k, std::size_t n,
                              const CprtaPolicy& policy = {}, const Caps& caps = {});

Tiling cprta1_tile(const FSeq& seq, std::size_t k, std::size_t n, const CprtaPolicy& policy = {},
                   const Caps& caps = {});
Tiling cprta1_fib_tile(const FSeq& seq, std::size_t k, std::size_t n, const CprtaPolicy& policy = {},
                       const Caps& caps = {});

// Every leaf of the construction's choice tree, in canonical order. Natural:
// every choice of the m_F capped slots. Fibonacci: every unordered split of
// the top level into kappa groups of m_F and mu groups of k_F, each group
// with its own sub-tiling. Layers whose blocks are single chains have one
// leaf. Throws ResourceError when the leaf count exceeds caps.placements.
void for_each_choice(Recurrence rec, const FSeq& seq, std::size_t k, std::size_t n, const Caps& caps,
                     const std::function<void(const Tiling&)>& fn);

// Number of leaves of that choice tree, by formula.
BigInt choice_tree_size(Recurrence rec, const FSeq& seq, std::size_t k, std::size_t n);

struct Violation {
    enum class Clause { BadBlock, SharedChain, UncoveredChain, BlockCount };
    Clause clause;
    std::string message;
    std::optional<MaxChain> chain;
    std::optional<std::size_t> block;
    std::optional<std::size_t> other_block;
};

struct VerifyReport {
    std::optional<Violation> violation;
    bool valid() const { return !violation.has_value(); }
};

std::string to_string(Violation::Clause c);

VerifyReport verify_tiling(const Tiling& tiling, const Caps& caps = {});

struct EnumerateOptions {
    // Tilings to materialize; the count is exact regardless.
    std::size_t limit = 0;
    std::size_t workers = 1;
    Caps caps;
};

struct EnumerationResult {
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
    std::vector<Tiling> tilings;  // canonical order, at most limit
    bool truncated = false;
};

// All tilings of the layer by sigma P_m blocks, by exact cover of the chain
// universe with placement chain-sets. Identical for every worker count.
EnumerationResult enumerate_tilings(const Layer& layer, const EnumerateOptions& options = {});

// {n atop k}^1 for sequences obeying n_F = m_F + k_F.
BigInt count_sn(const FSeq& seq, std::size_t n, std::size_t k);

enum class SfMode { Printed, DerivedConsistent };

// Printed: the multinomial n_F! / ((m_F!)^kappa ((k-1)_F!)^mu) with
// kappa = k_F, mu = (m-1)_F, ordinary factorials of the integer values.
// DerivedConsistent: the leaf count of the Fibonacci construction's choice tree.
BigInt count_sf(const FSeq& seq, std::size_t n, std::size_t k, SfMode mode);

// Partitions of an eta-set into kappa unlabeled blocks of size lam.
BigInt stirling_lambda(const BigInt& eta, const BigInt& kappa, const BigInt& lam);

struct UpperBound {
    bool holds = false;
    BigInt lhs;  // count_sn
    BigInt rhs;  // stirling_lambda(eta, kappa, lambda)
    BigInt eta;
    BigInt kappa;
    BigInt lambda;
};

UpperBound sn_upper_bound_check(const FSeq& seq, std::size_t n, std::size_t k);

enum class CounterKind { FNomial, SN, SF, StirlingBound };

std::string to_string(CounterKind kind);

struct TriangleCell {
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<BigInt> value;
    std::string error;  // set when value is empty
};

struct TriangleOptions {
    bool include_k0 = false;  // F-nomial only
    SfMode sf_mode = SfMode::Printed;
};

struct Triangle {
    CounterKind kind = CounterKind::FNomial;
    std::vector<std::vector<TriangleCell>> rows;  // rows[i] is n = i + 1
    bool has_errors() const;
};

constexpr std::size_t kMaxTriangleRows = 500;

Triangle triangle(const FSeq& seq, CounterKind kind, std::size_t rows, const TriangleOptions& options = {});

// "n,k,value" with decimal values, ERR:<reason> in failed cells.
std::string render_csv(const Triangle& t);
std::string render_text(const Triangle& t);

}  // namespace cobweb
