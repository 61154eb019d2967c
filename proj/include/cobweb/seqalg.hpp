#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cobweb/fseq.hpp"

namespace cobweb {

// Parameters for the family builders. Only the fields relevant to the
// requested kind are read.
struct FamilyParams {
    BigInt t = 1;
    BigInt c = 1;
    BigInt alpha = 1;
    BigInt f1 = 1;
    BigInt f2 = 1;
    std::size_t M = 1;
};

// Natural, Fibonacci, Constant, NonDiminishing, Periodic, Geometric, Rec2.
// Throws PreconditionError for other kinds or out-of-range parameters.
FSeq build(SeqKind kind, const FamilyParams& params);

FSeq unit_sequence();

// n_B = 1 for 1 <= n <= s, (n - s)_A for n > s. shift(A, 0) is A itself.
FSeq shift(const FSeq& seq, std::size_t s);

// n_C = n_A * n_B.
FSeq point_product(const FSeq& a, const FSeq& b);

// p when n = p^m (m >= 1), otherwise 1.
BigInt h_natural(std::size_t n);

// Per-index periodic factors: base agrees with prod_{j | n} h_j on 1..size.
struct HSequence {
    FSeq base;
    std::vector<BigInt> h;  // h[0] is h_1
};

struct HFailure {
    std::size_t n = 0;
    BigInt term;  // n_F
    BigInt lcm;   // lcm of d_F over proper divisors d of n; does not divide n_F
};

struct HReport {
    HSequence sequence;  // complete on success, prefix up to n-1 on failure
    std::optional<HFailure> failure;
    bool ok() const { return !failure.has_value(); }
};

// h_n = n_F / lcm{ d_F : d | n, d < n }, h_1 = 1_F.
HReport h_general(const FSeq& seq, std::size_t N);

// prod_{j=1..s} X_j with X_1 = C_{h_1} and X_j = B_{h_j, j}.
FSeq reconstruct(const HSequence& h, std::size_t s);

}  // namespace cobweb
