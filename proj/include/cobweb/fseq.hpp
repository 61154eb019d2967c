#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cobweb {

using BigInt = mpz_class;
using Rational = mpq_class;

enum class SeqKind {
    Explicit,
    Natural,
    Fibonacci,
    Constant,        // C_t
    NonDiminishing,  // A_{c,M}
    Periodic,        // B_{c,M}
    Geometric,       // alpha^{n-1} c^n
    Rec2,            // (k+2)_F = 2_F (k+1)_F + k_F
    Shift,
    Product,
};

std::string to_string(SeqKind kind);

// Nonnegative integer sequence F = {n_F}, indexed from 0, with term(0) == 1
// for every descriptor. Values are immutable once computed; the memo is
// shared between copies and safe to read from several threads.
class FSeq {
public:
    static FSeq natural();
    static FSeq fibonacci();
    static FSeq constant(const BigInt& t);
    static FSeq nondiminishing(const BigInt& c, std::size_t M);
    static FSeq periodic(const BigInt& c, std::size_t M);
    static FSeq geometric(const BigInt& alpha, const BigInt& c);
    static FSeq rec2(const BigInt& f1, const BigInt& f2);
    static FSeq shifted(const FSeq& inner, std::size_t s);
    static FSeq product(const FSeq& left, const FSeq& right);
    // terms[0] is the index-0 entry and must be 0 or 1 (it is read as 1).
    // Access past the last listed index throws std::out_of_range.
    static FSeq explicit_terms(std::vector<BigInt> terms);

    BigInt term(std::size_t n) const;
    std::vector<BigInt> terms(std::size_t first, std::size_t last) const;

    SeqKind kind() const;
    // Descriptor parameters; which ones are meaningful depends on kind().
    const BigInt& value_a() const;  // t, c, alpha, f1
    const BigInt& value_b() const;  // c (geometric), f2
    std::size_t index_param() const;  // M or s
    const std::vector<BigInt>& explicit_list() const;
    const FSeq& left() const;   // shift inner / product left
    const FSeq& right() const;  // product right

    // Last index with a defined term, or nullopt for infinite descriptors.
    std::optional<std::size_t> last_index() const;

    // Short human-readable label, e.g. "B_{2,3}" or "fibonacci".
    std::string label() const;

private:
    struct Node;
    explicit FSeq(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

BigInt f_factorial(const FSeq& seq, std::size_t n);
BigInt falling(const FSeq& seq, std::size_t n, std::size_t k);

struct FNomial {
    BigInt numerator;    // falling(n, k)
    BigInt denominator;  // f_factorial(k)
    Rational value;
    bool is_integer = false;
};

FNomial fnomial(const FSeq& seq, std::size_t n, std::size_t k);

struct AdmissibilityWitness {
    std::size_t n = 0;
    std::size_t k = 0;
    Rational value;               // meaningless when zero_denominator
    bool zero_denominator = false;
};

struct AdmissibilityReport {
    std::size_t checked_up_to = 0;
    std::optional<AdmissibilityWitness> witness;
    bool admissible() const { return !witness.has_value(); }
};

// Integrality of every F-nomial with 0 <= k <= n <= N, first failure in
// lexicographic (n, k) order.
AdmissibilityReport is_admissible_prefix(const FSeq& seq, std::size_t N);

struct IdentityWitness {
    std::size_t m = 0;
    std::size_t k = 0;
    BigInt lhs;  // (m+k)_F
    BigInt rhs;
};

struct IdentityReport {
    std::size_t checked_up_to = 0;
    std::optional<IdentityWitness> witness;
    bool holds() const { return !witness.has_value(); }
};

// (m+k)_F == m_F + k_F
bool identity_1_at(const FSeq& seq, std::size_t m, std::size_t k);
// (m+k)_F == (k+1)_F m_F + (m-1)_F k_F
bool identity_2_at(const FSeq& seq, std::size_t m, std::size_t k);

// Scans n = m + k from 2 (resp. 3) to N, m ascending; vacuous below that.
IdentityReport check_identity_1(const FSeq& seq, std::size_t N);
IdentityReport check_identity_2(const FSeq& seq, std::size_t N);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

}  // namespace cobweb
