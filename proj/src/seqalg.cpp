#include "cobweb/seqalg.hpp"

#include <numeric>

#include "cobweb/errors.hpp"

namespace cobweb {

FSeq build(SeqKind kind, const FamilyParams& p) {
    switch (kind) {
        case SeqKind::Natural: return FSeq::natural();
        case SeqKind::Fibonacci: return FSeq::fibonacci();
        case SeqKind::Constant: return FSeq::constant(p.t);
        case SeqKind::NonDiminishing: return FSeq::nondiminishing(p.c, p.M);
        case SeqKind::Periodic: return FSeq::periodic(p.c, p.M);
        case SeqKind::Geometric: return FSeq::geometric(p.alpha, p.c);
        case SeqKind::Rec2: return FSeq::rec2(p.f1, p.f2);
        default:
            throw PreconditionError("no family builder for kind " + to_string(kind));
    }
}

FSeq unit_sequence() { return FSeq::constant(1); }

FSeq shift(const FSeq& seq, std::size_t s) {
    if (s == 0) return seq;
    return FSeq::shifted(seq, s);
}

FSeq point_product(const FSeq& a, const FSeq& b) { return FSeq::product(a, b); }

BigInt h_natural(std::size_t n) {
    if (n < 1) throw PreconditionError("h_n is defined for n >= 1");
    std::size_t rest = n;
    for (std::size_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        return rest == 1 ? BigInt(static_cast<unsigned long>(p)) : BigInt(1);
    }
    return BigInt(static_cast<unsigned long>(rest));  // 1 for n == 1, n itself for primes
}

HReport h_general(const FSeq& seq, std::size_t N) {
    if (N < 1) throw PreconditionError("h-sequence needs N >= 1");
    HReport report{HSequence{seq, {}}, std::nullopt};
    for (std::size_t n = 1; n <= N; ++n) {
        const BigInt term = seq.term(n);
        if (term < 1)
            throw PreconditionError("h-sequence needs positive terms, term " + std::to_string(n) + " is " +
                                    term.get_str());
        BigInt l = 1;
        for (std::size_t d = 1; d < n; ++d)
            if (n % d == 0) l = lcm(l, seq.term(d));
        if (!mpz_divisible_p(term.get_mpz_t(), l.get_mpz_t())) {
            report.failure = HFailure{n, term, l};
            return report;
        }
        report.sequence.h.push_back(term / l);
    }
    return report;
}

FSeq reconstruct(const HSequence& h, std::size_t s) {
    if (s > h.h.size())
        throw PreconditionError("reconstruction index " + std::to_string(s) + " exceeds h length " +
                                std::to_string(h.h.size()));
    FSeq acc = s >= 1 ? FSeq::constant(h.h[0]) : unit_sequence();
    for (std::size_t j = 2; j <= s; ++j) {
        if (h.h[j - 1] == 1) continue;  // B_{1,j} is the unit sequence
        acc = point_product(acc, FSeq::periodic(h.h[j - 1], j));
    }
    return acc;
}

}  // namespace cobweb
