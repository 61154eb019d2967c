#include "cobweb/fseq.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "cobweb/errors.hpp"

namespace cobweb {

std::string to_string(SeqKind kind) {
    switch (kind) {
        case SeqKind::Explicit: return "explicit";
        case SeqKind::Natural: return "natural";
        case SeqKind::Fibonacci: return "fibonacci";
        case SeqKind::Constant: return "constant";
        case SeqKind::NonDiminishing: return "nondiminishing";
        case SeqKind::Periodic: return "periodic";
        case SeqKind::Geometric: return "geometric";
        case SeqKind::Rec2: return "rec2";
        case SeqKind::Shift: return "shift";
        case SeqKind::Product: return "product";
    }
    return "?";
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
    Rational c = v;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

struct FSeq::Node {
    SeqKind kind = SeqKind::Natural;
    BigInt a;
    BigInt b;
    std::size_t idx = 0;
    std::vector<BigInt> list;
    std::vector<FSeq> children;

    mutable std::shared_mutex mu;
    mutable std::unordered_map<std::size_t, BigInt> memo;

    BigInt compute(std::size_t n) const;
    BigInt rec2_forward(std::size_t n) const;
};

BigInt FSeq::Node::rec2_forward(std::size_t n) const {
    // Fills the memo for 1..n on the way; the caller still inserts n itself.
    BigInt prev = a, cur = b;
    if (n == 1) return prev;
    if (n == 2) return cur;
    std::vector<std::pair<std::size_t, BigInt>> fresh;
    fresh.reserve(n);
    for (std::size_t i = 3; i <= n; ++i) {
        BigInt next = b * cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
        fresh.emplace_back(i, cur);
    }
    std::unique_lock lock(mu);
    for (auto& [i, v] : fresh) memo.try_emplace(i, std::move(v));
    return memo.at(n);
}

BigInt FSeq::Node::compute(std::size_t n) const {
    switch (kind) {
        case SeqKind::Natural:
            return BigInt(static_cast<unsigned long>(n));
        case SeqKind::Fibonacci:
        case SeqKind::Rec2:
            return rec2_forward(n);
        case SeqKind::Constant:
            return a;
        case SeqKind::NonDiminishing:
            return n >= idx ? a : BigInt(1);
        case SeqKind::Periodic:
            return n % idx == 0 ? a : BigInt(1);
        case SeqKind::Geometric: {
            BigInt alpha_pow, c_pow;
            mpz_pow_ui(alpha_pow.get_mpz_t(), a.get_mpz_t(), n - 1);
            mpz_pow_ui(c_pow.get_mpz_t(), b.get_mpz_t(), n);
            return alpha_pow * c_pow;
        }
        case SeqKind::Shift:
            return n <= idx ? BigInt(1) : children[0].term(n - idx);
        case SeqKind::Product:
            return children[0].term(n) * children[1].term(n);
        case SeqKind::Explicit:
            if (n >= list.size())
                throw std::out_of_range("explicit sequence has no term at index " + std::to_string(n) +
                                        " (last index " + std::to_string(list.size() - 1) + ")");
            return list[n];
    }
    throw std::logic_error("unknown sequence kind");
}

FSeq::FSeq(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

void require_positive(const BigInt& v, const char* what) {
    if (v < 1) throw PreconditionError(std::string(what) + " must be >= 1, got " + v.get_str());
}

}  // namespace

FSeq FSeq::natural() {
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Natural;
    return FSeq(std::move(n));
}

FSeq FSeq::fibonacci() {
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Fibonacci;
    n->a = 1;
    n->b = 1;
    return FSeq(std::move(n));
}

FSeq FSeq::constant(const BigInt& t) {
    require_positive(t, "t");
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Constant;
    n->a = t;
    return FSeq(std::move(n));
}

FSeq FSeq::nondiminishing(const BigInt& c, std::size_t M) {
    require_positive(c, "c");
    if (M < 1) throw PreconditionError("M must be >= 1");
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::NonDiminishing;
    n->a = c;
    n->idx = M;
    return FSeq(std::move(n));
}

FSeq FSeq::periodic(const BigInt& c, std::size_t M) {
    require_positive(c, "c");
    if (M < 1) throw PreconditionError("M must be >= 1");
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Periodic;
    n->a = c;
    n->idx = M;
    return FSeq(std::move(n));
}

FSeq FSeq::geometric(const BigInt& alpha, const BigInt& c) {
    require_positive(alpha, "alpha");
    require_positive(c, "c");
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Geometric;
    n->a = alpha;
    n->b = c;
    return FSeq(std::move(n));
}

FSeq FSeq::rec2(const BigInt& f1, const BigInt& f2) {
    require_positive(f1, "f1");
    require_positive(f2, "f2");
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Rec2;
    n->a = f1;
    n->b = f2;
    return FSeq(std::move(n));
}

FSeq FSeq::shifted(const FSeq& inner, std::size_t s) {
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Shift;
    n->idx = s;
    n->children = {inner};
    return FSeq(std::move(n));
}

FSeq FSeq::product(const FSeq& left, const FSeq& right) {
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Product;
    n->children = {left, right};
    return FSeq(std::move(n));
}

FSeq FSeq::explicit_terms(std::vector<BigInt> terms) {
    if (terms.empty()) throw PreconditionError("explicit sequence needs at least the index-0 term");
    if (terms[0] != 0 && terms[0] != 1)
        throw PreconditionError("explicit sequence index-0 term must be 0 or 1, got " + terms[0].get_str());
    for (const auto& t : terms)
        if (t < 0) throw PreconditionError("sequence terms must be nonnegative, got " + t.get_str());
    terms[0] = 1;
    auto n = std::make_shared<Node>();
    n->kind = SeqKind::Explicit;
    n->list = std::move(terms);
    return FSeq(std::move(n));
}

BigInt FSeq::term(std::size_t n) const {
    if (n == 0) return 1;
    {
        std::shared_lock lock(node_->mu);
        if (auto it = node_->memo.find(n); it != node_->memo.end()) return it->second;
    }
    BigInt v = node_->compute(n);
    std::unique_lock lock(node_->mu);
    return node_->memo.try_emplace(n, std::move(v)).first->second;
}

std::vector<BigInt> FSeq::terms(std::size_t first, std::size_t last) const {
    std::vector<BigInt> out;
    for (std::size_t i = first; i <= last; ++i) out.push_back(term(i));
    return out;
}

SeqKind FSeq::kind() const { return node_->kind; }
const BigInt& FSeq::value_a() const { return node_->a; }
const BigInt& FSeq::value_b() const { return node_->b; }
std::size_t FSeq::index_param() const { return node_->idx; }
const std::vector<BigInt>& FSeq::explicit_list() const { return node_->list; }

const FSeq& FSeq::left() const {
    if (node_->children.empty()) throw std::logic_error(to_string(kind()) + " has no inner sequence");
    return node_->children[0];
}

const FSeq& FSeq::right() const {
    if (node_->children.size() < 2) throw std::logic_error(to_string(kind()) + " has no right factor");
    return node_->children[1];
}

std::optional<std::size_t> FSeq::last_index() const {
    switch (kind()) {
        case SeqKind::Explicit:
            return node_->list.size() - 1;
        case SeqKind::Shift:
            if (auto inner = left().last_index()) return *inner + node_->idx;
            return std::nullopt;
        case SeqKind::Product: {
            auto l = left().last_index();
            auto r = right().last_index();
            if (l && r) return std::min(*l, *r);
            return l ? l : r;
        }
        default:
            return std::nullopt;
    }
}

std::string FSeq::label() const {
    switch (kind()) {
        case SeqKind::Natural: return "natural";
        case SeqKind::Fibonacci: return "fibonacci";
        case SeqKind::Constant: return "C_" + node_->a.get_str();
        case SeqKind::NonDiminishing:
            return "A_{" + node_->a.get_str() + "," + std::to_string(node_->idx) + "}";
        case SeqKind::Periodic:
            return "B_{" + node_->a.get_str() + "," + std::to_string(node_->idx) + "}";
        case SeqKind::Geometric:
            return "geometric(alpha=" + node_->a.get_str() + ",c=" + node_->b.get_str() + ")";
        case SeqKind::Rec2: return "rec2(" + node_->a.get_str() + "," + node_->b.get_str() + ")";
        case SeqKind::Shift: return "shift_" + std::to_string(node_->idx) + "(" + left().label() + ")";
        case SeqKind::Product: return left().label() + "*" + right().label();
        case SeqKind::Explicit: {
            std::string s = "explicit[";
            for (std::size_t i = 1; i < node_->list.size(); ++i) {
                if (i > 1) s += ",";
                s += node_->list[i].get_str();
            }
            return s + "]";
        }
    }
    return "?";
}

BigInt f_factorial(const FSeq& seq, std::size_t n) {
    BigInt acc = 1;
    for (std::size_t j = 1; j <= n; ++j) acc *= seq.term(j);
    return acc;
}

BigInt falling(const FSeq& seq, std::size_t n, std::size_t k) {
    if (k > n)
        throw PreconditionError("falling factorial needs k <= n, got n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
    BigInt acc = 1;
    for (std::size_t j = 0; j < k; ++j) acc *= seq.term(n - j);
    return acc;
}

FNomial fnomial(const FSeq& seq, std::size_t n, std::size_t k) {
    if (k > n)
        throw PreconditionError("F-nomial needs k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    FNomial out;
    out.denominator = f_factorial(seq, k);
    if (out.denominator == 0)
        throw PreconditionError("F-nomial (" + std::to_string(n) + "," + std::to_string(k) +
                                ") has a zero term in the denominator range 1.." + std::to_string(k));
    out.numerator = falling(seq, n, k);
    out.value = Rational(out.numerator, out.denominator);
    out.value.canonicalize();
    out.is_integer = mpz_divisible_p(out.numerator.get_mpz_t(), out.denominator.get_mpz_t()) != 0;
    return out;
}

AdmissibilityReport is_admissible_prefix(const FSeq& seq, std::size_t N) {
    AdmissibilityReport report;
    report.checked_up_to = N;
    for (std::size_t n = 0; n <= N; ++n) {
        BigInt num = 1;  // falling(n, k), built incrementally
        BigInt den = 1;  // f_factorial(k)
        for (std::size_t k = 0; k <= n; ++k) {
            if (k > 0) {
                num *= seq.term(n - k + 1);
                den *= seq.term(k);
            }
            if (den == 0) {
                report.witness = AdmissibilityWitness{n, k, Rational(0), true};
                return report;
            }
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
                Rational v(num, den);
                v.canonicalize();
                report.witness = AdmissibilityWitness{n, k, v, false};
                return report;
            }
        }
    }
    return report;
}

bool identity_1_at(const FSeq& seq, std::size_t m, std::size_t k) {
    return seq.term(m + k) == seq.term(m) + seq.term(k);
}

bool identity_2_at(const FSeq& seq, std::size_t m, std::size_t k) {
    return seq.term(m + k) == seq.term(k + 1) * seq.term(m) + seq.term(m - 1) * seq.term(k);
}

IdentityReport check_identity_1(const FSeq& seq, std::size_t N) {
    IdentityReport report;
    report.checked_up_to = N;
    for (std::size_t n = 2; n <= N; ++n) {
        for (std::size_t m = 1; m < n; ++m) {
            const std::size_t k = n - m;
            if (!identity_1_at(seq, m, k)) {
                report.witness = IdentityWitness{m, k, seq.term(n), seq.term(m) + seq.term(k)};
                return report;
            }
        }
    }
    return report;
}

IdentityReport check_identity_2(const FSeq& seq, std::size_t N) {
    IdentityReport report;
    report.checked_up_to = N;
    for (std::size_t n = 3; n <= N; ++n) {
        for (std::size_t m = 2; m < n; ++m) {
            const std::size_t k = n - m;
            if (!identity_2_at(seq, m, k)) {
                report.witness = IdentityWitness{
                    m, k, seq.term(n), seq.term(k + 1) * seq.term(m) + seq.term(m - 1) * seq.term(k)};
                return report;
            }
        }
    }
    return report;
}

}  // namespace cobweb
