// cobweb: command-line surface for the cobweb poset engine.
//
//   cobweb seq        --seq '{"kind":"rec2","f1":1,"f2":2}' --N 9 --format text
//   cobweb admissible --seq '{"kind":"fibonacci"}' --N 15
//   cobweb tile       --seq '{"kind":"natural"}' --k 2 --n 4 [--format dot]
//   cobweb enumerate  --seq-file seq.json --k 5 --n 7 [--limit 10] [--workers 4]
//   cobweb triangle   --seq '{"kind":"natural"}' --kind sn --rows 6 --format csv
//   cobweb cta3       --seq '{"kind":"fibonacci"}' --N 12
//   cobweb layer      --seq '{"kind":"fibonacci"}' --k 1 --n 4 --format dot
//
// Exit codes: 0 success, 1 negative verdict (witness, no tiling, failed
// check), 2 usage or descriptor error, 3 cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cobweb/errors.hpp"
#include "cobweb/fseq.hpp"
#include "cobweb/json_io.hpp"
#include "cobweb/poset.hpp"
#include "cobweb/seqalg.hpp"
#include "cobweb/tiling.hpp"

namespace {

using namespace cobweb;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct RunConfig {
    std::string seq_json;
    std::string seq_file;
    std::string format = "json";
    std::string out_path;
    std::uint64_t cap_chains = 0;
    std::uint64_t cap_placements = 0;
    std::uint64_t cap_nodes = 0;

    std::size_t N = 10;
    std::size_t k = 1;
    std::size_t n = 1;
    std::size_t rows = 6;
    std::size_t limit = 0;
    std::size_t workers = 1;
    std::uint64_t seed = 0;
    std::string show = "terms";
    std::string variant = "auto";
    std::string policy = "first";
    std::string kind = "fnomial";
    std::string sf_mode = "printed";
    bool k0 = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FSeq load_sequence(const RunConfig& cfg) {
    if (!cfg.seq_json.empty() && !cfg.seq_file.empty()) throw UsageError("give either --seq or --seq-file, not both");
    if (!cfg.seq_file.empty()) {
        std::ifstream in(cfg.seq_file);
        if (!in) throw UsageError("cannot read " + cfg.seq_file);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_descriptor(buf.str());
    }
    if (cfg.seq_json.empty()) throw UsageError("a sequence descriptor is required (--seq or --seq-file)");
    return parse_descriptor(cfg.seq_json);
}

std::uint64_t cap_value(std::uint64_t flag, const char* env, std::uint64_t fallback) {
    if (flag > 0) return flag;
    if (const char* v = std::getenv(env); v && *v) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(v, &end, 10);
        if (*end != '\0' || parsed == 0) throw UsageError(std::string(env) + " must be a positive integer");
        return parsed;
    }
    return fallback;
}

Caps load_caps(const RunConfig& cfg) {
    const Caps defaults;
    return Caps{cap_value(cfg.cap_chains, "COBWEB_CAP_CHAINS", defaults.chains),
                cap_value(cfg.cap_placements, "COBWEB_CAP_PLACEMENTS", defaults.placements),
                cap_value(cfg.cap_nodes, "COBWEB_CAP_NODES", defaults.nodes)};
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed, const char* command) {
    for (const char* f : allowed)
        if (cfg.format == f) return;
    throw UsageError(std::string("format ") + cfg.format + " is not available for " + command);
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string join(const std::vector<BigInt>& values, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += sep;
        s += values[i].get_str();
    }
    return s;
}

Json triangle_to_json(const Triangle& t) {
    Json rows = Json::array();
    Json errors = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (const auto& c : row) {
            if (c.value) {
                r.push_back(c.value->get_str());
            } else {
                r.push_back(nullptr);
                errors.push_back(Json{{"n", c.n}, {"k", c.k}, {"error", c.error}});
            }
        }
        rows.push_back(std::move(r));
    }
    return Json{{"kind", to_string(t.kind)}, {"rows", std::move(rows)}, {"errors", std::move(errors)}};
}

int cmd_seq(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text", "csv"}, "seq");
    const FSeq seq = load_sequence(cfg);
    if (cfg.show == "terms" || cfg.show == "factorials") {
        std::vector<BigInt> values;
        for (std::size_t i = 1; i <= cfg.N; ++i)
            values.push_back(cfg.show == "terms" ? seq.term(i) : f_factorial(seq, i));
        if (cfg.format == "text") {
            out << join(values, " ") << "\n";
        } else if (cfg.format == "csv") {
            out << "n,value\n";
            for (std::size_t i = 0; i < values.size(); ++i) out << i + 1 << "," << values[i].get_str() << "\n";
        } else {
            Json arr = Json::array();
            for (const auto& v : values) arr.push_back(v.get_str());
            out << dump(Json{{"seq", descriptor_to_json(seq)}, {cfg.show, std::move(arr)}});
        }
        return kExitOk;
    }
    if (cfg.show == "fnomial") {
        TriangleOptions opts;
        opts.include_k0 = true;
        const Triangle t = triangle(seq, CounterKind::FNomial, cfg.N, opts);
        if (cfg.format == "text") out << render_text(t);
        else if (cfg.format == "csv") out << render_csv(t);
        else out << dump(triangle_to_json(t));
        return t.has_errors() ? kExitNegative : kExitOk;
    }
    throw UsageError("--show must be terms, factorials or fnomial");
}

int cmd_admissible(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"}, "admissible");
    const FSeq seq = load_sequence(cfg);
    const AdmissibilityReport r = is_admissible_prefix(seq, cfg.N);
    if (cfg.format == "text") {
        if (r.admissible()) {
            out << "admissible up to N=" << cfg.N << "\n";
        } else {
            const auto& w = *r.witness;
            out << "not admissible: witness n=" << w.n << " k=" << w.k << " value "
                << (w.zero_denominator ? std::string("undefined (zero denominator)") : to_string(w.value)) << "\n";
        }
    } else {
        Json j{{"seq", descriptor_to_json(seq)}, {"N", cfg.N}, {"admissible", r.admissible()}};
        if (r.witness)
            j["witness"] = Json{{"n", r.witness->n},
                                {"k", r.witness->k},
                                {"value", r.witness->zero_denominator ? "undefined" : to_string(r.witness->value)}};
        out << dump(j);
    }
    return r.admissible() ? kExitOk : kExitNegative;
}

std::optional<Recurrence> pick_variant(const RunConfig& cfg, const FSeq& seq, std::string& why) {
    auto describe = [](const char* name, const IdentityReport& r) {
        const auto& w = *r.witness;
        return std::string(name) + " fails at m=" + std::to_string(w.m) + " k=" + std::to_string(w.k) + " (" +
               w.lhs.get_str() + " != " + w.rhs.get_str() + ")";
    };
    const bool want_nat = cfg.variant == "auto" || cfg.variant == "natural";
    const bool want_fib = cfg.variant == "auto" || cfg.variant == "fibonacci";
    if (!want_nat && !want_fib) throw UsageError("--variant must be auto, natural or fibonacci");
    std::vector<std::string> reasons;
    if (want_nat) {
        const auto r = check_identity_1(seq, cfg.n);
        if (r.holds()) return Recurrence::Natural;
        reasons.push_back(describe("identity-1", r));
    }
    if (want_fib) {
        const auto r = check_identity_2(seq, cfg.n);
        if (r.holds()) return Recurrence::Fibonacci;
        reasons.push_back(describe("identity-2", r));
    }
    for (const auto& r : reasons) why += (why.empty() ? "" : "; ") + r;
    return std::nullopt;
}

int cmd_tile(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text", "dot"}, "tile");
    const FSeq seq = load_sequence(cfg);
    const Caps caps = load_caps(cfg);
    const Layer layer = build_layer(seq, cfg.k, cfg.n);
    std::string why;
    const auto rec = pick_variant(cfg, seq, why);
    if (!rec) {
        std::cerr << "no identity-1/2 structure; use enumerate (" << why << ")\n";
        return kExitNegative;
    }
    CprtaPolicy policy;
    if (cfg.policy == "random") {
        policy.mode = CprtaMode::SeededRandom;
        policy.seed = cfg.seed;
    } else if (cfg.policy != "first") {
        throw UsageError("--policy must be first or random");
    }
    const Construction c = construct_tiling(*rec, seq, cfg.k, cfg.n, policy, caps);
    const VerifyReport v = verify_tiling(c.tiling, caps);
    if (!v.valid()) {
        std::cerr << "constructed tiling failed verification: " << v.violation->message << "\n";
        return kExitNegative;
    }
    if (cfg.format == "dot") {
        out << to_dot(layer, c.tiling);
    } else if (cfg.format == "text") {
        out << "variant " << to_string(*rec) << ": " << c.tiling.blocks.size() << " blocks tile <Phi_" << cfg.k
            << " -> Phi_" << cfg.n << ">, valid\n";
    } else {
        out << dump(tiling_to_json(c.tiling));
    }
    return kExitOk;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"}, "enumerate");
    const FSeq seq = load_sequence(cfg);
    EnumerateOptions opts;
    opts.caps = load_caps(cfg);
    opts.limit = cfg.limit;
    opts.workers = std::max<std::size_t>(1, cfg.workers);
    const Layer layer = build_layer(seq, cfg.k, cfg.n);
    EnumerationResult r;
    try {
        r = enumerate_tilings(layer, opts);
    } catch (const ResourceError& e) {
        if (cfg.format == "text")
            out << "count incomplete: " << e.what() << "\n";
        else
            out << dump(Json{{"count", nullptr}, {"complete", false}, {"tilings", Json::array()}, {"error", e.what()}});
        return kExitCap;
    }
    for (const auto& t : r.tilings) {
        const VerifyReport v = verify_tiling(t, opts.caps);
        if (!v.valid()) {
            std::cerr << "enumerated tiling failed verification: " << v.violation->message << "\n";
            return kExitNegative;
        }
    }
    if (cfg.format == "text") {
        out << "count " << r.count << (r.truncated ? " (tiling list truncated)" : "") << "\n";
    } else {
        out << dump(enumeration_to_json(r, true));
    }
    return r.count > 0 ? kExitOk : kExitNegative;
}

int cmd_triangle(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text", "csv"}, "triangle");
    const FSeq seq = load_sequence(cfg);
    CounterKind kind;
    if (cfg.kind == "fnomial") kind = CounterKind::FNomial;
    else if (cfg.kind == "sn") kind = CounterKind::SN;
    else if (cfg.kind == "sf") kind = CounterKind::SF;
    else if (cfg.kind == "stirling") kind = CounterKind::StirlingBound;
    else throw UsageError("--kind must be fnomial, sn, sf or stirling");
    TriangleOptions opts;
    opts.include_k0 = cfg.k0;
    if (cfg.sf_mode == "printed") opts.sf_mode = SfMode::Printed;
    else if (cfg.sf_mode == "derived") opts.sf_mode = SfMode::DerivedConsistent;
    else throw UsageError("--sf-mode must be printed or derived");

    const Triangle t = triangle(seq, kind, cfg.rows, opts);
    if (kind == CounterKind::SF) {
        TriangleOptions other = opts;
        other.sf_mode = opts.sf_mode == SfMode::Printed ? SfMode::DerivedConsistent : SfMode::Printed;
        const Triangle alt = triangle(seq, kind, cfg.rows, other);
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
                const auto& a = t.rows[i][j];
                const auto& b = alt.rows[i][j];
                if (a.value && b.value && *a.value != *b.value)
                    std::cerr << "warning: S_F(" << a.n << "," << a.k << ") printed and derived modes differ: "
                              << (opts.sf_mode == SfMode::Printed ? a.value : b.value)->get_str() << " vs "
                              << (opts.sf_mode == SfMode::Printed ? b.value : a.value)->get_str() << "\n";
            }
    }
    for (const auto& row : t.rows)
        for (const auto& c : row)
            if (!c.value) std::cerr << "cell (" << c.n << "," << c.k << "): " << c.error << "\n";
    if (cfg.format == "csv") out << render_csv(t);
    else if (cfg.format == "text") out << render_text(t);
    else out << dump(triangle_to_json(t));
    return t.has_errors() ? kExitNegative : kExitOk;
}

int cmd_cta3(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"}, "cta3");
    const FSeq seq = load_sequence(cfg);
    const HReport r = h_general(seq, cfg.N);
    bool reconstruction_ok = r.ok();
    std::size_t bad_prefix = 0;
    if (r.ok()) {
        for (std::size_t s = 1; s <= cfg.N && reconstruction_ok; ++s) {
            const FSeq rebuilt = reconstruct(r.sequence, s);
            for (std::size_t i = 1; i <= s; ++i)
                if (rebuilt.term(i) != seq.term(i)) {
                    reconstruction_ok = false;
                    bad_prefix = s;
                    break;
                }
        }
    }
    if (cfg.format == "text") {
        out << join(r.sequence.h, ",") << "\n";
        if (r.failure)
            out << "no periodic factorization: lcm " << r.failure->lcm.get_str() << " of proper-divisor terms does not divide term "
                << r.failure->n << " = " << r.failure->term.get_str() << "\n";
        else
            out << "reconstruction " << (reconstruction_ok ? "ok" : "FAILED at prefix " + std::to_string(bad_prefix)) << "\n";
    } else {
        Json j = hsequence_to_json(r.sequence);
        j["reconstruction_ok"] = reconstruction_ok;
        if (r.failure)
            j["failure"] = Json{{"n", r.failure->n}, {"term", r.failure->term.get_str()}, {"lcm", r.failure->lcm.get_str()}};
        out << dump(j);
    }
    return reconstruction_ok ? kExitOk : kExitNegative;
}

int cmd_layer(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text", "dot"}, "layer");
    const FSeq seq = load_sequence(cfg);
    const Layer layer = build_layer(seq, cfg.k, cfg.n);
    if (cfg.format == "dot") {
        out << to_dot(layer);
        return kExitOk;
    }
    std::vector<BigInt> sizes;
    for (auto s : layer.sizes()) sizes.emplace_back(static_cast<unsigned long>(s));
    if (cfg.format == "text") {
        out << "sizes " << join(sizes, " ") << "; chains " << layer.chain_count().get_str() << "; placements "
            << count_placements(layer).get_str() << "\n";
    } else {
        Json s = Json::array();
        for (const auto& v : sizes) s.push_back(v.get_str());
        out << dump(Json{{"k", layer.k()},
                         {"n", layer.n()},
                         {"seq", descriptor_to_json(seq)},
                         {"sizes", std::move(s)},
                         {"chains", layer.chain_count().get_str()},
                         {"placements", count_placements(layer).get_str()}});
    }
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--seq", cfg.seq_json, "sequence descriptor as inline JSON");
    sub->add_option("--seq-file", cfg.seq_file, "file holding a sequence descriptor");
    sub->add_option("--format", cfg.format, "json | text | csv | dot");
    sub->add_option("--out", cfg.out_path, "write the result here instead of stdout");
    sub->add_option("--cap-chains", cfg.cap_chains, "maximum chain universe (env COBWEB_CAP_CHAINS)");
    sub->add_option("--cap-placements", cfg.cap_placements, "maximum placement universe (env COBWEB_CAP_PLACEMENTS)");
    sub->add_option("--cap-nodes", cfg.cap_nodes, "maximum exact-cover search nodes (env COBWEB_CAP_NODES)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic and tiling engine for cobweb posets"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* seq = app.add_subcommand("seq", "print terms, F-factorials or the F-nomial triangle");
    add_common(seq, cfg);
    seq->add_option("--N", cfg.N, "last index");
    seq->add_option("--show", cfg.show, "terms | factorials | fnomial");

    auto* adm = app.add_subcommand("admissible", "check integrality of all F-nomials up to N");
    add_common(adm, cfg);
    adm->add_option("--N", cfg.N, "last index")->required();

    auto* tile = app.add_subcommand("tile", "construct a tiling by the recursive algorithm");
    add_common(tile, cfg);
    tile->add_option("--k", cfg.k, "bottom level")->required();
    tile->add_option("--n", cfg.n, "top level")->required();
    tile->add_option("--variant", cfg.variant, "auto | natural | fibonacci");
    tile->add_option("--policy", cfg.policy, "first | random");
    tile->add_option("--seed", cfg.seed, "seed for --policy random");

    auto* en = app.add_subcommand("enumerate", "count all tilings of a layer by exact cover");
    add_common(en, cfg);
    en->add_option("--k", cfg.k, "bottom level")->required();
    en->add_option("--n", cfg.n, "top level")->required();
    en->add_option("--limit", cfg.limit, "tilings to list (count stays exact)");
    en->add_option("--workers", cfg.workers, "search threads");

    auto* tri = app.add_subcommand("triangle", "emit a counting triangle");
    add_common(tri, cfg);
    tri->add_option("--kind", cfg.kind, "fnomial | sn | sf | stirling");
    tri->add_option("--rows", cfg.rows, "number of rows");
    tri->add_flag("--k0", cfg.k0, "include the k=0 column (fnomial)");
    tri->add_option("--sf-mode", cfg.sf_mode, "printed | derived");

    auto* cta3 = app.add_subcommand("cta3", "periodic factorization h_1..h_N and reconstruction check");
    add_common(cta3, cfg);
    cta3->add_option("--N", cfg.N, "last index")->required();

    auto* layer = app.add_subcommand("layer", "describe a layer or render its Hasse diagram");
    add_common(layer, cfg);
    layer->add_option("--k", cfg.k, "bottom level")->required();
    layer->add_option("--n", cfg.n, "top level")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Output output(cfg.out_path);
        std::ostream& out = output.stream();
        if (*seq) return cmd_seq(cfg, out);
        if (*adm) return cmd_admissible(cfg, out);
        if (*tile) return cmd_tile(cfg, out);
        if (*en) return cmd_enumerate(cfg, out);
        if (*tri) return cmd_triangle(cfg, out);
        if (*cta3) return cmd_cta3(cfg, out);
        if (*layer) return cmd_layer(cfg, out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    }
    return kExitUsage;
}
