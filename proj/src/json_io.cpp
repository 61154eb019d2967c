#include "cobweb/json_io.hpp"

#include "cobweb/errors.hpp"

namespace cobweb {

namespace {

std::string big(const BigInt& v) { return v.get_str(); }

BigInt read_big(const Json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("descriptor is missing \"") + key + "\"");
    const Json& v = j.at(key);
    BigInt out;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(std::string("\"") + key + "\" is not a nonnegative decimal string: " + s);
        out.set_str(s, 10);
    } else if (v.is_number_unsigned()) {
        out = static_cast<unsigned long>(v.get<std::uint64_t>());
    } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        out = static_cast<unsigned long>(v.get<std::int64_t>());
    } else {
        throw ParseError(std::string("\"") + key + "\" must be a nonnegative integer or decimal string");
    }
    return out;
}

std::size_t read_index(const Json& j, const char* key) {
    const BigInt v = read_big(j, key);
    if (!v.fits_ulong_p()) throw ParseError(std::string("\"") + key + "\" is too large");
    return v.get_ui();
}

}  // namespace

Json descriptor_to_json(const FSeq& seq) {
    Json j;
    j["kind"] = to_string(seq.kind());
    switch (seq.kind()) {
        case SeqKind::Natural:
        case SeqKind::Fibonacci:
            break;
        case SeqKind::Constant:
            j["t"] = big(seq.value_a());
            break;
        case SeqKind::NonDiminishing:
        case SeqKind::Periodic:
            j["c"] = big(seq.value_a());
            j["M"] = seq.index_param();
            break;
        case SeqKind::Geometric:
            j["alpha"] = big(seq.value_a());
            j["c"] = big(seq.value_b());
            break;
        case SeqKind::Rec2:
            j["f1"] = big(seq.value_a());
            j["f2"] = big(seq.value_b());
            break;
        case SeqKind::Shift:
            j["s"] = seq.index_param();
            j["inner"] = descriptor_to_json(seq.left());
            break;
        case SeqKind::Product:
            j["inner"] = Json::array({descriptor_to_json(seq.left()), descriptor_to_json(seq.right())});
            break;
        case SeqKind::Explicit: {
            Json terms = Json::array();
            for (const auto& t : seq.explicit_list()) terms.push_back(big(t));
            j["terms"] = std::move(terms);
            break;
        }
    }
    return j;
}

FSeq descriptor_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("descriptor must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ParseError("descriptor needs a string \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "natural") return FSeq::natural();
        if (kind == "fibonacci") return FSeq::fibonacci();
        if (kind == "constant") return FSeq::constant(read_big(j, "t"));
        if (kind == "nondiminishing") return FSeq::nondiminishing(read_big(j, "c"), read_index(j, "M"));
        if (kind == "periodic") return FSeq::periodic(read_big(j, "c"), read_index(j, "M"));
        if (kind == "geometric") return FSeq::geometric(read_big(j, "alpha"), read_big(j, "c"));
        if (kind == "rec2") return FSeq::rec2(read_big(j, "f1"), read_big(j, "f2"));
        if (kind == "shift") {
            if (!j.contains("inner")) throw ParseError("shift descriptor needs \"inner\"");
            return FSeq::shifted(descriptor_from_json(j.at("inner")), read_index(j, "s"));
        }
        if (kind == "product") {
            if (!j.contains("inner") || !j.at("inner").is_array() || j.at("inner").size() != 2)
                throw ParseError("product descriptor needs \"inner\": [left, right]");
            return FSeq::product(descriptor_from_json(j.at("inner")[0]), descriptor_from_json(j.at("inner")[1]));
        }
        if (kind == "explicit") {
            if (!j.contains("terms") || !j.at("terms").is_array())
                throw ParseError("explicit descriptor needs a \"terms\" array");
            std::vector<BigInt> terms;
            for (const auto& t : j.at("terms")) {
                Json wrapper{{"v", t}};
                terms.push_back(read_big(wrapper, "v"));
            }
            return FSeq::explicit_terms(std::move(terms));
        }
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid ") + kind + " descriptor: " + e.what());
    }
    throw ParseError("unknown descriptor kind \"" + kind + "\"");
}

FSeq parse_descriptor(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("descriptor is not valid JSON: ") + e.what());
    }
    return descriptor_from_json(j);
}

Json tiling_to_json(const Tiling& tiling) {
    Json blocks = Json::array();
    for (const auto& b : tiling.blocks) {
        Json levels = Json::array();
        for (const auto& s : b.subsets) levels.push_back(s);
        blocks.push_back(std::move(levels));
    }
    return Json{{"layer", {{"k", tiling.layer.k()}, {"n", tiling.layer.n()}, {"seq", descriptor_to_json(tiling.layer.seq())}}},
                {"blocks", std::move(blocks)}};
}

Tiling tiling_from_json(const Json& j) {
    try {
        const Json& layer = j.at("layer");
        Tiling t{build_layer(descriptor_from_json(layer.at("seq")), layer.at("k").get<std::size_t>(),
                             layer.at("n").get<std::size_t>()),
                 {}};
        for (const auto& b : j.at("blocks")) {
            BlockPlacement block;
            for (const auto& level : b) block.subsets.push_back(level.get<std::vector<Slot>>());
            t.blocks.push_back(std::move(block));
        }
        return t;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed tiling JSON: ") + e.what());
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("tiling JSON names an invalid layer: ") + e.what());
    }
}

Json hsequence_to_json(const HSequence& h) {
    Json terms = Json::array();
    for (const auto& v : h.h) terms.push_back(big(v));
    return Json{{"base", descriptor_to_json(h.base)}, {"h", std::move(terms)}};
}

Json enumeration_to_json(const EnumerationResult& r, bool complete) {
    Json tilings = Json::array();
    for (const auto& t : r.tilings) tilings.push_back(tiling_to_json(t));
    return Json{{"count", std::to_string(r.count)},
                {"complete", complete},
                {"truncated", r.truncated},
                {"tilings", std::move(tilings)}};
}

}  // namespace cobweb
